"""Deterministic scalar sets.

Random sets come from SplitMix64 (Steele, Lea and Flood, 2014), written out
here so an instance is identical on every platform and in any language::

    state = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    return z ^ (z >> 31)

A uniform integer below ``n`` is drawn by rejection: outputs at or above
``2^64 - (2^64 mod n)`` are discarded, the rest reduced mod ``n``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .geometry import RationalLike, as_rational, format_rational

MASK64 = (1 << 64) - 1
GEN_KINDS = ("ap", "gp", "random_int", "explicit")


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq: Sequence):
        return seq[self.below(len(seq))]

    def rational(self, bound: int, nonzero: bool = False) -> Fraction:
        """``p/q`` with ``|p| <= bound`` and ``1 <= q <= bound``."""
        while True:
            value = Fraction(self.randint(-bound, bound), self.randint(1, bound))
            if value or not nonzero:
                return value

    def distinct_ints(self, n: int, lo: int, hi: int) -> list[int]:
        if n > hi - lo + 1:
            raise ValueError(f"cannot draw {n} distinct integers from [{lo}, {hi}]")
        seen: dict[int, None] = {}
        while len(seen) < n:
            seen.setdefault(self.randint(lo, hi), None)
        return list(seen)


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int = 1
    start: Fraction = Fraction(1)
    step: Fraction = Fraction(1)  # common difference for ap, ratio for gp
    seed: int = 0
    range_bound: int = 100
    path: Optional[str] = None

    def __post_init__(self):
        if self.kind not in GEN_KINDS:
            raise ValueError(f"unknown generator {self.kind!r}")
        if self.kind != "explicit" and self.n < 1:
            raise ValueError("n must be at least 1")
        if self.kind == "gp" and as_rational(self.step) == 0:
            raise ValueError("a geometric progression needs a nonzero ratio")
        if self.kind == "gp" and as_rational(self.start) == 0:
            raise ValueError("a geometric progression from 0 is degenerate")


def generate(spec: GenSpec) -> frozenset[Fraction]:
    start, step = as_rational(spec.start), as_rational(spec.step)
    if spec.kind == "ap":
        out = [start + i * step for i in range(spec.n)]
    elif spec.kind == "gp":
        out = [start * step**i for i in range(spec.n)]
    elif spec.kind == "random_int":
        out = [Fraction(v) for v in SplitMix64(spec.seed).distinct_ints(spec.n, 1, spec.range_bound)]
    else:
        if spec.path is None:
            raise ValueError("explicit sets need a path")
        return load_set(spec.path)
    result = frozenset(out)
    if len(result) < spec.n:
        raise ValueError(f"{spec} collapses to {len(result)} distinct values, fewer than n={spec.n}")
    return result


def ap(start: RationalLike, step: RationalLike, n: int) -> frozenset[Fraction]:
    return generate(GenSpec("ap", n, as_rational(start), as_rational(step)))


def gp(start: RationalLike, ratio: RationalLike, n: int) -> frozenset[Fraction]:
    return generate(GenSpec("gp", n, as_rational(start), as_rational(ratio)))


def random_int_set(n: int, range_bound: int, seed: int) -> frozenset[Fraction]:
    return generate(GenSpec("random_int", n, seed=seed, range_bound=range_bound))


def dump_set(values) -> str:
    return json.dumps([format_rational(v) for v in sorted(values)])


def load_set(path) -> frozenset[Fraction]:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, list):
        raise ValueError(f"{path}: expected a JSON array of rational strings")
    return frozenset(as_rational(v) for v in data)


_INLINE = re.compile(r"^(ap|gp|rand|random_int):(.*)$")


def parse_set_arg(text: str) -> frozenset[Fraction]:
    """A set given on the command line.

    Accepts a path to a JSON array, ``ap:start,step,n``, ``gp:start,ratio,n``,
    ``rand:n,range,seed`` or a plain comma list such as ``1,2,7/2``.
    """
    if Path(text).is_file():
        return load_set(text)
    m = _INLINE.match(text.strip())
    if m:
        kind, args = m.group(1), [a.strip() for a in m.group(2).split(",")]
        if kind in ("ap", "gp"):
            if len(args) != 3:
                raise ValueError(f"{kind} needs start,step,n: {text!r}")
            return generate(GenSpec(kind, int(args[2]), as_rational(args[0]), as_rational(args[1])))
        if len(args) != 3:
            raise ValueError(f"rand needs n,range,seed: {text!r}")
        return random_int_set(int(args[0]), int(args[1]), int(args[2]))
    if not text.strip():
        return frozenset()
    return frozenset(as_rational(v) for v in text.split(","))
