"""Finitely generated abelian groups presented as direct sums of cyclic groups.

Groups arrive pre-decomposed (homology tables, homotopy tables, torsion
lists), so the representation is just an ordered list of cyclic orders with
0 standing for Z.  Elements are coefficient tuples reduced to the canonical
representatives 0..n-1.

>>> g = AbelianGroup.parse("Z/4 + Z/2")
>>> str(add(g, GroupElement((3, 1)), GroupElement((2, 1))))
'(1, 0)'
>>> iso_check(AbelianGroup.parse("Z/2 + Z/4"), AbelianGroup.parse("Z/4 + Z/2"))
True
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import factorint

from .errors import ParseError

__all__ = [
    "CyclicSummand",
    "AbelianGroup",
    "GroupElement",
    "TorsionDecomposition",
    "add",
    "neg",
    "scale",
    "reduce",
    "min_exp",
    "delta",
    "iso_check",
    "primary_invariants",
    "prime_part",
    "elements",
]


@dataclass(frozen=True, order=True)
class CyclicSummand:
    """Z/order, with order 0 meaning Z and order 1 the trivial group."""

    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"negative cyclic order {self.order}")

    @property
    def is_free(self):
        return self.order == 0

    def __str__(self):
        return "Z" if self.order == 0 else f"Z/{self.order}"


@dataclass(frozen=True)
class AbelianGroup:
    summands: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self,
            "summands",
            tuple(s if isinstance(s, CyclicSummand) else CyclicSummand(int(s)) for s in self.summands),
        )

    @classmethod
    def of(cls, *orders):
        return cls(tuple(CyclicSummand(o) for o in orders))

    @classmethod
    def trivial(cls):
        return cls(())

    @property
    def orders(self):
        return tuple(s.order for s in self.summands)

    @property
    def rank(self):
        return sum(1 for s in self.summands if s.order == 0)

    @property
    def is_finite(self):
        return all(s.order != 0 for s in self.summands)

    def size(self):
        if not self.is_finite:
            raise ValueError("infinite group has no finite size")
        return math.prod(s.order for s in self.summands)

    def normalized(self):
        return AbelianGroup(tuple(s for s in self.summands if s.order != 1))

    def is_trivial(self):
        return not self.normalized().summands

    def __add__(self, other):
        return AbelianGroup(self.summands + other.summands)

    def __str__(self):
        norm = self.normalized()
        if not norm.summands:
            return "0"
        return " + ".join(str(s) for s in norm.summands)

    _TOKEN = re.compile(r"\s*(?:Z/(\d+)|Z|0)\s*$")

    @classmethod
    def parse(cls, text):
        """Parse `Z`, `Z/8`, `Z/8 + Z/2` or `0`."""
        text = text.strip()
        if text in ("", "0"):
            return cls(())
        orders = []
        pos = 0
        for part in text.split("+"):
            m = cls._TOKEN.match(part)
            if not m or part.strip() == "0":
                raise ParseError(f"bad cyclic group {part.strip()!r}", text, pos)
            orders.append(int(m.group(1)) if m.group(1) else 0)
            pos += len(part) + 1
        return cls.of(*orders)


@dataclass(frozen=True)
class GroupElement:
    coefficients: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    def is_zero(self):
        return all(c == 0 for c in self.coefficients)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coefficients) + ")"


def _check(g, a):
    if len(a.coefficients) != len(g.summands):
        raise ValueError(f"element of length {len(a.coefficients)} does not fit group {g} of length {len(g.summands)}")


def reduce(g: AbelianGroup, a: GroupElement) -> GroupElement:
    _check(g, a)
    return GroupElement(tuple(c if s.order == 0 else c % s.order for c, s in zip(a, g.summands)))


def add(g: AbelianGroup, a: GroupElement, b: GroupElement) -> GroupElement:
    _check(g, a)
    _check(g, b)
    return reduce(g, GroupElement(tuple(x + y for x, y in zip(a, b))))


def neg(g: AbelianGroup, a: GroupElement) -> GroupElement:
    return scale(g, a, -1)


def scale(g: AbelianGroup, a: GroupElement, k: int) -> GroupElement:
    _check(g, a)
    return reduce(g, GroupElement(tuple(k * c for c in a)))


def zero(g: AbelianGroup) -> GroupElement:
    return GroupElement((0,) * len(g.summands))


def min_exp(r: int, s: int) -> int:
    """m_r^s = min(r, s)."""
    if r < 0 or s < 0:
        raise ValueError("exponents must be non-negative")
    return min(r, s)


def delta(r: int) -> int:
    """delta_1 = 1 and delta_r = 0 otherwise."""
    return 1 if r == 1 else 0


@lru_cache(maxsize=None)
def _prime_powers(order):
    return tuple(p**e for p, e in factorint(order).items())


def primary_invariants(g: AbelianGroup):
    """Sorted multiset of prime-power orders plus the free rank."""
    powers = []
    for s in g.summands:
        if s.order in (0, 1):
            continue
        powers.extend(_prime_powers(s.order))
    return g.rank, tuple(sorted(powers))


def iso_check(g: AbelianGroup, h: AbelianGroup) -> bool:
    return primary_invariants(g) == primary_invariants(h)


def prime_part(order: int, coef: int, p: int) -> int:
    """Project coef in Z/order onto its p-primary component (CRT idempotent)."""
    if order == 0:
        raise ValueError("Z has no primary decomposition")
    if order == 1:
        return 0
    pe = 1
    while order % (pe * p) == 0:
        pe *= p
    if pe == 1:
        return 0
    rest = order // pe
    # e = 1 mod pe, 0 mod rest
    e = rest * pow(rest, -1, pe) % order if rest > 1 else 1
    return coef * e % order


def elements(g: AbelianGroup):
    """Every element of a finite group, in lexicographic coefficient order."""
    if not g.is_finite:
        raise ValueError(f"cannot enumerate infinite group {g}")
    for coeffs in itertools.product(*(range(s.order) for s in g.summands)):
        yield GroupElement(coeffs)


@dataclass(frozen=True)
class TorsionDecomposition:
    """Torsion T as a map prime -> sorted exponents, each giving Z/p^r."""

    primaries: tuple = field(default=())

    def __post_init__(self):
        items = self.primaries.items() if isinstance(self.primaries, dict) else self.primaries
        norm = []
        for p, exps in items:
            exps = tuple(sorted(int(e) for e in exps))
            if any(e < 1 for e in exps):
                raise ValueError(f"exponents at p={p} must be >= 1")
            if exps:
                norm.append((int(p), exps))
        object.__setattr__(self, "primaries", tuple(sorted(norm)))

    def exponents(self, p):
        return dict(self.primaries).get(p, ())

    def count(self, p):
        return len(self.exponents(p))

    def primes(self):
        return tuple(p for p, _ in self.primaries)

    def to_group(self):
        return AbelianGroup.of(*(p**e for p, exps in self.primaries for e in exps))

    def restrict(self, predicate):
        return TorsionDecomposition(tuple((p, e) for p, e in self.primaries if predicate(p)))

    def __str__(self):
        parts = []
        for p, exps in self.primaries:
            for e, mult in sorted(Counter(exps).items()):
                parts.append(f"{p}^{e}x{mult}")
        return ", ".join(parts) if parts else "0"

    _ITEM = re.compile(r"^\s*(\d+)\^(\d+)\s*(?:[x×\*]\s*(\d+))?\s*$")

    @classmethod
    def parse(cls, text):
        """Parse a list such as `2^1x2, 3^2x1` (multiplicity defaults to 1)."""
        text = text.strip()
        if text in ("", "0"):
            return cls(())
        acc = {}
        pos = 0
        for item in text.split(","):
            m = cls._ITEM.match(item)
            if not m:
                raise ParseError(f"bad torsion item {item.strip()!r}, expected p^r x mult", text, pos)
            p, r, mult = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
            if len(factorint(p)) != 1 or factorint(p).get(p) != 1:
                raise ParseError(f"{p} is not prime", text, pos)
            if r < 1 or mult < 1:
                raise ParseError(f"exponent and multiplicity must be >= 1 in {item.strip()!r}", text, pos)
            acc.setdefault(p, []).extend([r] * mult)
            pos += len(item) + 1
        return cls(acc)
