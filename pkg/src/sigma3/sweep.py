"""Bounded enumeration of manifold invariants and flag combinations.

Used by the acceptance suite and the scripts: every SplittingData with
l, d <= max_rank, t_i <= max_t and exponents <= max_exp that realizes its
own torsion, crossed with every combination of the five flag booleans.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .abelian import TorsionDecomposition
from .errors import FlagMismatch, InvalidSplitting
from .invariants import ManifoldInvariants, OperationFlags, SplittingData

__all__ = ["SweepConfig", "splittings", "all_flags", "invariants", "valid_cases"]


@dataclass(frozen=True)
class SweepConfig:
    max_rank: int = 2
    max_exp: int = 3
    max_t: int = 1
    max_m3: int = 1


def _lists(n, max_exp):
    return list(product(range(1, max_exp + 1), repeat=n))


def splittings(cfg: SweepConfig = SweepConfig()):
    """(l, d, torsion, SplittingData) with consistent 2-primary exponents."""
    ts = range(cfg.max_t + 1)
    for l, d in product(range(cfg.max_rank + 1), repeat=2):
        for t0, t1, t2, t3, t4 in product(ts, repeat=5):
            if t1 + t2 + t4 != t0 + t3 + t4:
                continue
            for k in range(l + 1):
                if k + t2 > l or k + t3 > l:
                    continue
                for r, rbar, rc in product(_lists(t1, cfg.max_exp), _lists(t2, cfg.max_exp), _lists(t4, cfg.max_exp)):
                    t2_exps = sorted(r + rbar + rc)
                    for s, shat, sc in product(_lists(t0, cfg.max_exp), _lists(t3, cfg.max_exp), _lists(t4, cfg.max_exp)):
                        if sorted(s + shat + sc) != t2_exps:
                            continue
                        for m3 in range(cfg.max_m3 + 1):
                            for r3 in _lists(m3, cfg.max_exp):
                                torsion = TorsionDecomposition({2: t2_exps, 3: list(r3)})
                                sp = SplittingData(k, s, r, rbar, shat, rc, sc, r3)
                                yield l, d, torsion, sp


def all_flags():
    for sq2, theta, triple, p1, star in product((False, True), repeat=5):
        yield OperationFlags(sq2, theta, triple, p1, star)


def invariants(cfg: SweepConfig = SweepConfig(), smooth: bool = False):
    """Every (invariants) pair whose data validate; flags may still contradict the shells."""
    for l, d, torsion, sp in splittings(cfg):
        for flags in all_flags():
            inv = ManifoldInvariants(l, d, torsion, flags, sp, smooth=smooth)
            try:
                inv.validate()
            except (InvalidSplitting, FlagMismatch):
                continue
            yield inv


def valid_cases(classify, cfg: SweepConfig = SweepConfig(), smooth: bool = False):
    """(inv, candidates) for each enumerated input that classify accepts."""
    from .errors import NoCarrier

    for inv in invariants(cfg, smooth):
        try:
            yield inv, classify(inv)
        except (FlagMismatch, NoCarrier):
            continue
