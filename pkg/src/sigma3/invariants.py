"""Input records: operation flags, splitting data and manifold invariants.

These are plain frozen dataclasses shared by `wedgemap`, `cohomops` and
`classify`.  Validation is explicit (`validate()`) so that malformed
descriptors fail with the violated constraint spelled out.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import TorsionDecomposition
from .errors import FlagMismatch, InvalidSplitting

__all__ = ["OperationFlags", "SplittingData", "Selection", "ManifoldInvariants"]


@dataclass(frozen=True)
class OperationFlags:
    sq2_nontrivial: bool = False
    theta_nontrivial: bool = False
    triple_nontrivial: bool = False
    p1_nontrivial: bool = False
    condition_star: bool = False
    psi_trivial: bool = True

    def validate(self):
        if not self.psi_trivial:
            raise FlagMismatch("psi must act trivially (standing hypothesis)")
        if self.condition_star and not self.p1_nontrivial:
            raise FlagMismatch("condition star requires a nontrivial P1")
        return self

    def describe(self):
        on = [n for n, v in (("sq2", self.sq2_nontrivial), ("theta", self.theta_nontrivial),
                             ("triple", self.triple_nontrivial), ("p1", self.p1_nontrivial),
                             ("star", self.condition_star)) if v]
        return "+".join(on) or "trivial"

    def two_local_case(self):
        """Case label of the 2-local list: '1a', '1b', '1c' or '2'."""
        if self.sq2_nontrivial:
            return "2"
        if self.theta_nontrivial:
            return "1b"
        if self.triple_nontrivial:
            return "1c"
        return "1a"


@dataclass(frozen=True)
class SplittingData:
    """Splitting parameters.

    Exponent lists: `r` (length t1), `rbar` (t2), `s` (t0), `shat` (t3),
    and `rcheck`/`scheck` (both t4, paired by index).  `r3` lists the
    exponents of the 3-primary torsion.
    """

    k: int = 0
    s: tuple = ()
    r: tuple = ()
    rbar: tuple = ()
    shat: tuple = ()
    rcheck: tuple = ()
    scheck: tuple = ()
    r3: tuple = ()

    def __post_init__(self):
        for name in ("s", "r", "rbar", "shat", "rcheck", "scheck", "r3"):
            object.__setattr__(self, name, tuple(int(x) for x in getattr(self, name)))

    @property
    def t0(self):
        return len(self.s)

    @property
    def t1(self):
        return len(self.r)

    @property
    def t2(self):
        return len(self.rbar)

    @property
    def t3(self):
        return len(self.shat)

    @property
    def t4(self):
        return len(self.rcheck)


@dataclass(frozen=True)
class Selection:
    """Optional pin of one candidate: a case-member tag such as '1b(iii)' and indices."""

    member: str | None = None
    j0: int | None = None
    j0_prime: int | None = None


@dataclass(frozen=True)
class ManifoldInvariants:
    l: int = 0
    d: int = 0
    torsion: TorsionDecomposition = field(default_factory=TorsionDecomposition)
    flags: OperationFlags = field(default_factory=OperationFlags)
    split: SplittingData = field(default_factory=SplittingData)
    selection: Selection | None = None
    smooth: bool = False

    def validate(self):
        sp, t2 = self.split, self.torsion.exponents(2)
        if self.l < 0 or self.d < 0 or sp.k < 0:
            raise InvalidSplitting("l, d and k must be non-negative")
        if any(e < 1 for e in sp.s + sp.r + sp.rbar + sp.shat + sp.rcheck + sp.scheck + sp.r3):
            raise InvalidSplitting("exponents must be >= 1")
        if len(sp.rcheck) != len(sp.scheck):
            raise InvalidSplitting("rcheck and scheck must have the same length t4")
        if sp.k + sp.t2 > self.l:
            raise InvalidSplitting(f"k+t2 > l ({sp.k}+{sp.t2} > {self.l})")
        if sp.k + sp.t3 > self.l:
            raise InvalidSplitting(f"k+t3 > l ({sp.k}+{sp.t3} > {self.l})")
        m2 = len(t2)
        if sp.t1 + sp.t2 + sp.t4 != m2:
            raise InvalidSplitting(f"t1+t2+t4 != m2 ({sp.t1}+{sp.t2}+{sp.t4} != {m2})")
        if sorted(sp.r + sp.rbar + sp.rcheck) != sorted(t2):
            raise InvalidSplitting("r, rbar, rcheck do not realize the 2-primary torsion")
        if sp.t0 + sp.t3 + sp.t4 != m2:
            raise InvalidSplitting(f"t0+t3+t4 != m2 ({sp.t0}+{sp.t3}+{sp.t4} != {m2})")
        if sorted(sp.s + sp.shat + sp.scheck) != sorted(t2):
            raise InvalidSplitting("s, shat, scheck do not realize the 2-primary torsion")
        if sorted(sp.r3) != sorted(self.torsion.exponents(3)):
            raise InvalidSplitting("r3 does not realize the 3-primary torsion")
        self.flags.validate()
        return self

    # convenient counts
    @property
    def n_s5(self):
        return self.l - self.split.k - self.split.t3

    @property
    def n_s7(self):
        return self.l - self.split.k - self.split.t2
