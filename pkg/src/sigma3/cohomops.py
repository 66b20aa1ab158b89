"""Cohomology operations on top-cell cones, as pattern tables.

A cone X u_f e^9 over one elementary complex is described by a ConePattern:
the family of the host and the integer coefficients (k, k', t) of f in the
host's generators.  Each operation is a biconditional on those
coefficients, so the evaluators are table lookups rather than a Steenrod
algebra calculus.  Evaluators raise UnsupportedPattern outside the families
their lemma covers.

>>> eval_sq2(ConePattern("A^s", catalog.moore(2, 2, 7), k=0, k2=1))
True
>>> eval_psi(ConePattern("C_tnu", catalog.sphere(5), t=2))
'iso'
"""

from __future__ import annotations

from dataclasses import dataclass

from . import abelian, catalog
from .catalog import ElementaryComplex, pi
from .errors import NotApplicable, UnsupportedPattern
from .invariants import OperationFlags

__all__ = [
    "OperationFlags",
    "ConePattern",
    "FAMILIES",
    "pattern_of",
    "eval_sq2",
    "eval_theta",
    "eval_psi",
    "eval_p1",
    "eval_triple",
    "additivity_transfer",
    "pattern_flags",
    "flags_from_vector",
    "same_case",
    "case_key",
    "patterns_realizing",
]

# family -> (host predicate, {slot: token})
FAMILIES = {
    "A^s": (lambda x: x.kind == catalog.MOORE and x.p == 2 and x.bottom == 6, {"k": "i_eta2", "k2": "etatilde"}),
    "A": (lambda x: x == catalog.sphere(6), {"k": "eta2"}),
    "C_eta": (lambda x: x == catalog.sphere(7), {"k": "eta"}),
    "A_r": (lambda x: x.kind == catalog.MOORE and x.p == 2 and x.bottom == 5, {"k": "etatilde_eta", "t": "i_nu"}),
    "C^eta": (lambda x: x.kind == catalog.CHANG_ETA and x.bottom == 5, {"t": "i_eta_nu"}),
    "Cbar": (lambda x: x.kind == catalog.CHANG_R and x.bottom == 5, {"k": "ibar_P_etatilde_eta", "t": "ibar_nu"}),
    "Chat": (lambda x: x.kind == catalog.CHANG_S and x.bottom == 5, {"k": "ihat_eta2", "t": "ihat_nu"}),
    "Ccheck": (
        lambda x: x.kind == catalog.CHANG_RS and x.bottom == 5,
        {"k": "icheck_eta2", "k2": "icheck_P_etatilde_eta", "t": "icheck_nu"},
    ),
    "C_tnu": (lambda x: x == catalog.sphere(5), {"t": "nu"}),
    "M3": (lambda x: x.kind == catalog.MOORE and x.p == 3 and x.bottom == 5, {"t": "i_alpha1"}),
}

_SQ2 = {"A^s", "C_eta"}
_THETA = {"A^s", "A", "A_r", "Cbar", "Chat", "Ccheck"}
_PSI = {"C_tnu", "A_r", "C^eta", "Cbar", "Chat", "Ccheck"}
_P1 = {"C_tnu", "M3", "C^eta", "Chat"}
_TRIPLE = {"C_tnu", "A_r"}


@dataclass(frozen=True)
class ConePattern:
    """host u_(k*g_k + k2*g_k2 + t*g_t) e^9 for the family's generators g."""

    family: str
    host: ElementaryComplex
    k: int = 0
    k2: int = 0
    t: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedPattern(f"unknown pattern family {self.family!r}")
        if not FAMILIES[self.family][0](self.host):
            raise UnsupportedPattern(f"{self.host} does not carry the {self.family} family")
        if self.k not in (0, 1) or self.k2 not in (0, 1):
            raise UnsupportedPattern("k and k' range over Z/2")

    def element(self, degree=8):
        table = pi(self.host, degree)
        slots = FAMILIES[self.family][1]
        return table.element([(getattr(self, s), tok) for s, tok in slots.items()])

    def __add__(self, other):
        if (self.family, self.host) != (other.family, other.host):
            raise UnsupportedPattern("patterns on different hosts cannot be added")
        return pattern_of(self.host, abelian.add(pi(self.host, 8).group, self.element(), other.element()))

    def __str__(self):
        return f"{self.family}(k={self.k},k'={self.k2},t={self.t}) on {self.host}"


def _family(host):
    for name, (pred, _) in FAMILIES.items():
        if pred(host):
            return name
    raise UnsupportedPattern(f"no cone-pattern family for {host}")


def pattern_of(host: ElementaryComplex, e) -> ConePattern:
    """Read (k, k', t) off an element of pi_8(host) by exhaustive search.

    The t-slot is taken minimal, so t always lies in the cyclic group spanned
    by the family's nu-type generator.
    """
    fam = _family(host)
    table = pi(host, 8)
    g = table.group
    target = table.reduce(e)
    slots = FAMILIES[fam][1]
    t_range = range(24) if "t" in slots else range(1)
    for t in t_range:
        for k in (0, 1) if "k" in slots else (0,):
            for k2 in (0, 1) if "k2" in slots else (0,):
                p = ConePattern(fam, host, k, k2, t)
                if p.element() == target:
                    return p
    raise UnsupportedPattern(f"{table.format_element(e)} is not a {fam} pattern on {host}")


def _need(p, families, op):
    if p.family not in families:
        raise UnsupportedPattern(f"{op} is not tabulated on the {p.family} family")


def eval_sq2(p: ConePattern) -> bool:
    """Sq^2 into the top class: nontrivial iff the etatilde (or eta) coefficient is 1."""
    _need(p, _SQ2, "Sq2")
    return (p.k2 if p.family == "A^s" else p.k) == 1


def eval_theta(p: ConePattern) -> bool:
    _need(p, _THETA, "Theta")
    if p.family == "Ccheck":
        return p.k == 1 or p.k2 == 1
    return p.k == 1


def eval_psi(p: ConePattern) -> str:
    """'iso' for t = 2 mod 4, 'trivial' for t = 0 mod 4, 'undefined' for odd t."""
    _need(p, _PSI, "Psi")
    if p.t % 4 == 2:
        return "iso"
    if p.t % 4 == 0:
        return "trivial"
    return "undefined"


def eval_p1(p: ConePattern) -> bool:
    _need(p, _P1, "P1")
    return p.t % 3 != 0


def eval_triple(p: ConePattern) -> bool:
    """The tertiary operation detects eta^3 on S^5 and i eta^3 on P^6(2^r), r >= 3."""
    _need(p, _TRIPLE, "T")
    if p.family == "A_r" and p.host.r < 3:
        return False
    return p.t % 8 == 4


_EVALUATORS = {"sq2": (eval_sq2, _SQ2), "theta": (eval_theta, _THETA), "psi": (eval_psi, _PSI),
               "p1": (eval_p1, _P1), "triple": (eval_triple, _TRIPLE)}  # fmt: skip


def additivity_transfer(f: ConePattern, g: ConePattern, op: str):
    """op on the cone of f+g, computed as op on the cone of f.

    Valid when op is trivial on the cone of g and both cones share the host
    (so the inclusion/pinch maps induce isomorphisms on the source and target
    cohomology of op).  Raises NotApplicable otherwise.
    """
    fn, fams = _EVALUATORS[op]
    if f.host != g.host or f.family != g.family:
        raise NotApplicable("additivity needs both patterns on one host")
    _need(f, fams, op)
    val_g = fn(g)
    if val_g not in (False, "trivial"):
        raise NotApplicable(f"{op} is not trivial on the cone of {g}")
    return fn(f)


def pattern_flags(p: ConePattern) -> dict:
    """{op: value} for every operation tabulated on p's family."""
    return {op: fn(p) for op, (fn, fams) in _EVALUATORS.items() if p.family in fams}


def flags_from_vector(v) -> OperationFlags:
    """Operation flags of the cone of an attaching vector, summand by summand.

    Each op is nontrivial iff it is nontrivial on some summand's pattern;
    Condition star is read as "the 3-primary part sits only on P^6(3^r)".
    """
    found = {"sq2": False, "theta": False, "triple": False, "p1": False}
    psi_ok = True
    moore3_only = True
    for x, e in zip(v.wedge, v.entries):
        if e.is_zero():
            continue
        p = pattern_of(x, e)
        vals = pattern_flags(p)
        for op in found:
            found[op] |= vals.get(op, False) is True
        if vals.get("psi") == "iso":
            psi_ok = False
        if vals.get("p1") and p.family != "M3":
            moore3_only = False
    return OperationFlags(
        sq2_nontrivial=found["sq2"],
        theta_nontrivial=found["theta"],
        triple_nontrivial=found["triple"],
        p1_nontrivial=found["p1"],
        condition_star=found["p1"] and moore3_only,
        psi_trivial=psi_ok,
    )


def case_key(flags: OperationFlags):
    """The data that selects a theorem case: the 2-local case, P1 and star."""
    return (flags.two_local_case(), flags.p1_nontrivial, flags.p1_nontrivial and flags.condition_star)


def same_case(a: OperationFlags, b: OperationFlags) -> bool:
    return case_key(a) == case_key(b)


def patterns_realizing(host: ElementaryComplex, op: str):
    """Admissible patterns on host (t a multiple of 4) with op nontrivial."""
    fn, fams = _EVALUATORS[op]
    fam = _family(host)
    if fam not in fams:
        return []
    from .wedgemap import admissible_elements

    out = []
    for e in admissible_elements(host, 8):
        p = pattern_of(host, e)
        if fn(p) in (True, "iso"):
            out.append(p)
    return out

