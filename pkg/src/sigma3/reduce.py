"""Canonical forms of top-cell attaching vectors.

Each summand's 2-primary part is a combination of a few typed atoms (eta,
etatilde_s, i eta^2, ...).  Atoms carry a rank key realizing the total
preorder on 2-primary generators: a lower key factors into every higher one,
so the lowest atom present eliminates the rest.  The 3-primary part is
handled the same way with the classes of alpha_1.

The engine applies, in order: plus rules inside one summand, the 2-primary
sweep (pivot = lowest key, then lowest index), the 3-primary sweep (carrier
chosen like the X-table of the integral theorem), and sign normalization.
Every move is an EquivalenceMatrix, so a trace can be replayed with `act`.

>>> from sigma3.wedgemap import WedgeSpace, AttachingVector
>>> w = WedgeSpace.parse("P7(2^2)vS7")
>>> canonicalize(AttachingVector.parse(w, "[1*etatilde + 1*i_eta2; 1*eta]")).format()
'[1*etatilde; 0]'
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import abelian, catalog
from .abelian import GroupElement
from .catalog import ElementaryComplex, MorphSymbol, pi
from .errors import FlagMismatch, Indeterminate, NotAdmissible, UnsupportedTable
from .search import find_witness, universe_for
from .wedgemap import AttachingVector, EquivalenceMatrix, MorphExpr, act, admissible_elements

__all__ = [
    "Atom",
    "two_atoms",
    "three_atoms",
    "PrecRule",
    "PlusRule",
    "TraceStep",
    "rule_pack",
    "localize",
    "merge_locals",
    "split_parts",
    "canonicalize",
    "is_canonical",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10_000


@dataclass(frozen=True)
class Atom:
    """A typed generator of the admissible p-primary part of pi_8(host)."""

    host: ElementaryComplex
    token: str
    key: tuple
    tier: int
    prime: int = 2

    @property
    def element(self):
        return pi(self.host, 8).lookup(self.token)

    def __str__(self):
        return f"{self.token}@{self.host}"


def two_atoms(host: ElementaryComplex):
    """2-primary atoms of pi_8(host), lowest key first."""
    k, out = host.kind, []
    if k == catalog.SPHERE:
        out = {5: [("eta3", (5,), 3)], 6: [("eta2", (3,), 2)], 7: [("eta", (1,), 1)]}.get(host.bottom, [])
    elif k == catalog.MOORE and host.p == 2 and host.bottom == 6:
        out = [("etatilde", (0, host.r), 1), ("i_eta2", (4, -host.r, 2), 2)]
    elif k == catalog.MOORE and host.p == 2 and host.bottom == 5:
        out = [("etatilde_eta", (2, host.r, 0), 2)]
        if host.r >= 3:
            out.append(("i_eta3", (6, -host.r), 3))
    elif k == catalog.CHANG_R and host.bottom == 5:
        out = [("ibar_P_etatilde_eta", (2, host.r, 2), 2)]
    elif k == catalog.CHANG_S and host.bottom == 5:
        out = [("ihat_eta2", (4, -host.s, 0), 2)]
    elif k == catalog.CHANG_RS and host.bottom == 5:
        out = [("icheck_P_etatilde_eta", (2, host.r, 1), 2), ("icheck_eta2", (4, -host.s, 1), 2)]
    return [Atom(host, tok, key, tier, 2) for tok, key, tier in out]


def three_atoms(host: ElementaryComplex):
    """3-primary atoms; key ('U',) for the mutually equivalent alpha_1 classes, ('M', -r) on P6(3^r)."""
    if host.bottom != 5:
        return []
    if host.kind == catalog.SPHERE:
        return [Atom(host, "alpha1", (0,), 0, 3)]
    if host.kind == catalog.CHANG_ETA:
        return [Atom(host, "i_eta_alpha1", (0,), 0, 3)]
    if host.kind == catalog.CHANG_S:
        return [Atom(host, "ihat_alpha1", (0,), 0, 3)]
    if host.kind == catalog.MOORE and host.p == 3:
        return [Atom(host, "i_alpha1", (1, -host.r), 0, 3)]
    return []


def _part(host, e, p, degree=8):
    table = pi(host, degree)
    return GroupElement(tuple(abelian.prime_part(o, c, p) for o, c in zip(table.orders, e)))


def split_parts(host, e, degree=8):
    """(2-primary part, 3-primary part) of an element; other primes must vanish."""
    two, three = _part(host, e, 2, degree), _part(host, e, 3, degree)
    table = pi(host, degree)
    if abelian.add(table.group, two, three) != table.reduce(e):
        raise UnsupportedTable(f"element {table.format_element(e)} of pi_{degree}({host}) has a >=5-primary part")
    return two, three


def localize(v: AttachingVector, p: int) -> AttachingVector:
    """Project every entry onto its p-primary component (p in {2, 3})."""
    if p not in (2, 3):
        raise UnsupportedTable(f"localization at {p} is not supported (only 2 and 3)")
    return AttachingVector(
        v.wedge, tuple(_part(x, e, p, v.source_degree) for x, e in zip(v.wedge, v.entries)), v.source_degree
    )


def merge_locals(v2: AttachingVector, v3: AttachingVector) -> AttachingVector:
    if v2.wedge != v3.wedge or v2.source_degree != v3.source_degree:
        raise ValueError("local vectors live on different wedges")
    if localize(v2, 2) != v2:
        raise ValueError("first argument has a non-2-primary part")
    if localize(v3, 3) != v3:
        raise ValueError("second argument has a non-3-primary part")
    out = []
    for i, x in enumerate(v2.wedge):
        g = pi(x, v2.source_degree).group
        out.append(abelian.add(g, v2.entries[i], v3.entries[i]))
    return AttachingVector(v2.wedge, tuple(out), v2.source_degree)


# ---------------------------------------------------------------------------
# rules


@dataclass(frozen=True)
class PrecRule:
    """alpha < beta on the strength of witness(alpha) = beta."""

    source: ElementaryComplex
    alpha: GroupElement
    target: ElementaryComplex
    beta: GroupElement
    witness: tuple
    tag: str

    def verify(self):
        return catalog.apply_chain(self.witness, self.alpha, 8) == pi(self.target, 8).reduce(self.beta)

    def __str__(self):
        a = pi(self.source, 8).format_element(self.alpha)
        b = pi(self.target, 8).format_element(self.beta)
        via = " o ".join(str(f) for f in reversed(self.witness)) or "id"
        return f"{a} on {self.source} < {b} on {self.target}  via {via}  [{self.tag}]"


@dataclass(frozen=True)
class PlusRule:
    """A self-equivalence of one summand turning kept + eliminated into kept."""

    host: ElementaryComplex
    eliminated: str
    kept: str
    equivalence: EquivalenceMatrix

    def verify(self):
        table = pi(self.host, 8)
        both = table.element([(1, self.kept), (1, self.eliminated)])
        w = self.equivalence.wedge
        out = act(self.equivalence, AttachingVector(w, (both,)))
        return out.entries[0] == table.lookup(self.kept)

    def __str__(self):
        return f"{self.kept} + {self.eliminated} -> {self.kept} on {self.host}  [reduce-plus]"


def _plus_chain(host):
    """The nilpotent part f of the plus-rule equivalence 1 + f, or None."""
    if host.kind == catalog.MOORE and host.p == 2:
        return (MorphSymbol("ietaq", host, host),)
    if host.kind == catalog.CHANG_RS:
        cr = catalog.cbar(host.r, host.top)
        p = catalog.moore(2, host.r + 1, host.top - 1)
        s6 = catalog.sphere(host.bottom + 1)
        return (
            MorphSymbol("qcheck_C", host, cr),
            MorphSymbol("qbar", cr, p),
            MorphSymbol("q", p, s6),
            MorphSymbol("icheck1", s6, host),
        )
    return None


def _plus_matrix(host):
    from .wedgemap import WedgeSpace

    return EquivalenceMatrix.alpha(WedgeSpace((host,)), 0, MorphExpr.chain(*_plus_chain(host)))


def _prec_tag(x, y):
    if x == y:
        return "prec-move"
    return "prec-index" if x.kind == y.kind else "prec-chain"


def _joint_item(x, y):
    if x.kind == catalog.SPHERE:
        return 1
    if y.kind != catalog.CHANG_S:
        return 2
    if x == y:
        return 3
    return 4 if x.s > y.s else 5


def _rule_hosts(bound):
    hosts = [catalog.sphere(5), catalog.sphere(6), catalog.sphere(7), catalog.ceta(7)]
    for e in range(1, bound + 1):
        hosts += [catalog.moore(2, e, 7), catalog.moore(2, e, 6), catalog.cbar(e, 7), catalog.chat(e, 7)]
        hosts += [catalog.moore(3, e, 6)]
    hosts += [catalog.ccheck(r, s, 7) for r in range(1, bound + 1) for s in range(1, bound + 1)]
    if bound < 3:
        hosts.append(catalog.moore(2, 3, 6))
    return hosts


def rule_pack(bound: int = 2):
    """Every instantiated rule with parameters r, s <= bound (plus P6(2^3) for i eta^3).

    Returns (prec_rules, plus_rules).  A PrecRule is emitted for each pair of
    atoms a < b (by key) for which a witness chain exists, for the alpha_1
    classes, and for the mixed elements of the joint 2/3 relations.
    """
    hosts = _rule_hosts(bound)
    u = universe_for(hosts)
    prec = []
    atoms2 = [a for h in hosts for a in two_atoms(h)]
    for a in atoms2:
        for b in atoms2:
            if a == b or a.key > b.key:
                continue
            w = find_witness(a.host, a.element, b.host, b.element, u)
            if w is not None:
                prec.append(PrecRule(a.host, a.element, b.host, b.element, w, _prec_tag(a.host, b.host)))
    atoms3 = [a for h in hosts for a in three_atoms(h)]
    for a in atoms3:
        for b in atoms3:
            if a == b or a.key > b.key:
                continue
            if a.key[0] == 1 and b.key[0] == 1 and a.host.r <= b.host.r:
                continue
            w = find_witness(a.host, a.element, b.host, b.element, u)
            if w is not None:
                prec.append(PrecRule(a.host, a.element, b.host, b.element, w, "prec-3primary"))
    for src, alpha, tgt, beta in _joint_pairs(bound):
        w = find_witness(src, alpha, tgt, beta, u)
        if w is not None:
            prec.append(PrecRule(src, alpha, tgt, beta, w, f"joint-23({_joint_item(src, tgt)})"))
    plus = []
    for h in hosts:
        atoms = two_atoms(h)
        if _plus_chain(h) is not None and len(atoms) == 2:
            plus.append(PlusRule(h, atoms[1].token, atoms[0].token, _plus_matrix(h)))
    return prec, plus


def _joint_pairs(bound):
    s5 = catalog.sphere(5)
    t5 = pi(s5, 8)
    mixed = t5.element([(1, "alpha1"), (1, "eta3")])
    out = [(s5, mixed, s5, t5.lookup("alpha1")), (s5, mixed, s5, t5.lookup("eta3"))]
    for s in range(1, bound + 1):
        c = catalog.chat(s, 7)
        tc = pi(c, 8)
        both = tc.element([(1, "ihat_alpha1"), (1, "ihat_eta2")])
        out.append((s5, mixed, c, tc.lookup("ihat_alpha1")))
        out += [(c, both, s5, t5.lookup("alpha1")), (c, both, s5, t5.lookup("eta3"))]
        out += [(c, both, c, tc.lookup("ihat_alpha1")), (c, both, c, tc.lookup("ihat_eta2"))]
        for s2 in range(1, bound + 1):
            if s2 == s:
                continue
            c2 = catalog.chat(s2, 7)
            t2 = pi(c2, 8)
            out.append((c, both, c2, t2.lookup("ihat_alpha1")))
            if s > s2:
                out.append((c, both, c2, t2.lookup("ihat_eta2")))
    return out


# ---------------------------------------------------------------------------
# the engine


@dataclass(frozen=True)
class TraceStep:
    tag: str
    detail: str
    move: EquivalenceMatrix | None = field(default=None, compare=False)

    def __str__(self):
        return f"{self.tag}: {self.detail}"


class _Engine:
    def __init__(self, v: AttachingVector, budget: int, trace):
        self.v = v
        self.w = v.wedge
        self.budget = budget
        self.steps = 0
        self.trace = trace
        self.u = universe_for(tuple(self.w))

    # bookkeeping -----------------------------------------------------------
    def _apply(self, m, tag, detail):
        self.steps += 1
        if self.steps > self.budget:
            raise Indeterminate(f"canonicalization exceeded {self.budget} rule applications")
        self.v = act(m, self.v)
        if self.trace is not None:
            self.trace.append(TraceStep(tag, detail, m))

    def add_row(self, row, col, chain, mult, tag, detail):
        expr = MorphExpr(((mult, tuple(chain)),))
        self._apply(EquivalenceMatrix.elementary(self.w, row, col, expr), tag, detail)

    def parts(self, i):
        return split_parts(self.w[i], self.v.entries[i])

    def table(self, i):
        return pi(self.w[i], 8)

    # 2-primary --------------------------------------------------------------
    def decompose(self, i):
        """('atom', a) | ('plus', low, high) | ('unit', a, u) | None for a zero 2-part."""
        two, _ = self.parts(i)
        if two.is_zero():
            return None
        g = self.table(i).group
        atoms = two_atoms(self.w[i])
        for a in atoms:
            if a.element == two:
                return ("atom", a)
        for lo in atoms:
            for hi in atoms:
                if lo.key < hi.key and abelian.add(g, lo.element, hi.element) == two:
                    return ("plus", lo, hi)
        for a in atoms:
            if abelian.scale(g, a.element, -1) == two:
                return ("unit", a, -1)
        raise Indeterminate(f"2-primary part of entry {i} is not a recognized combination of atoms")

    def plus_rules(self):
        for i in range(len(self.w)):
            d = self.decompose(i)
            if d is None:
                continue
            if d[0] == "plus":
                f = MorphExpr.chain(*_plus_chain(self.w[i]))
                m = EquivalenceMatrix.alpha(self.w, i, f)
                self._apply(m, "reduce-plus", f"{d[1].token} + {d[2].token} -> {d[1].token} on summand {i}")
                d = self.decompose(i)
            if d[0] == "unit":
                self._apply(EquivalenceMatrix.unit(self.w, i, -1), "unit", f"negate summand {i}")
                d = self.decompose(i)
            if d[0] != "atom":
                raise Indeterminate(f"plus rule failed to normalize summand {i}")

    def sweep_two(self):
        found = []
        for i in range(len(self.w)):
            d = self.decompose(i)
            if d is not None:
                found.append((d[1].key, i, d[1]))
        found.sort(key=lambda t: (t[0], t[1]))
        kept = []
        for _, i, a in found:
            for j, b in kept:
                wit = find_witness(b.host, b.element, a.host, a.element, self.u)
                if wit is None:
                    continue
                two_j, three_j = self.parts(j)
                tag = _prec_tag(b.host, a.host)
                if not three_j.is_zero():
                    tag = f"joint-23({_joint_item(b.host, a.host)})"
                self.add_row(i, j, wit, 3, tag, f"{b} eliminates {a}")
                break
            else:
                if kept:
                    if self.trace is not None:
                        self.trace.append(TraceStep("incomparable", f"{a} kept beside {kept[0][1]}"))
                kept.append((i, a))
        moved = []
        taken = {i for i, _ in kept}
        for i, a in kept:
            low = next((j for j in range(i) if self.w[j] == self.w[i] and j not in taken), None)
            if low is not None:
                self.add_row(low, i, (), 9, "move", f"carry {a.token} from summand {i} to {low}")
                self.add_row(i, low, (), 3, "move", f"clear summand {i}")
                taken.discard(i)
                taken.add(low)
                moved.append((low, a))
            else:
                moved.append((i, a))
        return moved

    # 3-primary ----------------------------------------------------------------
    def three_entries(self):
        out = []
        for i, x in enumerate(self.w):
            _, three = self.parts(i)
            if three.is_zero():
                continue
            atoms = three_atoms(x)
            g = self.table(i).group
            for a in atoms:
                for c in (1, 2):
                    if abelian.scale(g, a.element, c) == three:
                        out.append((i, a, c))
                        break
                else:
                    continue
                break
            else:
                raise Indeterminate(f"3-primary part of entry {i} is not a multiple of an alpha_1 class")
        return out

    def carrier(self, entries, pivots):
        if any(a.key == (0,) for _, a, _ in entries):
            kinds = [x.kind for x in self.w]
            for kind in (catalog.SPHERE, catalog.CHANG_ETA):
                for i, x in enumerate(self.w):
                    if x.kind == kind and three_atoms(x):
                        return i
            for i, a in pivots:
                if a.host.kind == catalog.CHANG_S:
                    return i
            return kinds.index(catalog.CHANG_S)
        rmax = max(a.host.r for _, a, _ in entries)
        return next(i for i, x in enumerate(self.w) if x.kind == catalog.MOORE and x.p == 3 and x.r == rmax)

    def sweep_three(self, pivots):
        entries = self.three_entries()
        if not entries:
            return None
        c = self.carrier(entries, pivots)
        catom = three_atoms(self.w[c])[0]
        g_c = self.table(c).group
        if not any(i == c for i, _, _ in entries):
            src = next(e for e in entries if e[1].key <= catom.key)
            i, a, _ = src
            wit = self._three_witness(a, catom)
            self.add_row(c, i, wit, 4, "prec-3primary", f"transfer {a} to carrier {catom}")
        for i, a, _ in self.three_entries():
            if i == c:
                continue
            wit = self._three_witness(catom, a)
            two_c, _ = self.parts(c)
            tag = "prec-3primary" if two_c.is_zero() else f"joint-23({_joint_item(self.w[c], self.w[i])})"
            for mult in (4, 8):
                _, t3 = split_parts(self.w[i], self.v.entries[i])
                img = catalog.apply_chain(wit, abelian.scale(g_c, self.v.entries[c], mult), 8)
                if _part(self.w[i], abelian.add(self.table(i).group, t3, img), 3).is_zero():
                    self.add_row(i, c, wit, mult, tag, f"{catom} eliminates {a}")
                    break
            else:
                raise Indeterminate(f"could not clear the 3-primary part of entry {i}")
        _, t3 = self.parts(c)
        if abelian.scale(g_c, catom.element, 2) == t3:
            self._apply(EquivalenceMatrix.unit(self.w, c, -1), "unit", f"normalize the alpha_1 sign on summand {c}")
        return c

    def _three_witness(self, a, b):
        g = pi(b.host, 8).group
        for unit in (1, 2):
            wit = find_witness(a.host, a.element, b.host, abelian.scale(g, b.element, unit), self.u)
            if wit is not None:
                return wit
        raise Indeterminate(f"no witness {a} < {b} within the search bound")


def _check_admissible(v: AttachingVector):
    for i, (x, e) in enumerate(zip(v.wedge, v.entries)):
        if e not in admissible_elements(x, v.source_degree):
            fmt = pi(x, v.source_degree).format_element(e)
            raise NotAdmissible(f"entry {i} ({fmt} on {x}) lies outside the admissible domain")


def canonicalize(v: AttachingVector, flags=None, trace=None, budget: int = DEFAULT_BUDGET) -> AttachingVector:
    """Drive an admissible vector to its canonical form.

    `trace`, if a list, receives one TraceStep per applied rule.  With `flags`,
    the case read off the canonical form must match them (FlagMismatch otherwise).
    """
    if v.source_degree != 8:
        raise UnsupportedTable("canonical forms are defined for degree-8 attaching vectors")
    _check_admissible(v)
    eng = _Engine(v, budget, trace)
    eng.plus_rules()
    pivots = eng.sweep_two()
    carrier = eng.sweep_three(pivots)
    out = eng.v
    if trace is not None and carrier is not None and out.wedge[carrier] == catalog.sphere(5):
        two, _ = split_parts(out.wedge[carrier], out.entries[carrier])
        if not two.is_zero():
            trace.append(TraceStep("4nu", f"eta3 + alpha1 = 4 nu on summand {carrier}"))
    if flags is not None:
        from .cohomops import flags_from_vector, same_case

        derived = flags_from_vector(out)
        if not same_case(derived, flags):
            raise FlagMismatch(f"vector realizes case {derived.describe()}, flags say {flags.describe()}")
    return out


def is_canonical(v: AttachingVector) -> bool:
    return canonicalize(v) == v
