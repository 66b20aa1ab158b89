"""Maps from a sphere into a wedge, and self-equivalences of wedges acting on them.

An attaching vector S^m -> X_1 v ... v X_n is stored as one group element per
summand.  A self-map of the wedge is a square matrix whose (i, k) entry is a
formal sum of morphism chains X_k -> X_i; it acts by matrix multiplication.

>>> w = WedgeSpace.parse("S6vS7")
>>> v = AttachingVector.parse(w, "[0; 1*eta]")
>>> m = EquivalenceMatrix.elementary(w, 0, 1, MorphExpr.single(morph("eta", "S7", "S6")))
>>> act(m, v).format()
'[1*eta2; 1*eta]'
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from . import abelian, catalog
from .abelian import GroupElement
from .catalog import ElementaryComplex, MorphSymbol, match_complex, morph, pi
from .errors import Indeterminate, ParseError, UnknownComposite

__all__ = [
    "WedgeSpace",
    "AttachingVector",
    "MorphExpr",
    "EquivalenceMatrix",
    "AttachingForm",
    "act",
    "equivalent",
    "admissible_generators",
    "admissible_elements",
    "general_attaching_form",
    "sigma_v6",
    "TOP_DEGREE",
]

TOP_DEGREE = 8


@dataclass(frozen=True)
class WedgeSpace:
    summands: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        for x in self.summands:
            if x.bottom < 2:
                raise ValueError(f"{x} is not simply connected")

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __getitem__(self, i):
        return self.summands[i]

    def literal(self):
        return "v".join(x.literal() for x in self.summands) if self.summands else "*"

    def __str__(self):
        return self.literal()

    @classmethod
    def parse(cls, text):
        """Parse `S6vS7`, `S6 v S7` or a bracketed `[P7(2^2)]`; `*` is the empty wedge."""
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        body = body.replace(" ", "")
        if body in ("", "*"):
            return cls(())
        out, pos = [], 0
        while True:
            cx, pos = match_complex(body, pos)
            out.append(cx)
            if pos == len(body):
                break
            if body[pos] != "v":
                raise ParseError(f"expected 'v' between wedge summands in {text!r}", text, pos)
            pos += 1
        return cls(tuple(out))

    def without(self, indices):
        drop = set(indices)
        return WedgeSpace(tuple(x for i, x in enumerate(self.summands) if i not in drop))

    def homology(self):
        """Reduced homology as {degree: AbelianGroup}."""
        acc = {}
        for x in self.summands:
            for deg, g in catalog.homology(x):
                acc[deg] = acc.get(deg, abelian.AbelianGroup()) + g
        return acc


@dataclass(frozen=True)
class AttachingVector:
    wedge: WedgeSpace
    entries: tuple
    source_degree: int = TOP_DEGREE

    def __post_init__(self):
        if len(self.entries) != len(self.wedge):
            raise ValueError("one entry per wedge summand is required")
        fixed = tuple(
            self.table(i).reduce(e if isinstance(e, GroupElement) else GroupElement(e))
            for i, e in enumerate(self.entries)
        )
        object.__setattr__(self, "entries", fixed)

    def table(self, i):
        return pi(self.wedge[i], self.source_degree)

    @classmethod
    def zero(cls, wedge, degree=TOP_DEGREE):
        return cls(wedge, tuple(pi(x, degree).zero() for x in wedge), degree)

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def replace(self, i, element):
        entries = list(self.entries)
        entries[i] = element
        return AttachingVector(self.wedge, tuple(entries), self.source_degree)

    def support(self):
        return tuple(i for i, e in enumerate(self.entries) if not e.is_zero())

    def restrict(self, indices):
        """Sub-vector on the chosen summands (in the given order)."""
        idx = tuple(indices)
        return AttachingVector(
            WedgeSpace(tuple(self.wedge[i] for i in idx)), tuple(self.entries[i] for i in idx), self.source_degree
        )

    def key(self):
        return tuple(e.coefficients for e in self.entries)

    def format(self):
        return "[" + "; ".join(self.table(i).format_element(e) for i, e in enumerate(self.entries)) + "]"

    def __str__(self):
        return self.format()

    @classmethod
    def parse(cls, wedge, text, degree=TOP_DEGREE):
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ParseError("vector literal must be enclosed in [ ]", text, 0)
        slots = body[1:-1].split(";")
        if len(wedge) == 0 and body[1:-1].strip() == "":
            slots = []
        if len(slots) != len(wedge):
            raise ParseError(f"expected {len(wedge)} slot(s), got {len(slots)}", text, 0)
        entries = []
        offset = 1
        for i, slot in enumerate(slots):
            try:
                entries.append(pi(wedge[i], degree).parse_element(slot))
            except ParseError as exc:
                raise ParseError(str(exc), text, offset) from None
            offset += len(slot) + 1
        return cls(wedge, tuple(entries), degree)


# ---------------------------------------------------------------------------
# formal sums of morphism chains


@dataclass(frozen=True)
class MorphExpr:
    """Sum of coef * chain, chain being a tuple of MorphSymbol applied left to right.

    The empty chain is the identity (only meaningful between equal complexes).
    """

    terms: tuple = ()

    def __post_init__(self):
        acc = {}
        for coef, chain in self.terms:
            chain = tuple(chain)
            acc[chain] = acc.get(chain, 0) + int(coef)
        norm = tuple(sorted(((c, ch) for ch, c in acc.items() if c != 0), key=lambda t: (len(t[1]), t[1], t[0])))
        object.__setattr__(self, "terms", norm)

    @classmethod
    def identity(cls, coef=1):
        return cls(((coef, ()),))

    @classmethod
    def single(cls, f: MorphSymbol, coef=1):
        return cls(((coef, (f,)),))

    @classmethod
    def chain(cls, *fs, coef=1):
        return cls(((coef, tuple(fs)),))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        return MorphExpr(self.terms + other.terms)

    def __neg__(self):
        return MorphExpr(tuple((-c, ch) for c, ch in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k):
        return MorphExpr(tuple((k * c, ch) for c, ch in self.terms))

    def then(self, other):
        """other o self."""
        return MorphExpr(tuple((a * b, ca + cb) for a, ca in self.terms for b, cb in other.terms))

    def apply(self, e, degree, source: ElementaryComplex, target: ElementaryComplex):
        tgt = pi(target, degree)
        acc = tgt.zero()
        for coef, chain in self.terms:
            if not chain:
                if source != target:
                    raise ValueError(f"identity term between {source} and {target}")
                img = e
            else:
                img = catalog.apply_chain(chain, e, degree)
            acc = abelian.add(tgt.group, acc, abelian.scale(tgt.group, img, coef))
        return acc

    def homology_null(self):
        """True if every term factors through a map that is zero on homology."""
        return bool(self.terms) and all(any(f.tag in _HOMOLOGY_NULL for f in chain) for _, chain in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, ch in self.terms:
            name = " o ".join(str(f) for f in reversed(ch)) if ch else "id"
            parts.append(name if c == 1 else f"{c}*({name})")
        return " + ".join(parts)


# maps raising the cell dimension by at least one are invisible in homology
_HOMOLOGY_NULL = frozenset({"eta", "eta2", "nu", "etatilde", "ieta", "ietaq", "etabar", "q", "mu"})


@dataclass(frozen=True)
class EquivalenceMatrix:
    """Square matrix of MorphExpr; entry (i, k) maps summand k into summand i.

    `certificate` records the elementary factors the matrix was built from;
    each factor kind is a homology isomorphism by construction:
    'elementary' (identity plus one off-diagonal entry, unipotent on homology),
    'unit' (a diagonal sign), 'alpha' (identity plus a homology-null self-map
    that squares to zero).
    """

    wedge: WedgeSpace
    entries: tuple
    certificate: tuple = ()
    inverse_entries: tuple | None = field(default=None, compare=False)

    @classmethod
    def identity(cls, wedge):
        n = len(wedge)
        rows = tuple(tuple(MorphExpr.identity() if i == k else MorphExpr() for k in range(n)) for i in range(n))
        return cls(wedge, rows, (), rows)

    @classmethod
    def _with(cls, wedge, i, k, expr, kind):
        base = cls.identity(wedge)
        rows = [list(r) for r in base.entries]
        inv = [list(r) for r in base.entries]
        if kind == "elementary":
            rows[i][k] = expr
            inv[i][k] = -expr
        elif kind == "unit":
            rows[i][i] = expr
            inv[i][i] = expr
        else:
            rows[i][i] = MorphExpr.identity() + expr
            inv[i][i] = MorphExpr.identity() - expr
        return cls(wedge, tuple(map(tuple, rows)), ((kind, i, k, str(expr)),), tuple(map(tuple, inv)))

    @classmethod
    def elementary(cls, wedge, row, col, expr):
        """Identity plus `expr` (summand col -> summand row) in position (row, col)."""
        if row == col:
            raise ValueError("elementary moves are off-diagonal; use alpha() or unit()")
        return cls._with(wedge, row, col, expr, "elementary")

    @classmethod
    def unit(cls, wedge, index, sign=-1):
        if sign not in (1, -1):
            raise ValueError("diagonal units are +1 or -1")
        return cls._with(wedge, index, index, MorphExpr.identity(sign), "unit")

    @classmethod
    def alpha(cls, wedge, index, nilpotent: MorphExpr):
        """Identity plus a self-map f of one summand with f o f = 0 and f = 0 on homology."""
        if not nilpotent.homology_null():
            raise ValueError(f"{nilpotent} is not visibly zero on homology")
        return cls._with(wedge, index, index, nilpotent, "alpha")

    @property
    def size(self):
        return len(self.entries)

    def then(self, other):
        """other o self, as a matrix product other * self."""
        n = self.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = MorphExpr()
                for k in range(n):
                    if other.entries[i][k].is_zero() or self.entries[k][j].is_zero():
                        continue
                    acc = acc + self.entries[k][j].then(other.entries[i][k])
                row.append(acc)
            rows.append(tuple(row))
        inv = None
        if self.inverse_entries is not None and other.inverse_entries is not None:
            inv = EquivalenceMatrix(self.wedge, other.inverse_entries).then(
                EquivalenceMatrix(self.wedge, self.inverse_entries)
            ).entries
        return EquivalenceMatrix(self.wedge, tuple(rows), self.certificate + other.certificate, inv)

    def inverse(self):
        if self.inverse_entries is None:
            raise ValueError("no explicit inverse recorded")
        cert = tuple(reversed(self.certificate))
        return EquivalenceMatrix(self.wedge, self.inverse_entries, cert, self.entries)

    def certified(self):
        """Check that the matrix is a product of homology-isomorphism factors."""
        for kind, i, k, _ in self.certificate:
            if kind not in ("elementary", "unit", "alpha"):
                return False
        for i in range(self.size):
            for k in range(self.size):
                e = self.entries[i][k]
                for _, chain in e.terms:
                    if chain and (chain[0].source != self.wedge[k] or chain[-1].target != self.wedge[i]):
                        return False
        return True

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)


def act(m: EquivalenceMatrix, v: AttachingVector) -> AttachingVector:
    """The composite m o v, computed as a matrix-vector product."""
    if len(m.wedge) != len(v.wedge):
        raise ValueError("matrix and vector live on different wedges")
    out = []
    for i, target in enumerate(v.wedge):
        tgt = pi(target, v.source_degree)
        acc = tgt.zero()
        for k, source in enumerate(v.wedge):
            expr = m.entries[i][k]
            if expr.is_zero() or v.entries[k].is_zero():
                continue
            acc = abelian.add(tgt.group, acc, expr.apply(v.entries[k], v.source_degree, source, target))
        out.append(acc)
    return AttachingVector(v.wedge, tuple(out), v.source_degree)


def equivalent(v: AttachingVector, w: AttachingVector, moves, budget: int = 10_000) -> bool:
    """Breadth-first search for w from v under moves and their inverses.

    Moves whose composites are not tabulated for the current vector are skipped.
    Raises Indeterminate if more than `budget` states are visited.
    """
    if v.wedge != w.wedge or v.source_degree != w.source_degree:
        raise ValueError("vectors live on different wedges")
    pool = []
    for m in moves:
        pool.append(m)
        if m.inverse_entries is not None:
            pool.append(m.inverse())
    target = w.key()
    seen = {v.key()}
    queue = deque([v])
    while queue:
        cur = queue.popleft()
        if cur.key() == target:
            return True
        for m in pool:
            try:
                nxt = act(m, cur)
            except UnknownComposite:
                continue
            key = nxt.key()
            if key not in seen:
                if len(seen) >= budget:
                    raise Indeterminate(f"equivalence search exceeded {budget} states")
                seen.add(key)
                queue.append(nxt)
    return False


# ---------------------------------------------------------------------------
# admissible coefficient domains


def admissible_generators(host: ElementaryComplex, degree: int = TOP_DEGREE):
    """Generators of the admissible subgroup of pi_degree(host).

    Under the standing Psi hypothesis every nu-type coefficient is a multiple
    of 4; everything else ranges over the full group.
    Returns [(label, element, count)], count being the order of the element.
    """
    table = pi(host, degree)
    out = []
    for j, (token, order) in enumerate(zip(table.tokens, table.orders)):
        if order == 0:
            raise ValueError(f"pi_{degree}({host}) has a free summand; no finite domain")
        mult = 4 if token.endswith("nu") else 1
        e = [0] * len(table.tokens)
        e[j] = mult
        el = table.reduce(GroupElement(e))
        count = order // abelian.math.gcd(order, mult)
        if count > 1:
            label = token if mult == 1 else f"{mult}*{token}"
            out.append((label, el, count))
    return out


def admissible_elements(host: ElementaryComplex, degree: int = TOP_DEGREE):
    table = pi(host, degree)
    gens = admissible_generators(host, degree)
    seen = []
    for coefs in product(*(range(c) for _, _, c in gens)):
        acc = table.zero()
        for k, (_, el, _) in zip(coefs, gens):
            acc = abelian.add(table.group, acc, abelian.scale(table.group, el, k))
        if acc not in seen:
            seen.append(acc)
    return seen


@dataclass(frozen=True)
class AttachingForm:
    """A wedge plus, per summand, named coefficient domains [(label, element, count)]."""

    wedge: WedgeSpace
    domains: tuple
    degree: int = TOP_DEGREE

    def zero(self):
        return AttachingVector.zero(self.wedge, self.degree)

    def vectors(self):
        """Every vector of the form, in lexicographic coefficient order."""
        per = []
        for i, host in enumerate(self.wedge):
            per.append(admissible_elements(host, self.degree))
        for combo in product(*per):
            yield AttachingVector(self.wedge, tuple(combo), self.degree)

    def count(self):
        n = 1
        for host in self.wedge:
            n *= len(admissible_elements(host, self.degree))
        return n

    def contains(self, v: AttachingVector):
        return v.wedge == self.wedge and all(
            e in admissible_elements(host, self.degree) for host, e in zip(self.wedge, v.entries)
        )

    def describe(self):
        lines = []
        for i, (host, dom) in enumerate(zip(self.wedge, self.domains)):
            parts = [f"{label} in Z/{count}" for label, _, count in dom] or ["0"]
            lines.append(f"{i}: {host}: " + ", ".join(parts))
        return "\n".join(lines)


def sigma_v6(inv):
    """The wedge carrying the general attaching map, in its fixed summand order.

    Order: P6(3^r'), S5, Ceta7, S7, P7(2^s), P6(2^r), C7[r], C7{s}, C7[r]{s}.
    """
    sp = inv.split
    parts = [catalog.moore(3, r, 6) for r in sp.r3]
    parts += [catalog.sphere(5)] * inv.n_s5
    parts += [catalog.ceta(7)] * sp.k
    parts += [catalog.sphere(7)] * inv.n_s7
    parts += [catalog.moore(2, s, 7) for s in sp.s]
    parts += [catalog.moore(2, r, 6) for r in sp.r]
    parts += [catalog.cbar(r, 7) for r in sp.rbar]
    parts += [catalog.chat(s, 7) for s in sp.shat]
    parts += [catalog.ccheck(r, s, 7) for r, s in zip(sp.rcheck, sp.scheck)]
    return WedgeSpace(tuple(parts))


def general_attaching_form(inv) -> AttachingForm:
    """Template of the top-cell attaching map after the Psi-triviality reduction."""
    inv.validate()
    w = sigma_v6(inv)
    return AttachingForm(w, tuple(tuple(admissible_generators(x)) for x in w))


def parse_morph(text: str) -> MorphSymbol:
    """Parse `tag:SRC->TGT` or `tag(k):SRC->TGT`."""
    body = text.strip()
    try:
        head, arrow = body.split(":", 1)
        src, tgt = arrow.split("->")
    except ValueError:
        raise ParseError(f"expected tag:SOURCE->TARGET, got {text!r}", text, 0) from None
    k = 1
    if head.endswith(")") and "(" in head:
        head, karg = head[:-1].split("(", 1)
        k = int(karg)
    try:
        return morph(head.strip(), catalog.parse_complex(src), catalog.parse_complex(tgt), k)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), text, 0) from None
