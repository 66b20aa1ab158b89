"""Brute-force orbit computation on small wedges.

Every admissible attaching vector on a wedge is enumerated, the moves are
applied to all of them, and orbits are the connected components of the
resulting graph (each move is a bijection, so components are exactly the
orbits of the generated group).  The moves are built independently of
`reduce`: they come from the partial action tables of all generator chains
up to a fixed length, not from the rule pack.

Verdicts are sound for "same orbit".  "Different orbit" only means that no
composite of the generated moves identifies the two vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .catalog import pi
from .errors import Indeterminate, UnknownComposite, UnsupportedTable
from .search import DEFAULT_MAX_LENGTH, chain_actions, universe_for
from .wedgemap import (
    AttachingVector,
    EquivalenceMatrix,
    MorphExpr,
    WedgeSpace,
    act,
    admissible_elements,
)

__all__ = [
    "OrbitReport",
    "OracleConfig",
    "enumerate_vectors",
    "state_count",
    "generate_moves",
    "orbit_partition",
    "cross_check",
    "ACCEPTANCE_WEDGES",
    "DEFAULT_STATE_BUDGET",
]

DEFAULT_STATE_BUDGET = 1_000_000

# Family used by the acceptance run: <= 3 summands, exponents <= 2, bottoms >= 5.
ACCEPTANCE_WEDGES = (
    "S6vS7",
    "P7(2^2)",
    "P7(2^1)vS7",
    "P7(2^1)vP7(2^2)",
    "P6(2^2)vS7",
    "S5vS6vS7",
    "C7{s=1}vS5",
    "Ceta7vC7{s=1}",
    "C7{s=1}vC7{s=2}",
    "S5vP6(3^1)vP6(3^2)",
    "C7[r=1]vP6(2^2)vS6",
    "C7[r=1]{s=2}vP7(2^1)",
    "Ceta7vS5vP6(3^1)",
    "P6(2^1)vC7[r=2]vC7{s=1}",
)


@dataclass(frozen=True)
class OracleConfig:
    max_length: int = DEFAULT_MAX_LENGTH
    budget: int = DEFAULT_STATE_BUDGET
    admissible_only: bool = True


@dataclass
class OrbitReport:
    wedge: WedgeSpace
    vector_count: int
    orbit_count: int
    orbits: list  # (representative, size, members); representative = least member by key
    mismatches: list = field(default_factory=list)  # (vector, its canonical form, orbit's canonical form)
    collisions: list = field(default_factory=list)  # canonical forms shared by two orbits
    moves: int = 0

    @property
    def ok(self):
        return not self.mismatches and not self.collisions

    def format(self):
        lines = [
            f"wedge {self.wedge.literal()}",
            f"vectors {self.vector_count}",
            f"moves {self.moves}",
            f"orbits {self.orbit_count}",
        ]
        for rep, size, members in self.orbits:
            lines.append(f"  orbit {rep.format()} size {size}: " + ", ".join(m.format() for m in members))
        lines.append(f"mismatches {len(self.mismatches)}")
        for v, got, want in self.mismatches:
            lines.append(f"  {v.format()} -> {got} (orbit form {want})")
        lines.append(f"collisions {len(self.collisions)}")
        for form in self.collisions:
            lines.append(f"  {form}")
        return "\n".join(lines)


def enumerate_vectors(w: WedgeSpace, degree: int = 8, admissible_only: bool = False):
    """Yield every coefficient tuple once; optionally only admissible entries."""
    domains = []
    for x in w:
        table = pi(x, degree)
        if not table.group.is_finite:
            raise UnsupportedTable(f"pi_{degree}({x}) is infinite; enumeration needs finite groups")
        if admissible_only:
            domains.append(admissible_elements(x, degree))
        else:
            from .abelian import elements

            domains.append(list(elements(table.group)))
    for combo in product(*domains):
        yield AttachingVector(w, tuple(combo), degree)


def state_count(w: WedgeSpace, degree: int = 8, admissible_only: bool = False) -> int:
    """Number of vectors enumerate_vectors would yield, without building them."""
    n = 1
    for x in w:
        g = pi(x, degree).group
        if not g.is_finite:
            raise UnsupportedTable(f"pi_{degree}({x}) is infinite; enumeration needs finite groups")
        n *= len(admissible_elements(x, degree)) if admissible_only else g.size()
    return n


def generate_moves(w: WedgeSpace, degree: int = 8, max_length: int = DEFAULT_MAX_LENGTH, admissible_only=True):
    """Elementary moves on w.

    Off-diagonal: identity plus one chain between two summands, one matrix
    per distinct action of such chains.  Diagonal: identity plus a chain that
    is zero on homology, and the sign -1.  A chain whose action is tabulated
    on only part of the domain still yields a move; it is applied only where
    its composites are known.
    """
    u = universe_for(tuple(w), degree)
    dom = {}
    for x in set(w):
        if admissible_only:
            dom[x] = tuple(admissible_elements(x, degree))
        else:
            from .abelian import elements

            dom[x] = tuple(elements(pi(x, degree).group))
    moves = []
    for i, tgt in enumerate(w):
        moves.append(EquivalenceMatrix.unit(w, i, -1))
        for j, src in enumerate(w):
            null_only = i == j
            actions = dict(chain_actions(src, tgt, dom[src], u, max_length, null_only))
            if src == tgt and i != j:
                # the identity is pruned by the search (it revisits the start state)
                actions[tuple(e.coefficients for e in dom[src])] = ()
            for table, chain in sorted(actions.items(), key=lambda kv: repr(kv[0])):
                expr = MorphExpr.chain(*chain) if chain else MorphExpr.identity()
                if i == j:
                    m = EquivalenceMatrix._with(w, i, i, expr, "alpha")
                else:
                    m = EquivalenceMatrix.elementary(w, i, j, expr)
                moves.append(m)
    return moves


class _DSU:
    def __init__(self, keys):
        self.parent = {k: k for k in keys}

    def find(self, k):
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def orbit_partition(w: WedgeSpace, degree: int = 8, moves=None, config: OracleConfig = OracleConfig(),
                    reverse: bool = False) -> OrbitReport:  # fmt: skip
    """Orbits of the admissible vectors under the group generated by `moves`.

    `moves=None` uses generate_moves.  A move that carries an admissible
    vector outside the admissible set raises Indeterminate, since the
    partition would then not be of an invariant set.
    """
    count = state_count(w, degree, config.admissible_only)
    if count > config.budget:
        raise Indeterminate(f"{count} vectors exceed the state budget {config.budget}")
    vectors = list(enumerate_vectors(w, degree, config.admissible_only))
    if reverse:
        vectors.reverse()
    if moves is None:
        moves = generate_moves(w, degree, config.max_length, config.admissible_only)
    index = {v.key(): v for v in vectors}
    dsu = _DSU(list(index))
    for m in moves:
        for v in vectors:
            try:
                img = act(m, v)
            except UnknownComposite:
                continue
            k = img.key()
            if k not in index:
                raise Indeterminate(f"move leaves the enumerated set: {v.format()} -> {img.format()}")
            dsu.union(v.key(), k)
    groups = {}
    for k in index:
        groups.setdefault(dsu.find(k), []).append(index[k])
    orbits = []
    for members in groups.values():
        members.sort(key=lambda v: v.key())
        orbits.append((members[0], len(members), members))
    orbits.sort(key=lambda o: o[0].key())
    return OrbitReport(w, len(vectors), len(orbits), orbits, moves=len(moves))


def cross_check(w: WedgeSpace | str, degree: int = 8, moves=None, config: OracleConfig = OracleConfig()) -> OrbitReport:
    """Compare `reduce.canonicalize` with the oracle's orbits.

    A mismatch is a vector whose canonical form differs from that of its
    orbit's least member; a collision is a canonical form shared by two
    orbits.  Both lists are empty exactly when canonical forms separate orbits.
    """
    from .reduce import canonicalize

    if isinstance(w, str):
        w = WedgeSpace.parse(w)
    report = orbit_partition(w, degree, moves, config)
    seen = {}
    for rep, _, members in report.orbits:
        want = canonicalize(rep).format()
        for v in members[1:]:
            got = canonicalize(v).format()
            if got != want:
                report.mismatches.append((v, got, want))
        if want in seen:
            report.collisions.append(want)
        seen[want] = rep
    return report
