"""Breadth-first search over chains of morphism generators.

The state graph has one node per (complex, homotopy class) in the top
degree; an edge is a tabulated morphism generator.  Because states are
group elements rather than chains, the graph is tiny and a shortest witness
f with f(a) = b is found quickly.  The same machinery yields the partial
action tables used as oracle moves.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from . import catalog
from .catalog import ElementaryComplex, MorphSymbol, pi
from .errors import UnknownComposite, UnsupportedTable

__all__ = ["Universe", "universe_for", "find_witness", "chain_actions", "DEFAULT_MAX_LENGTH"]

DEFAULT_MAX_LENGTH = 4
_MULTIPLIERS = (-1, 2, 3)

_TAGS = (
    "eta", "eta2", "nu", "i", "q", "etatilde", "ieta", "ietaq", "B", "etabar",
    "i_eta", "q_eta", "zetabar", "zetatilde", "ibar", "ibar_P", "ibar_eta", "qbar",
    "ihat", "ihat1", "qhat_eta", "xibar", "mu", "mu_ss", "lambda_ss", "theta_ss",
    "icheck", "icheck1", "icheck_P", "icheck_C", "qcheck_C", "qcheck_P",
)  # fmt: skip


@dataclass(frozen=True)
class Universe:
    """The complexes a chain may pass through, and the degree of the classes."""

    complexes: tuple
    degree: int = 8

    @property
    def edges(self):
        return _edges(self)


def universe_for(hosts, degree=8, bound=None):
    """Complexes with bottom 5..7 whose parameters stay within the hosts' range plus one."""
    two = [x.r for x in hosts if x.kind in (catalog.MOORE,) and x.p == 2]
    two += [x.r for x in hosts if x.kind in (catalog.CHANG_R, catalog.CHANG_RS)]
    two += [x.s for x in hosts if x.kind in (catalog.CHANG_S, catalog.CHANG_RS)]
    three = [x.r for x in hosts if x.kind == catalog.MOORE and x.p == 3]
    top2 = bound if bound is not None else max(two, default=1) + 1
    top3 = max(three, default=0)
    out = [catalog.sphere(5), catalog.sphere(6), catalog.sphere(7), catalog.ceta(7)]
    for e in range(1, top2 + 1):
        out += [catalog.moore(2, e, 6), catalog.moore(2, e, 7), catalog.cbar(e, 7), catalog.chat(e, 7)]
    out += [catalog.ccheck(r, s, 7) for r in range(1, top2 + 1) for s in range(1, top2 + 1)]
    out += [catalog.moore(3, e, 6) for e in range(1, top3 + 1)]
    for x in hosts:
        if x not in out:
            out.append(x)
    return Universe(tuple(out), degree)


@lru_cache(maxsize=None)
def _edges(u: Universe):
    """{source: (MorphSymbol, ...)} for every signature-valid tag in the universe."""
    out = {}
    for a in u.complexes:
        row = []
        for tag in _TAGS:
            for b in u.complexes:
                try:
                    ok = catalog._signature_ok(tag, a, b, 1)
                except ValueError:
                    ok = False
                if ok:
                    row.append(MorphSymbol(tag, a, b))
        row += [MorphSymbol("mult", a, a, k) for k in _MULTIPLIERS]
        out[a] = tuple(row)
    return out


def _step(f: MorphSymbol, e, degree):
    try:
        return catalog.apply(f, e, degree)
    except (UnknownComposite, UnsupportedTable):
        return None


@lru_cache(maxsize=None)
def find_witness(source, a, target, b, u: Universe, max_length=DEFAULT_MAX_LENGTH):
    """Shortest chain f (tuple, applied left to right) with f(a) = b, or None.

    The empty chain is returned when source == target and a == b.
    """
    start = (source, a.coefficients)
    goal = (target, b.coefficients)
    if start == goal:
        return ()
    prev = {start: None}
    queue = deque([(start, 0)])
    edges = u.edges
    while queue:
        (x, coefs), depth = queue.popleft()
        if depth == max_length:
            continue
        e = catalog.GroupElement(coefs)
        for f in edges.get(x, ()):
            img = _step(f, e, u.degree)
            if img is None:
                continue
            state = (f.target, img.coefficients)
            if state in prev:
                continue
            prev[state] = ((x, coefs), f)
            if state == goal:
                chain = []
                cur = state
                while prev[cur] is not None:
                    cur, g = prev[cur]
                    chain.append(g)
                return tuple(reversed(chain))
            queue.append((state, depth + 1))
    return None


@lru_cache(maxsize=None)
def chain_actions(source, target, elements, u: Universe, max_length=DEFAULT_MAX_LENGTH, null_only=False):
    """Distinct partial action tables of chains source -> target of length 1..max_length.

    `elements` is a tuple of GroupElements of pi(source); a table is a tuple of
    images (None where a composite is not tabulated).  With `null_only`, only
    chains containing a homology-null generator are kept (used for self-maps).
    Returns {table: chain} keeping the first (shortest) chain per table.
    """
    from .wedgemap import _HOMOLOGY_NULL

    edges = u.edges
    start = (source, tuple(e.coefficients for e in elements), False)
    seen = {start}
    frontier = [(start, ())]
    found = {}
    for _ in range(max_length):
        nxt = []
        for (x, imgs, null), chain in frontier:
            for f in edges.get(x, ()):
                out = []
                for c in imgs:
                    if c is None:
                        out.append(None)
                        continue
                    img = _step(f, catalog.GroupElement(c), u.degree)
                    out.append(None if img is None else img.coefficients)
                if all(c is None for c in out):
                    continue
                is_null = null or f.tag in _HOMOLOGY_NULL
                state = (f.target, tuple(out), is_null)
                if state in seen:
                    continue
                seen.add(state)
                new_chain = chain + (f,)
                nxt.append((state, new_chain))
                if f.target == target and (is_null or not null_only):
                    found.setdefault(tuple(out), new_chain)
        frontier = nxt
    return found
