"""Elementary complexes, their homotopy-group tables and the composition table.

An elementary complex is a sphere, a Moore space or one of the four Chang
families.  For each (complex, degree) inside the tabulated range `pi` returns
an ordered list of cyclic summands with named generators.  `apply` evaluates a
morphism generator on an element by post-composition; the table of known
composites is closed-world, so anything not listed raises UnknownComposite.

ASCII grammar (k is the top dimension)::

    S<k>  P<k>(<p>^<r>)  Ceta<k>  C<k>[r=<r>]  C<k>{s=<s>}  C<k>[r=<r>]{s=<s>}

>>> str(pi(parse_complex("Ceta7"), 8))
'Z/12 <i_eta nu>'
>>> str(pi(parse_complex("P5(2^1)"), 7))
'Z/4 <i nu4> + Z/2 <etatilde eta>'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from . import abelian
from .abelian import AbelianGroup, GroupElement
from .errors import ParseError, UnknownComposite, UnsupportedTable

__all__ = [
    "SPHERE",
    "MOORE",
    "CHANG_ETA",
    "CHANG_R",
    "CHANG_S",
    "CHANG_RS",
    "ElementaryComplex",
    "GenSymbol",
    "HomotopyGroupTable",
    "MorphSymbol",
    "sphere",
    "moore",
    "ceta",
    "cbar",
    "chat",
    "ccheck",
    "parse_complex",
    "pi",
    "apply",
    "apply_chain",
    "compose",
    "homology",
    "chain_complex",
    "suspend",
    "suspension_divisibility",
    "morph",
]

SPHERE = "Sphere"
MOORE = "Moore"
CHANG_ETA = "ChangEta"
CHANG_R = "ChangR"
CHANG_S = "ChangS"
CHANG_RS = "ChangRS"
CHANG_KINDS = (CHANG_ETA, CHANG_R, CHANG_S, CHANG_RS)


@dataclass(frozen=True, order=True)
class ElementaryComplex:
    """One indecomposable wedge summand.

    `bottom` is the dimension of the bottom cell: S^k has bottom k, P^k(p^r)
    has bottom k-1 and every Chang complex with top dimension n+2 has bottom n.
    """

    kind: str
    bottom: int
    p: int = 0
    r: int = 0
    s: int = 0

    def __post_init__(self):
        if self.kind == SPHERE:
            if self.bottom < 1:
                raise ValueError("sphere dimension must be >= 1")
        elif self.kind == MOORE:
            if self.p < 2 or self.r < 1 or self.bottom < 1:
                raise ValueError(f"bad Moore parameters p={self.p} r={self.r}")
        elif self.kind in CHANG_KINDS:
            if self.bottom < 3:
                raise ValueError("Chang complexes need bottom >= 3")
            need_r = self.kind in (CHANG_R, CHANG_RS)
            need_s = self.kind in (CHANG_S, CHANG_RS)
            if need_r != (self.r >= 1) or need_s != (self.s >= 1):
                raise ValueError(f"bad parameters for {self.kind}: r={self.r} s={self.s}")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def top(self):
        if self.kind == SPHERE:
            return self.bottom
        if self.kind == MOORE:
            return self.bottom + 1
        return self.bottom + 2

    @property
    def is_chang(self):
        return self.kind in CHANG_KINDS

    def literal(self):
        k = self.top
        if self.kind == SPHERE:
            return f"S{k}"
        if self.kind == MOORE:
            return f"P{k}({self.p}^{self.r})"
        if self.kind == CHANG_ETA:
            return f"Ceta{k}"
        if self.kind == CHANG_R:
            return f"C{k}[r={self.r}]"
        if self.kind == CHANG_S:
            return f"C{k}{{s={self.s}}}"
        return f"C{k}[r={self.r}]{{s={self.s}}}"

    def __str__(self):
        return self.literal()

    def suspend(self, times=1):
        return ElementaryComplex(self.kind, self.bottom + times, self.p, self.r, self.s)

    def cells(self):
        """Cell dimensions (with multiplicity) of the minimal CW structure."""
        n = self.bottom
        return {
            SPHERE: (n,),
            MOORE: (n, n + 1),
            CHANG_ETA: (n, n + 2),
            CHANG_R: (n, n + 1, n + 2),
            CHANG_S: (n, n + 1, n + 2),
            CHANG_RS: (n, n + 1, n + 1, n + 2),
        }[self.kind]


def sphere(k):
    return ElementaryComplex(SPHERE, k)


def moore(p, r, top):
    return ElementaryComplex(MOORE, top - 1, p=p, r=r)


def ceta(top):
    return ElementaryComplex(CHANG_ETA, top - 2)


def cbar(r, top):
    return ElementaryComplex(CHANG_R, top - 2, r=r)


def chat(s, top):
    return ElementaryComplex(CHANG_S, top - 2, s=s)


def ccheck(r, s, top):
    return ElementaryComplex(CHANG_RS, top - 2, r=r, s=s)


def suspend(host: ElementaryComplex) -> ElementaryComplex:
    return host.suspend()


_COMPLEX_RE = re.compile(
    r"S(?P<sk>\d+)"
    r"|P(?P<pk>\d+)\((?P<p>\d+)\^(?P<pr>\d+)\)"
    r"|Ceta(?P<ek>\d+)"
    r"|C(?P<ck>\d+)(?:\[r=(?P<cr>\d+)\])?(?:\{s=(?P<cs>\d+)\})?"
)


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def match_complex(text, pos=0):
    """Match one complex literal at `pos`; return (complex, end)."""
    m = _COMPLEX_RE.match(text, pos)
    if not m or m.end() == pos:
        raise ParseError(f"expected a complex literal in {text!r}", text, pos)
    g = m.groupdict()
    try:
        if g["sk"] is not None:
            cx = sphere(int(g["sk"]))
        elif g["pk"] is not None:
            p = int(g["p"])
            if not _is_prime(p):
                raise ParseError(f"{p} is not prime", text, m.start("p"))
            cx = moore(p, int(g["pr"]), int(g["pk"]))
        elif g["ek"] is not None:
            cx = ceta(int(g["ek"]))
        else:
            k, r, s = int(g["ck"]), g["cr"], g["cs"]
            if r is None and s is None:
                raise ParseError("Chang literal needs [r=..] and/or {s=..}", text, m.end())
            if r is not None and s is not None:
                cx = ccheck(int(r), int(s), k)
            elif r is not None:
                cx = cbar(int(r), k)
            else:
                cx = chat(int(s), k)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), text, pos) from None
    return cx, m.end()


def parse_complex(text: str) -> ElementaryComplex:
    text = text.strip()
    cx, end = match_complex(text)
    if end != len(text):
        raise ParseError(f"trailing characters in complex literal {text!r}", text, end)
    return cx


# ---------------------------------------------------------------------------
# homotopy tables


@dataclass(frozen=True)
class GenSymbol:
    """A named generator of pi_degree(host)."""

    tag: str
    host: ElementaryComplex
    degree: int

    @property
    def token(self):
        return self.tag.replace(" ", "_")

    def __str__(self):
        return self.tag


def _loose(token):
    # `i6eta2` and `i_eta2` both reduce to `ieta2`
    t = token.replace("_", "")
    return re.sub(r"^(i(?:bar|hat|check)?)\d+", r"\1", t)


@dataclass(frozen=True)
class HomotopyGroupTable:
    host: ElementaryComplex
    degree: int
    group: AbelianGroup
    generators: tuple
    aliases: tuple = ()  # (token, coefficient tuple)

    @property
    def tokens(self):
        return tuple(g.token for g in self.generators)

    @property
    def orders(self):
        return self.group.orders

    def zero(self):
        return abelian.zero(self.group)

    def index(self, token):
        return self.tokens.index(token)

    def alias_map(self):
        return dict(self.aliases)

    def lookup(self, token):
        """Element named by a generator or alias token (loose spellings allowed)."""
        if token in self.tokens:
            e = [0] * len(self.generators)
            e[self.tokens.index(token)] = 1
            return GroupElement(e)
        amap = self.alias_map()
        if token in amap:
            return abelian.reduce(self.group, GroupElement(amap[token]))
        loose = _loose(token)
        for t in self.tokens:
            if _loose(t) == loose:
                return self.lookup(t)
        for t in amap:
            if _loose(t) == loose:
                return self.lookup(t)
        raise KeyError(token)

    def element(self, terms):
        """Sum of coef * token over an iterable of (coef, token) pairs."""
        acc = self.zero()
        for coef, token in terms:
            acc = abelian.add(self.group, acc, abelian.scale(self.group, self.lookup(token), coef))
        return acc

    def reduce(self, e):
        return abelian.reduce(self.group, e)

    def __str__(self):
        if not self.generators:
            return "0"
        return " + ".join(f"{abelian.CyclicSummand(o)} <{g.tag}>" for o, g in zip(self.orders, self.generators))

    # printing of elements -------------------------------------------------

    def _alias_terms(self, j, c):
        """Express c * gen_j through single-coordinate aliases, prime by prime."""
        order = self.orders[j]
        if order == 0:
            return None
        singles = []
        for tok, vec in self.aliases:
            nz = [i for i, x in enumerate(vec) if x % (self.orders[i] or 1 << 62)]
            if nz == [j] and vec[j] % order != 1:
                singles.append((tok, vec[j] % order))
        if not singles:
            return None
        terms = []
        for p in sorted(abelian.primary_invariants(AbelianGroup.of(order))[1]):
            prime = min(d for d in range(2, p + 1) if p % d == 0)
            part = abelian.prime_part(order, c, prime)
            if part == 0:
                continue
            hit = None
            for tok, val in singles:
                if val and abelian.prime_part(order, val, prime) == val:
                    for k in range(1, order):
                        if k * val % order == part:
                            hit = (k, tok)
                            break
                if hit:
                    break
            if hit is None:
                return None
            terms.append(hit)
        return terms

    @lru_cache(maxsize=1 << 16)
    def format_element(self, e):
        e = self.reduce(e)
        terms = []
        for j, c in enumerate(e):
            if c == 0:
                continue
            alias_terms = self._alias_terms(j, c)
            if alias_terms:
                terms.extend(f"{k}*{tok}" for k, tok in alias_terms)
            else:
                terms.append(f"{c}*{self.tokens[j]}")
        return " + ".join(terms) if terms else "0"

    _TERM = re.compile(r"\s*(?:(-?\d+)\s*\*\s*)?([A-Za-z][A-Za-z0-9_']*)\s*$")

    def parse_element(self, text):
        text = text.strip()
        if text in ("", "0"):
            return self.zero()
        terms = []
        pos = 0
        for chunk in text.split("+"):
            m = self._TERM.match(chunk)
            if not m:
                raise ParseError(f"bad term {chunk.strip()!r}", text, pos)
            coef = int(m.group(1)) if m.group(1) is not None else 1
            token = m.group(2)
            try:
                self.lookup(token)
            except KeyError:
                raise ParseError(
                    f"unknown generator {token!r} for {self.host} in degree {self.degree}; "
                    f"known: {', '.join(self.tokens + tuple(self.alias_map()))}",
                    text,
                    pos,
                ) from None
            terms.append((coef, token))
            pos += len(chunk) + 1
        return self.element(terms)


def _sphere_rows(m, o):
    if o == 0:
        return [(0, "id")], {}
    if m < 3:
        return None
    if o == 1:
        return [(2, "eta")], {}
    if o == 2:
        return [(2, "eta2")], {}
    if o == 3:
        if m >= 5:
            # alpha1 = 16 nu spans the 3-primary part; 4 nu = eta3 + alpha1
            return [(24, "nu")], {"eta3": (12,), "alpha1": (16,), "Snu'": (2,)}
        if m == 4:
            return [(0, "nu4"), (12, "Snu'")], {"eta3": (0, 6)}
        return [(12, "nu'")], {"eta3": (6,)}
    return None


def _moore_rows(n, p, r, o):
    if n < 3:
        return None
    if o == 0:
        return [(p**r, "i")], {}
    if o == 1:
        return ([(2, "i eta")], {}) if p == 2 else ([], {})
    if o == 2:
        if p != 2:
            return [], {}
        if r == 1:
            return [(4, "etatilde")], {"i eta2": (2,)}
        return [(2, "i eta2"), (2, "etatilde")], {}
    if o == 3:
        if n == 4:
            if p == 2:
                rows = [(2 ** (r + 1), "i nu4"), (2, "etatilde eta"), (2 ** abelian.min_exp(r - 1, 2), "i Snu'")]
                return [row for row in rows if row[0] != 1], {}
            if p == 3:
                return [(3**r, "i nu4"), (3, "i Snu'")], {}
            return [(p**r, "i nu4")], {}
        if n >= 5:
            if p == 2:
                order = 2 ** abelian.min_exp(r, 3)
                return [(order, "i nu"), (2, "etatilde eta")], {"i eta3": (12 % order, 0)}
            if p == 3:
                return [(3, "i alpha1")], {"i nu": (1,)}
            return [], {}
    return None


_CHANG_BASE = {CHANG_ETA: "i_eta", CHANG_R: "ibar", CHANG_S: "ihat", CHANG_RS: "icheck"}


def _chang_rows(kind, n, r, s, o):
    base = _CHANG_BASE[kind]
    if o == 0:
        order = 2**r if kind in (CHANG_R, CHANG_RS) else 0
        return [(order, base)], {}
    if o != 3:
        return None
    if n == 4:
        if kind == CHANG_ETA:
            return [(0, "i_eta nu4"), (6, "i_eta Snu'")], {}
        if kind == CHANG_R:
            rows = [(2 ** (r + 1), "ibar nu4"), (1 if r == 1 else 2, "ibar Snu'"), (2, "ibar_P etatilde eta")]
        elif kind == CHANG_S:
            rows = [(2, "ihat eta2"), (0, "ihat nu4"), (6, "ihat Snu'")]
        else:
            rows = [
                (2, "icheck eta2"),
                (2 ** (r + 1), "icheck nu4"),
                (1 if r == 1 else 2, "icheck Snu'"),
                (2, "icheck_P etatilde eta"),
            ]
        return [row for row in rows if row[0] != 1], {}
    if n >= 5:
        if kind == CHANG_ETA:
            return [(12, "i_eta nu")], {"i_eta alpha1": (4,), "i_eta eta3": (0,)}
        m = 2 ** abelian.min_exp(r, 2) if r else 0
        if kind == CHANG_R:
            return [(m, "ibar nu"), (2, "ibar_P etatilde eta")], {}
        if kind == CHANG_S:
            return [(2, "ihat eta2"), (12, "ihat nu")], {"ihat alpha1": (0, 4)}
        return [(2, "icheck eta2"), (m, "icheck nu"), (2, "icheck_P etatilde eta")], {}
    return None


@lru_cache(maxsize=None)
def pi(host: ElementaryComplex, degree: int) -> HomotopyGroupTable:
    """The homotopy group pi_degree(host) with named generators."""
    o = degree - host.bottom
    if o < 0:
        rows = ([], {})
    elif host.kind == SPHERE:
        rows = _sphere_rows(host.bottom, o)
    elif host.kind == MOORE:
        rows = _moore_rows(host.bottom, host.p, host.r, o)
    else:
        rows = _chang_rows(host.kind, host.bottom, host.r, host.s, o)
    if rows is None:
        raise UnsupportedTable(f"pi_{degree}({host}) is not tabulated")
    gens, aliases = rows
    group = AbelianGroup.of(*(order for order, _ in gens))
    symbols = tuple(GenSymbol(tag, host, degree) for _, tag in gens)
    alias_items = tuple((tag.replace(" ", "_"), tuple(vec)) for tag, vec in aliases.items())
    return HomotopyGroupTable(host, degree, group, symbols, alias_items)


# ---------------------------------------------------------------------------
# morphisms and the composition table


@dataclass(frozen=True, order=True)
class MorphSymbol:
    """A morphism generator between elementary complexes.

    `k` is only used by the integer-multiple tag `mult`.
    """

    tag: str
    source: ElementaryComplex
    target: ElementaryComplex
    k: int = 1

    def __str__(self):
        name = _DISPLAY.get(self.tag, self.tag)
        if self.tag == "mult":
            name = f"{self.k}"
        elif self.tag == "B":
            name = f"B(chi^{self.source.r}_{self.target.r})"
        elif self.tag in ("qbar",):
            name = f"qbar^{self.source.r}_{self.target.r}"
        elif self.tag in ("xibar",):
            name = f"xibar^{self.source.r}_{self.target.s}"
        elif self.tag in ("mu_ss", "lambda_ss", "theta_ss"):
            name = f"{self.tag[:-3]}^{self.source.s}_{self.target.s}"
        return f"{name}:{self.source}->{self.target}"


_DISPLAY = {
    "eta": "eta",
    "eta2": "eta2",
    "nu": "nu",
    "i": "i",
    "q": "q",
    "etatilde": "etatilde",
    "ieta": "i eta",
    "ietaq": "i eta q",
    "etabar": "etatilde^s",
    "i_eta": "i_eta",
    "q_eta": "q_eta",
    "zetabar": "zetabar",
    "zetatilde": "zetatilde",
    "ibar": "ibar",
    "ibar_P": "ibar_P",
    "ibar_eta": "ibar_eta",
    "ihat": "ihat_n",
    "ihat1": "ihat_n+1",
    "qhat_eta": "qhat_eta",
    "mu": "mu^s",
    "icheck": "icheck_n",
    "icheck1": "icheck_n+1",
    "icheck_P": "icheck_P",
    "icheck_C": "icheck_C",
    "qcheck_C": "qcheck_C",
    "qcheck_P": "qcheck_P",
}


def _need(cond, tag, src, tgt):
    if not cond:
        raise ValueError(f"morphism {tag} cannot go {src} -> {tgt}")


def _signature_ok(tag, a, b, k):
    """Validate the (source, target) signature of a morphism tag."""
    S, P = SPHERE, MOORE
    n = a.bottom
    checks = {
        "mult": a == b,
        "eta": a.kind == S and b.kind == S and a.bottom == b.bottom + 1,
        "eta2": a.kind == S and b.kind == S and a.bottom == b.bottom + 2,
        "nu": a.kind == S and b.kind == S and a.bottom == b.bottom + 3,
        "i": a.kind == S and b.kind == P and b.bottom == n,
        "q": a.kind == P and b.kind == S and b.bottom == n + 1,
        "etatilde": a.kind == S and b.kind == P and b.p == 2 and a.bottom == b.bottom + 2,
        "ieta": a.kind == S and b.kind == P and b.p == 2 and a.bottom == b.bottom + 1,
        "ietaq": a.kind == P and b.kind == P and a.p == b.p == 2 and a.bottom == b.bottom,
        "B": a.kind == P and b.kind == P and a.p == b.p and a.bottom == b.bottom,
        "etabar": a.kind == P and a.p == 2 and b.kind == S and b.bottom == n - 1,
        "i_eta": a.kind == S and b.kind == CHANG_ETA and b.bottom == n,
        "q_eta": a.kind == CHANG_ETA and b.kind == S and b.bottom == n + 2,
        "zetabar": a.kind == CHANG_ETA and b.kind == S and b.bottom == n,
        "zetatilde": a.kind == S and b.kind == CHANG_ETA and a.bottom == b.bottom + 2,
        "ibar": a.kind == S and b.kind == CHANG_R and b.bottom == n,
        "ibar_P": a.kind == P and a.p == 2 and b.kind == CHANG_R and b.bottom == n and a.r == b.r,
        "ibar_eta": a.kind == CHANG_ETA and b.kind == CHANG_R and b.bottom == n,
        "qbar": a.kind == CHANG_R and b.kind == P and b.p == 2 and b.bottom == n and b.r > a.r,
        "ihat": a.kind == S and b.kind == CHANG_S and b.bottom == n,
        "ihat1": a.kind == S and b.kind == CHANG_S and b.bottom == n - 1,
        "qhat_eta": a.kind == CHANG_S and b.kind == CHANG_ETA and b.bottom == n,
        "xibar": a.kind == P and a.p == 2 and b.kind == CHANG_S and b.bottom == n - 1 and a.r > b.s,
        "mu": a.kind == CHANG_S and b.kind == S and b.bottom == n,
        "mu_ss": a.kind == CHANG_S and b.kind == CHANG_S and b.bottom == n and a.s > b.s,
        "lambda_ss": a.kind == CHANG_S and b.kind == CHANG_S and b.bottom == n and a.s > b.s,
        "theta_ss": a.kind == CHANG_S and b.kind == CHANG_S and b.bottom == n and a.s < b.s,
        "icheck": a.kind == S and b.kind == CHANG_RS and b.bottom == n,
        "icheck1": a.kind == S and b.kind == CHANG_RS and b.bottom == n - 1,
        "icheck_P": a.kind == P and a.p == 2 and b.kind == CHANG_RS and b.bottom == n and a.r == b.r,
        "icheck_C": a.kind == CHANG_S and b.kind == CHANG_RS and b.bottom == n and a.s == b.s,
        "qcheck_C": a.kind == CHANG_RS and b.kind == CHANG_R and b.bottom == n and a.r == b.r,
        "qcheck_P": a.kind == CHANG_RS and b.kind == P and b.p == 2 and b.bottom == n + 1 and b.r == a.s,
    }
    if tag not in checks:
        raise ValueError(f"unknown morphism tag {tag!r}")
    return checks[tag]


def morph(tag, source, target, k=1) -> MorphSymbol:
    """Build a MorphSymbol after checking its signature."""
    if isinstance(source, str):
        source = parse_complex(source)
    if isinstance(target, str):
        target = parse_complex(target)
    _need(_signature_ok(tag, source, target, k), tag, source, target)
    return MorphSymbol(tag, source, target, k)


# Each action returns {source token: [(coef, target token), ...]} for the
# generators (or aliases) whose composite is known in the given degree.
_ACTIONS = {}


def _action(tag):
    def deco(fn):
        _ACTIONS[tag] = fn
        return fn

    return deco


def _off(f, degree):
    return degree - f.source.bottom


@_action("eta")
def _act_eta(f, d):
    o = _off(f, d)
    return {0: {"id": [(1, "eta")]}, 1: {"eta": [(1, "eta2")]}, 2: {"eta2": [(1, "eta3")]}}.get(o, {})


@_action("eta2")
def _act_eta2(f, d):
    o = _off(f, d)
    return {0: {"id": [(1, "eta2")]}, 1: {"eta": [(1, "eta3")]}}.get(o, {})


@_action("nu")
def _act_nu(f, d):
    return {"id": [(1, "nu")]} if _off(f, d) == 0 else {}


@_action("i")
def _act_i(f, d):
    o, two = _off(f, d), f.target.p == 2
    if o == 0:
        return {"id": [(1, "i")]}
    if o == 1:
        return {"eta": [(1, "i eta")] if two else []}
    if o == 2:
        return {"eta2": [(1, "i eta2")] if two else []}
    if o == 3:
        if two:
            return {"nu": [(1, "i nu")], "eta3": [(1, "i eta3")]}
        if f.target.p == 3:
            return {"nu": [(1, "i nu")], "alpha1": [(1, "i alpha1")]}
        return {"nu": []}
    return {}


@_action("q")
def _act_q(f, d):
    o = _off(f, d)
    tgt = {
        0: {"i": []},
        1: {"i eta": []},
        2: {"etatilde": [(1, "eta")], "i eta2": []},
        3: {"i nu": [], "etatilde eta": [(1, "eta2")], "i alpha1": []},
    }
    return tgt.get(o, {})


@_action("etatilde")
def _act_etatilde(f, d):
    o = _off(f, d)
    return {0: {"id": [(1, "etatilde")]}, 1: {"eta": [(1, "etatilde eta")]}}.get(o, {})


@_action("ieta")
def _act_ieta(f, d):
    o = _off(f, d)
    return {0: {"id": [(1, "i eta")]}, 1: {"eta": [(1, "i eta2")]}, 2: {"eta2": [(1, "i eta3")]}}.get(o, {})


@_action("ietaq")
def _act_ietaq(f, d):
    o = _off(f, d)
    tgt = {
        0: {"i": []},
        1: {"i eta": []},
        2: {"etatilde": [(1, "i eta2")], "i eta2": []},
        3: {"i nu": [], "etatilde eta": [(1, "i eta3")]},
    }
    return tgt.get(o, {})


@_action("B")
def _act_B(f, d):
    o, r, s, p = _off(f, d), f.source.r, f.target.r, f.source.p
    factor = 1 if r >= s else p ** (s - r)
    out = {}
    if o == 0:
        out["i"] = [(factor, "i")]
    elif o == 1 and p == 2:
        out["i eta"] = [(factor, "i eta")]
    elif o == 2 and p == 2:
        out["i eta2"] = [(factor, "i eta2")]
        if s >= r:
            out["etatilde"] = [(1, "etatilde")]
    elif o == 3:
        if p == 2:
            out["i nu"] = [(factor, "i nu")]
            if s >= r:
                out["etatilde eta"] = [(1, "etatilde eta")]
        elif p == 3:
            out["i alpha1"] = [(factor, "i alpha1")]
    return out


@_action("etabar")
def _act_etabar(f, d):
    # the extension etatilde^s of eta over P^{n+2}(2^s), restricting to eta on the bottom cell
    o = _off(f, d)
    return {0: {"i": [(1, "eta")]}, 1: {"i eta": [(1, "eta2")]}, 2: {"i eta2": [(1, "eta3")]}}.get(o, {})


@_action("i_eta")
def _act_i_eta(f, d):
    o = _off(f, d)
    if o == 0:
        return {"id": [(1, "i_eta")]}
    if o == 3:
        return {"nu": [(1, "i_eta nu")], "alpha1": [(1, "i_eta alpha1")], "eta3": []}
    return {}


@_action("q_eta")
def _act_q_eta(f, d):
    o = _off(f, d)
    return {0: {"i_eta": []}, 3: {"i_eta nu": []}}.get(o, {})


@_action("zetabar")
def _act_zetabar(f, d):
    o = _off(f, d)
    return {0: {"i_eta": [(2, "id")]}, 3: {"i_eta nu": [(2, "nu")]}}.get(o, {})


@_action("zetatilde")
def _act_zetatilde(f, d):
    return {}


def _incl(base):
    def act(f, d):
        o = _off(f, d)
        if o == 0:
            return {"id": [(1, base)]}
        if o == 3:
            out = {"nu": [(1, f"{base} nu")], "eta3": []}
            if base in ("ihat",):
                out["alpha1"] = [(1, "ihat alpha1")]
            return out
        return {}

    return act


_ACTIONS["ibar"] = _incl("ibar")
_ACTIONS["ihat"] = _incl("ihat")
_ACTIONS["icheck"] = _incl("icheck")


@_action("ihat1")
def _act_ihat1(f, d):
    return {"eta2": [(1, "ihat eta2")]} if _off(f, d) == 2 else {}


@_action("icheck1")
def _act_icheck1(f, d):
    return {"eta2": [(1, "icheck eta2")]} if _off(f, d) == 2 else {}


@_action("ibar_P")
def _act_ibar_P(f, d):
    o = _off(f, d)
    if o == 0:
        return {"i": [(1, "ibar")]}
    if o == 3:
        return {"i nu": [(1, "ibar nu")], "etatilde eta": [(1, "ibar_P etatilde eta")]}
    return {}


@_action("icheck_P")
def _act_icheck_P(f, d):
    o = _off(f, d)
    if o == 0:
        return {"i": [(1, "icheck")]}
    if o == 3:
        return {"i nu": [(1, "icheck nu")], "etatilde eta": [(1, "icheck_P etatilde eta")]}
    return {}


@_action("ibar_eta")
def _act_ibar_eta(f, d):
    o = _off(f, d)
    return {0: {"i_eta": [(1, "ibar")]}, 3: {"i_eta nu": [(1, "ibar nu")]}}.get(o, {})


@_action("qbar")
def _act_qbar(f, d):
    o, gap = _off(f, d), 2 ** (f.target.r - f.source.r)
    if o == 0:
        return {"ibar": [(gap, "i")]}
    if o == 3:
        return {"ibar nu": [(gap, "i nu")], "ibar_P etatilde eta": [(1, "etatilde eta")]}
    return {}


@_action("qhat_eta")
def _act_qhat_eta(f, d):
    o = _off(f, d)
    if o == 0:
        return {"ihat": [(1, "i_eta")]}
    if o == 3:
        return {"ihat nu": [(1, "i_eta nu")], "ihat eta2": []}
    return {}


@_action("xibar")
def _act_xibar(f, d):
    # xibar^{s'}_s: P^{n+2}(2^{s'}) -> C^{n+2,s} restricts to ihat_{n+1} on the bottom cell
    o = _off(f, d)
    return {"i eta2": [(1, "ihat eta2")]} if o == 2 else {}


@_action("mu")
def _act_mu(f, d):
    o = _off(f, d)
    return {"ihat nu": [], "ihat eta2": [(1, "eta3")]} if o == 3 else {}


@_action("mu_ss")
def _act_mu_ss(f, d):
    o = _off(f, d)
    return {"ihat nu": [(-2, "ihat nu")], "ihat eta2": [(-2, "ihat eta2")]} if o == 3 else {}


@_action("lambda_ss")
def _act_lambda_ss(f, d):
    o = _off(f, d)
    return {"ihat nu": [], "ihat eta2": [(1, "ihat eta2")]} if o == 3 else {}


@_action("theta_ss")
def _act_theta_ss(f, d):
    o, gap = _off(f, d), 2 ** (f.target.s - f.source.s)
    return {"ihat nu": [(1, "ihat nu")], "ihat eta2": [(gap, "ihat eta2")]} if o == 3 else {}


@_action("icheck_C")
def _act_icheck_C(f, d):
    o = _off(f, d)
    if o == 0:
        return {"ihat": [(1, "icheck")]}
    if o == 3:
        return {"ihat nu": [(1, "icheck nu")], "ihat eta2": [(1, "icheck eta2")]}
    return {}


@_action("qcheck_C")
def _act_qcheck_C(f, d):
    o = _off(f, d)
    if o == 0:
        return {"icheck": [(1, "ibar")]}
    if o == 3:
        return {
            "icheck eta2": [],
            "icheck nu": [(1, "ibar nu")],
            "icheck_P etatilde eta": [(1, "ibar_P etatilde eta")],
        }
    return {}


@_action("qcheck_P")
def _act_qcheck_P(f, d):
    o = _off(f, d)
    if o == 0:
        return {"icheck": []}
    if o == 3:
        return {"icheck eta2": [(1, "i eta2")], "icheck nu": [], "icheck_P etatilde eta": []}
    return {}


def _stable(f, degree):
    lo = min(f.source.bottom, f.target.bottom)
    return degree <= 2 * lo - 2


def _image_table(f, degree):
    src, tgt = pi(f.source, degree), pi(f.target, degree)
    raw = _ACTIONS[f.tag](f, degree)
    images = {}
    for token, terms in raw.items():
        images[token.replace(" ", "_")] = tgt.element((c, t.replace(" ", "_")) for c, t in terms)
    return src, tgt, images


def apply(f: MorphSymbol, e: GroupElement, degree: int) -> GroupElement:
    """Post-compose the element e of pi_degree(f.source) with f."""
    src = pi(f.source, degree)
    tgt = pi(f.target, degree)
    e = src.reduce(e)
    if f.tag == "mult":
        return tgt.reduce(GroupElement(tuple(f.k * c for c in e)))
    if not _stable(f, degree):
        raise UnknownComposite(f, src.format_element(e), "outside the stable range")
    _, _, images = _image_table(f, degree)
    alias = src.alias_map()
    acc = tgt.zero()
    for j, c in enumerate(e):
        if c == 0:
            continue
        token = src.tokens[j]
        if token in images:
            img = abelian.scale(tgt.group, images[token], c)
        else:
            img = None
            order = src.orders[j]
            for atok, vec in alias.items():
                if atok not in images:
                    continue
                support = [i for i, x in enumerate(vec) if x]
                if support != [j]:
                    continue
                for k in range(order or 1):
                    if (k * vec[j] - c) % (order or 1 << 62) == 0:
                        img = abelian.scale(tgt.group, images[atok], k)
                        break
                if img is not None:
                    break
            if img is None:
                raise UnknownComposite(f, f"{c}*{token}")
        acc = abelian.add(tgt.group, acc, img)
    return acc


def apply_chain(chain, e, degree):
    """Apply morphisms in order: chain[0] first."""
    for f in chain:
        e = apply(f, e, degree)
    return e


def compose(f: MorphSymbol, x, coefficient: int = 1, degree: int | None = None) -> GroupElement:
    """f o (coefficient * x) for a generator symbol or token x."""
    if isinstance(x, GenSymbol):
        degree, token = x.degree, x.token
    else:
        token = x
        if degree is None:
            raise ValueError("degree is required when x is a token")
    src = pi(f.source, degree)
    e = abelian.scale(src.group, src.lookup(token), coefficient)
    return apply(f, e, degree)


# ---------------------------------------------------------------------------
# homology


def chain_complex(host: ElementaryComplex):
    """Cellular chain complex: (cell counts per dim, boundary matrices).

    Boundaries only see degree maps between cells of adjacent dimension;
    eta-type attaching maps are null in homology.
    """
    n = host.bottom
    counts = {}
    for c in host.cells():
        counts[c] = counts.get(c, 0) + 1
    bd = {}
    if host.kind == MOORE:
        bd[n + 1] = [[host.p**host.r]]
    elif host.kind == CHANG_R:
        bd[n + 1] = [[2**host.r]]
        bd[n + 2] = [[0]]
    elif host.kind == CHANG_S:
        bd[n + 1] = [[0]]
        bd[n + 2] = [[2**host.s]]
    elif host.kind == CHANG_RS:
        # (n+1)-cells: a from the target S^{n+1}, b from the cone on S^n
        bd[n + 1] = [[0, 2**host.r]]
        bd[n + 2] = [[2**host.s], [0]]
    return counts, bd


def homology_of_chain(counts, bd):
    """Reduced homology [(degree, group)] of a chain complex of free modules."""
    out = []
    for k in sorted(counts):
        nk = counts[k]
        rank_out = 0
        if k in bd:
            rank_out = Matrix(bd[k]).rank()
        torsion = []
        rank_in = 0
        if k + 1 in bd:
            mat = Matrix(bd[k + 1])
            rank_in = mat.rank()
            if rank_in:
                torsion = [abs(int(x)) for x in invariant_factors(mat) if abs(int(x)) > 1]
        free = nk - rank_out - rank_in
        g = AbelianGroup.of(*([0] * free + torsion))
        if not g.is_trivial():
            out.append((k, g))
    return out


@lru_cache(maxsize=None)
def homology(host: ElementaryComplex):
    counts, bd = chain_complex(host)
    return tuple(homology_of_chain(counts, bd))


# ---------------------------------------------------------------------------
# suspension divisibility


def suspension_divisibility(host: ElementaryComplex, coeff: int) -> bool:
    """Whether coeff times the nu4-type generator of pi_7(host) is a suspension."""
    if host.bottom != 4:
        raise UnsupportedTable(f"suspension test only covers bottom-4 hosts, got {host}")
    if host.kind in (CHANG_ETA, CHANG_S) or (host.kind == MOORE and host.p != 2):
        return coeff == 0 if host.kind != MOORE else coeff % host.p**host.r == 0
    if host.kind == MOORE or host.kind in (CHANG_R, CHANG_RS):
        return coeff % 2**host.r == 0
    raise UnsupportedTable(f"no nu4-type generator on {host}")
