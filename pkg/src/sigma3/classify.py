"""Candidate homotopy types of the triple suspension of a 6-manifold.

From validated ManifoldInvariants this module builds the wedge shells
(V7 for the 2-local statement, W7 for the integral one, L7 for the 3-local
one) and lists the candidate decompositions for the given operation flags.
Each candidate is a WedgeDecomposition: the shell with some summands
removed, plus an optional cone `X u_f e9` on the removed summands.

With several summands of one family the candidate is emitted once per
distinct exponent (the index j0 of the statements), so a list is the full
set of possibilities, not one arbitrary representative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import abelian, catalog
from .abelian import AbelianGroup
from .catalog import pi
from .errors import FlagMismatch, NoCarrier
from .invariants import ManifoldInvariants
from .wedgemap import AttachingVector, WedgeSpace

__all__ = [
    "WedgeDecomposition",
    "XRow",
    "build_V7",
    "build_W7",
    "build_L7",
    "x_table",
    "resolve_x",
    "x_ambiguous",
    "classify_2local",
    "classify_3local",
    "classify_total",
    "smooth_filter",
    "localize_decomposition",
    "homology_audit",
    "expected_homology",
    "decomposition_homology",
    "SMOOTH_EXCLUDED",
    "LOCAL_CASE",
]

S5, S6, S7 = catalog.sphere(5), catalog.sphere(6), catalog.sphere(7)
CETA = catalog.ceta(7)

# theorem members the smooth-manifold mode removes
SMOOTH_EXCLUDED = ("Thm1.1/1c", "Thm1.2/1b", "Thm1.2/2b")


@dataclass(frozen=True)
class WedgeDecomposition:
    """shell/removed  v  (cone wedge u_vector e9); no cone means `S9 v shell`."""

    shell: str
    free_part: WedgeSpace
    cone_part: tuple | None  # (WedgeSpace, AttachingVector)
    tag: str
    locality: str = "total"
    j0: int | None = None
    j0_prime: int | None = None
    removed: WedgeSpace = field(default_factory=lambda: WedgeSpace(()))

    @property
    def member(self):
        return self.tag.split("/", 1)[1]

    def _x(self):
        w = self.cone_part[0]
        lits = [x.literal() for x in w]
        return lits[0] if len(lits) == 1 else "(" + " v ".join(lits) + ")"

    def _cone_text(self):
        w, v = self.cone_part
        if len(w) == 1 and w[0] == S7 and v.entries[0] == pi(S7, 8).lookup("eta"):
            return "Ceta9"
        return f"({self._x()} u {v.format()} e9)"

    def render(self):
        """Shell form, e.g. `(V7/P7(2^2)) v (P7(2^2) u [1*i_eta2] e9) [Thm1.1/1b(i)]`."""
        if self.cone_part is None:
            return f"S9 v {self.shell} [{self.tag}]"
        return f"({self.shell}/{self._x()}) v {self._cone_text()} [{self.tag}]"

    def render_explicit(self):
        """Every summand spelled out: free summands, then the cone (or S9)."""
        parts = [x.literal() for x in self.free_part]
        parts.append("S9" if self.cone_part is None else self._cone_text())
        return " v ".join(parts) + f" [{self.tag}]"

    def key(self):
        """Order-insensitive comparison key for the free part."""
        free = tuple(sorted(x.literal() for x in self.free_part))
        if self.cone_part is None:
            return free, None
        w, v = self.cone_part
        return free, (w.literal(), v.format())

    def __str__(self):
        return self.render()


# ---------------------------------------------------------------------------
# shells


def _v7_parts(inv):
    sp = inv.split
    out = [S6] * inv.d
    out += [S5] * inv.n_s5 + [CETA] * sp.k + [S7] * inv.n_s7
    out += [catalog.moore(2, s, 7) for s in sp.s]
    out += [catalog.moore(2, r, 6) for r in sp.r]
    out += [catalog.cbar(r, 7) for r in sp.rbar]
    out += [catalog.chat(s, 7) for s in sp.shat]
    out += [catalog.ccheck(r, s, 7) for r, s in zip(sp.rcheck, sp.scheck)]
    return out


def build_V7(inv: ManifoldInvariants) -> WedgeSpace:
    inv.validate()
    return _v7(inv)


def _v7(inv):
    return WedgeSpace(tuple(_v7_parts(inv)))


def _odd_moore(inv, top):
    return [catalog.moore(p, e, top) for p, exps in inv.torsion.primaries if p != 2 for e in exps]


def build_W7(inv: ManifoldInvariants) -> WedgeSpace:
    """V7 with the odd-primary Moore spaces P6(T_odd) v P7(T_odd) inserted after dS6."""
    inv.validate()
    return _w7(inv)


def _w7(inv):
    v7 = _v7_parts(inv)
    return WedgeSpace(tuple(v7[: inv.d] + _odd_moore(inv, 6) + _odd_moore(inv, 7) + v7[inv.d :]))


def build_L7(inv: ManifoldInvariants) -> WedgeSpace:
    """The 3-local shell dS6 v P7(T3) v P6(T3) v l(S5 v S7)."""
    inv.validate()
    return _l7(inv)


def _l7(inv):
    t3 = inv.torsion.exponents(3)
    parts = [S6] * inv.d + [catalog.moore(3, e, 7) for e in t3] + [catalog.moore(3, e, 6) for e in t3]
    parts += [S5, S7] * inv.l
    return WedgeSpace(tuple(parts))


# ---------------------------------------------------------------------------
# the carrier X of the 3-primary part


@dataclass(frozen=True)
class XRow:
    condition: str
    carrier: str
    alpha: str
    applies: bool


def x_table(inv: ManifoldInvariants):
    """The carrier table as printed, with the condition of each row evaluated.

    Rows 3 and 4 carry the same printed condition; both can apply at once.
    """
    sp, star = inv.split, inv.flags.condition_star
    cond = (not star) and inv.n_s5 == 0 and sp.k != 0
    r0 = sp.r3[0] if sp.r3 else None
    s0 = sp.shat[0] if sp.shat else None
    return [
        XRow("star holds", f"P6(3^{r0})" if r0 else "P6(3^r')", "i_alpha1", star and bool(sp.r3)),
        XRow("star fails, l-k-t3 != 0", "S5", "alpha1", (not star) and inv.n_s5 != 0),
        XRow("star fails, l-k-t3 = 0, k != 0", "Ceta7", "i_eta_alpha1", cond),
        XRow("star fails, l-k-t3 = 0, k != 0", f"C7{{s={s0}}}" if s0 else "C7{s}", "ihat_alpha1", cond and bool(sp.shat)),
    ]


def x_ambiguous(inv: ManifoldInvariants) -> bool:
    """True when both duplicated rows apply (resolved in favour of Ceta7)."""
    rows = x_table(inv)
    return rows[2].applies and rows[3].applies


_ALPHA = {catalog.SPHERE: "alpha1", catalog.CHANG_ETA: "i_eta_alpha1", catalog.CHANG_S: "ihat_alpha1",
          catalog.MOORE: "i_alpha1"}  # fmt: skip


def resolve_x(inv: ManifoldInvariants, j0_prime: int = 1):
    """(carrier complex, alpha_X token) for a nontrivial P1.

    Under star the carrier is P6(3^{r'_j0'}); otherwise S5, then Ceta7,
    then C7{s_hat_1} (the reading of the duplicated row for k = 0).
    """
    sp = inv.split
    if inv.flags.condition_star:
        if not sp.r3:
            raise FlagMismatch("condition star needs 3-primary torsion")
        x = catalog.moore(3, sp.r3[j0_prime - 1], 6)
    elif inv.n_s5:
        x = S5
    elif sp.k:
        x = CETA
    elif sp.shat:
        x = catalog.chat(sp.shat[0], 7)
    else:
        raise NoCarrier("no carrier: star fails and l-k-t3 = 0, k = 0, t3 = 0")
    return x, _ALPHA[x.kind]


# ---------------------------------------------------------------------------
# candidate construction


def _remove(shell: WedgeSpace, hosts):
    idx, taken = [], set()
    for h in hosts:
        i = next(i for i, x in enumerate(shell) if x == h and i not in taken)
        taken.add(i)
        idx.append(i)
    return shell.without(idx)


def _vector(hosts, tokens):
    w = WedgeSpace(tuple(hosts))
    entries = []
    for h, tok in zip(hosts, tokens):
        table = pi(h, 8)
        entries.append(table.element([(1, t) for t in tok.split("+")]))
    return w, AttachingVector(w, tuple(entries))


class _Builder:
    def __init__(self, inv, shell_name, shell, theorem, locality):
        self.inv, self.name, self.shell = inv, shell_name, shell
        self.theorem, self.locality = theorem, locality
        self.out, self.seen = [], set()

    def top(self, member):
        self._add(WedgeDecomposition(self.name, self.shell, None, f"{self.theorem}/{member}", self.locality))

    def cone(self, member, hosts, tokens, j0=None, j0p=None):
        w, v = _vector(hosts, tokens)
        dec = WedgeDecomposition(
            self.name, _remove(self.shell, hosts), (w, v), f"{self.theorem}/{member}", self.locality, j0, j0p, w
        )
        self._add(dec)

    def _add(self, dec):
        key = dec.render()
        if key not in self.seen:
            self.seen.add(key)
            self.out.append(dec)


def _families(inv):
    """(member suffix, list of (j, host), 2-local token) for the six N2 families, in printed order."""
    sp = inv.split
    return [
        ("i", [(j, catalog.moore(2, s, 7)) for j, s in enumerate(sp.s, 1)], "i_eta2"),
        ("ii", [(j, catalog.moore(2, r, 6)) for j, r in enumerate(sp.r, 1)], "etatilde_eta"),
        ("iii", [(j, catalog.cbar(r, 7)) for j, r in enumerate(sp.rbar, 1)], "ibar_P_etatilde_eta"),
        ("iv", [(j, catalog.chat(s, 7)) for j, s in enumerate(sp.shat, 1)], "ihat_eta2"),
        ("v", [(j, catalog.ccheck(r, s, 7)) for j, (r, s) in enumerate(zip(sp.rcheck, sp.scheck), 1)],
         "icheck_P_etatilde_eta"),
        ("vi", [(j, catalog.ccheck(r, s, 7)) for j, (r, s) in enumerate(zip(sp.rcheck, sp.scheck), 1)],
         "icheck_eta2"),
    ]  # fmt: skip


def _two_local_members(b: _Builder, inv, case, sq2_member="2"):
    """Members 1a/1b/1c and the sq2 member (numbered 2 in the 2-local list, 1d in the integral one)."""
    sp = inv.split
    if case == "1a":
        b.top("1a")
    elif case == "1b":
        for roman, hosts, tok in _families(inv):
            for j, h in hosts:
                b.cone(f"1b({roman})", [h], [tok], j0=j)
    elif case == "1c":
        if inv.n_s5:
            b.cone("1c(i)", [S5], ["eta3"])
        for j, r in enumerate(sp.r, 1):
            if r >= 3:
                b.cone("1c(ii)", [catalog.moore(2, r, 6)], ["i_eta3"], j0=j)
    else:
        member = sq2_member
        for j, s in enumerate(sp.s, 1):
            b.cone(f"{member}(i)", [catalog.moore(2, s, 7)], ["etatilde"], j0=j)
        if inv.n_s7:
            b.cone(f"{member}(ii)", [S7], ["eta"])


def _finish(b: _Builder, inv, what):
    if not b.out:
        raise FlagMismatch(f"flags {inv.flags.describe()} admit no {what} candidate for these invariants")
    out = b.out
    sel = inv.selection
    if sel is not None and (sel.member or sel.j0 or sel.j0_prime):
        keep = [
            d
            for d in out
            if (sel.member is None or d.member == sel.member)
            and (sel.j0 is None or d.j0 == sel.j0)
            and (sel.j0_prime is None or d.j0_prime == sel.j0_prime)
        ]
        if not keep:
            raise FlagMismatch(f"selection {sel} contradicts the flags {inv.flags.describe()}")
        out = keep
    if inv.smooth:
        out = smooth_filter(out)
    return out


def classify_2local(inv: ManifoldInvariants):
    inv.validate()
    b = _Builder(inv, "V7", _v7(inv), "Thm1.1", "2")
    _two_local_members(b, inv, inv.flags.two_local_case())
    return _finish(b, inv, "2-local")


def classify_3local(inv: ManifoldInvariants):
    inv.validate()
    f, sp = inv.flags, inv.split
    b = _Builder(inv, "L7", _l7(inv), "Thm3L", "3")
    if not f.p1_nontrivial:
        b.top("1")
    elif not f.condition_star:
        if inv.l == 0:
            raise NoCarrier("P1 is nontrivial but l = 0 leaves no S5 to carry alpha1")
        b.cone("2", [S5], ["alpha1"])
    else:
        if not sp.r3:
            raise FlagMismatch("condition star needs 3-primary torsion")
        for j, r in enumerate(sp.r3, 1):
            b.cone("3", [catalog.moore(3, r, 6)], ["i_alpha1"], j0p=j)
    return _finish(b, inv, "3-local")


def classify_total(inv: ManifoldInvariants):
    inv.validate()
    f, sp = inv.flags, inv.split
    b = _Builder(inv, "W7", _w7(inv), "Thm1.2", "total")
    case = f.two_local_case()
    if not f.p1_nontrivial:
        _two_local_members(b, inv, case, sq2_member="1d")
        return _finish(b, inv, "integral")
    star = f.condition_star
    if star and not sp.r3:
        raise FlagMismatch("condition star needs 3-primary torsion")
    j0ps = range(1, len(sp.r3) + 1) if star else [None]
    for j0p in j0ps:
        x, ax = resolve_x(inv, j0p or 1)
        if case == "1a":
            b.cone("2a", [x], [ax], j0p=j0p)
        elif case == "1b":
            fams = _families(inv)
            members = ["i", "ii", "iii", "iv", "vi", "vii"]
            for (roman, hosts, tok), member in zip(fams, members):
                for j, h in hosts:
                    if member == "iv" and x.kind == catalog.CHANG_S:
                        continue  # X is itself a C7{s}: the pair reduces to member (v)
                    b.cone(f"2b({member})", [h, x], [tok, ax], j0=j, j0p=j0p)
                if member == "iv" and not star:
                    for j, h in hosts:
                        b.cone("2b(v)", [h], ["ihat_eta2+ihat_alpha1"], j0=j)
            b.out.sort(key=lambda d: _ORDER_2B.index(d.member))
        elif case == "1c":
            if inv.n_s5 and not star:
                b.cone("2c(i)", [S5], ["eta3+alpha1"])
            if inv.n_s5 and star:
                b.cone("2c(ii)", [S5, x], ["eta3", ax], j0p=j0p)
            for j, r in enumerate(sp.r, 1):
                if r >= 3:
                    b.cone("2c(iii)", [catalog.moore(2, r, 6), x], ["i_eta3", ax], j0=j, j0p=j0p)
        else:
            for j, s in enumerate(sp.s, 1):
                b.cone("2d(i)", [catalog.moore(2, s, 7), x], ["etatilde", ax], j0=j, j0p=j0p)
            if inv.n_s7:
                b.cone("2d(ii)", [S7, x], ["eta", ax], j0p=j0p)
    if case == "1c":
        b.out.sort(key=lambda d: d.member)
    elif case == "2":
        b.out.sort(key=lambda d: d.member)
    return _finish(b, inv, "integral")


_ORDER_2B = [f"2b({m})" for m in ("i", "ii", "iii", "iv", "v", "vi", "vii")]


def smooth_filter(decs):
    """Drop the members excluded for smooth manifolds."""
    return [d for d in decs if not any(d.tag.startswith(p + "(") or d.tag == p for p in SMOOTH_EXCLUDED)]


# ---------------------------------------------------------------------------
# localization of a decomposition


def _local_summands(x, p):
    """p-local pieces of an elementary complex (list of complexes)."""
    if p == 2:
        if x.kind == catalog.MOORE and x.p != 2:
            return []
        return [x]
    if x.kind == catalog.MOORE:
        return [x] if x.p == 3 else []
    if x.kind == catalog.SPHERE:
        return [x]
    if x.kind == catalog.CHANG_ETA:
        return [catalog.sphere(x.bottom), catalog.sphere(x.top)]
    if x.kind == catalog.CHANG_R:
        return [catalog.sphere(x.top)]
    if x.kind == catalog.CHANG_S:
        return [catalog.sphere(x.bottom)]
    return []


_LOCAL_NAME = {("W7", "2"): "V7", ("W7", "3"): "L7"}

# total member -> matching 2-local member (None: the 2-local cone is trivial)
LOCAL_CASE = {
    "1a": "1a", "2a": "1a",
    "1b(i)": "1b(i)", "1b(ii)": "1b(ii)", "1b(iii)": "1b(iii)", "1b(iv)": "1b(iv)", "1b(v)": "1b(v)",
    "1b(vi)": "1b(vi)",
    "2b(i)": "1b(i)", "2b(ii)": "1b(ii)", "2b(iii)": "1b(iii)", "2b(iv)": "1b(iv)", "2b(v)": "1b(iv)",
    "2b(vi)": "1b(v)", "2b(vii)": "1b(vi)",
    "1c(i)": "1c(i)", "1c(ii)": "1c(ii)", "2c(i)": "1c(i)", "2c(ii)": "1c(i)", "2c(iii)": "1c(ii)",
    "1d(i)": "2(i)", "1d(ii)": "2(ii)", "2d(i)": "2(i)", "2d(ii)": "2(ii)",
}  # fmt: skip


def localize_decomposition(dec: WedgeDecomposition, p: int) -> WedgeDecomposition:
    """Localize at p = 2 or 3: odd (resp. non-3) pieces dropped, Chang complexes split at 3.

    Cone summands whose attaching entry dies move to the free part; the tag
    becomes the matching member of the local statement.
    """
    from .reduce import localize

    free = [y for x in dec.free_part for y in _local_summands(x, p)]
    cone = None
    if dec.cone_part is not None:
        w, v = dec.cone_part
        lv = localize(v, p)
        hosts, entries = [], []
        for x, e in zip(w, lv.entries):
            pieces = _local_summands(x, p)
            if e.is_zero() or not pieces:
                free += pieces
                continue
            if p == 3 and x.kind in (catalog.CHANG_ETA, catalog.CHANG_S):
                # the alpha1 class lives on the bottom sphere
                free += pieces[1:]
                hosts.append(pieces[0])
                entries.append(pi(pieces[0], 8).lookup("alpha1"))
                continue
            hosts.append(x)
            entries.append(e)
        if hosts:
            cw = WedgeSpace(tuple(hosts))
            cone = (cw, AttachingVector(cw, tuple(entries)))
    member = dec.member
    if p == 2:
        tag = "Thm1.1/" + LOCAL_CASE[member]
    else:
        if cone is None:
            tag = "Thm3L/1"
        else:
            tag = "Thm3L/3" if cone[0][0].kind == catalog.MOORE else "Thm3L/2"
    name = _LOCAL_NAME.get((dec.shell, str(p)), dec.shell)
    removed = cone[0] if cone else WedgeSpace(())
    return WedgeDecomposition(name, WedgeSpace(tuple(free)), cone, tag, str(p), dec.j0, dec.j0_prime, removed)


# ---------------------------------------------------------------------------
# homology audit


def _localize_group(g: AbelianGroup, locality):
    if locality == "total":
        return g
    p = int(locality)
    orders = []
    for o in g.orders:
        if o == 0:
            orders.append(0)
        else:
            q = 1
            while o % p == 0:
                o //= p
                q *= p
            if q > 1:
                orders.append(q)
    return AbelianGroup.of(*orders)


def expected_homology(inv: ManifoldInvariants, locality="total"):
    """Reduced homology of the triple suspension: degrees 5, 6, 7, 9."""
    t = [p**e for p, exps in inv.torsion.primaries for e in exps]
    raw = {
        5: AbelianGroup.of(*([0] * inv.l + t)),
        6: AbelianGroup.of(*([0] * inv.d + t)),
        7: AbelianGroup.of(*([0] * inv.l)),
        9: AbelianGroup.of(0),
    }
    return {k: _localize_group(g, locality) for k, g in raw.items()}


def decomposition_homology(dec: WedgeDecomposition):
    """Homology of the decomposition: free part, cone wedge, and the top cell (a free Z in degree 9)."""
    summands = list(dec.free_part)
    if dec.cone_part is not None:
        summands += list(dec.cone_part[0])
    acc = dict(WedgeSpace(tuple(summands)).homology())
    acc[9] = acc.get(9, AbelianGroup()) + AbelianGroup.of(0)
    return acc


def homology_audit(dec: WedgeDecomposition, inv: ManifoldInvariants) -> bool:
    got = decomposition_homology(dec)
    want = expected_homology(inv, dec.locality)
    degrees = {k for k, g in got.items() if not g.is_trivial()} | {k for k, g in want.items() if not g.is_trivial()}
    for k in degrees:
        a = _localize_group(got.get(k, AbelianGroup()), dec.locality)
        b = want.get(k, AbelianGroup())
        if not abelian.iso_check(a, b):
            return False
    return True

