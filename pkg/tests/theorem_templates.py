"""Expected candidate lists, written out case by case from the theorem statements.

Deliberately independent of `sigma3.classify`: every string is assembled
here from literal templates, so a snapshot comparison against the
classifier checks its case analysis rather than restating it.

`expected(inv, local)` returns either a set of rendered candidates or the
name of the exception the classifier must raise.
"""

from __future__ import annotations

SQ2, THETA, TRIPLE, NONE = "sq2", "theta", "triple", "none"


def moore(p, r, top):
    return f"P{top}({p}^{r})"


def cbar(r):
    return f"C7[r={r}]"


def chat(s):
    return f"C7{{s={s}}}"


def ccheck(r, s):
    return f"C7[r={r}]{{s={s}}}"


def single(shell, host, vec, tag):
    return f"({shell}/{host}) v ({host} u [{vec}] e9) [{tag}]"


def pair(shell, a, b, va, vb, tag):
    return f"({shell}/({a} v {b})) v (({a} v {b}) u [{va}; {vb}] e9) [{tag}]"


def two_local_case(f):
    if f.sq2_nontrivial:
        return SQ2
    if f.theta_nontrivial:
        return THETA
    if f.triple_nontrivial:
        return TRIPLE
    return NONE


def n_s5(inv):
    return inv.l - inv.split.k - inv.split.t3


def n_s7(inv):
    return inv.l - inv.split.k - inv.split.t2


def theta_hosts(inv):
    """The six Theta families in statement order: (host, attaching class)."""
    sp = inv.split
    checks = list(zip(sp.rcheck, sp.scheck))
    return [
        [(moore(2, s, 7), "1*i_eta2") for s in sp.s],
        [(moore(2, r, 6), "1*etatilde_eta") for r in sp.r],
        [(cbar(r), "1*ibar_P_etatilde_eta") for r in sp.rbar],
        [(chat(s), "1*ihat_eta2") for s in sp.shat],
        [(ccheck(r, s), "1*icheck_P_etatilde_eta") for r, s in checks],
        [(ccheck(r, s), "1*icheck_eta2") for r, s in checks],
    ]


def triple_hosts(inv):
    out = [[("S5", "1*eta3")] if n_s5(inv) else []]
    out.append([(moore(2, r, 6), "1*i_eta3") for r in inv.split.r if r >= 3])
    return out


def sq2_hosts(inv):
    return [[(moore(2, s, 7), "1*etatilde") for s in inv.split.s], [("S7", "1*eta")] if n_s7(inv) else []]


ROMAN = ("i", "ii", "iii", "iv", "v", "vi", "vii")


def _two_local_list(inv, shell, thm, case, sq2_name):
    f = two_local_case(inv.flags)
    out = set()
    if f == NONE:
        out.add(f"S9 v {shell} [{thm}/1a]")
    elif f == THETA:
        for roman, hosts in zip(ROMAN, theta_hosts(inv)):
            out |= {single(shell, h, v, f"{thm}/1b({roman})") for h, v in hosts}
    elif f == TRIPLE:
        for roman, hosts in zip(ROMAN, triple_hosts(inv)):
            out |= {single(shell, h, v, f"{thm}/1c({roman})") for h, v in hosts}
    else:
        (ps, s7) = sq2_hosts(inv)
        out |= {single(shell, h, v, f"{thm}/{sq2_name}(i)") for h, v in ps}
        if s7:
            out.add(f"({shell}/S7) v Ceta9 [{thm}/{sq2_name}(ii)]")
    return out


def carriers(inv):
    """[(X, alpha_X)] per the definition of X (one entry per choice of j0')."""
    sp, f = inv.split, inv.flags
    if f.condition_star:
        return [(moore(3, r, 6), "1*i_alpha1") for r in sorted(set(sp.r3))]
    if n_s5(inv):
        return [("S5", "1*alpha1")]
    if sp.k:
        return [("Ceta7", "1*i_eta_alpha1")]
    if sp.t3:
        return [(chat(sp.shat[0]), "1*ihat_alpha1")]
    return []


def expected_2local(inv):
    out = _two_local_list(inv, "V7", "Thm1.1", None, "2")
    return out or "FlagMismatch"


def expected_3local(inv):
    f = inv.flags
    if not f.p1_nontrivial:
        return {"S9 v L7 [Thm3L/1]"}
    if not f.condition_star:
        if inv.l == 0:
            return "NoCarrier"
        return {single("L7", "S5", "1*alpha1", "Thm3L/2")}
    if not inv.split.r3:
        return "FlagMismatch"
    return {single("L7", moore(3, r, 6), "1*i_alpha1", "Thm3L/3") for r in set(inv.split.r3)}


def expected_total(inv):
    f = inv.flags
    if not f.p1_nontrivial:
        return _two_local_list(inv, "W7", "Thm1.2", None, "1d") or "FlagMismatch"
    if f.condition_star and not inv.split.r3:
        return "FlagMismatch"
    xs = carriers(inv)
    if not xs:
        return "NoCarrier"
    case, star, out = two_local_case(f), f.condition_star, set()
    for x, ax in xs:
        if case == NONE:
            out.add(single("W7", x, ax, "Thm1.2/2a"))
        elif case == THETA:
            # (v) is the single-summand member; the pair members skip it in the numbering
            names = ("i", "ii", "iii", "iv", "vi", "vii")
            for roman, hosts in zip(names, theta_hosts(inv)):
                if roman == "iv" and x.startswith("C7{"):
                    continue  # X is itself a C7{s}: covered by member (v)
                out |= {pair("W7", h, x, v, ax, f"Thm1.2/2b({roman})") for h, v in hosts}
            if not star:
                out |= {single("W7", chat(s), "1*ihat_eta2 + 1*ihat_alpha1", "Thm1.2/2b(v)") for s in inv.split.shat}
        elif case == TRIPLE:
            if n_s5(inv) and not star:
                out.add(single("W7", "S5", "1*alpha1 + 1*eta3", "Thm1.2/2c(i)"))
            if n_s5(inv) and star:
                out.add(pair("W7", "S5", x, "1*eta3", ax, "Thm1.2/2c(ii)"))
            out |= {pair("W7", moore(2, r, 6), x, "1*i_eta3", ax, "Thm1.2/2c(iii)") for r in inv.split.r if r >= 3}
        else:
            out |= {pair("W7", moore(2, s, 7), x, "1*etatilde", ax, "Thm1.2/2d(i)") for s in inv.split.s}
            if n_s7(inv):
                out.add(pair("W7", "S7", x, "1*eta", ax, "Thm1.2/2d(ii)"))
    return out or "FlagMismatch"


EXPECTED = {"2": expected_2local, "3": expected_3local, "total": expected_total}

SMOOTH_EXCLUDED_TAGS = ("Thm1.1/1c(", "Thm1.2/1b(", "Thm1.2/2b(")


def expected(inv, local):
    out = EXPECTED[local](inv)
    if isinstance(out, str) or not inv.smooth:
        return out
    return {s for s in out if not any(t in s for t in SMOOTH_EXCLUDED_TAGS)}
