import dataclasses
import itertools

import pytest

from sigma3 import catalog
from sigma3.abelian import AbelianGroup, iso_check
from sigma3.classify import (
    SMOOTH_EXCLUDED,
    WedgeDecomposition,
    build_L7,
    build_V7,
    build_W7,
    classify_2local,
    classify_3local,
    classify_total,
    expected_homology,
    homology_audit,
    localize_decomposition,
    resolve_x,
    smooth_filter,
    x_ambiguous,
    x_table,
)
from sigma3.descriptor import parse_descriptor
from sigma3.errors import FlagMismatch, InvalidSplitting, NoCarrier
from sigma3.sweep import SweepConfig, invariants
from sigma3.wedgemap import WedgeSpace

import theorem_templates as tt

CLASSIFY = {"2": classify_2local, "3": classify_3local, "total": classify_total}


def inv(text):
    return parse_descriptor(text.replace(";", "\n"))


def renders(decs):
    return [d.render() for d in decs]


MIXED = "l = 1; d = 1; torsion = 2^1, 3^1; splitting = s=1 r=1 r3=1"


def test_shells():
    x = inv(MIXED + "; flags = none")
    assert build_V7(x).literal() == "S6vS5vS7vP7(2^1)vP6(2^1)"
    assert build_W7(x).literal() == "S6vP6(3^1)vP7(3^1)vS5vS7vP7(2^1)vP6(2^1)"
    assert build_L7(x).literal() == "S6vP7(3^1)vP6(3^1)vS5vS7"


def test_shell_validates():
    bad = dataclasses.replace(inv("l = 1"), l=0)
    with pytest.raises(InvalidSplitting):
        build_V7(dataclasses.replace(bad, split=dataclasses.replace(bad.split, k=1)))


def test_trivial_case():
    x = inv(MIXED + "; flags = none")
    assert renders(classify_total(x)) == ["S9 v W7 [Thm1.2/1a]"]
    assert renders(classify_2local(x)) == ["S9 v V7 [Thm1.1/1a]"]
    assert renders(classify_3local(x)) == ["S9 v L7 [Thm3L/1]"]
    assert classify_total(x)[0].render_explicit() == "S6 v P6(3^1) v P7(3^1) v S5 v S7 v P7(2^1) v P6(2^1) v S9 [Thm1.2/1a]"


def test_sq2_two_local():
    x = inv(MIXED + "; flags = sq2")
    assert renders(classify_2local(x)) == [
        "(V7/P7(2^1)) v (P7(2^1) u [1*etatilde] e9) [Thm1.1/2(i)]",
        "(V7/S7) v Ceta9 [Thm1.1/2(ii)]",
    ]


def test_four_nu_on_s5():
    x = inv(MIXED + "; flags = triple p1")
    assert "(W7/S5) v (S5 u [1*alpha1 + 1*eta3] e9) [Thm1.2/2c(i)]" in renders(classify_total(x))


def test_x_table_star():
    x = inv("l = 1; torsion = 3^2; splitting = r3=2; flags = p1 star")
    rows = x_table(x)
    assert [r.applies for r in rows] == [True, False, False, False]
    c, a = resolve_x(x)
    assert (c.literal(), a) == ("P6(3^2)", "i_alpha1")
    assert renders(classify_3local(x)) == ["(L7/P6(3^2)) v (P6(3^2) u [1*i_alpha1] e9) [Thm3L/3]"]


def test_x_table_duplicated_row():
    x = inv("l = 2; torsion = 2^1; splitting = k=1 shat=1 r=1; flags = p1")
    assert x_ambiguous(x)
    c, a = resolve_x(x)
    assert (c, a) == (catalog.ceta(7), "i_eta_alpha1")


def test_x_falls_through_to_chat():
    x = inv("l = 1; torsion = 2^1; splitting = shat=1 r=1; flags = p1")
    assert x.n_s5 == 0 and not x_ambiguous(x)
    assert resolve_x(x) == (catalog.chat(1, 7), "ihat_alpha1")


def test_no_carrier():
    x = inv("d = 1; flags = p1")
    with pytest.raises(NoCarrier):
        classify_total(x)
    with pytest.raises(NoCarrier):
        classify_3local(x)
    with pytest.raises(NoCarrier):
        resolve_x(x)


def test_flag_mismatch():
    with pytest.raises(FlagMismatch):
        classify_2local(inv("d = 1; flags = sq2"))
    with pytest.raises(FlagMismatch):
        classify_total(inv("l = 1; flags = p1 star"))


def test_j0_per_exponent():
    x = inv("l = 1; torsion = 2^1, 2^2, 2^2; splitting = s=1,2,2 r=1,2,2; flags = theta")
    out = classify_2local(x)
    hosts = [d.cone_part[0].literal() for d in out if d.member == "1b(i)"]
    assert hosts == ["P7(2^1)", "P7(2^2)"]
    assert [d.j0 for d in out if d.member == "1b(i)"] == [1, 2]


def test_selection():
    base = "l = 1; torsion = 2^1, 2^2; splitting = s=1,2 r=1,2; flags = theta"
    out = classify_2local(inv(base + "; selection = member=1b(i) j0=2"))
    assert renders(out) == ["(V7/P7(2^2)) v (P7(2^2) u [1*i_eta2] e9) [Thm1.1/1b(i)]"]
    with pytest.raises(FlagMismatch):
        classify_2local(inv(base + "; selection = member=1c(i)"))


def test_smooth_filter():
    x = inv(MIXED + "; flags = theta p1")
    full = classify_total(x)
    assert full and all(d.tag.startswith("Thm1.2/2b") for d in full)
    assert classify_total(dataclasses.replace(x, smooth=True)) == []
    assert smooth_filter(full) == []
    kept = classify_2local(dataclasses.replace(inv(MIXED + "; flags = triple"), smooth=True))
    assert kept == []
    assert all(tag.startswith("Thm") for tag in SMOOTH_EXCLUDED)


def test_homology_audit_detects_missing_summand():
    x = inv(MIXED + "; flags = sq2 p1")
    for d in classify_total(x):
        assert homology_audit(d, x)
    d = classify_total(x)[0]
    broken = dataclasses.replace(d, free_part=d.free_part.without([0]))
    assert not homology_audit(broken, x)


def test_expected_homology():
    h = expected_homology(inv(MIXED + "; flags = none"))
    assert iso_check(h[5], AbelianGroup.of(0, 2, 3))
    assert iso_check(h[6], AbelianGroup.of(0, 6))
    assert iso_check(h[7], AbelianGroup.of(0)) and iso_check(h[9], AbelianGroup.of(0))
    assert iso_check(expected_homology(inv(MIXED + "; flags = none"), "3")[5], AbelianGroup.of(0, 3))


def test_localize_decomposition():
    x = inv(MIXED + "; flags = sq2 p1")
    total = classify_total(x)
    two = {(d.key(), d.tag) for d in classify_2local(x)}
    three = {(d.key(), d.tag) for d in classify_3local(x)}
    assert {(localize_decomposition(d, 2).key(), localize_decomposition(d, 2).tag) for d in total} == two
    assert {(localize_decomposition(d, 3).key(), localize_decomposition(d, 3).tag) for d in total} == three


def test_decomposition_str():
    d = WedgeDecomposition("V7", WedgeSpace(()), None, "Thm1.1/1a", "2")
    assert str(d) == "S9 v V7 [Thm1.1/1a]" and d.member == "1a"


SAMPLE = list(itertools.islice(invariants(SweepConfig()), 0, None, 211))


@pytest.mark.parametrize("local", ["2", "3", "total"])
def test_snapshot_against_statements(local):
    assert len(SAMPLE) > 500
    for x in SAMPLE:
        want = tt.expected(x, local)
        try:
            got = renders(CLASSIFY[local](x))
        except (FlagMismatch, NoCarrier) as exc:
            assert want == type(exc).__name__, (x, exc)
            continue
        assert not isinstance(want, str), (x, got)
        assert len(got) == len(set(got)) and set(got) == want, x


@pytest.mark.parametrize(
    "text, literal",
    [
        ("l = 1", "S5vS7"),
        ("l = 1; splitting = k=1", "Ceta7"),
        ("d = 2", "S6vS6"),
        ("", "*"),
    ],
)
def test_v7_examples(text, literal):
    assert build_V7(inv(text)).literal() == literal


def test_w7_examples():
    assert build_W7(inv("torsion = 3^1; splitting = r3=1")).literal() == "P6(3^1)vP7(3^1)"
    w = build_W7(inv("l = 2; torsion = 2^1; splitting = rbar=1 shat=1"))
    assert w.literal() == "S5vS7vC7[r=1]vC7{s=1}"
    assert renders(classify_total(inv(""))) == ["S9 v W7 [Thm1.2/1a]"]


def test_triple_on_p6_2_cubed():
    out = renders(classify_2local(inv("l = 1; torsion = 2^3; splitting = s=3 r=3; flags = triple")))
    assert "(V7/P6(2^3)) v (P6(2^3) u [1*i_eta3] e9) [Thm1.1/1c(ii)]" in out


def test_three_local_examples():
    x = inv("l = 1; torsion = 3^2; splitting = r3=2")
    assert build_L7(x).literal() == "P7(3^2)vP6(3^2)vS5vS7"
    assert renders(classify_3local(inv("l = 1; flags = p1"))) == ["(L7/S5) v (S5 u [1*alpha1] e9) [Thm3L/2]"]


def test_two_b_five():
    x = inv("l = 1; torsion = 2^1; splitting = shat=1 r=1; flags = theta p1")
    assert "(W7/C7{s=1}) v (C7{s=1} u [1*ihat_eta2 + 1*ihat_alpha1] e9) [Thm1.2/2b(v)]" in renders(classify_total(x))


def test_theta_lists_have_all_members():
    x = inv("l = 2; torsion = 2^1x3; splitting = k=0 s=1 r=1 rbar=1 shat=1 rcheck=1 scheck=1; flags = theta p1")
    two = {d.member for d in classify_2local(x)}
    assert two == {f"1b({m})" for m in ("i", "ii", "iii", "iv", "v", "vi")}
    total = {d.member for d in classify_total(x)}
    assert total == {f"2b({m})" for m in ("i", "ii", "iii", "iv", "v", "vi", "vii")}
