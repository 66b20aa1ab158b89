import pytest
from hypothesis import given, strategies as st

from sigma3 import catalog
from sigma3.cohomops import (
    ConePattern,
    additivity_transfer,
    case_key,
    eval_p1,
    eval_psi,
    eval_sq2,
    eval_theta,
    eval_triple,
    flags_from_vector,
    pattern_flags,
    pattern_of,
    patterns_realizing,
    same_case,
)
from sigma3.errors import NotApplicable, UnsupportedPattern
from sigma3.invariants import OperationFlags
from sigma3.wedgemap import AttachingVector, WedgeSpace, admissible_elements

from conftest import HOSTS8

P7_2 = catalog.moore(2, 2, 7)
S5 = catalog.sphere(5)


def vec(w, text):
    return AttachingVector.parse(WedgeSpace.parse(w), text)


@pytest.mark.parametrize(
    "pattern, value",
    [
        (ConePattern("A^s", P7_2, k2=1), True),
        (ConePattern("A^s", P7_2, k=1), False),
        (ConePattern("C_eta", catalog.sphere(7), k=1), True),
        (ConePattern("C_eta", catalog.sphere(7)), False),
    ],
)
def test_sq2(pattern, value):
    assert eval_sq2(pattern) is value


@pytest.mark.parametrize(
    "pattern, value",
    [
        (ConePattern("A^s", P7_2, k=1), True),
        (ConePattern("A^s", P7_2, k2=1), False),
        (ConePattern("A", catalog.sphere(6), k=1), True),
        (ConePattern("Ccheck", catalog.ccheck(1, 1, 7), k2=1), True),
        (ConePattern("Ccheck", catalog.ccheck(1, 1, 7), t=4), False),
        (ConePattern("Chat", catalog.chat(2, 7), k=1, t=4), True),
    ],
)
def test_theta(pattern, value):
    assert eval_theta(pattern) is value


@pytest.mark.parametrize("t, value", [(0, "trivial"), (1, "undefined"), (2, "iso"), (4, "trivial"), (6, "iso"), (9, "undefined")])
def test_psi(t, value):
    assert eval_psi(ConePattern("C_tnu", S5, t=t)) == value


@pytest.mark.parametrize("t, value", [(16, True), (8, True), (12, False), (0, False)])
def test_p1_on_sphere(t, value):
    assert eval_p1(ConePattern("C_tnu", S5, t=t)) is value


def test_triple():
    assert eval_triple(ConePattern("C_tnu", S5, t=12))
    assert not eval_triple(ConePattern("C_tnu", S5, t=16))
    assert eval_triple(ConePattern("A_r", catalog.moore(2, 3, 6), t=4))
    assert not eval_triple(ConePattern("A_r", catalog.moore(2, 2, 6), t=4))


def test_unsupported():
    with pytest.raises(UnsupportedPattern):
        eval_sq2(ConePattern("C_tnu", S5, t=4))
    with pytest.raises(UnsupportedPattern):
        eval_p1(ConePattern("A^s", P7_2, k=1))
    with pytest.raises(UnsupportedPattern):
        ConePattern("A", S5)
    with pytest.raises(UnsupportedPattern):
        ConePattern("A^s", P7_2, k=2)
    with pytest.raises(UnsupportedPattern):
        ConePattern("nope", S5)
    with pytest.raises(UnsupportedPattern):
        pattern_of(catalog.moore(2, 1, 8), catalog.pi(catalog.moore(2, 1, 8), 8).element([]))


def test_pattern_addition():
    s = ConePattern("A^s", P7_2, k=1) + ConePattern("A^s", P7_2, k2=1)
    assert (s.k, s.k2) == (1, 1)
    assert (ConePattern("C_tnu", S5, t=16) + ConePattern("C_tnu", S5, t=12)).t == 4
    with pytest.raises(UnsupportedPattern):
        ConePattern("C_tnu", S5, t=4) + ConePattern("A^s", P7_2)


def test_additivity_transfer():
    f, g = ConePattern("A^s", P7_2, k2=1), ConePattern("A^s", P7_2, k=1)
    assert additivity_transfer(f, g, "sq2") is True
    with pytest.raises(NotApplicable):
        additivity_transfer(g, f, "sq2")
    with pytest.raises(NotApplicable):
        additivity_transfer(f, ConePattern("A^s", catalog.moore(2, 1, 7)), "sq2")
    assert additivity_transfer(ConePattern("C_tnu", S5, t=16), ConePattern("C_tnu", S5, t=12), "p1") is True


def test_pattern_flags_lists_tabulated_ops():
    assert set(pattern_flags(ConePattern("C_tnu", S5, t=12))) == {"psi", "p1", "triple"}
    assert set(pattern_flags(ConePattern("M3", catalog.moore(3, 1, 6), t=1))) == {"p1"}


@given(st.sampled_from(HOSTS8).flatmap(lambda h: st.tuples(st.just(h), st.sampled_from(admissible_elements(h, 8)))))
def test_pattern_of_roundtrip(he):
    host, e = he
    p = pattern_of(host, e)
    assert p.element() == catalog.pi(host, 8).reduce(e)
    assert p.t % 4 == 0 or p.family == "M3"


@pytest.mark.parametrize(
    "wedge, vector, case, p1, star",
    [
        ("S5", "[0]", "1a", False, False),
        ("S5", "[1*alpha1]", "1a", True, False),
        ("S5", "[1*eta3]", "1c", False, False),
        ("P6(3^1)", "[1*i_alpha1]", "1a", True, True),
        ("P6(3^1)vS5", "[1*i_alpha1; 1*alpha1]", "1a", True, False),
        ("P7(2^2)vS6", "[1*etatilde; 1*eta2]", "2", False, False),
        ("S6", "[1*eta2]", "1b", False, False),
        ("C7{s=1}", "[1*ihat_eta2 + 1*ihat_alpha1]", "1b", True, False),
    ],
)
def test_flags_from_vector(wedge, vector, case, p1, star):
    f = flags_from_vector(vec(wedge, vector))
    assert f.two_local_case() == case
    assert (f.p1_nontrivial, f.condition_star) == (p1, star)
    assert f.psi_trivial


def test_case_key_ignores_star_without_p1():
    a = OperationFlags(theta_nontrivial=True, condition_star=True)
    b = OperationFlags(theta_nontrivial=True)
    assert same_case(a, b)
    assert case_key(a) != case_key(OperationFlags(theta_nontrivial=True, p1_nontrivial=True))


def test_patterns_realizing():
    # 4nu = alpha1 + eta3 also carries eta3
    assert [p.t for p in patterns_realizing(S5, "triple")] == [4, 12, 20]
    assert sorted(p.t for p in patterns_realizing(S5, "p1")) == [4, 8, 16, 20]
    assert patterns_realizing(catalog.sphere(7), "theta") == []
    sq2 = patterns_realizing(P7_2, "sq2")
    assert {(p.k, p.k2) for p in sq2} == {(0, 1), (1, 1)}
