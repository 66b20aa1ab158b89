import pytest
from hypothesis import given

from sigma3 import catalog
from sigma3.abelian import TorsionDecomposition
from sigma3.catalog import morph, pi
from sigma3.errors import Indeterminate, ParseError
from sigma3.invariants import ManifoldInvariants, SplittingData
from sigma3.wedgemap import (
    AttachingVector,
    EquivalenceMatrix,
    MorphExpr,
    WedgeSpace,
    act,
    admissible_elements,
    equivalent,
    general_attaching_form,
    parse_morph,
)

from conftest import admissible_vectors


def vec(w, text):
    w = WedgeSpace.parse(w)
    return AttachingVector.parse(w, text)


@pytest.mark.parametrize("text, lit", [("S6vS7", "S6vS7"), ("[P7(2^2)]", "P7(2^2)"), ("S5 v Ceta7", "S5vCeta7"), ("*", "*")])
def test_wedge_parse(text, lit):
    assert WedgeSpace.parse(text).literal() == lit


def test_wedge_parse_error_position():
    with pytest.raises(ParseError, match="position 2"):
        WedgeSpace.parse("S6xS7")


def test_vector_slot_count():
    with pytest.raises(ParseError, match="expected 2 slot"):
        vec("S6vS7", "[1*eta2]")


@given(admissible_vectors())
def test_vector_format_roundtrip(v):
    assert AttachingVector.parse(v.wedge, v.format()) == v


@pytest.mark.parametrize(
    "host, n",
    [("S5", 6), ("S6", 2), ("S7", 2), ("P7(2^1)", 4), ("P7(2^2)", 4), ("P6(2^2)", 2), ("Ceta7", 3), ("C7{s=1}", 6), ("P6(3^1)", 3)],
)
def test_admissible_domain_sizes(host, n):
    # nu-type coefficients are restricted to multiples of 4
    assert len(admissible_elements(catalog.parse_complex(host))) == n


def test_off_diagonal_eta_move():
    w = WedgeSpace.parse("S6vS7")
    m = EquivalenceMatrix.elementary(w, 0, 1, MorphExpr.single(morph("eta", "S7", "S6")))
    assert act(m, vec("S6vS7", "[0; 1*eta]")).format() == "[1*eta2; 1*eta]"
    assert act(m.inverse(), act(m, vec("S6vS7", "[0; 1*eta]"))) == vec("S6vS7", "[0; 1*eta]")
    assert m.certified()


def test_elementary_must_be_off_diagonal():
    w = WedgeSpace.parse("S6vS7")
    with pytest.raises(ValueError):
        EquivalenceMatrix.elementary(w, 1, 1, MorphExpr.identity())


def test_alpha_requires_homology_null():
    w = WedgeSpace.parse("P7(2^2)")
    with pytest.raises(ValueError):
        EquivalenceMatrix.alpha(w, 0, MorphExpr.identity())


def test_unit_sign_flips():
    w = WedgeSpace.parse("S5")
    m = EquivalenceMatrix.unit(w, 0)
    assert act(m, vec("S5", "[1*alpha1]")).format() == "[2*alpha1]"
    with pytest.raises(ValueError):
        EquivalenceMatrix.unit(w, 0, sign=2)


def test_products_keep_inverses():
    w = WedgeSpace.parse("S6vS7")
    a = EquivalenceMatrix.elementary(w, 0, 1, MorphExpr.single(morph("eta", "S7", "S6")))
    b = EquivalenceMatrix.unit(w, 1)
    ab = a.then(b)
    v = vec("S6vS7", "[1*eta2; 1*eta]")
    assert act(ab.inverse(), act(ab, v)) == v
    assert len(ab.certificate) == 2


def test_equivalent_bfs():
    w = WedgeSpace.parse("S6vS7")
    m = EquivalenceMatrix.elementary(w, 0, 1, MorphExpr.single(morph("eta", "S7", "S6")))
    assert equivalent(vec("S6vS7", "[0; 1*eta]"), vec("S6vS7", "[1*eta2; 1*eta]"), [m])
    assert not equivalent(vec("S6vS7", "[0; 0]"), vec("S6vS7", "[1*eta2; 0]"), [m])
    with pytest.raises(Indeterminate):
        equivalent(vec("S6vS7", "[0; 1*eta]"), vec("S6vS7", "[0; 0]"), [m], budget=1)


def test_parse_morph():
    f = parse_morph("q:P7(2^1)->S7")
    assert (f.tag, f.source, f.target) == ("q", catalog.moore(2, 1, 7), catalog.sphere(7))
    assert parse_morph("mult(3):S5->S5").k == 3
    with pytest.raises(ParseError):
        parse_morph("q P7(2^1) S7")


def test_general_attaching_form():
    inv = ManifoldInvariants(2, 1, TorsionDecomposition({2: [1]}), split=SplittingData(k=1, s=(1,), r=(1,)))
    form = general_attaching_form(inv)
    assert form.wedge.literal() == "S5vCeta7vS7vP7(2^1)vP6(2^1)"
    assert form.count() == 6 * 3 * 2 * 4 * 2
    assert all(form.contains(v) for v in form.vectors())
