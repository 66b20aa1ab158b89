import pytest
from hypothesis import given, strategies as st

from sigma3 import abelian, catalog
from sigma3.catalog import apply, morph, pi
from sigma3.errors import ParseError, UnknownComposite, UnsupportedTable

from conftest import HOSTS8
from table_rows import ROWS


def el(host, degree, text):
    h = catalog.parse_complex(host) if isinstance(host, str) else host
    return pi(h, degree).parse_element(text)


def test_enough_rows():
    assert len(ROWS) >= 40


@pytest.mark.parametrize("host, degree, expected", ROWS, ids=[f"{h}-{d}" for h, d, _ in ROWS])
def test_table_snapshot(host, degree, expected):
    assert str(pi(catalog.parse_complex(host), degree)) == expected


@pytest.mark.parametrize(
    "literal", ["S5", "P7(2^2)", "P6(3^1)", "Ceta7", "C7[r=2]", "C7{s=3}", "C7[r=1]{s=2}"]
)
def test_literal_roundtrip(literal):
    assert catalog.parse_complex(literal).literal() == literal


@pytest.mark.parametrize("bad", ["S", "P7(4^1)", "C7", "P7(2^1)x", "Q5"])
def test_literal_errors(bad):
    with pytest.raises(ParseError):
        catalog.parse_complex(bad)


def test_untabulated_degree():
    with pytest.raises(UnsupportedTable):
        pi(catalog.sphere(5), 12)


def test_aliases():
    s5 = pi(catalog.sphere(5), 8)
    assert s5.lookup("eta3") == s5.element([(12, "nu")])
    assert s5.lookup("alpha1") == s5.element([(16, "nu")])
    # 3-primary Moore spaces print the alpha name rather than nu
    m3 = pi(catalog.moore(3, 1, 6), 8)
    assert m3.format_element(m3.lookup("i_nu")) == "1*i_alpha1"


@given(st.sampled_from(HOSTS8), st.data())
def test_format_parse_roundtrip(host, data):
    t = pi(host, 8)
    e = data.draw(st.sampled_from(list(abelian.elements(t.group))))
    assert t.parse_element(t.format_element(e)) == e


def test_unknown_token_lists_known_ones():
    with pytest.raises(ParseError, match="known:"):
        pi(catalog.sphere(7), 8).parse_element("1*nu")


# ---------------------------------------------------------------------------
# composition identities


@pytest.mark.parametrize("r", [1, 2, 3])
def test_q_etatilde_is_eta(r):
    f = morph("q", f"P7(2^{r})", "S7")
    assert apply(f, el(f"P7(2^{r})", 8, "1*etatilde"), 8) == el("S7", 8, "1*eta")


def test_twice_etatilde1():
    t = pi(catalog.moore(2, 1, 7), 8)
    i = morph("i", "S6", "P7(2^1)")
    assert abelian.scale(t.group, t.lookup("etatilde"), 2) == apply(i, el("S6", 8, "1*eta2"), 8)


@pytest.mark.parametrize("r, s", [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)])
def test_B_chi_carries_etatilde(r, s):
    f = morph("B", f"P7(2^{r})", f"P7(2^{s})")
    assert apply(f, el(f"P7(2^{r})", 8, "1*etatilde"), 8) == el(f"P7(2^{s})", 8, "1*etatilde")


def test_zetabar_i_eta_is_two():
    f = morph("zetabar", "Ceta7", "S5")
    assert apply(f, el("Ceta7", 5, "1*i_eta"), 5) == el("S5", 5, "2*id")


@pytest.mark.parametrize("m, d", [(6, 8), (7, 9)])
def test_eta_cubed(m, d):
    f = morph("eta", f"S{m}", f"S{m - 1}")
    assert apply(f, el(f"S{m}", d, "1*eta2"), d) == el(f"S{m - 1}", d, "12*nu")


@pytest.mark.parametrize("r, rp", [(1, 2), (1, 3), (2, 3)])
def test_qbar_ibarP(r, rp):
    f = morph("ibar_P", f"P6(2^{r})", f"C7[r={r}]")
    g = morph("qbar", f"C7[r={r}]", f"P6(2^{rp})")
    e = el(f"P6(2^{r})", 8, "1*etatilde_eta")
    assert apply(g, apply(f, e, 8), 8) == el(f"P6(2^{rp})", 8, "1*etatilde_eta")


def test_mult_and_signature_checks():
    f = morph("mult", "S5", "S5", k=3)
    assert apply(f, el("S5", 8, "1*nu"), 8) == el("S5", 8, "3*nu")
    with pytest.raises(ValueError):
        morph("eta", "S5", "S7")
    with pytest.raises(ValueError):
        morph("nonsense", "S5", "S5")


def test_unstable_composite_is_unknown():
    f = morph("eta", "S5", "S4")
    with pytest.raises(UnknownComposite):
        apply(f, el("S5", 7, "1*eta2"), 7)


# ---------------------------------------------------------------------------
# homology


@pytest.mark.parametrize(
    "literal, expected",
    [
        ("S5", {5: "Z"}),
        ("P7(2^2)", {6: "Z/4"}),
        ("Ceta7", {5: "Z", 7: "Z"}),
        ("C7[r=2]", {5: "Z/4", 7: "Z"}),
        ("C7{s=3}", {5: "Z", 6: "Z/8"}),
        ("C7[r=1]{s=2}", {5: "Z/2", 6: "Z/4"}),
    ],
)
def test_cellular_homology(literal, expected):
    got = {k: str(g) for k, g in catalog.homology(catalog.parse_complex(literal)) if not g.is_trivial()}
    assert got == expected


def test_suspension_divisibility():
    assert catalog.suspension_divisibility(catalog.moore(2, 2, 5), 4)
    assert not catalog.suspension_divisibility(catalog.moore(2, 2, 5), 2)
    assert not catalog.suspension_divisibility(catalog.ceta(6), 1)
    with pytest.raises(UnsupportedTable):
        catalog.suspension_divisibility(catalog.sphere(5), 1)
