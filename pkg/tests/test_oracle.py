import pytest

from sigma3.errors import Indeterminate, UnsupportedTable
from sigma3.oracle import (
    OracleConfig,
    cross_check,
    enumerate_vectors,
    generate_moves,
    orbit_partition,
    state_count,
)
from sigma3.wedgemap import WedgeSpace


def W(text):
    return WedgeSpace.parse(text)


def orbit_sets(report):
    return {frozenset(v.format() for v in members) for _, _, members in report.orbits}


def test_s6_s7_orbits():
    rep = cross_check("S6vS7")
    assert (rep.vector_count, rep.orbit_count) == (4, 3)
    assert orbit_sets(rep) == {
        frozenset({"[0; 0]"}),
        frozenset({"[1*eta2; 0]"}),
        frozenset({"[0; 1*eta]", "[1*eta2; 1*eta]"}),
    }
    assert rep.ok and not rep.mismatches and not rep.collisions


def test_p7_four_vectors():
    rep = cross_check("P7(2^2)")
    assert rep.vector_count == 4
    assert rep.ok


def test_no_moves_gives_singletons():
    w = W("P7(2^1)vS7")
    rep = orbit_partition(w, moves=[])
    assert rep.orbit_count == rep.vector_count == state_count(w, admissible_only=True)


def test_enumeration_order_irrelevant():
    w = W("S5vS6vS7")
    assert orbit_sets(orbit_partition(w)) == orbit_sets(orbit_partition(w, reverse=True))


def test_missing_moves_show_up_as_collisions():
    rep = cross_check("S6vS7", moves=[])
    assert rep.collisions and not rep.ok


def test_budget():
    with pytest.raises(Indeterminate):
        orbit_partition(W("S5vS5vS5"), config=OracleConfig(budget=100))


def test_state_count_matches_enumeration():
    w = W("S5vP7(2^1)vCeta7")
    assert state_count(w) == sum(1 for _ in enumerate_vectors(w)) == 24 * 4 * 12
    assert state_count(w, admissible_only=True) == 6 * 4 * 3


def test_infinite_group_rejected():
    with pytest.raises(UnsupportedTable):
        state_count(W("S8"))


def test_moves_include_signs():
    w = W("S6vS7")
    assert len(generate_moves(w)) >= len(w)


def test_report_format():
    text = cross_check("S6vS7").format()
    assert "S6vS7" in text and "3" in text

