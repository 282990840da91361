"""Tests for weighted ideals, Groebner bases and quotient Hilbert series"""

import pytest

from wflag.exceptions import InputValidationError, ResourceLimitError
from wflag.models import OrderKind
from wflag.services.catalog import get_entry, make_weighted
from wflag.services.ideals import (
    CY_WEIGHTS,
    WeightedMonomialOrder,
    appendix_ideal,
    buchberger,
    format_monomial,
    homogeneity_failures,
    ideal_from_terms,
    initial_ideal,
    is_homogeneous,
    load_appendix,
    monomial_hilbert_numerator,
    parse_monomial,
    pure_power_present,
    quotient_hilbert_series,
    restrict_to_stratum,
    weighted_degree,
)
from wflag.services.series import LaurentPoly


def two_quadrics(order=OrderKind.WDEGREVLEX):
    return ideal_from_terms(
        ("x", "y"), (1, 1),
        [("q1", [("1", "x^2"), ("-1", "y^2")]), ("q2", [("1", "x*y")])],
        order,
    )


def test_weighted_order_keys():
    """Test weighted degree first, then the tie-break"""
    revlex = WeightedMonomialOrder(OrderKind.WDEGREVLEX, (1, 2, 3))
    lex = WeightedMonomialOrder("wdeglex", (1, 2, 3))
    assert revlex((3, 0, 0)) < revlex((0, 0, 2))
    assert lex((1, 1, 0)) > lex((0, 0, 1))
    assert revlex((1, 1, 0)) > revlex((0, 0, 1))
    assert revlex == WeightedMonomialOrder("wdegrevlex", (1, 2, 3))
    assert revlex != lex
    assert hash(revlex) != hash(WeightedMonomialOrder("wdegrevlex", (1, 2, 4)))


def test_parse_and_format_monomials():
    """Test the monomial notation of the equation files"""
    names = ("x1", "x2", "x3")
    assert parse_monomial("x1*x3", names) == (1, 0, 1)
    assert parse_monomial("x3^2", names) == (0, 0, 2)
    assert format_monomial((2, 0, 1), names) == "x1^2*x3"
    assert format_monomial((0, 0, 0), names) == "1"
    assert weighted_degree((1, 0, 2), (3, 1, 2)) == 7
    with pytest.raises(InputValidationError):
        parse_monomial("x4*x1", names)


def test_homogeneity_is_checked():
    """Test rejection of an inhomogeneous generator"""
    with pytest.raises(InputValidationError) as exc:
        ideal_from_terms(("x", "y"), (1, 2), [("bad", [("1", "x^2"), ("1", "x*y")])])
    assert "bad" in str(exc.value)
    ideal = ideal_from_terms(("x", "y"), (1, 2), [("ok", [("1", "x^2"), ("1/3", "y")])])
    assert is_homogeneous(ideal.generators[0], ideal.weights)


def test_appendix_data_files():
    """Test the sizes of the stored equation sets"""
    lgr36 = appendix_ideal("lgr36")
    assert len(lgr36) == 21
    assert len(lgr36.names) == 14
    fl13 = appendix_ideal("fl13")
    assert len(fl13) == 36
    assert len(fl13.names) == 15
    assert [b.dimension for b in load_appendix("fl13").blocks] == [20, 15, 1]
    with pytest.raises(InputValidationError):
        appendix_ideal("gr26")


def test_stored_weight_tables():
    """Test homogeneity of the equations under the example weight tables"""
    assert homogeneity_failures("lgr36", CY_WEIGHTS["cy_lgr36"]) == []
    assert homogeneity_failures("fl13", CY_WEIGHTS["cy_fl13_a"]) == []
    assert homogeneity_failures("fl13", CY_WEIGHTS["cy_fl13_b"]) == []
    assert "B5" in homogeneity_failures("fl13", CY_WEIGHTS["cy_fl13_b_x10"])
    with pytest.raises(InputValidationError) as exc:
        appendix_ideal("fl13", CY_WEIGHTS["cy_fl13_b_x10"])
    assert "B5" in str(exc.value)
    with pytest.raises(InputValidationError):
        appendix_ideal("lgr36", (1,) * 13)


def test_stored_weights_match_ambient_weights():
    """Test that each table is a permutation of the variety's ambient weights"""
    cases = [("cy_lgr36", "lgr36", (1, 0, 0), 2), ("cy_fl13_a", "fl13", (1, 1, 0, 0), 0), ("cy_fl13_b", "fl13", (1, 1, 1, 0), -1)]
    for key, entry_id, mu, u in cases:
        v = make_weighted(get_entry(entry_id), mu, u)
        assert tuple(sorted(CY_WEIGHTS[key])) == v.ambient_weights


def test_buchberger_small_example():
    """Test the reduced basis of <x^2 - y^2, xy>"""
    gb = buchberger(two_quadrics())
    ring = gb.ring
    x, y = ring.gens
    assert set(initial_ideal(gb)) == {(2, 0), (1, 1), (0, 3)}
    assert set(map(str, gb.generators)) == {str(x**2 - y**2), str(x * y), str(y**3)}
    assert len(buchberger(two_quadrics(OrderKind.WDEGLEX))) == 3


def twisted_cubic_pair(order=OrderKind.WDEGREVLEX):
    return ideal_from_terms(
        ("x", "y", "z"), (1, 1, 1),
        [("f1", [("1", "x*y"), ("-1", "z^2")]), ("f2", [("1", "x*z"), ("-1", "y^2")])],
        order,
    )


def test_buchberger_tie_break_changes_basis():
    """Test <xy - z^2, xz - y^2>: y^2 leads under revlex, xz under lex"""
    revlex = buchberger(twisted_cubic_pair())
    assert set(map(str, revlex.generators)) == {"y**2 - x*z", "x*y - z**2", "x**2*z - y*z**2"}
    lex = buchberger(twisted_cubic_pair(OrderKind.WDEGLEX))
    assert set(map(str, lex.generators)) == {"x*z - y**2", "x*y - z**2", "y**3 - z**3"}
    assert quotient_hilbert_series(revlex).equivalent(quotient_hilbert_series(lex))


def test_buchberger_is_idempotent():
    """Test that a reduced basis is its own basis"""
    for order in (OrderKind.WDEGREVLEX, OrderKind.WDEGLEX):
        for ideal in (two_quadrics(order), twisted_cubic_pair(order)):
            gb = buchberger(ideal)
            again = buchberger(gb)
            assert set(map(str, again.generators)) == set(map(str, gb.generators))


def test_quotient_of_one_variable_square():
    """Test k[x]/<x^2> has numerator 1 - t^2"""
    ideal = ideal_from_terms(("x",), (1,), [("q", [("1", "x^2")])])
    hs = quotient_hilbert_series(ideal)
    assert hs.numerator == LaurentPoly.one_minus_t(2)
    assert hs.denom_exponents == (1,)


def test_buchberger_step_cap(settings_env):
    """Test the reduction-step limit"""
    settings_env(BUCHBERGER_STEP_CAP=1)
    with pytest.raises(ResourceLimitError):
        buchberger(two_quadrics())


def test_monomial_hilbert_numerators():
    """Test the pivot recursion on small monomial ideals"""
    assert monomial_hilbert_numerator([], (1, 1)) == 1
    assert monomial_hilbert_numerator([(0, 0)], (1, 1)).is_zero()
    assert monomial_hilbert_numerator([(1, 0)], (2, 1)) == LaurentPoly.one_minus_t(2)
    assert monomial_hilbert_numerator([(2, 0), (0, 2)], (1, 1)) == LaurentPoly.one_minus_t(2) ** 2
    lines = monomial_hilbert_numerator([(1, 1, 0), (1, 0, 1), (0, 1, 1)], (1, 1, 1))
    assert lines == LaurentPoly({0: 1, 2: -3, 3: 2})
    redundant = monomial_hilbert_numerator([(2, 0), (3, 1), (2, 0)], (1, 1))
    assert redundant == LaurentPoly.one_minus_t(2)


def test_quotient_of_two_quadrics():
    """Test that a complete intersection of two quadrics has numerator (1-t^2)^2"""
    hs = quotient_hilbert_series(two_quadrics())
    assert hs.numerator == LaurentPoly.one_minus_t(2) ** 2
    assert hs.denom_exponents == (1, 1)


def test_weight_two_stratum_squares():
    """Test the squares surviving on the weight-2 stratum of the wLGr(3,6) equations"""
    ideal = appendix_ideal("lgr36", CY_WEIGHTS["cy_lgr36"])
    stratum = [name for name, w in zip(ideal.names, ideal.weights) if w == 2]
    assert stratum == ["x5", "x7", "x8", "x10"]
    restricted = restrict_to_stratum(ideal, stratum)
    assert 0 < len(restricted) < len(ideal)
    for var in ("x7", "x8", "x10"):
        assert pure_power_present(restricted, var, 2)
    assert not pure_power_present(restricted, "x7", 3)
    with pytest.raises(InputValidationError):
        restrict_to_stratum(ideal, ["x15"])


@pytest.mark.slow
def test_lgr36_quotient_matches_weyl_sum():
    """Test the Groebner quotient of the LGr(3,6) equations under unit and weighted gradings"""
    straight = quotient_hilbert_series(appendix_ideal("lgr36"))
    assert straight.equivalent(make_weighted(get_entry("lgr36"), (0, 0, 0), 1).series)
    weighted = quotient_hilbert_series(appendix_ideal("lgr36", CY_WEIGHTS["cy_lgr36"]))
    assert weighted.equivalent(make_weighted(get_entry("lgr36"), (1, 0, 0), 2).series)


@pytest.mark.slow
def test_fl13_quotient_matches_weyl_sum():
    """Test the Groebner quotient of the FL(1,3) equations"""
    straight = quotient_hilbert_series(appendix_ideal("fl13"))
    assert straight.equivalent(make_weighted(get_entry("fl13"), (0, 0, 0, 0), 1).series)


@pytest.mark.slow
def test_quotient_is_order_independent():
    """Test that both tie-breaks give the same Hilbert series"""
    for ideal_id in ("lgr36", "fl13"):
        ideal = appendix_ideal(ideal_id)
        revlex = quotient_hilbert_series(ideal, OrderKind.WDEGREVLEX)
        lex = quotient_hilbert_series(ideal, OrderKind.WDEGLEX)
        assert revlex.equivalent(lex)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
