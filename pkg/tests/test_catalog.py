"""Tests for the flag variety registry and weighted flag varieties"""

import pytest

from wflag.exceptions import InputValidationError, IntegralityError
from wflag.services.catalog import (
    canonical_formula,
    canonical_formula_check,
    catalog,
    expected_representation_dim,
    get_entry,
    make_weighted,
)
from wflag.utils.rationals import format_multiset


def test_catalog_rows():
    """Test the nine rows in table order"""
    rows = catalog()
    assert [e.id for e in rows] == ["fl12", "ogr510", "gr26", "lgr36", "g2", "fl13", "e6", "gr27", "gr36"]
    assert [e.expected_num_quadrics for e in rows] == [9, 10, 15, 21, 28, 36, 27, 35, 35]
    assert [e.id for e in rows if e.slow] == ["e6"]
    assert [e.id for e in rows if e.coordinates == "omega"] == ["g2", "e6"]
    assert get_entry("lgr36").coordinates == "epsilon"


def test_get_entry_unknown():
    """Test lookup of an unknown id"""
    with pytest.raises(InputValidationError) as exc:
        get_entry("gr25")
    assert "lgr36" in str(exc.value)


def test_representation_dimensions():
    """Test dim V_lambda = N + 1 for every row"""
    for entry in catalog():
        assert expected_representation_dim(entry) == entry.ambient_dim + 1


@pytest.mark.parametrize("entry_id", ["fl12", "ogr510", "gr26", "lgr36", "g2", "fl13", "gr27", "gr36"])
def test_straight_embeddings(entry_id):
    """Test dimension, codimension and quadric count at mu=0, u=1"""
    entry = get_entry(entry_id)
    v = make_weighted(entry, (0,) * entry.mu_length, 1)
    assert v.ambient_weights == (1,) * (entry.ambient_dim + 1)
    assert v.dim == entry.expected_dim
    assert v.codim == entry.expected_codim
    assert -v.series.numerator.coefficient(2) == entry.expected_num_quadrics


@pytest.mark.slow
def test_straight_e6():
    """Test the Cayley plane in P^26"""
    entry = get_entry("e6")
    v = make_weighted(entry, (0,) * 6, 1)
    assert (v.dim, v.codim) == (16, 10)
    assert -v.series.numerator.coefficient(2) == 27
    assert v.canonical_degree == -12


def test_gr27_and_gr36_share_a_numerator():
    """Test the coincidence of the two codimension-10 numerators"""
    gr27 = make_weighted(get_entry("gr27"), (0,) * 7, 1)
    gr36 = make_weighted(get_entry("gr36"), (0,) * 6, 1)
    assert gr27.series.numerator == gr36.series.numerator


def test_lgr36_shifted_weights():
    """Test wLGr(3,6) at mu=(1,0,0), u=2"""
    v = make_weighted(get_entry("lgr36"), (1, 0, 0), 2)
    assert format_multiset(v.ambient_weights) == "1^5,2^4,3^5"
    assert v.canonical_degree == -8
    assert v.dim == 6


def test_fl13_shift_zero_weights():
    """Test wFL(1,3) at mu=(1,1,0,0), u=0"""
    v = make_weighted(get_entry("fl13"), (1, 1, 0, 0), 0)
    assert format_multiset(v.ambient_weights) == "1^4,2^7,3^4"
    assert v.canonical_degree == -6


def test_fl13_negative_shift_readings():
    """Test both readings of the second wFL(1,3) example"""
    entry = get_entry("fl13")
    dominant = make_weighted(entry, (1, 1, 1, 0), -1)
    assert format_multiset(dominant.ambient_weights) == "1^3,2^9,3^3"
    assert dominant.canonical_degree == -6
    shifted = make_weighted(entry, (0, 1, 1, 1), 2)
    assert format_multiset(shifted.ambient_weights) == "4^3,5^9,6^3"
    assert shifted.canonical_degree == -15


def test_canonical_closed_forms():
    """Test K = -4u for lgr36 and K = -3(s+u) for fl13"""
    lgr36, fl13 = get_entry("lgr36"), get_entry("fl13")
    for mu, u in [((0, 0, 0), 1), ((1, 0, 0), 2), ((2, 1, 1), 5)]:
        assert canonical_formula_check(lgr36, mu, u)
    for mu, u in [((0, 0, 0, 0), 1), ((1, 1, 0, 0), 0), ((2, 1, 0, 0), 1)]:
        assert canonical_formula_check(fl13, mu, u)
    assert canonical_formula(get_entry("gr26"), (0,) * 6, 1) is None
    with pytest.raises(InputValidationError):
        canonical_formula_check(get_entry("gr26"), (0,) * 6, 1)


def test_make_weighted_validation():
    """Test rejection of zero, fractional and misshapen inputs"""
    with pytest.raises(InputValidationError):
        make_weighted(get_entry("lgr36"), (0, 0, 0), 0)
    with pytest.raises(IntegralityError):
        make_weighted(get_entry("ogr510"), (1, 0, 0, 0, 0), 0)
    with pytest.raises(InputValidationError):
        make_weighted(get_entry("lgr36"), (1, 0), 2)


def test_ogr510_integral_point():
    """Test an admissible half-integral coweight pairing"""
    v = make_weighted(get_entry("ogr510"), (1, 1, 0, 0, 0), 2)
    assert min(v.ambient_weights) == 1
    assert len(v.ambient_weights) == 16


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
