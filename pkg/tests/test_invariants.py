"""Tests for degrees, genera and quasi-polynomial fits"""

from fractions import Fraction

import pytest

from wflag.exceptions import ConventionError, DimensionMismatchError, InputValidationError
from wflag.models import Section, TargetClass
from wflag.services.catalog import get_entry, make_weighted
from wflag.services.construct import ConstructedVariety, apply_ops, cone, parse_ops
from wflag.services.invariants import (
    candidate_invariants,
    degree,
    degree_of_series,
    fano_genus,
    genus_from_degree,
    quasipoly_fit,
    threefold_class,
)
from wflag.services.series import expand


def weighted(entry_id, mu, u):
    return ConstructedVariety.from_base(make_weighted(get_entry(entry_id), mu, u))


def test_degree_of_straight_lgr36():
    """Test deg LGr(3,6) = 16"""
    v = make_weighted(get_entry("lgr36"), (0, 0, 0), 1)
    assert degree_of_series(v.series, 6) == 16
    with pytest.raises(DimensionMismatchError):
        degree_of_series(v.series, 5)


def test_genus_from_degree():
    """Test D^3 = 2g - 2"""
    assert genus_from_degree(16) == 9
    assert genus_from_degree(20) == 11
    with pytest.raises(ConventionError):
        genus_from_degree(3)
    with pytest.raises(ConventionError):
        genus_from_degree(Fraction(64, 9))


def test_fano_linear_sections():
    """Test genus 9 and genus 11 Fano threefolds"""
    lgr = apply_ops(weighted("lgr36", (0, 0, 0), 1), [Section(1)] * 3)
    assert degree(lgr) == 16
    assert fano_genus(lgr) == 9
    fl = apply_ops(weighted("fl13", (0, 0, 0, 0), 1), [Section(1)] * 2)
    assert degree(fl) == 20
    assert fano_genus(fl) == 11


def test_fano_genus_requires_anticanonical():
    """Test rejection of non-anticanonical polarizations"""
    x = apply_ops(weighted("lgr36", (1, 0, 0), 2), [Section(3), Section(3), Section(2)])
    with pytest.raises(ConventionError):
        fano_genus(x)


def test_degree_survives_cone_and_section():
    """Test invariance of D^n under a cone and a quasilinear section"""
    x = apply_ops(weighted("lgr36", (1, 0, 0), 2), [Section(3), Section(3), Section(2)])
    assert degree(apply_ops(cone(x, 2), [Section(2)])) == degree(x)


def test_general_section_multiplies_degree():
    """Test that a degree-d hypersurface section multiplies D^n by d"""
    p3 = ConstructedVariety.projective_space((1, 1, 1, 1))
    assert degree(apply_ops(p3, [Section(3, quasilinear=False)])) == 3 * degree(p3)


def test_quintic_quasipolynomial():
    """Test the quintic threefold: period one, D.c2 = 50"""
    quintic = ConstructedVariety.complete_intersection((1,) * 5, (5,))
    qp = quasipoly_fit(quintic)
    assert qp.period == 1
    assert qp.cubic_coefficient == Fraction(5, 6)
    assert qp.dc2_estimate == 50
    assert qp.stabilization_index <= 1


def test_lgr36_calabi_yau_quasipolynomial():
    """Test the period-6 fit for the wLGr(3,6) Calabi-Yau"""
    x = apply_ops(weighted("lgr36", (1, 0, 0), 2), [Section(3), Section(3), Section(2)])
    qp = quasipoly_fit(x)
    assert qp.period == 6
    assert 6 * qp.cubic_coefficient == degree(x)
    h = expand(x.series, 40)
    assert all(qp.evaluate(n) == h[n] for n in range(qp.stabilization_index, 41))


def test_quasipoly_fit_requires_threefold():
    """Test the dimension precondition"""
    with pytest.raises(DimensionMismatchError):
        quasipoly_fit(weighted("lgr36", (0, 0, 0), 1))


def test_quasipoly_fit_rejects_nonpositive_period():
    """Test that period 0 or below is an input error, not the default period"""
    quintic = ConstructedVariety.complete_intersection((1,) * 5, (5,))
    for period in (0, -2):
        with pytest.raises(InputValidationError) as exc:
            quasipoly_fit(quintic, period)
        assert "period" in str(exc.value)
    assert quasipoly_fit(quintic, 2).period == 2


def test_threefold_class_by_canonical_sign():
    """Test CY3 for K = 0, Fano3 for K < 0 and no class for ample K"""
    assert threefold_class(0) == TargetClass.CY3
    assert threefold_class(-2) == TargetClass.FANO3
    assert threefold_class(5) is None


def test_candidate_invariants():
    """Test the invariants attached to search candidates"""
    cy = apply_ops(weighted("fl13", (1, 1, 0, 0), 0), parse_ops("cone:1,section:2,section:2,section:3"))
    inv = candidate_invariants(cy, TargetClass.CY3)
    assert inv.degree == Fraction(76, 9)
    assert inv.genus is None
    fano = apply_ops(weighted("lgr36", (0, 0, 0), 1), [Section(1)] * 3)
    inv = candidate_invariants(fano, TargetClass.FANO3)
    assert inv.genus == 9
    assert inv.dc2_estimate is None


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
