"""Degree, genus and quasi-polynomial data of polarized threefolds read off Hilbert series"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import TYPE_CHECKING, List, Optional, Tuple
import logging

import sympy as sp

from wflag.config import get_settings
from wflag.exceptions import ConventionError, DimensionMismatchError, InputValidationError, PeriodTooSmallError
from wflag.models import TargetClass
from wflag.services.series import HilbertSeries, LaurentPoly, expand

if TYPE_CHECKING:
    from wflag.services.construct import ConstructedVariety

logger = logging.getLogger(__name__)

_N = sp.Symbol("n")


@dataclass(frozen=True)
class QuasiPolynomial:
    """Cubic polynomials per residue class mod period reproducing h^0(nD) for n >= stabilization_index"""
    period: int
    polys: Tuple[Tuple[Fraction, Fraction, Fraction, Fraction], ...]  # constant term first
    stabilization_index: int

    def evaluate(self, n: int) -> Fraction:
        coeffs = self.polys[n % self.period]
        return sum((c * n ** k for k, c in enumerate(coeffs)), Fraction(0))

    @property
    def cubic_coefficient(self) -> Fraction:
        return self.polys[0][3]

    @property
    def linear_avg(self) -> Fraction:
        return sum((p[1] for p in self.polys), Fraction(0)) / self.period

    @property
    def dc2_estimate(self) -> Fraction:
        return 12 * self.linear_avg


@dataclass(frozen=True)
class CandidateInvariants:
    degree: Fraction
    genus: Optional[int] = None
    dc2_estimate: Optional[Fraction] = None
    fit_period: Optional[int] = None


def degree_of_series(hs: HilbertSeries, dim: int) -> Fraction:
    """lim (1-t)^(dim+1) P(t), after cancelling (1-t) from the numerator"""
    numerator = hs.numerator
    if numerator.is_zero():
        raise DimensionMismatchError("Zero Hilbert series has no degree")
    one_minus_t = LaurentPoly.one_minus_t(1)
    cancelled = 0
    while numerator.evaluate(1) == 0:
        numerator = numerator.divide_exact(one_minus_t, "cancelling (1-t)")
        cancelled += 1
    pole = len(hs.denom_exponents) - cancelled
    if pole != dim + 1:
        raise DimensionMismatchError(
            f"Series has a pole of order {pole} at t=1, expected {dim + 1} for dimension {dim}"
        )
    weight_product = 1
    for w in hs.denom_exponents:
        weight_product *= w
    return numerator.evaluate(1) / weight_product


def degree(v: "ConstructedVariety") -> Fraction:
    """D^n of the polarization"""
    return degree_of_series(v.series, v.dim)


def genus_from_degree(value: Fraction) -> int:
    """g with D^3 = 2g - 2"""
    g = Fraction(value) / 2 + 1
    if g.denominator != 1 or g < 0:
        raise ConventionError(f"Degree {value} does not give a nonnegative integral genus")
    return g.numerator


def fano_genus(v: "ConstructedVariety", require_anticanonical: bool = True) -> int:
    """Genus of an anticanonically polarized Fano threefold"""
    if require_anticanonical and (v.canonical_degree != -1 or v.dim != 3):
        raise ConventionError(
            f"Genus needs an anticanonical threefold; got dimension {v.dim} with K = O({v.canonical_degree})"
        )
    return genus_from_degree(degree(v))


def _fit_residue(samples: List[Tuple[int, int]]) -> Optional[Tuple[Fraction, ...]]:
    poly = sp.Poly(sp.interpolate(samples, _N), _N)
    coeffs = [Fraction(int(sp.Rational(c).p), int(sp.Rational(c).q)) for c in reversed(poly.all_coeffs())]
    if len(coeffs) > 4:
        return None
    return tuple(coeffs + [Fraction(0)] * (4 - len(coeffs)))


def quasipoly_fit(v: "ConstructedVariety", period: Optional[int] = None) -> QuasiPolynomial:
    """
    Fit one cubic per residue class mod period to the expanded Hilbert series.

    Args:
        v: Threefold
        period: Defaults to the lcm of the ambient weights

    Returns:
        QuasiPolynomial validated on two further coefficients per residue class

    Raises:
        InputValidationError: if period is not positive
        PeriodTooSmallError: if no stabilization index up to FIT_MAX_START validates
    """
    if v.dim != 3:
        raise DimensionMismatchError(f"Quasi-polynomial fit needs a threefold, got dimension {v.dim}")
    if period is not None and period <= 0:
        raise InputValidationError(f"Quasi-polynomial period must be a positive integer, got {period}")
    m = lcm(*v.ambient_weights) if period is None else period
    max_start = get_settings().FIT_MAX_START
    h = expand(v.series, max_start + 6 * m + 1)

    for start in range(max_start + 1):
        polys = []
        for r in range(m):
            first = start + (r - start) % m
            points = [first + k * m for k in range(6)]
            fit = _fit_residue([(n, h[n]) for n in points[:4]])
            if fit is None:
                break
            poly = QuasiPolynomial(1, (fit,), start)
            if any(poly.evaluate(n) != h[n] for n in points[4:]):
                break
            polys.append((r, fit))
        else:
            ordered = tuple(fit for _, fit in sorted(polys))
            if len({p[3] for p in ordered}) == 1:
                qp = QuasiPolynomial(m, ordered, start)
                logger.debug(f"Quasi-polynomial fit for {v.label}: period {m}, start {start}")
                return qp
    raise PeriodTooSmallError(f"No quasi-polynomial of period {m} fits {v.label} from n <= {max_start}")


def threefold_class(canonical_degree: int) -> Optional[TargetClass]:
    """CY3 for K = 0, Fano3 for K < 0, None when K is ample"""
    if canonical_degree == 0:
        return TargetClass.CY3
    if canonical_degree < 0:
        return TargetClass.FANO3
    return None


def candidate_invariants(v: "ConstructedVariety", target: TargetClass) -> CandidateInvariants:
    """Invariants attached to search candidates"""
    value = degree(v)
    if target == TargetClass.FANO3:
        genus = None
        if v.canonical_degree == -1:
            try:
                genus = genus_from_degree(value)
            except ConventionError:
                logger.debug(f"{v.label}: degree {value} gives no integral genus")
        return CandidateInvariants(degree=value, genus=genus)
    try:
        qp = quasipoly_fit(v)
    except PeriodTooSmallError as e:
        logger.debug(str(e))
        return CandidateInvariants(degree=value)
    return CandidateInvariants(degree=value, dc2_estimate=qp.dc2_estimate, fit_period=qp.period)
