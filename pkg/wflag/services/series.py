"""Exact Laurent polynomials, Hilbert series and the closed-form oracles"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union
import logging

from wflag.exceptions import (
    IllPosedSeriesError,
    InputValidationError,
    IntegralityError,
    InternalAssertionError,
)
from wflag.services.lattice import (
    RootSystem,
    WeightSystem,
    _sub,
    pair,
    vec,
    weight_system,
    weyl_group,
)
from wflag.utils.rationals import format_numerator, format_vector, pretty_rational

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


class LaurentPoly:
    """Sparse Laurent polynomial in t with exact rational coefficients"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, Rational]] = None):
        self._terms: Dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self._terms[int(e)] = Fraction(c)

    @classmethod
    def _raw(cls, terms: Dict[int, Fraction]) -> "LaurentPoly":
        poly = cls.__new__(cls)
        poly._terms = terms
        return poly

    @classmethod
    def monomial(cls, exponent: int, coefficient: Rational = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, value: Rational) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def one_minus_t(cls, d: int) -> "LaurentPoly":
        """1 - t^d"""
        if d == 0:
            return cls()
        return cls({0: 1, d: -1})

    # Inspection

    def is_zero(self) -> bool:
        return not self._terms

    def low_degree(self) -> int:
        if not self._terms:
            raise InputValidationError("Zero polynomial has no degree")
        return min(self._terms)

    def high_degree(self) -> int:
        if not self._terms:
            raise InputValidationError("Zero polynomial has no degree")
        return max(self._terms)

    def coefficient(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def coefficients(self) -> List[Tuple[int, Fraction]]:
        """Sparse (exponent, coefficient) pairs, ascending exponent"""
        return sorted(self._terms.items())

    def evaluate(self, x: Rational) -> Fraction:
        x = Fraction(x)
        return sum((c * x ** e for e, c in self._terms.items()), Fraction(0))

    # Arithmetic

    def __add__(self, other: Union["LaurentPoly", Rational]) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union["LaurentPoly", Rational]) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: Rational) -> "LaurentPoly":
        return LaurentPoly.constant(other) - self

    def __mul__(self, other: Union["LaurentPoly", Rational]) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            k = Fraction(other)
            if not k:
                return LaurentPoly()
            return LaurentPoly._raw({e: c * k for e, c in self._terms.items()})
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise InputValidationError("Negative powers of a Laurent polynomial are not supported")
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k"""
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def substitute_power(self, c: int) -> "LaurentPoly":
        """Substitute t -> t^c"""
        if c == 0:
            return LaurentPoly.constant(sum(self._terms.values(), Fraction(0)))
        return LaurentPoly._raw({e * c: v for e, v in self._terms.items()})

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly._raw({e - 1: e * c for e, c in self._terms.items() if e})

    def divmod(self, other: "LaurentPoly") -> Tuple["LaurentPoly", "LaurentPoly"]:
        """Division after normalizing both sides to a nonzero constant term.

        Returns (q, r) with self = q * other + r.
        """
        if other.is_zero():
            raise ZeroDivisionError("Division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly(), LaurentPoly()
        sa, sb = self.low_degree(), other.low_degree()
        divisor = {e - sb: c for e, c in other._terms.items()}
        top_b = max(divisor)
        lead_b = divisor[top_b]
        rem = {e - sa: c for e, c in self._terms.items()}
        quotient: Dict[int, Fraction] = {}
        while rem:
            top = max(rem)
            if top < top_b:
                break
            k = rem[top] / lead_b
            qe = top - top_b
            quotient[qe] = k
            for e, c in divisor.items():
                key = qe + e
                v = rem.get(key, 0) - k * c
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        q = LaurentPoly._raw({e + sa - sb: c for e, c in quotient.items()})
        r = LaurentPoly._raw({e + sa: c for e, c in rem.items()})
        return q, r

    def divide_exact(self, other: "LaurentPoly", context: str = "") -> "LaurentPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            where = f" ({context})" if context else ""
            raise InternalAssertionError(f"Inexact polynomial division{where}: remainder {r}")
        return q

    # Comparison and display

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == LaurentPoly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return format_numerator(self.coefficients())

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def product_one_minus(exponents: Iterable[int]) -> LaurentPoly:
    """prod (1 - t^d)"""
    result = LaurentPoly.constant(1)
    for d in exponents:
        result = result * LaurentPoly.one_minus_t(d)
    return result


@dataclass(frozen=True)
class HilbertSeries:
    """numerator / prod(1 - t^d) over the denominator exponents"""
    numerator: LaurentPoly
    denom_exponents: Tuple[int, ...]

    def __post_init__(self):
        exps = tuple(sorted(int(d) for d in self.denom_exponents))
        if any(d <= 0 for d in exps):
            raise IllPosedSeriesError(f"Denominator exponents must be positive, got {list(exps)}")
        object.__setattr__(self, "denom_exponents", exps)

    @classmethod
    def weighted_projective(cls, weights: Sequence[int]) -> "HilbertSeries":
        return cls(LaurentPoly.constant(1), tuple(weights))

    def denominator(self) -> LaurentPoly:
        return product_one_minus(self.denom_exponents)

    @property
    def adjunction_number(self) -> int:
        return self.numerator.high_degree()

    @property
    def canonical_degree(self) -> int:
        return self.adjunction_number - sum(self.denom_exponents)

    def equivalent(self, other: "HilbertSeries") -> bool:
        """Equality as rational functions"""
        return self.numerator * other.denominator() == other.numerator * self.denominator()

    def over(self, exponents: Sequence[int]) -> "HilbertSeries":
        """Re-express the same rational function over prod(1 - t^d), d in exponents"""
        num = (self.numerator * product_one_minus(exponents)).divide_exact(
            self.denominator(), "re-expressing a Hilbert series"
        )
        return HilbertSeries(num, tuple(exponents))

    def __str__(self) -> str:
        return f"({self.numerator}) / prod(1-t^d) for d in {list(self.denom_exponents)}"


def expand(hs: HilbertSeries, n_max: int, require_nonnegative: bool = True) -> List[int]:
    """Coefficients h_0..h_{n_max} of the power series expansion"""
    if n_max < 0:
        raise InputValidationError(f"Expansion order must be nonnegative, got {n_max}")
    num = hs.numerator
    if not num.is_zero() and num.low_degree() < 0:
        raise IllPosedSeriesError(f"Numerator has negative exponent t^{num.low_degree()}")
    coeffs = [num.coefficient(n) for n in range(n_max + 1)]
    for d in hs.denom_exponents:
        for n in range(d, n_max + 1):
            coeffs[n] += coeffs[n - d]
    out = []
    for n, c in enumerate(coeffs):
        if c.denominator != 1:
            raise IllPosedSeriesError(f"Coefficient h_{n} = {pretty_rational(c)} is not an integer")
        if require_nonnegative and c < 0:
            raise IllPosedSeriesError(f"Coefficient h_{n} = {c} is negative")
        out.append(c.numerator)
    return out


def numerator_symmetry_check(hs: HilbertSeries) -> Tuple[int, bool]:
    """(adjunction number, numerator coefficients palindromic up to sign)"""
    num = hs.numerator
    low, top = num.low_degree(), num.high_degree()
    ok = all(
        abs(num.coefficient(k)) == abs(num.coefficient(low + top - k))
        for k in range(low, top + 1)
    )
    return top, ok


# Hilbert series from the Weyl character formula

def ambient_weight(weight: Sequence[Rational], mu: Sequence[int], u: int) -> int:
    """<lambda_i, mu> + u, validated as a positive integer"""
    value = pair(weight, mu) + u
    if value.denominator != 1:
        raise IntegralityError(
            f"Ambient weight <{format_vector(weight)},mu>+u = {pretty_rational(value)} "
            f"for lambda_i={format_vector(weight)} is not an integer"
        )
    if value <= 0:
        raise InputValidationError(
            f"Ambient weight <{format_vector(weight)},mu>+u = {value} for "
            f"lambda_i={format_vector(weight)} is not positive"
        )
    return value.numerator


def ambient_weights(nabla: WeightSystem, mu: Sequence[int], u: int) -> List[int]:
    """Sorted ambient weights <lambda_i, mu> + u over the weights of V_lambda with multiplicity"""
    return sorted(ambient_weight(w, mu, u) for w in nabla.weights())


@lru_cache(maxsize=None)
def eulerian_numerator(j: int) -> LaurentPoly:
    """E_j with sum_k k^j T^k = E_j(T) / (1 - T)^(j+1)"""
    if j == 0:
        return LaurentPoly.constant(1)
    prev = eulerian_numerator(j - 1)
    t = LaurentPoly.monomial(1)
    return t * (prev.derivative() * LaurentPoly.one_minus_t(1) + prev * j)


def _exact(x: Fraction) -> Rational:
    return x.numerator if x.denominator == 1 else x


def _regular_direction(rs: RootSystem) -> Tuple[int, ...]:
    """Integral coweight pairing positively with every positive root"""
    if rs.basis == "epsilon":
        nu = rs.rho
    else:
        nu = tuple(sum(Fraction(g) * r for g, r in zip(row, rs.rho)) for row in rs.gram)
    scale = lcm(*(Fraction(x).denominator for x in nu))
    direction = tuple(int(x * scale) for x in nu)
    if any(pair(alpha, direction) <= 0 for alpha in rs.positive_roots):
        raise InternalAssertionError(f"Direction {direction} is not regular for {rs.label}")
    return direction


def hilbert_series_weyl(
    rs: RootSystem,
    lam: Sequence[Rational],
    mu: Sequence[int],
    u: int,
    nabla: Optional[WeightSystem] = None,
    rho: Optional[Sequence[Rational]] = None,
) -> HilbertSeries:
    """Hilbert series of the weighted flag variety over prod(1 - t^(<lambda_i,mu>+u)).

    The alternating Weyl sum is evaluated at the torus point t^mu perturbed by
    e^(s nu) along a regular direction nu; numerator and Weyl denominator are
    expanded in s and the leading nonvanishing orders are divided. For regular
    mu that order is 0.
    """
    if len(mu) != rs.dimension:
        raise InputValidationError(
            f"Coweight {tuple(mu)} has {len(mu)} entries; {rs.label} uses {rs.dimension}"
        )
    mu = tuple(int(a) for a in mu)
    lam_v = vec(*lam)
    if nabla is None:
        nabla = weight_system(rs, lam_v)
    denominators = ambient_weights(nabla, mu, u)
    rho_v = rs.rho if rho is None else vec(*rho)
    nu = _regular_direction(rs)

    data = []
    for w in weyl_group(rs):
        shift = _sub(w.act(rho_v), rho_v)
        image = w.act(lam_v)
        a = pair(shift, mu)
        c = pair(image, mu) + u
        if a.denominator != 1 or c.denominator != 1:
            raise InternalAssertionError(f"Non-integral exponent in the Weyl sum for {rs.label}")
        data.append((w.sign, a.numerator, _exact(pair(shift, nu)), c.numerator, _exact(pair(image, nu))))

    # order of vanishing of the Weyl denominator
    expected = sum(1 for alpha in rs.positive_roots if pair(alpha, mu) == 0)
    by_a: Dict[int, List[Tuple[int, Rational]]] = defaultdict(list)
    for sign, a, b, _, _ in data:
        by_a[a].append((sign, b))
    order, weyl_denominator = None, LaurentPoly()
    for j in range(expected + 1):
        weyl_denominator = LaurentPoly(
            {a: sum(sign * b ** j for sign, b in items) for a, items in by_a.items()}
        )
        if not weyl_denominator.is_zero():
            order = j
            break
    if order != expected:
        raise InternalAssertionError(
            f"Weyl denominator vanishes to order {order}, expected {expected} for mu={mu}"
        )
    m = order

    # S[c][i][a] = sum over w with (a_w, c_w) = (a, c) of sign * b^(m-i) * d^i
    sums: Dict[int, List[Dict[int, Rational]]] = {}
    for sign, a, b, c, d in data:
        rows = sums.setdefault(c, [defaultdict(int) for _ in range(m + 1)])
        for i in range(m + 1):
            rows[i][a] += sign * b ** (m - i) * d ** i

    kernels = [eulerian_numerator(i) * LaurentPoly.one_minus_t(1) ** (m - i) for i in range(m + 1)]
    blocks = {c: LaurentPoly.one_minus_t(c) ** (m + 1) for c in sums}
    total = LaurentPoly()
    for c, rows in sorted(sums.items()):
        part = LaurentPoly()
        for i, row in enumerate(rows):
            coeff = LaurentPoly(row)
            if coeff.is_zero():
                continue
            part = part + coeff * comb(m, i) * kernels[i].substitute_power(c)
        for other, block in blocks.items():
            if other != c:
                part = part * block
        total = total + part
    common = LaurentPoly.constant(1)
    for block in blocks.values():
        common = common * block

    numerator = (total * product_one_minus(denominators)).divide_exact(
        common * weyl_denominator, f"Weyl sum for {rs.label}, mu={mu}, u={u}"
    )
    if numerator.is_zero() or numerator.low_degree() < 0 or numerator.coefficient(0) != 1:
        raise InternalAssertionError(f"Hilbert numerator {numerator} does not start with 1")
    logger.debug(f"Hilbert series {rs.label} mu={mu} u={u}: limit order {m}, numerator degree {numerator.high_degree()}")
    return HilbertSeries(numerator, tuple(denominators))


# Closed forms for wLGr(3,6) and wFL(1,3)

def _t(e: int, c: Rational = 1) -> LaurentPoly:
    return LaurentPoly.monomial(e, c)


def _both(e: int) -> LaurentPoly:
    """t^e + t^-e"""
    return _t(e) + _t(-e)


def _coweight(mu: Sequence[int], n: int) -> Tuple[int, ...]:
    if len(mu) != n:
        raise InputValidationError(f"Expected a coweight with {n} entries, got {tuple(mu)}")
    return tuple(int(a) for a in mu)


def _positive(values: Sequence[int], context: str) -> Tuple[int, ...]:
    bad = [v for v in values if v <= 0]
    if bad:
        raise InputValidationError(f"{context}: ambient weights {sorted(set(bad))} are not positive")
    return tuple(values)


def lgr36_weights(mu: Sequence[int], u: int) -> Tuple[int, ...]:
    """<lambda_i, mu> + u for the 14 weights of the C3 representation with highest weight (1,1,1)"""
    a = _coweight(mu, 3)
    values = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            for s3 in (1, -1):
                values.append(s1 * a[0] + s2 * a[1] + s3 * a[2] + u)
    for ai in a:
        values.extend([ai + u, -ai + u])
    return _positive(sorted(values), f"lgr36 at mu={a}, u={u}")


def fl13_weights(mu: Sequence[int], u: int) -> Tuple[int, ...]:
    """<lambda_i, mu> + u for the 15 weights of the gl4 representation with highest weight (2,1,1,0)"""
    a = _coweight(mu, 4)
    s = sum(a)
    values = [s + a[i] - a[j] + u for i in range(4) for j in range(4) if i != j]
    values.extend([s + u] * 3)
    return _positive(sorted(values), f"fl13 at mu={a}, u={u}")


def orbit_form_lgr36(mu: Sequence[int], u: int) -> HilbertSeries:
    """Orbit form of the wLGr(3,6) series, brought over all 14 ambient weights"""
    a = _coweight(mu, 3)
    denominators = lgr36_weights(a, u)
    orbit_sum = sum((_both(ai) for ai in a), LaurentPoly())
    base = 1 + orbit_sum * (_t(u) - _t(3 * u)) - _t(4 * u)
    p_l = product_one_minus([ai + u for ai in a] + [-ai + u for ai in a])
    return HilbertSeries(base * p_l, denominators)


def compact_lgr36(mu: Sequence[int], u: int, literal: bool = False) -> HilbertSeries:
    """Compact numerator 1 - P1(t^2u - t^8u) + P2(t^3u - t^7u) - P3(t^4u - t^6u) - t^10u.

    literal=True uses t^9u in the first bracket.
    """
    a = _coweight(mu, 3)
    a1, a2, a3 = a
    denominators = lgr36_weights(a, u)
    idx = range(3)

    p1 = sum((_t(a[i] - a[j]) for i in idx for j in idx), LaurentPoly())
    p1 += sum((_both(a[i] + a[j]) for i in idx for j in idx if i <= j), LaurentPoly())

    p2 = LaurentPoly()
    for i in idx:
        for j in idx:
            if i < j:
                p2 += _both(2 * a[i] + a[j]) + _both(2 * a[i] - a[j])
                p2 += _both(a[i] + 2 * a[j]) + _both(a[i] - 2 * a[j])
    p2 += 2 * (_both(a1 + a2 + a3) + _both(a1 + a2 - a3) + _both(a1 - a2 - a3) + _both(a1 - a2 + a3))
    p2 += 4 * sum((_both(ai) for ai in a), LaurentPoly())

    p3 = sum((_both(2 * ai) for ai in a), LaurentPoly())
    for i in idx:
        for j in idx:
            if i < j:
                p3 += 3 * (_both(a[i] - a[j]) + _both(a[i] + a[j]))
    p3 += (_both(a1 + 2 * a2) + _both(2 * a1 + a2) + _both(a1 - 2 * a2) + _both(2 * a1 - a2)) * _both(a3)
    p3 += (_both(a1 + a2) + _both(a1 - a2)) * _both(2 * a3)
    p3 += 4

    top = 9 * u if literal else 8 * u
    numerator = (
        1
        - p1 * (_t(2 * u) - _t(top))
        + p2 * (_t(3 * u) - _t(7 * u))
        - p3 * (_t(4 * u) - _t(6 * u))
        - _t(10 * u)
    )
    return HilbertSeries(numerator, denominators)


def fl13_compact_polys(mu: Sequence[int], literal: bool = False) -> List[LaurentPoly]:
    """P1..P8 of the wFL(1,3) compact form (P5..P8 mirror P4..P1)"""
    a = _coweight(mu, 4)
    s = sum(a)
    idx = range(4)
    pairs = [(i, j) for i in idx for j in idx]
    distinct = [(i, j) for i, j in pairs if i != j]

    sym = sum((_t(2 * (a[i] + a[j])) for i, j in pairs if i < j), LaurentPoly())
    diff = sum((_t(s + a[i] - a[j]) for i, j in pairs), LaurentPoly())
    high = sum((_t(2 * s - (3 * a[i] + a[j])) for i, j in distinct), LaurentPoly())
    low = sum((_t(3 * a[i] + a[j]) for i, j in distinct), LaurentPoly())
    spread = sum((_t(s + 2 * (a[i] - a[j])) for i, j in distinct), LaurentPoly())

    if literal:
        p1 = sym + 2 * diff - _t(s, 2 * len(pairs))
        spread3 = sum((_t(2 * (a[i] - a[j])) for i, j in distinct), LaurentPoly())
    else:
        p1 = sym + 2 * diff - _t(s, 2)
        spread3 = spread
    p2 = 4 * sym + 8 * diff + high + low - _t(s, 16)
    p3 = 6 * sym + 14 * diff + 3 * high + 3 * low + spread3 - _t(s, 29)
    p4 = 4 * sym + 12 * diff + 3 * high + 3 * low + 2 * spread - _t(s, 24)
    return [p1, p2, p3, p4, p4, p3, p2, p1]


def compact_fl13(mu: Sequence[int], u: int, literal: bool = False) -> HilbertSeries:
    """Compact numerator of wFL(1,3) with the Gorenstein-mirrored P5..P8"""
    a = _coweight(mu, 4)
    s = sum(a)
    denominators = fl13_weights(a, u)
    polys = fl13_compact_polys(a, literal)
    numerator = LaurentPoly.constant(1)
    for k in range(1, 5):
        numerator += (-1) ** k * polys[k - 1] * _t(k * s + (k + 1) * u)
    for k in range(5, 9):
        numerator += (-1) ** k * polys[k - 1] * _t((k + 1) * s + (k + 2) * u)
    numerator += _t(12 * (s + u), 1 if literal else -1)
    return HilbertSeries(numerator, denominators)
