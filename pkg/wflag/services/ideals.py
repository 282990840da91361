"""Weighted-homogeneous ideals, Buchberger's algorithm and Hilbert series of quotient rings"""

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union
import logging

from pydantic import ValidationError
from sympy import QQ
from sympy.polys.orderings import MonomialOrder
from sympy.polys.rings import PolyElement, PolyRing

from wflag.config import get_settings
from wflag.exceptions import InputValidationError, ResourceLimitError
from wflag.models import OrderKind
from wflag.schemas import AppendixData
from wflag.services.series import HilbertSeries, LaurentPoly
from wflag.utils.rationals import to_fraction

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# Variable gradings of the Calabi-Yau threefolds, x1..xn in equation order
CY_WEIGHTS: Dict[str, Tuple[int, ...]] = {
    "cy_lgr36": (3, 3, 3, 3, 2, 3, 2, 2, 1, 2, 1, 1, 1, 1),
    "cy_fl13_a": (1, 1, 1, 2, 2, 1, 2, 2, 2, 3, 2, 2, 3, 3, 3),
    "cy_fl13_b": (1, 1, 2, 1, 2, 2, 2, 2, 2, 2, 2, 3, 2, 3, 3),
    "cy_fl13_b_x10": (1, 1, 2, 1, 2, 2, 2, 2, 2, 3, 2, 3, 2, 3, 3),  # x10 of weight 3, breaks homogeneity
}


class WeightedMonomialOrder(MonomialOrder):
    """Weighted degree first, ties broken by reverse lexicographic or lexicographic order"""

    is_global = True

    def __init__(self, kind: Union[OrderKind, str], weights: Sequence[int]):
        self.kind = OrderKind(kind)
        self.weights = tuple(weights)
        self.alias = self.kind.value

    def __call__(self, monomial: Monomial) -> tuple:
        degree = sum(w * e for w, e in zip(self.weights, monomial))
        if self.kind == OrderKind.WDEGREVLEX:
            return degree, tuple(reversed([-e for e in monomial]))
        return degree, tuple(monomial)

    def __repr__(self) -> str:
        return f"WeightedMonomialOrder({self.kind.value!r}, {self.weights})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeightedMonomialOrder)
            and self.kind == other.kind
            and self.weights == other.weights
        )

    def __hash__(self) -> int:
        return hash((self.__class__, self.kind, self.weights))


@lru_cache(maxsize=None)
def build_ring(names: Tuple[str, ...], weights: Tuple[int, ...], kind: OrderKind) -> PolyRing:
    return PolyRing(",".join(names), QQ, WeightedMonomialOrder(kind, weights))


@dataclass(frozen=True)
class WeightedIdeal:
    """Generators over QQ together with variable names, weights and a monomial order"""
    names: Tuple[str, ...]
    weights: Tuple[int, ...]
    generators: Tuple[PolyElement, ...]
    labels: Tuple[str, ...]
    order: OrderKind = OrderKind.WDEGREVLEX

    @property
    def ring(self) -> PolyRing:
        return build_ring(self.names, self.weights, self.order)

    def __len__(self) -> int:
        return len(self.generators)

    def with_order(self, kind: Union[OrderKind, str]) -> "WeightedIdeal":
        kind = OrderKind(kind)
        if kind == self.order:
            return self
        ring = build_ring(self.names, self.weights, kind)
        return replace(self, generators=tuple(g.set_ring(ring) for g in self.generators), order=kind)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputValidationError(f"Unknown variable {name!r}; variables are {self.names[0]}..{self.names[-1]}")


# Monomials and homogeneity

def weighted_degree(monomial: Sequence[int], weights: Sequence[int]) -> int:
    return sum(w * e for w, e in zip(weights, monomial))


def is_homogeneous(poly: PolyElement, weights: Sequence[int]) -> bool:
    return len({weighted_degree(m, weights) for m in poly.itermonoms()}) <= 1


def parse_monomial(text: str, names: Sequence[str]) -> Monomial:
    """Parse "x1*x6" or "x3^2" into an exponent vector"""
    exps = [0] * len(names)
    for factor in text.split("*"):
        base, _, power = factor.strip().partition("^")
        if base not in names:
            raise InputValidationError(f"Unknown variable {base!r} in monomial {text!r}")
        exps[names.index(base)] += int(power) if power else 1
    return tuple(exps)


def format_monomial(monomial: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, monomial):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def ideal_from_terms(
    names: Sequence[str],
    weights: Sequence[int],
    equations: Iterable[Tuple[str, Sequence[Tuple[Union[str, Fraction], str]]]],
    order: Union[OrderKind, str] = OrderKind.WDEGREVLEX,
) -> WeightedIdeal:
    """Build an ideal from (label, [(coefficient, monomial)]) records, checking homogeneity"""
    names = tuple(names)
    weights = tuple(int(w) for w in weights)
    if len(weights) != len(names):
        raise InputValidationError(f"Expected {len(names)} weights, got {len(weights)}")
    if any(w <= 0 for w in weights):
        raise InputValidationError(f"Variable weights must be positive, got {list(weights)}")
    order = OrderKind(order)
    ring = build_ring(names, weights, order)

    generators, labels = [], []
    for label, terms in equations:
        coeffs: Dict[Monomial, Fraction] = {}
        for coeff, monomial in terms:
            key = parse_monomial(monomial, names)
            coeffs[key] = coeffs.get(key, Fraction(0)) + to_fraction(coeff)
        degrees = sorted({weighted_degree(m, weights) for m, c in coeffs.items() if c})
        if len(degrees) > 1:
            raise InputValidationError(
                f"Equation {label} is not weighted-homogeneous for weights {list(weights)}: "
                f"term degrees {degrees}"
            )
        poly = ring.from_dict({m: QQ(c.numerator, c.denominator) for m, c in coeffs.items() if c})
        generators.append(poly)
        labels.append(label)
    return WeightedIdeal(names, weights, tuple(generators), tuple(labels), order)


# Appendix data

@lru_cache(maxsize=None)
def load_appendix(ideal_id: str) -> AppendixData:
    """Read and validate an equation data file"""
    override = get_settings().DATA_DIR
    path = (Path(override) if override else DATA_DIR) / f"appendix_{ideal_id}.json"
    if not path.exists():
        raise InputValidationError(f"No equation data for {ideal_id!r} (looked for {path})")
    try:
        data = AppendixData.model_validate_json(path.read_text())
    except ValidationError as e:
        raise InputValidationError(f"Malformed equation data in {path}: {e}") from e
    logger.debug(f"Loaded {len(data.equations)} equations for {data.variety} from {path}")
    return data


def appendix_ideal(
    ideal_id: str,
    weights: Optional[Sequence[int]] = None,
    order: Union[OrderKind, str] = OrderKind.WDEGREVLEX,
) -> WeightedIdeal:
    """The embedded quadrics of lgr36 or fl13 under the given variable weights (default all 1)"""
    data = load_appendix(ideal_id)
    n = data.variables
    if weights is None:
        weights = (1,) * n
    if len(weights) != n:
        raise InputValidationError(f"{ideal_id} has {n} variables, got {len(weights)} weights")
    names = tuple(f"x{i}" for i in range(1, n + 1))
    return ideal_from_terms(names, weights, [(eq.label, eq.terms) for eq in data.equations], order)


def homogeneity_failures(ideal_id: str, weights: Sequence[int]) -> List[str]:
    """Labels of the appendix equations that are not homogeneous under the weights"""
    data = load_appendix(ideal_id)
    names = [f"x{i}" for i in range(1, data.variables + 1)]
    failures = []
    for eq in data.equations:
        degrees = {weighted_degree(parse_monomial(m, names), weights) for _, m in eq.terms}
        if len(degrees) > 1:
            failures.append(eq.label)
    return failures


# Buchberger

def _spoly(f: PolyElement, g: PolyElement, lmf: Monomial, lmg: Monomial) -> PolyElement:
    """S-polynomial of monic f and g"""
    R = f.ring
    lcm = R.monomial_lcm(lmf, lmg)
    return f.mul_monom(R.monomial_div(lcm, lmf)) - g.mul_monom(R.monomial_div(lcm, lmg))


def _select(lmG: List[Monomial], P: Set[Tuple[int, int]], R: PolyRing) -> Tuple[int, int]:
    """Normal selection: the pair with the smallest lcm"""
    return min(P, key=lambda p: (R.order(R.monomial_lcm(lmG[p[0]], lmG[p[1]])), p))


def _update(
    G: List[PolyElement],
    P: Set[Tuple[int, int]],
    f: PolyElement,
    lmG: List[Monomial],
) -> Tuple[List[PolyElement], Set[Tuple[int, int]]]:
    """Add f to the basis, pruning pairs with the Gebauer-Moeller criteria"""
    lmf = f.LM
    R = f.ring
    lcm, mul, div = R.monomial_lcm, R.monomial_mul, R.monomial_div

    P = {
        p for p in P
        if (not div(lcm(lmG[p[0]], lmG[p[1]]), lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf))
    }
    lcm_dict: Dict[Monomial, List[int]] = {}
    for i in range(len(G)):
        lcm_dict.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimalized = []
    for L in sorted(lcm_dict, key=R.order):
        if all(not div(L, L_) for L_ in minimalized):
            minimalized.append(L)
    new_pairs = set()
    for L in minimalized:
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            new_pairs.add((min(lcm_dict[L]), len(G)))
    return G + [f], P | new_pairs


def _minimalize(G: List[PolyElement]) -> List[PolyElement]:
    R = G[0].ring
    minimal: List[PolyElement] = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in minimal):
            minimal.append(f)
    return minimal


def _interreduce(G: List[PolyElement]) -> List[PolyElement]:
    return [G[i].rem(G[:i] + G[i + 1:]).monic() for i in range(len(G))]


def buchberger(ideal: WeightedIdeal, order: Optional[Union[OrderKind, str]] = None) -> WeightedIdeal:
    """Reduced Groebner basis, sorted by leading monomial"""
    if order is not None:
        ideal = ideal.with_order(order)
    R = ideal.ring
    cap = get_settings().BUCHBERGER_STEP_CAP

    F = [g for g in ideal.generators if g]
    if not F:
        return replace(ideal, generators=(), labels=())

    G: List[PolyElement] = []
    lmG: List[Monomial] = []
    P: Set[Tuple[int, int]] = set()
    for f in F:
        f = f.monic()
        G, P = _update(G, P, f, lmG)
        lmG.append(f.LM)

    steps = 0
    while P:
        steps += 1
        if steps > cap:
            raise ResourceLimitError(
                f"Buchberger exceeded {cap} reduction steps (raise WFLAG_BUCHBERGER_STEP_CAP)"
            )
        i, j = _select(lmG, P, R)
        P.remove((i, j))
        r = _spoly(G[i], G[j], lmG[i], lmG[j]).rem(G)
        if r:
            r = r.monic()
            G, P = _update(G, P, r, lmG)
            lmG.append(r.LM)

    basis = _interreduce(_minimalize(G))
    basis.sort(key=lambda g: R.order(g.LM))
    logger.info(f"Groebner basis ({ideal.order.value}): {len(F)} generators -> {len(basis)} elements after {steps} pairs")
    return replace(ideal, generators=tuple(basis), labels=tuple(f"g{k}" for k in range(1, len(basis) + 1)))


def initial_ideal(gb: WeightedIdeal) -> List[Monomial]:
    """Leading monomials of a Groebner basis"""
    return [g.LM for g in gb.generators]


# Hilbert series of monomial quotients

def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimal_monomials(monomials: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    minimal: List[Monomial] = []
    for m in sorted(set(monomials), key=lambda m: (sum(m), m)):
        if not any(_divides(g, m) for g in minimal):
            minimal.append(m)
    return tuple(sorted(minimal))


def _pairwise_coprime(gens: Tuple[Monomial, ...]) -> bool:
    used: Set[int] = set()
    for m in gens:
        support = {k for k, e in enumerate(m) if e}
        if used & support:
            return False
        used |= support
    return True


def _pivot_numerator(
    gens: Tuple[Monomial, ...],
    weights: Tuple[int, ...],
    cache: Dict[Tuple[Monomial, ...], LaurentPoly],
) -> LaurentPoly:
    """K(I) = K(I + <p>) + t^deg(p) K(I : p) with p a power of the most frequent variable"""
    if gens in cache:
        return cache[gens]
    n = len(weights)
    if not gens:
        result = LaurentPoly.constant(1)
    elif any(not any(m) for m in gens):
        result = LaurentPoly()
    elif _pairwise_coprime(gens):
        result = LaurentPoly.constant(1)
        for m in gens:
            result = result * LaurentPoly.one_minus_t(weighted_degree(m, weights))
    else:
        counts = [sum(1 for m in gens if m[k]) for k in range(n)]
        v = max(range(n), key=lambda k: (counts[k], -k))
        # smallest exponent of x_v among generators that involve another variable
        e = min(m[v] for m in gens if m[v] and any(m[k] for k in range(n) if k != v))
        pivot = tuple(e if k == v else 0 for k in range(n))
        bigger = _minimal_monomials(gens + (pivot,))
        colon = _minimal_monomials(tuple(max(0, m[k] - pivot[k]) for k in range(n)) for m in gens)
        result = _pivot_numerator(bigger, weights, cache) + (
            _pivot_numerator(colon, weights, cache).shift(e * weights[v])
        )
    cache[gens] = result
    return result


def monomial_hilbert_numerator(monomials: Iterable[Sequence[int]], weights: Sequence[int]) -> LaurentPoly:
    """Numerator of the Hilbert series of S/<monomials> over prod(1 - t^w_i)"""
    gens = _minimal_monomials(tuple(m) for m in monomials)
    return _pivot_numerator(gens, tuple(weights), {})


def quotient_hilbert_series(ideal: WeightedIdeal, order: Optional[Union[OrderKind, str]] = None) -> HilbertSeries:
    """Hilbert series of S/I from the initial ideal of a Groebner basis"""
    gb = buchberger(ideal, order)
    numerator = monomial_hilbert_numerator(initial_ideal(gb), gb.weights)
    return HilbertSeries(numerator, gb.weights)


# Strata

def restrict_to_stratum(ideal: WeightedIdeal, keep_vars: Iterable[Union[str, int]]) -> WeightedIdeal:
    """Set every variable outside keep_vars to zero and drop vanishing generators"""
    keep = {ideal.index_of(v) if isinstance(v, str) else int(v) for v in keep_vars}
    removed = [k for k in range(len(ideal.names)) if k not in keep]
    ring = ideal.ring
    generators, labels = [], []
    for g, label in zip(ideal.generators, ideal.labels):
        restricted = ring.from_dict({m: c for m, c in g.items() if all(m[k] == 0 for k in removed)})
        if restricted:
            generators.append(restricted)
            labels.append(label)
    return replace(ideal, generators=tuple(generators), labels=tuple(labels))


def pure_power_present(ideal: WeightedIdeal, var: Union[str, int], k: int) -> bool:
    """Some generator has a nonzero var^k term"""
    index = ideal.index_of(var) if isinstance(var, str) else int(var)
    target = tuple(k if i == index else 0 for i in range(len(ideal.names)))
    return any(g.get(target) for g in ideal.generators)
