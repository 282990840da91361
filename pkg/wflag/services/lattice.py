"""Root systems, Weyl groups, orbits and weight systems of highest-weight representations"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union
import logging

import sympy as sp

from wflag.config import get_settings
from wflag.exceptions import InputValidationError, InternalAssertionError, ResourceLimitError
from wflag.models import LieType

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]
RationalVector = Tuple[Fraction, ...]
Coweight = Tuple[int, ...]
Matrix = Tuple[Tuple[Rational, ...], ...]

# Supported (type, rank) pairs
SUPPORTED = {
    LieType.A: range(1, 7),
    LieType.C: range(2, 5),
    LieType.D: range(4, 6),
    LieType.G2: range(2, 3),
    LieType.E6: range(6, 7),
}

# Cartan data for the types realized in fundamental-weight coordinates.
# Row i holds <alpha_i, alpha_k^vee> for k = 1..rank (Bourbaki labels).
_G2_CARTAN = ((2, -1), (-3, 2))
_G2_HALF_LENGTHS = (1, 3)  # alpha_1 short
_E6_CARTAN = (
    (2, 0, -1, 0, 0, 0),
    (0, 2, 0, -1, 0, 0),
    (-1, 0, 2, -1, 0, 0),
    (0, -1, -1, 2, -1, 0),
    (0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, -1, 2),
)


def vec(*coords: Union[Rational, str]) -> RationalVector:
    """Build an exact rational vector"""
    return tuple(Fraction(c) for c in coords)


def _norm(x: Rational) -> Rational:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _add(u: Sequence[Rational], v: Sequence[Rational]) -> RationalVector:
    return tuple(Fraction(a) + b for a, b in zip(u, v))


def _sub(u: Sequence[Rational], v: Sequence[Rational]) -> RationalVector:
    return tuple(Fraction(a) - b for a, b in zip(u, v))


def _scale(k: Rational, v: Sequence[Rational]) -> RationalVector:
    return tuple(Fraction(k) * a for a in v)


@dataclass(frozen=True)
class RootSystem:
    """Root datum in explicit coordinates.

    ``basis`` is "epsilon" (orthonormal e_i coordinates, gram = identity) for
    types A (realized inside gl_{n+1}), C and D, and "omega" (fundamental
    weight coordinates) for G2 and E6.
    """
    lie_type: LieType
    rank: int
    dimension: int
    basis: str
    simple_roots: Tuple[RationalVector, ...]
    positive_roots: Tuple[RationalVector, ...]
    roots: Tuple[RationalVector, ...]
    rho: RationalVector
    gram: Matrix

    @property
    def label(self) -> str:
        if self.lie_type in (LieType.G2, LieType.E6):
            return self.lie_type.value
        return f"{self.lie_type.value}{self.rank}"

    @property
    def weyl_vector(self) -> RationalVector:
        """rho in the gl normalization (n, n-1, ..., 0) for type A, rho otherwise"""
        if self.lie_type == LieType.A:
            shift = Fraction(self.rank, 2)
            return tuple(c + shift for c in self.rho)
        return self.rho

    def zero(self) -> RationalVector:
        return tuple(Fraction(0) for _ in range(self.dimension))


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element as an exact matrix acting on weight coordinates"""
    matrix: Matrix
    sign: int

    def act(self, v: Sequence[Rational]) -> RationalVector:
        return tuple(Fraction(sum(a * b for a, b in zip(row, v))) for row in self.matrix)

    def transpose_act(self, mu: Sequence[int]) -> Tuple[Rational, ...]:
        """Action on coweights by the transpose matrix (pair(w.v, mu) = pair(v, w^T mu))"""
        n = len(self.matrix)
        return tuple(_norm(sum(self.matrix[r][c] * mu[r] for r in range(n))) for c in range(n))


@dataclass(frozen=True)
class WeightSystem:
    """Weights of an irreducible representation with multiplicities"""
    entries: Tuple[Tuple[RationalVector, int], ...]

    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def multiplicity(self, weight: Sequence[Rational]) -> int:
        key = vec(*weight)
        for w, m in self.entries:
            if w == key:
                return m
        return 0

    def support(self) -> FrozenSet[RationalVector]:
        return frozenset(w for w, _ in self.entries)

    def weights(self) -> Tuple[RationalVector, ...]:
        """Weights listed with multiplicity"""
        out: List[RationalVector] = []
        for w, m in self.entries:
            out.extend([w] * m)
        return tuple(out)


# Coordinates and bilinear form

def inner(rs: RootSystem, u: Sequence[Rational], v: Sequence[Rational]) -> Fraction:
    """Invariant bilinear form (u, v)"""
    if rs.basis == "epsilon":
        return Fraction(sum(Fraction(a) * b for a, b in zip(u, v)))
    total = Fraction(0)
    for i, a in enumerate(u):
        if a:
            row = rs.gram[i]
            total += Fraction(a) * sum(g * b for g, b in zip(row, v))
    return total


def coroot_pairing(rs: RootSystem, v: Sequence[Rational], alpha: Sequence[Rational]) -> Fraction:
    """<v, alpha^vee> = 2 (v, alpha) / (alpha, alpha)"""
    return 2 * inner(rs, v, alpha) / inner(rs, alpha, alpha)


def reflect(rs: RootSystem, i: int, v: Sequence[Rational]) -> RationalVector:
    """Apply the simple reflection s_i"""
    alpha = rs.simple_roots[i]
    k = coroot_pairing(rs, v, alpha)
    if not k:
        return vec(*v)
    return _sub(v, _scale(k, alpha))


def is_dominant(rs: RootSystem, v: Sequence[Rational]) -> bool:
    return all(coroot_pairing(rs, v, alpha) >= 0 for alpha in rs.simple_roots)


def dominant_conjugate(rs: RootSystem, v: Sequence[Rational]) -> RationalVector:
    """The unique dominant weight in the W-orbit of v"""
    current = vec(*v)
    changed = True
    while changed:
        changed = False
        for i, alpha in enumerate(rs.simple_roots):
            if coroot_pairing(rs, current, alpha) < 0:
                current = reflect(rs, i, current)
                changed = True
    return current


def pair(w: Sequence[Rational], mu: Sequence[int]) -> Fraction:
    """Perfect pairing between weights and coweights: coordinate dot product"""
    if len(w) != len(mu):
        raise InputValidationError(
            f"Cannot pair a weight of length {len(w)} with a coweight of length {len(mu)}"
        )
    return Fraction(sum(Fraction(a) * b for a, b in zip(w, mu)))


# Construction

def _epsilon_simple_roots(lie_type: LieType, rank: int) -> Tuple[int, List[RationalVector]]:
    def e(i: int, n: int) -> List[Fraction]:
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        return row

    if lie_type == LieType.A:
        n = rank + 1
        return n, [_sub(e(i, n), e(i + 1, n)) for i in range(rank)]
    n = rank
    simple = [_sub(e(i, n), e(i + 1, n)) for i in range(rank - 1)]
    if lie_type == LieType.C:
        simple.append(_scale(2, e(n - 1, n)))
    else:
        simple.append(_add(e(n - 2, n), e(n - 1, n)))
    return n, simple


def _omega_data(cartan: Sequence[Sequence[int]], half_lengths: Sequence[int]) -> Tuple[List[RationalVector], Matrix]:
    """Simple roots in fundamental-weight coordinates and the Gram matrix of the form"""
    m = sp.Matrix(cartan)
    gram_sym = m.inv() * sp.diag(*half_lengths)
    gram = tuple(
        tuple(_norm(Fraction(int(sp.fraction(x)[0]), int(sp.fraction(x)[1]))) for x in gram_sym.row(i))
        for i in range(gram_sym.rows)
    )
    simple = [vec(*row) for row in cartan]
    return simple, gram


def _closure(simple: List[RationalVector], rs_stub: RootSystem) -> Tuple[List[RationalVector], List[RationalVector]]:
    """All roots (W-orbit of the simple roots) and the positive ones"""
    roots = set(simple)
    queue = deque(simple)
    while queue:
        r = queue.popleft()
        for i in range(len(simple)):
            s = reflect(rs_stub, i, r)
            if s not in roots:
                roots.add(s)
                queue.append(s)
    # positive roots are reached from simple roots by adding simple roots
    positive = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for alpha in simple:
                s = _add(r, alpha)
                if s in roots and s not in positive:
                    positive.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(roots), sorted(positive)


@lru_cache(maxsize=None)
def build_root_system(lie_type: Union[LieType, str], rank: int) -> RootSystem:
    """Build a root system for one of the supported (type, rank) pairs"""
    try:
        lt = LieType(str(lie_type.value if isinstance(lie_type, LieType) else lie_type).upper())
    except ValueError:
        raise InputValidationError(f"Unknown Lie type: {lie_type!r}")
    if lt not in SUPPORTED or rank not in SUPPORTED[lt]:
        raise InputValidationError(f"Unsupported root system {lt.value}{rank}")

    if lt == LieType.G2:
        simple, gram = _omega_data(_G2_CARTAN, _G2_HALF_LENGTHS)
        dimension, basis = 2, "omega"
    elif lt == LieType.E6:
        simple, gram = _omega_data(_E6_CARTAN, (1,) * 6)
        dimension, basis = 6, "omega"
    else:
        dimension, simple = _epsilon_simple_roots(lt, rank)
        gram = tuple(tuple(1 if i == j else 0 for j in range(dimension)) for i in range(dimension))
        basis = "epsilon"

    stub = RootSystem(lt, rank, dimension, basis, tuple(simple), (), (), (), gram)
    roots, positive = _closure(simple, stub)
    total = tuple(Fraction(0) for _ in range(dimension))
    for alpha in positive:
        total = _add(total, alpha)
    rho = _scale(Fraction(1, 2), total)

    rs = RootSystem(lt, rank, dimension, basis, tuple(simple), tuple(positive), tuple(roots), rho, gram)
    logger.debug(f"Built root system {rs.label}: {len(positive)} positive roots")
    return rs


# Weyl group

def _generators(rs: RootSystem) -> List[Tuple[Tuple[Rational, ...], Tuple[Rational, ...]]]:
    gens = []
    for alpha in rs.simple_roots:
        norm = inner(rs, alpha, alpha)
        cov = []
        for k in range(rs.dimension):
            basis_k = [0] * rs.dimension
            basis_k[k] = 1
            cov.append(_norm(2 * inner(rs, basis_k, alpha) / norm))
        gens.append((tuple(_norm(a) for a in alpha), tuple(cov)))
    return gens


def _left_multiply(alpha: Tuple[Rational, ...], cov: Tuple[Rational, ...], m: Matrix) -> Matrix:
    """s_alpha . m as the rank-one update m - alpha (cov . m)"""
    n = len(m)
    nz = [(c, x) for c, x in enumerate(cov) if x]
    row = [_norm(sum(x * m[c][k] for c, x in nz)) for k in range(n)]
    return tuple(
        m[r] if not alpha[r] else tuple(_norm(m[r][k] - alpha[r] * row[k]) for k in range(n))
        for r in range(n)
    )


@lru_cache(maxsize=16)
def _weyl_closure(rs: RootSystem, cap: int) -> Tuple[WeylElement, ...]:
    n = rs.dimension
    identity = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))
    gens = _generators(rs)
    seen: Dict[Matrix, int] = {identity: 1}
    queue = deque([identity])
    while queue:
        m = queue.popleft()
        sign = seen[m]
        for alpha, cov in gens:
            prod = _left_multiply(alpha, cov, m)
            if prod not in seen:
                seen[prod] = -sign
                if len(seen) > cap:
                    raise ResourceLimitError(
                        f"Weyl group of {rs.label} exceeds the configured cap of {cap} elements "
                        f"(raise WFLAG_WEYL_CAP to allow it)"
                    )
                queue.append(prod)
    elements = sorted((WeylElement(m, s) for m, s in seen.items()), key=lambda w: w.matrix)
    logger.info(f"Weyl group of {rs.label}: {len(elements)} elements")
    return tuple(elements)


def weyl_group(rs: RootSystem, cap: Optional[int] = None) -> List[WeylElement]:
    """All Weyl group elements by breadth-first closure over simple reflections"""
    if cap is None:
        cap = get_settings().WEYL_CAP
    return list(_weyl_closure(rs, cap))


# Orbits, dimensions, weight systems

def orbit(rs: RootSystem, w: Sequence[Rational]) -> FrozenSet[RationalVector]:
    """W-orbit of a weight (as a set)"""
    start = vec(*w)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in range(rs.rank):
            s = reflect(rs, i, v)
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return frozenset(seen)


def _require_dominant(rs: RootSystem, lam: Sequence[Rational]) -> RationalVector:
    if len(lam) != rs.dimension:
        raise InputValidationError(
            f"Weight {tuple(lam)} has {len(lam)} coordinates; {rs.label} uses {rs.dimension}"
        )
    v = vec(*lam)
    if not is_dominant(rs, v):
        raise InputValidationError(f"Weight {tuple(str(c) for c in v)} is not dominant for {rs.label}")
    return v


def weyl_dim(rs: RootSystem, lam: Sequence[Rational]) -> int:
    """Weyl dimension formula"""
    v = _require_dominant(rs, lam)
    shifted = _add(v, rs.rho)
    value = Fraction(1)
    for alpha in rs.positive_roots:
        value *= inner(rs, shifted, alpha) / inner(rs, rs.rho, alpha)
    if value.denominator != 1:
        raise InternalAssertionError(f"Weyl dimension of {tuple(v)} is not an integer: {value}")
    return value.numerator


def flag_dimension(rs: RootSystem, lam: Sequence[Rational]) -> int:
    """dim G/P_lambda = number of positive roots not orthogonal to lambda"""
    v = _require_dominant(rs, lam)
    return sum(1 for alpha in rs.positive_roots if inner(rs, v, alpha) != 0)


def weight_system(rs: RootSystem, lam: Sequence[Rational]) -> WeightSystem:
    """Weights of V_lambda with multiplicities (Freudenthal recursion, level by level)"""
    top = _require_dominant(rs, lam)
    top_norm = inner(rs, _add(top, rs.rho), _add(top, rs.rho))
    top_height = inner(rs, top, rs.rho)

    mult: Dict[RationalVector, int] = {top: 1}
    level = [top]
    while level:
        candidates = set()
        for mu in level:
            for alpha in rs.simple_roots:
                nu = _sub(mu, alpha)
                if nu not in mult:
                    candidates.add(nu)
        next_level = []
        for nu in sorted(candidates, reverse=True):
            denom = top_norm - inner(rs, _add(nu, rs.rho), _add(nu, rs.rho))
            if denom <= 0:
                continue
            total = Fraction(0)
            for alpha in rs.positive_roots:
                k = 1
                shifted = _add(nu, alpha)
                while inner(rs, shifted, rs.rho) <= top_height:
                    m = mult.get(shifted, 0)
                    if m:
                        total += m * inner(rs, shifted, alpha)
                    k += 1
                    shifted = _add(shifted, alpha)
            value = 2 * total / denom
            if value:
                if value.denominator != 1 or value < 0:
                    raise InternalAssertionError(f"Freudenthal produced multiplicity {value} at {nu}")
                mult[nu] = value.numerator
                next_level.append(nu)
        level = next_level

    entries = tuple(sorted(mult.items(), reverse=True))
    ws = WeightSystem(entries)
    expected = weyl_dim(rs, top)
    if ws.total() != expected:
        raise InternalAssertionError(
            f"Weight system of {tuple(top)} has {ws.total()} weights, Weyl dimension is {expected}"
        )
    return ws
