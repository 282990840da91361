"""Registry of flag varieties and their weighted versions"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple
import logging

from wflag.exceptions import InputValidationError
from wflag.models import LieType
from wflag.services.lattice import (
    RationalVector,
    RootSystem,
    WeightSystem,
    build_root_system,
    flag_dimension,
    vec,
    weight_system,
    weyl_dim,
)
from wflag.services.series import (
    HilbertSeries,
    ambient_weights,
    hilbert_series_weyl,
    numerator_symmetry_check,
)
from wflag.utils.rationals import format_multiset, format_vector

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class CatalogEntry:
    """One row of the codimension table of flag varieties"""
    id: str
    name: str
    group: str
    lie_type: LieType
    rank: int
    lam: RationalVector
    ambient_dim: int
    expected_dim: int
    expected_codim: int
    expected_num_quadrics: int
    slow: bool = False

    @property
    def mu_length(self) -> int:
        return len(self.lam)

    @property
    def coordinates(self) -> str:
        """Coordinates of lam and mu: "omega" (fundamental weights) for G2 and E6, "epsilon" otherwise"""
        return root_system_for(self).basis


CATALOG: Tuple[CatalogEntry, ...] = (
    CatalogEntry("fl12", "FL(1,2)", "GL(3)", LieType.A, 2, vec(2, 1, 0), 7, 3, 4, 9),
    CatalogEntry("ogr510", "OGr(5,10)", "SO(10)", LieType.D, 5, vec(*[HALF] * 5), 15, 10, 5, 10),
    CatalogEntry("gr26", "Gr(2,6)", "GL(6)", LieType.A, 5, vec(1, 1, 0, 0, 0, 0), 14, 8, 6, 15),
    CatalogEntry("lgr36", "LGr(3,6)", "Sp(6)", LieType.C, 3, vec(1, 1, 1), 13, 6, 7, 21),
    # G2 and E6 rows give lam (and take mu) in fundamental-weight coordinates, not e_i
    CatalogEntry("g2", "G2/P2", "G2", LieType.G2, 2, vec(0, 1), 13, 5, 8, 28),
    CatalogEntry("fl13", "FL(1,3)", "GL(4)", LieType.A, 3, vec(2, 1, 1, 0), 14, 5, 9, 36),
    CatalogEntry("e6", "E6/P1", "E6", LieType.E6, 6, vec(1, 0, 0, 0, 0, 0), 26, 16, 10, 27, slow=True),
    CatalogEntry("gr27", "Gr(2,7)", "GL(7)", LieType.A, 6, vec(1, 1, 0, 0, 0, 0, 0), 20, 10, 10, 35),
    CatalogEntry("gr36", "Gr(3,6)", "GL(6)", LieType.A, 5, vec(1, 1, 1, 0, 0, 0), 19, 9, 10, 35),
)


@dataclass(frozen=True)
class WeightedFlagVariety:
    """wSigma(mu, u) inside weighted projective space"""
    entry: CatalogEntry
    mu: Tuple[int, ...]
    u: int
    ambient_weights: Tuple[int, ...]
    dim: int
    codim: int
    series: HilbertSeries
    canonical_degree: int

    @property
    def label(self) -> str:
        return (
            f"w{self.entry.name} mu={format_vector(self.mu)} u={self.u} "
            f"in P[{format_multiset(self.ambient_weights)}]"
        )


def catalog() -> List[CatalogEntry]:
    """All catalog rows in table order"""
    return list(CATALOG)


def get_entry(entry_id: str) -> CatalogEntry:
    for entry in CATALOG:
        if entry.id == entry_id:
            return entry
    known = ", ".join(e.id for e in CATALOG)
    raise InputValidationError(f"Unknown variety {entry_id!r}; choose one of: {known}")


def root_system_for(entry: CatalogEntry) -> RootSystem:
    return build_root_system(entry.lie_type, entry.rank)


@lru_cache(maxsize=None)
def weights_of(entry_id: str) -> WeightSystem:
    """Weight system of V_lambda for a catalog entry"""
    entry = get_entry(entry_id)
    return weight_system(root_system_for(entry), entry.lam)


def make_weighted(entry: CatalogEntry, mu: Sequence[int], u: int) -> WeightedFlagVariety:
    """
    Build the weighted flag variety wSigma(mu, u).

    Args:
        entry: Catalog row
        mu: Integral coweight, one entry per weight coordinate
        u: Integer shift

    Returns:
        WeightedFlagVariety with series and canonical class

    Raises:
        InputValidationError: if an ambient weight is nonpositive
        IntegralityError: if an ambient weight is not an integer
    """
    if len(mu) != entry.mu_length:
        raise InputValidationError(
            f"{entry.id} takes a coweight with {entry.mu_length} entries, got {len(mu)}"
        )
    mu = tuple(int(a) for a in mu)
    rs = root_system_for(entry)
    nabla = weights_of(entry.id)
    weights = tuple(ambient_weights(nabla, mu, u))
    series = hilbert_series_weyl(rs, entry.lam, mu, u, nabla)
    adjunction, _ = numerator_symmetry_check(series)
    dim = flag_dimension(rs, entry.lam)
    variety = WeightedFlagVariety(
        entry=entry,
        mu=mu,
        u=u,
        ambient_weights=weights,
        dim=dim,
        codim=len(weights) - 1 - dim,
        series=series,
        canonical_degree=adjunction - sum(weights),
    )
    logger.debug(f"Built {variety.label}, K = O({variety.canonical_degree})")
    return variety


def canonical_formula(entry: CatalogEntry, mu: Sequence[int], u: int) -> Optional[int]:
    """Closed-form canonical degree where one is known: -4u for lgr36, -3(s+u) for fl13"""
    if entry.id == "lgr36":
        return -4 * u
    if entry.id == "fl13":
        return -3 * (sum(mu) + u)
    return None


def canonical_formula_check(entry: CatalogEntry, mu: Sequence[int], u: int) -> bool:
    """True iff the computed canonical degree equals the closed form"""
    expected = canonical_formula(entry, mu, u)
    if expected is None:
        raise InputValidationError(f"No closed canonical formula is known for {entry.id}")
    variety = make_weighted(entry, mu, u)
    if variety.canonical_degree != expected:
        logger.warning(
            f"{variety.label}: computed K = O({variety.canonical_degree}), closed form gives O({expected})"
        )
    return variety.canonical_degree == expected


def expected_representation_dim(entry: CatalogEntry) -> int:
    return weyl_dim(root_system_for(entry), entry.lam)
