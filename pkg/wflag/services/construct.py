"""Projective cones, quasilinear sections and the Calabi-Yau / Fano candidate search"""

from dataclasses import dataclass, replace
from itertools import combinations, product
from math import gcd
from typing import List, Optional, Sequence, Tuple
import logging

from wflag.config import get_settings
from wflag.exceptions import IllPosedSeriesError, InputValidationError, ResourceLimitError
from wflag.models import Cone, Operation, OpKind, Section, TargetClass
from wflag.services.catalog import CatalogEntry, WeightedFlagVariety, get_entry, make_weighted, root_system_for
from wflag.services.invariants import CandidateInvariants, candidate_invariants
from wflag.services.lattice import RootSystem, pair
from wflag.services.series import HilbertSeries, LaurentPoly, expand
from wflag.utils.rationals import format_multiset
from wflag.workers.search_worker import run_tasks

logger = logging.getLogger(__name__)

UNVERIFIED_NOTE = "candidate, unverified singularities"


@dataclass(frozen=True)
class ConstructedVariety:
    """A polarized variety with the log of cones and sections that produced it"""
    base: Optional[WeightedFlagVariety]
    ops_log: Tuple[Operation, ...]
    ambient_weights: Tuple[int, ...]
    dim: int
    canonical_degree: int
    series: HilbertSeries
    name: str = ""

    @classmethod
    def from_base(cls, variety: WeightedFlagVariety) -> "ConstructedVariety":
        return cls(
            base=variety,
            ops_log=(),
            ambient_weights=variety.ambient_weights,
            dim=variety.dim,
            canonical_degree=variety.canonical_degree,
            series=variety.series,
            name=variety.label,
        )

    @classmethod
    def projective_space(cls, weights: Sequence[int]) -> "ConstructedVariety":
        """Weighted projective space P[weights]"""
        if not weights or any(w <= 0 for w in weights):
            raise InputValidationError(f"Weights must be positive and nonempty, got {list(weights)}")
        weights = tuple(sorted(int(w) for w in weights))
        return cls(
            base=None,
            ops_log=(),
            ambient_weights=weights,
            dim=len(weights) - 1,
            canonical_degree=-sum(weights),
            series=HilbertSeries.weighted_projective(weights),
            name=f"P[{format_multiset(weights)}]",
        )

    @classmethod
    def complete_intersection(cls, weights: Sequence[int], degrees: Sequence[int]) -> "ConstructedVariety":
        """General complete intersection of the given degrees in P[weights]"""
        variety = cls.projective_space(weights)
        for d in degrees:
            variety = section(variety, d, quasilinear=False)
        return replace(variety, name=f"{variety.name} cap ({','.join(str(d) for d in degrees)})")

    @property
    def label(self) -> str:
        ops = ",".join(op.label() for op in self.ops_log)
        return f"{self.name} [{ops}]" if ops else self.name


def cone(v: ConstructedVariety, w: int = 1) -> ConstructedVariety:
    """Projective cone: one new generator of weight w"""
    if w < 1:
        raise InputValidationError(f"Cone weight must be a positive integer, got {w}")
    weights = tuple(sorted(v.ambient_weights + (w,)))
    return replace(
        v,
        ops_log=v.ops_log + (Cone(w),),
        ambient_weights=weights,
        dim=v.dim + 1,
        canonical_degree=v.canonical_degree - w,
        series=HilbertSeries(v.series.numerator, v.series.denom_exponents + (w,)),
    )


def section(v: ConstructedVariety, d: int, quasilinear: bool = True) -> ConstructedVariety:
    """Hypersurface section of degree d; a quasilinear one consumes a generator of weight d"""
    if d < 1:
        raise InputValidationError(f"Section degree must be a positive integer, got {d}")
    if v.dim < 1:
        raise InputValidationError(f"Cannot cut a variety of dimension {v.dim}")
    if quasilinear:
        if d not in v.ambient_weights:
            raise InputValidationError(
                f"Quasilinear section of degree {d} needs a generator of weight {d}; "
                f"ambient weights are {format_multiset(v.ambient_weights)}"
            )
        weights = list(v.ambient_weights)
        weights.remove(d)
        exps = list(v.series.denom_exponents)
        exps.remove(d)
        series = HilbertSeries(v.series.numerator, tuple(exps))
    else:
        weights = list(v.ambient_weights)
        series = HilbertSeries(v.series.numerator * LaurentPoly.one_minus_t(d), v.series.denom_exponents)
    return replace(
        v,
        ops_log=v.ops_log + (Section(d, quasilinear),),
        ambient_weights=tuple(weights),
        dim=v.dim - 1,
        canonical_degree=v.canonical_degree + d,
        series=series,
    )


def apply_op(v: ConstructedVariety, op: Operation) -> ConstructedVariety:
    if isinstance(op, Cone):
        return cone(v, op.weight)
    return section(v, op.degree, op.quasilinear)


def apply_ops(v: ConstructedVariety, ops: Sequence[Operation]) -> ConstructedVariety:
    """Apply operations in order, naming the failing one on error"""
    for index, op in enumerate(ops, start=1):
        try:
            v = apply_op(v, op)
        except InputValidationError as e:
            raise InputValidationError(f"Operation {index} ({op.label()}) failed: {e}") from e
    return v


def parse_ops(text: str) -> List[Operation]:
    """Parse "cone:1,section:3,section:2:general" into operation records"""
    ops: List[Operation] = []
    if not text.strip():
        return ops
    for index, token in enumerate(text.split(","), start=1):
        parts = token.strip().split(":")
        kind = parts[0].lower()
        try:
            if kind == OpKind.CONE.value and len(parts) <= 2:
                ops.append(Cone(int(parts[1]) if len(parts) == 2 else 1))
            elif kind == OpKind.SECTION.value and len(parts) == 2:
                ops.append(Section(int(parts[1])))
            elif kind == OpKind.SECTION.value and len(parts) == 3 and parts[2] == "general":
                ops.append(Section(int(parts[1]), quasilinear=False))
            else:
                raise ValueError(token)
        except ValueError:
            raise InputValidationError(
                f"Operation {index} ({token.strip()!r}) is not of the form cone[:w], section:d or section:d:general"
            )
    return ops


def check_canonical_bookkeeping(v: ConstructedVariety) -> bool:
    """Tracked canonical degree agrees with adjunction number minus the weight sum"""
    return v.canonical_degree == v.series.adjunction_number - sum(v.ambient_weights)


def wellformed_wps(weights: Sequence[int]) -> bool:
    """No n of the n+1 weights share a common factor"""
    weights = list(weights)
    if not weights or any(w <= 0 for w in weights):
        raise InputValidationError(f"Weights must be positive and nonempty, got {weights}")
    if len(weights) == 1:
        return True
    for i in range(len(weights)):
        rest = weights[:i] + weights[i + 1:]
        if gcd(*rest) != 1:
            return False
    return True


# Search

@dataclass(frozen=True)
class SearchTask:
    """One (mu, u, cones) point of the search grid"""
    entry_id: str
    mu: Tuple[int, ...]
    u: int
    cones: int
    target: TargetClass
    max_sections: int
    truncation: int


@dataclass(frozen=True)
class Candidate:
    """A threefold passing the necessary-condition screens"""
    entry_id: str
    mu: Tuple[int, ...]
    u: int
    target: TargetClass
    variety: ConstructedVariety
    wellformed_ambient: bool
    invariants: CandidateInvariants
    notes: Tuple[str, ...] = (UNVERIFIED_NOTE,)

    @property
    def sort_key(self) -> tuple:
        cones = sum(1 for op in self.variety.ops_log if isinstance(op, Cone))
        sections = tuple(-op.degree for op in self.variety.ops_log if isinstance(op, Section))
        return (self.mu, self.u, cones, sections)


def dominant_coweights(rs: RootSystem, length: int, bound: int) -> List[Tuple[int, ...]]:
    """Coweights in [0, bound]^length pairing nonnegatively with every simple root"""
    return sorted(
        mu for mu in product(range(bound + 1), repeat=length)
        if all(pair(alpha, mu) >= 0 for alpha in rs.simple_roots)
    )


def _meets_target(k: int, target: TargetClass) -> bool:
    return k == 0 if target == TargetClass.CY3 else k < 0


def evaluate_point(task: SearchTask) -> List[Candidate]:
    """All candidates at one grid point"""
    entry = get_entry(task.entry_id)
    try:
        base = make_weighted(entry, task.mu, task.u)
    except InputValidationError as e:
        logger.debug(f"Skipping {task.entry_id} mu={task.mu} u={task.u}: {e}")
        return []

    v = ConstructedVariety.from_base(base)
    for _ in range(task.cones):
        v = cone(v, 1)
    needed = v.dim - 3
    if needed < 0 or needed > task.max_sections:
        return []

    found = []
    choices = sorted(set(combinations(sorted(v.ambient_weights, reverse=True), needed)), reverse=True)
    for degrees in choices:
        if not _meets_target(v.canonical_degree + sum(degrees), task.target):
            continue
        x = apply_ops(v, [Section(d) for d in degrees])
        if not wellformed_wps(x.ambient_weights):
            logger.debug(f"Rejected {x.label}: ambient not well-formed")
            continue
        try:
            expand(x.series, task.truncation)
        except IllPosedSeriesError as e:
            logger.debug(f"Rejected {x.label}: {e}")
            continue
        found.append(Candidate(
            entry_id=task.entry_id,
            mu=task.mu,
            u=task.u,
            target=task.target,
            variety=x,
            wellformed_ambient=True,
            invariants=candidate_invariants(x, task.target),
        ))
    return found


def search(
    entry: CatalogEntry,
    target: TargetClass,
    mu_bound: int,
    u_bound: int,
    max_sections: int,
    max_cones: Optional[int] = None,
    jobs: Optional[int] = None,
) -> List[Candidate]:
    """
    Enumerate cones and quasilinear sections of wSigma(mu, u) landing on threefolds.

    Args:
        entry: Catalog row
        target: CY3 (K = 0) or Fano3 (K < 0)
        mu_bound: Largest coweight entry (dominant chamber only)
        u_bound: u ranges over [-u_bound, u_bound]
        max_sections: Largest number of sections
        max_cones: Largest number of weight-1 cones
        jobs: Worker processes

    Returns:
        Candidates sorted by (mu, u, ops)

    Raises:
        ResourceLimitError: if the grid exceeds the configured number of points
    """
    settings = get_settings()
    if min(mu_bound, u_bound, max_sections) < 0:
        raise InputValidationError("Search bounds must be nonnegative")
    if max_cones is None:
        max_cones = settings.MAX_CONES
    target = TargetClass(target)

    rs = root_system_for(entry)
    mus = dominant_coweights(rs, entry.mu_length, mu_bound)
    us = range(-u_bound, u_bound + 1)
    estimate = len(mus) * len(us) * (max_cones + 1)
    if estimate > settings.SEARCH_MAX_POINTS:
        raise ResourceLimitError(
            f"Search over {entry.id} would visit {estimate} grid points "
            f"(limit {settings.SEARCH_MAX_POINTS}); reduce the bounds or raise WFLAG_SEARCH_MAX_POINTS"
        )

    tasks = [
        SearchTask(entry.id, mu, u, cones, target, max_sections, settings.TRUNCATION_ORDER)
        for mu in mus for u in us for cones in range(max_cones + 1)
    ]
    logger.info(f"Searching {entry.id} for {target.value}: {len(tasks)} grid points")
    candidates = run_tasks(evaluate_point, tasks, jobs)
    candidates.sort(key=lambda c: c.sort_key)
    logger.info(f"✅ Search finished: {len(candidates)} candidates")
    return candidates
