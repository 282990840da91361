"""Command handlers: each builds a Report from parsed arguments"""

from argparse import Namespace
from time import perf_counter
from typing import Any, Dict, List, Optional, Tuple
import logging

from wflag import __version__
from wflag.exceptions import InputValidationError
from wflag.models import OrderKind, TargetClass
from wflag.schemas import (
    CandidateReport,
    CatalogEntryReport,
    ConstructReport,
    GroebnerReport,
    HilbertReport,
    InvariantsReport,
    Report,
)
from wflag.services.catalog import WeightedFlagVariety, catalog, get_entry, make_weighted
from wflag.services.construct import (
    Candidate,
    ConstructedVariety,
    apply_ops,
    parse_ops,
    search,
    wellformed_wps,
)
from wflag.services.ideals import (
    CY_WEIGHTS,
    appendix_ideal,
    buchberger,
    format_monomial,
    initial_ideal,
    monomial_hilbert_numerator,
)
from wflag.services.invariants import CandidateInvariants, candidate_invariants, degree, threefold_class
from wflag.services.series import HilbertSeries, LaurentPoly, expand, numerator_symmetry_check
from wflag.utils.rationals import format_multiset, format_numerator, format_rational, parse_int_list

logger = logging.getLogger(__name__)

# (variety, mu, u) whose closed-form series an appendix ideal should reproduce
REFERENCE_POINTS: Dict[str, Tuple[str, Tuple[int, ...], int]] = {
    "lgr36": ("lgr36", (0, 0, 0), 1),
    "fl13": ("fl13", (0, 0, 0, 0), 1),
    "cy_lgr36": ("lgr36", (1, 0, 0), 2),
    "cy_fl13_a": ("fl13", (1, 1, 0, 0), 0),
    "cy_fl13_b": ("fl13", (1, 1, 1, 0), -1),
}


def numerator_pairs(poly: LaurentPoly) -> List[Tuple[int, str]]:
    return [(e, format_rational(c)) for e, c in poly.coefficients()]


def make_report(command: str, inputs: Dict[str, Any], outputs: Any, started: float) -> Report:
    return Report(
        command=command,
        inputs=inputs,
        outputs=outputs,
        version=__version__,
        elapsed_seconds=round(perf_counter() - started, 3),
    )


def invariants_report(inv: Optional[CandidateInvariants]) -> Optional[InvariantsReport]:
    if inv is None:
        return None
    return InvariantsReport(
        degree=format_rational(inv.degree),
        genus=inv.genus,
        dc2_estimate=format_rational(inv.dc2_estimate) if inv.dc2_estimate is not None else None,
        fit_period=inv.fit_period,
    )


def hilbert_report(v: WeightedFlagVariety, expand_to: Optional[int] = None) -> HilbertReport:
    _, symmetric = numerator_symmetry_check(v.series)
    return HilbertReport(
        variety=v.entry.id,
        mu=list(v.mu),
        u=v.u,
        ambient_weights=list(v.ambient_weights),
        dim=v.dim,
        codim=v.codim,
        numerator=numerator_pairs(v.series.numerator),
        denominator=list(v.series.denom_exponents),
        adjunction_number=v.series.adjunction_number,
        canonical_degree=v.canonical_degree,
        gorenstein_symmetric=symmetric,
        expansion=expand(v.series, expand_to) if expand_to is not None else None,
    )


def candidate_report(c: Candidate) -> CandidateReport:
    v = c.variety
    return CandidateReport(
        entry_id=c.entry_id,
        mu=list(c.mu),
        u=c.u,
        ops=[op.label() for op in v.ops_log],
        ambient_weights=list(v.ambient_weights),
        numerator=numerator_pairs(v.series.numerator),
        canonical_degree=v.canonical_degree,
        target=c.target,
        wellformed_ambient=c.wellformed_ambient,
        notes=list(c.notes),
        invariants=invariants_report(c.invariants),
    )


def cmd_catalog(args: Namespace) -> Report:
    started = perf_counter()
    rows = [
        CatalogEntryReport(
            id=e.id,
            name=e.name,
            group=e.group,
            lie_type=e.lie_type.value,
            rank=e.rank,
            highest_weight=[format_rational(c) for c in e.lam],
            ambient_dim=e.ambient_dim,
            dim=e.expected_dim,
            codim=e.expected_codim,
            num_quadrics=e.expected_num_quadrics,
            coordinates=e.coordinates,
            slow=e.slow,
        )
        for e in catalog()
    ]
    return make_report("catalog", {}, rows, started)


def cmd_hilbert(args: Namespace) -> Report:
    started = perf_counter()
    entry = get_entry(args.variety)
    mu = parse_int_list(args.mu, "mu")
    if args.expand is not None and args.expand < 0:
        raise InputValidationError(f"--expand must be nonnegative, got {args.expand}")
    v = make_weighted(entry, mu, args.u)
    inputs = {"variety": entry.id, "mu": list(mu), "u": args.u, "expand": args.expand}
    return make_report("hilbert", inputs, hilbert_report(v, args.expand), started)


def cmd_construct(args: Namespace) -> Report:
    started = perf_counter()
    entry = get_entry(args.variety)
    mu = parse_int_list(args.mu, "mu")
    ops = parse_ops(args.ops)
    base = make_weighted(entry, mu, args.u)
    v = apply_ops(ConstructedVariety.from_base(base), ops)

    invariants = None
    label = None
    if v.dim == 3:
        target = threefold_class(v.canonical_degree)
        label = target.value if target is not None else "general"
        found = candidate_invariants(v, target) if target is not None else CandidateInvariants(degree=degree(v))
        invariants = invariants_report(found)
    outputs = ConstructReport(
        variety=entry.id,
        mu=list(mu),
        u=args.u,
        ops=[op.label() for op in v.ops_log],
        ambient_weights=list(v.ambient_weights),
        dim=v.dim,
        canonical_degree=v.canonical_degree,
        numerator=numerator_pairs(v.series.numerator),
        denominator=list(v.series.denom_exponents),
        wellformed_ambient=wellformed_wps(v.ambient_weights),
        threefold_class=label,
        invariants=invariants,
    )
    inputs = {"variety": entry.id, "mu": list(mu), "u": args.u, "ops": args.ops}
    return make_report("construct", inputs, outputs, started)


def cmd_search(args: Namespace) -> Report:
    started = perf_counter()
    entry = get_entry(args.variety)
    target = TargetClass(args.target)
    candidates = search(
        entry,
        target,
        mu_bound=args.mu_bound,
        u_bound=args.u_bound,
        max_sections=args.max_sections,
        max_cones=args.max_cones,
        jobs=args.jobs,
    )
    inputs = {
        "variety": entry.id,
        "target": target.value,
        "mu_bound": args.mu_bound,
        "u_bound": args.u_bound,
        "max_sections": args.max_sections,
        "max_cones": args.max_cones,
    }
    return make_report("search", inputs, [candidate_report(c) for c in candidates], started)


def closed_form_for(ideal_id: str, weights: Tuple[int, ...]) -> Optional[HilbertSeries]:
    """Closed-form series of the variety cut out by an appendix ideal, when the weights are known"""
    keys = [ideal_id] if weights == (1,) * len(weights) else [
        k for k, w in CY_WEIGHTS.items() if w == weights and k in REFERENCE_POINTS
    ]
    for key in keys:
        entry_id, mu, u = REFERENCE_POINTS[key]
        if entry_id == ideal_id:
            return make_weighted(get_entry(entry_id), mu, u).series
    return None


def groebner_report(ideal_id: str, weights: Optional[Tuple[int, ...]], order: OrderKind) -> GroebnerReport:
    ideal = appendix_ideal(ideal_id, weights, order)
    gb = buchberger(ideal)
    leading = initial_ideal(gb)
    series = HilbertSeries(monomial_hilbert_numerator(leading, gb.weights), gb.weights)
    reference = closed_form_for(ideal_id, gb.weights)
    return GroebnerReport(
        ideal=ideal_id,
        weights=list(gb.weights),
        order=order,
        num_generators=len(ideal),
        gb_size=len(gb),
        leading_monomials=[format_monomial(m, gb.names) for m in leading],
        numerator=numerator_pairs(series.numerator),
        denominator=list(series.denom_exponents),
        matches_closed_form=series.equivalent(reference) if reference is not None else None,
    )


def cmd_groebner(args: Namespace) -> Report:
    started = perf_counter()
    weights = None
    if args.weights:
        weights = CY_WEIGHTS.get(args.weights) or parse_int_list(args.weights, "weights")
    order = OrderKind(args.order)
    outputs = groebner_report(args.ideal, weights, order)
    inputs = {"ideal": args.ideal, "weights": args.weights, "order": order.value}
    return make_report("groebner", inputs, outputs, started)


# Human-readable rendering

def _numerator_text(pairs: List[Tuple[int, str]]) -> str:
    return format_numerator([(e, c) for e, c in pairs])


def render_text(report: Report) -> str:
    out = report.outputs
    lines: List[str] = []
    if report.command == "catalog":
        lines.append(f"{'id':<8}{'name':<12}{'group':<8}{'P^N':>5}{'dim':>5}{'codim':>7}{'quadrics':>10}")
        for row in out:
            flag = "  (slow)" if row.slow else ""
            lines.append(
                f"{row.id:<8}{row.name:<12}{row.group:<8}{row.ambient_dim:>5}{row.dim:>5}"
                f"{row.codim:>7}{row.num_quadrics:>10}{flag}"
            )
    elif report.command == "hilbert":
        lines.append(f"{out.variety} mu={tuple(out.mu)} u={out.u}")
        lines.append(f"ambient weights: P[{format_multiset(out.ambient_weights)}]")
        lines.append(f"dim {out.dim}, codim {out.codim}")
        lines.append(f"numerator: {_numerator_text(out.numerator)}")
        lines.append(f"denominator: prod(1-t^d), d in {out.denominator}")
        lines.append(f"K = O({out.canonical_degree})")
        if out.expansion is not None:
            lines.append(f"h_0..h_{len(out.expansion) - 1}: {out.expansion}")
    elif report.command == "construct":
        lines.append(f"{out.variety} mu={tuple(out.mu)} u={out.u} ops: {','.join(out.ops) or '-'}")
        lines.append(f"ambient weights: P[{format_multiset(out.ambient_weights)}]"
                     + ("" if out.wellformed_ambient else " (not well-formed)"))
        kind = f" ({out.threefold_class})" if out.threefold_class else ""
        lines.append(f"dim {out.dim}, K = O({out.canonical_degree}){kind}")
        lines.append(f"numerator: {_numerator_text(out.numerator)}")
        if out.invariants is not None:
            lines.append(_invariants_text(out.invariants))
    elif report.command == "search":
        lines.append(f"{len(out)} candidates")
        for c in out:
            lines.append(
                f"{c.entry_id} mu={tuple(c.mu)} u={c.u} {','.join(c.ops)} "
                f"-> P[{format_multiset(c.ambient_weights)}] K = O({c.canonical_degree}); "
                f"{_invariants_text(c.invariants)} [{'; '.join(c.notes)}]"
            )
    elif report.command == "groebner":
        lines.append(f"{out.ideal} weights={out.weights} order={out.order.value}")
        lines.append(f"{out.num_generators} generators, Groebner basis of size {out.gb_size}")
        lines.append(f"leading monomials: {', '.join(out.leading_monomials)}")
        lines.append(f"numerator: {_numerator_text(out.numerator)}")
        if out.matches_closed_form is not None:
            lines.append(f"matches closed form: {'yes' if out.matches_closed_form else 'NO'}")
    elif report.command == "verify":
        for suite in out:
            lines.append(f"suite {suite.suite}: {'PASS' if suite.passed else 'FAIL'}")
            for check in suite.checks:
                mark = "ok" if check.passed else ("FAIL" if check.hard else "info")
                detail = f"  {check.detail}" if check.detail else ""
                lines.append(f"  [{mark}] {check.name}{detail}")
    return "\n".join(lines)


def _invariants_text(inv: InvariantsReport) -> str:
    parts = [f"D^3 = {inv.degree}"]
    if inv.genus is not None:
        parts.append(f"genus {inv.genus}")
    if inv.dc2_estimate is not None:
        parts.append(f"D.c2 ~ {inv.dc2_estimate} (period {inv.fit_period})")
    return ", ".join(parts)
