"""Structural checks of generated reduction instances."""

from matching_common import GuardExceededError, OracleConfig, setup_logging

from domain import (
    Problem,
    build_rotation_structure,
    eliminate,
    enumerate_closed_sets,
    heuristic_decomposition,
    is_stable,
    man_optimal,
    oracle_optimum,
    primal_graph,
    rotation_graph,
    score,
)
from domain.rotations import RotationStructure
from reductions.clique import (
    check_leader_form,
    clique_witness_matching,
    find_multicolored_clique,
)
from reductions.models import (
    CheckResult,
    ReductionKind,
    ReductionOutput,
    VerificationReport,
)
from reductions.sat import (
    h_pi_arcs,
    is_excellent,
    legal_sets,
    matching_of,
    sat_rotation_families,
)

logger = setup_logging()

RELAXED_NOTE = (
    "relaxed spacers: measure thresholds that depend on spacer magnitudes "
    "are not checked"
)


def _check(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, status="pass" if ok else "fail", detail=detail)


def _skip(name: str, detail: str) -> CheckResult:
    return CheckResult(name=name, status="skipped", detail=detail)


def _check_counts(out: ReductionOutput) -> list[CheckResult]:
    inst = out.instance
    actual = inst.n_agents
    predicted = out.predicted.agents
    men_keys = {(r.gadget, r.index) for r in out.metadata.men_roles}
    women_keys = {(r.gadget, r.index) for r in out.metadata.women_roles}
    partition = (
        len(out.metadata.men_roles) == inst.n_men == len(men_keys)
        and len(out.metadata.women_roles) == inst.n_women == len(women_keys)
    )
    return [
        _check(
            "agent-count",
            actual == predicted,
            f"{actual} agents, {predicted} predicted",
        ),
        _check("roles-partition", partition),
    ]


def _check_width(out: ReductionOutput, rs: RotationStructure | None) -> CheckResult:
    graph = primal_graph(out.instance) if rs is None else rotation_graph(rs)
    width = heuristic_decomposition(graph).width
    bound = out.predicted.treewidth_bound
    return _check(
        "treewidth-bound",
        width <= bound,
        f"min-fill width {width} on the {out.predicted.graph} graph, bound {bound}",
    )


def _check_all_matched(out: ReductionOutput) -> CheckResult:
    inst = out.instance
    size = man_optimal(inst).size
    return _check(
        "all-matched",
        size == inst.n_men == inst.n_women,
        f"stable matchings have size {size} of {inst.n_men}",
    )


def _check_witness(out: ReductionOutput) -> CheckResult:
    clique = find_multicolored_clique(out.source)
    if clique is None:
        return _skip("witness-stable", "the graph has no multicolored clique")
    mu = clique_witness_matching(out, clique)
    if not is_stable(out.instance, mu):
        return _check("witness-stable", False, "clique matching has a blocking pair")
    scores = score(out.instance, mu)
    target = out.predicted.target
    match out.predicted.target_kind:
        case "delta":
            value, ok = scores.delta, abs(scores.delta) <= target
        case "bal":
            value, ok = scores.bal, scores.bal <= target
        case _:
            value, ok = scores.size, scores.size == target
    return _check(
        "witness-stable",
        ok,
        f"clique {[v + 1 for v in clique]} gives {out.predicted.target_kind} {value}",
    )


def _check_oracle_target(out: ReductionOutput, config: OracleConfig) -> CheckResult:
    problem = (
        Problem.MAX_SMT if out.kind == ReductionKind.CLIQUE_MAX_SMT else Problem.MIN_SMT
    )
    try:
        report = oracle_optimum(out.instance, problem, config)
    except GuardExceededError as e:
        return _skip("oracle-target", str(e))
    exists = find_multicolored_clique(out.source) is not None
    target = out.predicted.target
    if problem == Problem.MAX_SMT:
        ok = (report.optimum == target) == exists
    else:
        ok = (report.optimum == target) if exists else report.optimum > target
    return _check(
        "oracle-target", ok, f"oracle size {report.optimum}, target {target}"
    )


def _check_sat(
    out: ReductionOutput, rs: RotationStructure, config: OracleConfig
) -> list[CheckResult]:
    families = [r for family in sat_rotation_families(out) for r in family]
    key_of = {frozenset(r.pairs): r.key for r in families}
    found = [key_of.get(frozenset(rotation.pairs)) for rotation in rs.rotations]
    checks = [
        _check(
            "rotation-families",
            None not in found and len(found) == len(families),
            f"{len(rs.rotations)} rotations, {len(families)} expected",
        )
    ]
    if None in found:
        return checks

    supergraph = h_pi_arcs(out)
    arcs = [(found[a], found[b]) for a, b in rs.arcs]
    outside = [arc for arc in arcs if arc not in supergraph]
    checks.append(
        _check("h-pi-containment", not outside, f"{len(outside)} arcs outside")
    )

    if len(rs.rotations) > config.max_rotations:
        checks.append(
            _skip(
                "stable-set",
                f"{len(rs.rotations)} rotations exceed {config.max_rotations}",
            )
        )
        return checks

    legal = set(legal_sets(out))
    stable_ok = True
    closed_count = 0
    for closed in enumerate_closed_sets(rs):
        closed_count += 1
        keys = frozenset(found[r] for r in closed)
        mu = eliminate(rs, closed)
        if keys not in legal or matching_of(out, keys).pairs != mu.pairs:
            stable_ok = False
            break
        if not is_excellent(out, mu):
            stable_ok = False
            break
    stable_ok = stable_ok and closed_count == len(legal)
    checks.append(
        _check(
            "stable-set",
            stable_ok,
            f"{closed_count} stable matchings, {len(legal)} legal sets",
        )
    )
    return checks


def verify_reduction(
    out: ReductionOutput, config: OracleConfig | None = None
) -> VerificationReport:
    """
    Runs every structural check that applies to a reduction output.

    Args:
        out: A generated reduction.
        config: Oracle guards; checks that would exceed them are skipped.

    Returns:
        VerificationReport with one entry per check.
    """
    config = config or OracleConfig()
    logger.info(
        "Processing reduction verification",
        extra={"kind": out.kind, "relaxed": out.metadata.relaxed},
    )
    notes = (RELAXED_NOTE,) if out.metadata.relaxed else ()

    if out.instance is None:
        block = out.metadata.unsatisfiable_block
        checks = [_skip("instance", f"block {block} has no satisfying assignment")]
        return VerificationReport(
            kind=out.kind,
            relaxed=out.metadata.relaxed,
            checks=tuple(checks),
            notes=notes,
        )

    checks = _check_counts(out)
    untied = out.kind not in (
        ReductionKind.CLIQUE_MAX_SMT,
        ReductionKind.CLIQUE_MIN_SMT,
    )
    if out.kind.is_clique:
        checks.append(_check_width(out, None))
        forms = check_leader_form(out)
        failing = [form.colour for form in forms if not form.ok]
        checks.append(
            _check("leader-form", not failing, f"failing classes {failing}")
        )
        checks.append(_check_witness(out))
        if untied:
            checks.append(_check_all_matched(out))
        else:
            checks.append(_check_oracle_target(out, config))
    else:
        rs = build_rotation_structure(out.instance)
        checks.append(_check_width(out, rs))
        checks.append(_check_all_matched(out))
        checks.extend(_check_sat(out, rs, config))

    report = VerificationReport(
        kind=out.kind,
        relaxed=out.metadata.relaxed,
        checks=tuple(checks),
        notes=notes,
    )
    logger.info(
        "Reduction verification processed",
        extra={"kind": out.kind, "passed": report.passed, "checks": len(checks)},
    )
    return report
