"""Handler for solve requests."""

import time
from typing import Literal

from matching_common import OracleConfig, UnsupportedInputError, setup_logging
from matching_common.infrastructure import TextCodec
from pydantic import BaseModel

from domain import (
    Instance,
    Method,
    NiceTreeDecomposition,
    Problem,
    SolveReport,
    SolveStats,
    TreeDecomposition,
    build_rotation_structure,
    fpt_solve,
    heuristic_decomposition,
    make_nice,
    man_optimal,
    oracle_optimum,
    primal_graph,
    rotation_graph,
    score,
    stable_with_tiebreak,
    xp_solve_bsm,
    xp_solve_max_smt,
    xp_solve_min_smt,
    xp_solve_sesm,
)
from domain.fpt_solvers import BalanceObjective, DifferenceObjective, PairsObjective
from exceptions import DecompositionMismatchError, TreeDecompositionError
from infrastructure import PaceTdCodec

logger = setup_logging()

GraphKind = Literal["primal", "rotation"]

XP_SOLVERS = {
    Problem.SESM: xp_solve_sesm,
    Problem.BSM: xp_solve_bsm,
    Problem.MAX_SMT: xp_solve_max_smt,
    Problem.MIN_SMT: xp_solve_min_smt,
}
FPT_OBJECTIVES = {
    Problem.GSM: PairsObjective,
    Problem.SESM: DifferenceObjective,
    Problem.BSM: BalanceObjective,
}


class SolveRequest(BaseModel, frozen=True):
    """A parsed solve command."""

    instance_text: str
    problem: Problem
    method: Method
    td_text: str | None = None
    graph: GraphKind | None = None
    seed: int = 0


class SolveHandler:
    """Parses an instance, picks a decomposition and runs the chosen method."""

    def __init__(self, codec: TextCodec[Instance], oracle_config: OracleConfig):
        self._codec = codec
        self._oracle_config = oracle_config

    def _decomposition(
        self, td_text: str | None, graph, n_vertices: int, graph_kind: str
    ) -> NiceTreeDecomposition:
        td: TreeDecomposition
        if td_text is None:
            td = heuristic_decomposition(graph)
        else:
            td = PaceTdCodec(n_vertices=n_vertices).parse(td_text)
        try:
            return make_nice(td, graph)
        except TreeDecompositionError as e:
            raise DecompositionMismatchError(graph_kind, e) from e

    def _gale_shapley(self, inst: Instance, problem: Problem, seed: int) -> SolveReport:
        started = time.perf_counter()
        if inst.has_ties:
            mu = stable_with_tiebreak(inst, seed)
        else:
            mu = man_optimal(inst)
        s = score(inst, mu)
        values = {
            Problem.SESM: abs(s.delta),
            Problem.BSM: s.bal,
            Problem.MAX_SMT: s.size,
            Problem.MIN_SMT: s.size,
            Problem.GSM: [(s.sat_m, s.sat_w)],
        }
        return SolveReport(
            problem=problem,
            method=Method.GS,
            optimum=values[problem],
            witness=mu,
            stats=SolveStats(elapsed_seconds=time.perf_counter() - started),
        )

    def process(self, request: SolveRequest) -> SolveReport:
        """
        Solves one instance.

        Args:
            request: Instance text, objective, method and optional decomposition.

        Returns:
            SolveReport of the chosen method. The gs method reports the value of
            the man-optimal (or seeded tie-broken) matching, not an optimum.

        Raises:
            InstanceValidationError: If the instance or decomposition is malformed.
            UnsupportedInputError: If the method cannot handle the objective,
                the instance or the requested graph.
            DecompositionMismatchError: If a supplied decomposition does not
                cover the graph the method needs.
            GuardExceededError: If an oracle guard is exceeded.
        """
        inst = self._codec.parse(request.instance_text)
        logger.info(
            "Processing solve request",
            extra={
                "problem": request.problem,
                "method": request.method,
                "men": inst.n_men,
                "women": inst.n_women,
            },
        )

        match request.method:
            case Method.ORACLE:
                report = oracle_optimum(inst, request.problem, self._oracle_config)
            case Method.GS:
                report = self._gale_shapley(inst, request.problem, request.seed)
            case Method.XP:
                if request.graph == "rotation":
                    raise UnsupportedInputError("xp", "it decomposes the primal graph")
                if request.problem not in XP_SOLVERS:
                    raise UnsupportedInputError("xp", f"objective {request.problem}")
                ntd = self._decomposition(
                    request.td_text, primal_graph(inst), inst.n_agents, "primal"
                )
                report = XP_SOLVERS[request.problem](inst, ntd)
            case Method.FPT:
                if request.graph == "primal":
                    raise UnsupportedInputError(
                        "fpt", "it decomposes the rotation graph"
                    )
                if request.problem not in FPT_OBJECTIVES:
                    raise UnsupportedInputError("fpt", f"objective {request.problem}")
                if inst.has_ties:
                    raise UnsupportedInputError("fpt", "preference lists contain ties")
                rs = build_rotation_structure(inst)
                ntd = self._decomposition(
                    request.td_text, rotation_graph(rs), len(rs.rotations), "rotation"
                )
                objective = FPT_OBJECTIVES[request.problem]()
                report = fpt_solve(inst, rs, ntd, objective)

        logger.info(
            "Solve request processed",
            extra={
                "problem": request.problem,
                "method": request.method,
                "optimum": str(report.optimum),
            },
        )
        return report
