"""Handler for the fuzz command: random oracle-equivalence trials."""

import random

from matching_common import GuardExceededError, OracleConfig, setup_logging
from matching_common.infrastructure import TextCodec

from domain import (
    Instance,
    Problem,
    build_rotation_structure,
    enumerate_closed_sets,
    enumerate_stable_strict,
    fpt_solve_bsm,
    fpt_solve_gsm,
    fpt_solve_sesm,
    heuristic_decomposition,
    make_nice,
    oracle_optimum,
    primal_graph,
    random_instance,
    rotation_graph,
    xp_solve_bsm,
    xp_solve_max_smt,
    xp_solve_min_smt,
    xp_solve_sesm,
)
from domain.fpt_solvers import bsm_from_pairs, sesm_from_pairs
from response_models import FuzzMismatch, FuzzResponse

logger = setup_logging()

TIE_PROBABILITY = 0.3


class FuzzHandler:
    """
    Cross-checks the dynamic programs against the oracles.

    Every trial draws one strict and one tied instance with up to n agents
    per side. Trials run one after another from a single seeded generator,
    so a seed reproduces the whole batch.
    """

    def __init__(self, codec: TextCodec[Instance], oracle_config: OracleConfig):
        self._codec = codec
        self._oracle_config = oracle_config

    def _strict_values(self, inst: Instance) -> dict[str, dict[str, object]]:
        primal = make_nice(heuristic_decomposition(primal_graph(inst)))
        rs = build_rotation_structure(inst)
        rotation = make_nice(heuristic_decomposition(rotation_graph(rs)))
        pairs = fpt_solve_gsm(inst, rs, rotation)
        stable = enumerate_stable_strict(inst, self._oracle_config, method="filter")
        scores = stable.scores
        return {
            "sesm": {
                "oracle": min(abs(s.delta) for s in scores),
                "xp": xp_solve_sesm(inst, primal).optimum,
                "fpt": fpt_solve_sesm(inst, rs, rotation).optimum,
                "gsm-projection": sesm_from_pairs(pairs),
            },
            "bsm": {
                "oracle": min(s.bal for s in scores),
                "xp": xp_solve_bsm(inst, primal).optimum,
                "fpt": fpt_solve_bsm(inst, rs, rotation).optimum,
                "gsm-projection": bsm_from_pairs(pairs),
            },
            "gsm": {
                "oracle": sorted({(s.sat_m, s.sat_w) for s in scores}),
                "fpt": sorted(pairs),
            },
            "closed-sets": {
                "oracle": len(stable.matchings),
                "rotations": sum(1 for _ in enumerate_closed_sets(rs)),
            },
        }

    def _tied_values(self, inst: Instance) -> dict[str, dict[str, object]]:
        primal = make_nice(heuristic_decomposition(primal_graph(inst)))
        return {
            "max-smt": {
                "oracle": oracle_optimum(
                    inst, Problem.MAX_SMT, self._oracle_config
                ).optimum,
                "xp": xp_solve_max_smt(inst, primal).optimum,
            },
            "min-smt": {
                "oracle": oracle_optimum(
                    inst, Problem.MIN_SMT, self._oracle_config
                ).optimum,
                "xp": xp_solve_min_smt(inst, primal).optimum,
            },
        }

    def process(self, n: int, trials: int, seed: int) -> FuzzResponse:
        """
        Runs a batch of trials.

        Args:
            n: Largest number of agents per side.
            trials: Number of trials.
            seed: Seed of the instance generator.

        Returns:
            FuzzResponse counting the comparisons made, the instances skipped
            because an oracle guard was exceeded and every disagreement.
        """
        logger.info(
            "Processing fuzz batch", extra={"n": n, "trials": trials, "seed": seed}
        )
        rng = random.Random(seed)
        checks = 0
        skipped = 0
        mismatches: list[FuzzMismatch] = []

        for trial in range(trials):
            strict = random_instance(rng, rng.randint(1, n), rng.randint(1, n))
            tied = random_instance(
                rng,
                rng.randint(1, n),
                rng.randint(1, n),
                tie_probability=TIE_PROBABILITY,
            )
            batch = ((strict, self._strict_values), (tied, self._tied_values))
            for inst, solve in batch:
                try:
                    comparisons = solve(inst)
                except GuardExceededError as e:
                    logger.debug(
                        "Fuzz instance skipped",
                        extra={"trial": trial, "guard": e.guard},
                    )
                    skipped += 1
                    continue
                for problem, values in comparisons.items():
                    checks += 1
                    if len({repr(v) for v in values.values()}) > 1:
                        logger.warning(
                            "Methods disagree",
                            extra={"trial": trial, "problem": problem},
                        )
                        mismatches.append(
                            FuzzMismatch(
                                trial=trial,
                                problem=problem,
                                instance=self._codec.render(inst),
                                values=values,
                            )
                        )

        logger.info(
            "Fuzz batch processed",
            extra={
                "checks": checks,
                "skipped": skipped,
                "mismatches": len(mismatches),
            },
        )
        return FuzzResponse(
            trials=trials, checks=checks, skipped=skipped, mismatches=mismatches
        )
