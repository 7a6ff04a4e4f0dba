"""Brute-force enumeration of stable matchings and exact optima."""

import time
from collections.abc import Callable

from matching_common import (
    GuardExceededError,
    OracleConfig,
    UnsupportedInputError,
    setup_logging,
)
from pydantic import BaseModel

from domain.gale_shapley import man_optimal
from domain.models import (
    Instance,
    Matching,
    Method,
    Problem,
    Scores,
    SolveReport,
    SolveStats,
)
from domain.rotations import build_rotation_structure, eliminate, enumerate_closed_sets
from domain.stability import is_stable, score

logger = setup_logging()


class StableSet(BaseModel, frozen=True):
    """All stable matchings of an instance with their scores."""

    matchings: tuple[Matching, ...]
    scores: tuple[Scores, ...]


def _stable_set(inst: Instance, matchings: list[Matching]) -> StableSet:
    return StableSet(
        matchings=tuple(matchings),
        scores=tuple(score(inst, mu) for mu in matchings),
    )


def _filter_strict(inst: Instance) -> list[Matching]:
    base = man_optimal(inst)
    men = sorted(base.men)
    women = base.women
    wife: dict[int, int] = {}
    husband: dict[int, int] = {}
    found: list[Matching] = []

    def consistent(m: int, w: int) -> bool:
        for other, _ in inst.men_prefs[m]:
            if other == w:
                break
            holder = husband.get(other)
            if holder is not None and inst.woman_rank(other, m) < inst.woman_rank(
                other, holder
            ):
                return False
        for earlier, his in wife.items():
            if inst.acceptable(earlier, w) and inst.man_rank(
                earlier, w
            ) < inst.man_rank(earlier, his):
                if inst.woman_rank(w, earlier) < inst.woman_rank(w, m):
                    return False
        return True

    def extend(index: int) -> None:
        if index == len(men):
            mu = Matching.from_pairs(wife.items())
            if is_stable(inst, mu):
                found.append(mu)
            return
        m = men[index]
        for w, _ in inst.men_prefs[m]:
            if w in women and w not in husband and consistent(m, w):
                wife[m] = w
                husband[w] = m
                extend(index + 1)
                del wife[m]
                del husband[w]

    extend(0)
    return found


def enumerate_stable_strict(
    inst: Instance, config: OracleConfig | None = None, method: str = "rotations"
) -> StableSet:
    """
    Enumerates every stable matching of a strict instance.

    Args:
        inst: A strict instance.
        config: Oracle guards.
        method: "rotations" eliminates every closed rotation set;
            "filter" checks every injective assignment of the always-matched
            men to the always-matched women.

    Returns:
        The stable set in enumeration order.

    Raises:
        UnsupportedInputError: If the instance has ties.
        GuardExceededError: If the filter route is asked for a large instance.
    """
    config = config or OracleConfig()
    if inst.has_ties:
        raise UnsupportedInputError(
            "enumerate_stable_strict", "preference lists contain ties"
        )

    if method == "filter":
        if inst.n_agents > config.max_filter_agents:
            raise GuardExceededError(
                "max_filter_agents", config.max_filter_agents, inst.n_agents
            )
        matchings = _filter_strict(inst)
    else:
        rs = build_rotation_structure(inst)
        matchings = [eliminate(rs, closed) for closed in enumerate_closed_sets(rs)]

    logger.debug(
        "Stable matchings enumerated",
        extra={"method": method, "count": len(matchings)},
    )
    return _stable_set(inst, matchings)


def enumerate_weakly_stable(
    inst: Instance, config: OracleConfig | None = None
) -> StableSet:
    """
    Enumerates every weakly stable matching by backtracking over the men.

    Each man is matched to an acceptable free woman or left single. A branch
    is cut as soon as a pair whose outcome can no longer change blocks it.

    Raises:
        GuardExceededError: If the instance has too many acceptable pairs.
    """
    config = config or OracleConfig()
    pairs = len(inst.acceptable_pairs())
    if pairs > config.max_weak_pairs:
        raise GuardExceededError("max_weak_pairs", config.max_weak_pairs, pairs)

    # a woman's status is final once every man on her list has been decided
    last_man = [max((m for m, _ in lst), default=-1) for lst in inst.women_prefs]
    wife: dict[int, int | None] = {}
    husband: dict[int, int] = {}
    found: list[Matching] = []

    def woman_wants(w: int, m: int) -> bool:
        holder = husband.get(w)
        if holder is None:
            return True
        return inst.woman_rank(w, m) < inst.woman_rank(w, holder)

    def man_wants(m: int, w: int) -> bool:
        his = wife[m]
        return his is None or inst.man_rank(m, w) < inst.man_rank(m, his)

    def settled(w: int, upto: int) -> bool:
        return w in husband or last_man[w] <= upto

    def consistent(m: int, choice: int | None) -> bool:
        limit = inst.man_rank(m, choice) if choice is not None else None
        for w, rank in inst.men_prefs[m]:
            if limit is not None and rank >= limit:
                continue
            if w != choice and settled(w, m) and woman_wants(w, m):
                return False
        for earlier in range(m):
            for w, _ in inst.men_prefs[earlier]:
                if not man_wants(earlier, w):
                    continue
                if w == choice:
                    if inst.woman_rank(w, earlier) < inst.woman_rank(w, m):
                        return False
                elif w not in husband and last_man[w] == m:
                    return False
        return True

    def extend(m: int) -> None:
        if m == inst.n_men:
            mu = Matching.from_pairs((x, w) for x, w in wife.items() if w is not None)
            if is_stable(inst, mu):
                found.append(mu)
            return
        options: list[int | None] = [
            w for w, _ in inst.men_prefs[m] if w not in husband
        ]
        options.append(None)
        for choice in options:
            if not consistent(m, choice):
                continue
            wife[m] = choice
            if choice is not None:
                husband[choice] = m
            extend(m + 1)
            del wife[m]
            if choice is not None:
                del husband[choice]

    extend(0)
    logger.debug("Weakly stable matchings enumerated", extra={"count": len(found)})
    return _stable_set(inst, found)


def _pick(
    stable: StableSet, key: Callable[[Scores], int]
) -> tuple[int, Matching | None]:
    best_index = min(range(len(stable.matchings)), key=lambda i: key(stable.scores[i]))
    return key(stable.scores[best_index]), stable.matchings[best_index]


def oracle_optimum(
    inst: Instance, problem: Problem, config: OracleConfig | None = None
) -> SolveReport:
    """
    Computes an exact optimum and one witness by enumeration.

    For GSM the optimum is the set of (men's sum, women's sum) pairs over
    all stable matchings and no witness is attached.

    Raises:
        UnsupportedInputError: If a strict-only objective gets a tied instance.
        GuardExceededError: If an enumeration guard is exceeded.
    """
    started = time.perf_counter()
    if problem in (Problem.MAX_SMT, Problem.MIN_SMT):
        stable = enumerate_weakly_stable(inst, config)
    else:
        stable = enumerate_stable_strict(inst, config)

    witness: Matching | None = None
    optimum: int | list[tuple[int, int]]
    match problem:
        case Problem.SESM:
            optimum, witness = _pick(stable, lambda s: abs(s.delta))
        case Problem.BSM:
            optimum, witness = _pick(stable, lambda s: s.bal)
        case Problem.MAX_SMT:
            optimum, witness = _pick(stable, lambda s: -s.size)
            optimum = -optimum
        case Problem.MIN_SMT:
            optimum, witness = _pick(stable, lambda s: s.size)
        case Problem.GSM:
            optimum = sorted({(s.sat_m, s.sat_w) for s in stable.scores})

    return SolveReport(
        problem=problem,
        method=Method.ORACLE,
        optimum=optimum,
        witness=witness,
        stats=SolveStats(
            tables={"stable_matchings": len(stable.matchings)},
            elapsed_seconds=time.perf_counter() - started,
        ),
    )
