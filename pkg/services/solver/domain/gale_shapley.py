"""Proposal algorithms for man-optimal, woman-optimal and tie-broken matchings."""

import random
from collections import deque

from matching_common import UnsupportedInputError

from domain.models import Instance, LatticeExtremes, Matching


def _propose(inst: Instance) -> Matching:
    next_choice = [0] * inst.n_men
    engaged_to: dict[int, int] = {}
    free = deque(range(inst.n_men))

    while free:
        m = free.popleft()
        entries = inst.men_prefs[m]
        while next_choice[m] < len(entries):
            w, _ = entries[next_choice[m]]
            next_choice[m] += 1
            rival = engaged_to.get(w)
            if rival is None:
                engaged_to[w] = m
                break
            if inst.woman_rank(w, m) < inst.woman_rank(w, rival):
                engaged_to[w] = m
                free.append(rival)
                break

    return Matching.from_pairs((m, w) for w, m in engaged_to.items())


def _require_strict(inst: Instance, operation: str) -> None:
    if inst.has_ties:
        raise UnsupportedInputError(operation, "preference lists contain ties")


def man_optimal(inst: Instance) -> Matching:
    """
    Computes the man-optimal stable matching of a strict instance.

    Raises:
        UnsupportedInputError: If the instance has ties.
    """
    _require_strict(inst, "man_optimal")
    return _propose(inst)


def woman_optimal(inst: Instance) -> Matching:
    """
    Computes the woman-optimal stable matching of a strict instance.

    Raises:
        UnsupportedInputError: If the instance has ties.
    """
    _require_strict(inst, "woman_optimal")
    flipped = _propose(inst.swapped())
    return Matching.from_pairs((m, w) for w, m in flipped.pairs)


def stable_with_tiebreak(inst: Instance, seed: int) -> Matching:
    """
    Breaks every tie with a seeded shuffle and runs the proposal loop.

    The result is weakly stable for the tied instance and depends only on
    the seed.
    """
    rng = random.Random(seed)

    def broken(entries: tuple[tuple[int, int], ...]) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for partner, rank in entries:
            groups.setdefault(rank, []).append(partner)
        ordered: list[list[int]] = []
        for rank in sorted(groups):
            group = groups[rank]
            rng.shuffle(group)
            ordered.extend([partner] for partner in group)
        return ordered

    men = [broken(entries) for entries in inst.men_prefs]
    women = [broken(entries) for entries in inst.women_prefs]
    strict = Instance.from_rankings(men, women, inst.men, inst.women)
    return _propose(strict)


def lattice_extremes(inst: Instance) -> LatticeExtremes:
    """Returns both optimal matchings and the always-matched agents."""
    mu_m = man_optimal(inst)
    mu_w = woman_optimal(inst)
    return LatticeExtremes(
        man_optimal=mu_m,
        woman_optimal=mu_w,
        matched_men=mu_m.men,
        matched_women=mu_m.women,
    )
