"""Blocking pairs, scores and the primal graph of an instance."""

import networkx as nx

from domain.models import Instance, Matching, Scores
from exceptions import MatchingStructureError


def check_matching(inst: Instance, mu: Matching) -> None:
    """
    Verifies that a matching only uses agents and pairs of the instance.

    Raises:
        MatchingStructureError: On an out-of-range agent or unacceptable pair.
    """
    for m, w in mu.sorted_pairs():
        if not (0 <= m < inst.n_men and 0 <= w < inst.n_women):
            raise MatchingStructureError(f"pair ({m + 1}, {w + 1}) is out of range")
        if not inst.acceptable(m, w):
            raise MatchingStructureError(
                f"man {inst.men[m]} and woman {inst.women[w]} "
                "are not mutually acceptable"
            )


def _blocks(inst: Instance, mu: Matching, m: int, w: int) -> bool:
    current_w = mu.partner_of_man(m)
    if current_w == w:
        return False
    current_m = mu.partner_of_woman(w)
    man_wants = current_w is None or inst.man_rank(m, w) < inst.man_rank(m, current_w)
    woman_wants = current_m is None or inst.woman_rank(w, m) < inst.woman_rank(
        w, current_m
    )
    return man_wants and woman_wants


def find_blocking_pair(inst: Instance, mu: Matching) -> tuple[int, int] | None:
    """
    Finds a pair that blocks a matching under weak stability.

    Both agents of a blocking pair must strictly prefer each other to their
    current status, so tied alternatives never block.

    Args:
        inst: The instance.
        mu: A matching over the instance.

    Returns:
        The first blocking pair by man index and then by the man's list
        order, or None when the matching is stable.

    Raises:
        MatchingStructureError: If the matching does not fit the instance.
    """
    check_matching(inst, mu)
    for m, entries in enumerate(inst.men_prefs):
        for w, _ in entries:
            if _blocks(inst, mu, m, w):
                return m, w
    return None


def is_stable(inst: Instance, mu: Matching) -> bool:
    return find_blocking_pair(inst, mu) is None


def score(inst: Instance, mu: Matching) -> Scores:
    """Sums ranks over the matched pairs; unmatched agents add nothing."""
    check_matching(inst, mu)
    sat_m = sum(inst.man_rank(m, w) for m, w in mu.pairs)
    sat_w = sum(inst.woman_rank(w, m) for m, w in mu.pairs)
    return Scores(
        sat_m=sat_m,
        sat_w=sat_w,
        delta=sat_m - sat_w,
        bal=max(sat_m, sat_w),
        size=mu.size,
    )


def primal_graph(inst: Instance) -> nx.Graph:
    """Bipartite acceptability graph; men are 0..|M|-1, women follow."""
    graph = nx.Graph()
    graph.add_nodes_from(range(inst.n_agents))
    graph.add_edges_from(
        (inst.man_vertex(m), inst.woman_vertex(w)) for m, w in inst.acceptable_pairs()
    )
    return graph
