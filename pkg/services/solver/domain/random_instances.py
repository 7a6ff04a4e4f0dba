"""Seeded random instances for oracle-equivalence trials."""

import random

from domain.models import Instance


def _grouped(rng: random.Random, order: list[int], tie_probability: float) -> list:
    groups: list[list[int]] = []
    for agent in order:
        if groups and rng.random() < tie_probability:
            groups[-1].append(agent)
        else:
            groups.append([agent])
    return [tuple(g) if len(g) > 1 else g[0] for g in groups]


def random_instance(
    rng: random.Random,
    n_men: int,
    n_women: int,
    density: float = 0.7,
    tie_probability: float = 0.0,
) -> Instance:
    """
    Draws an instance with random acceptability and random orders.

    Each (man, woman) pair is mutually acceptable with probability density,
    so list lengths vary. With a positive tie_probability each entry joins
    the previous tie group with that probability.
    """
    acceptable = [
        [w for w in range(n_women) if rng.random() < density] for _ in range(n_men)
    ]
    suitors: list[list[int]] = [[] for _ in range(n_women)]
    for m, women in enumerate(acceptable):
        for w in women:
            suitors[w].append(m)

    men = [
        _grouped(rng, rng.sample(women, len(women)), tie_probability)
        for women in acceptable
    ]
    women = [
        _grouped(rng, rng.sample(ms, len(ms)), tie_probability) for ms in suitors
    ]
    return Instance.from_rankings(men, women)
