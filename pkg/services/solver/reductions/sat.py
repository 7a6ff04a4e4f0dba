"""Sparse CNF-SAT reductions and the rotation characterization of their outputs."""

import itertools
from collections.abc import Iterator
from typing import Literal

from matching_common import (
    GuardExceededError,
    ReductionConfig,
    UnsupportedInputError,
    setup_logging,
)
from pydantic import BaseModel

from domain import Matching
from exceptions import ReductionInputError, ReductionParameterError
from reductions.builder import Filler, InstanceBuilder
from reductions.models import (
    Predictions,
    ReductionKind,
    ReductionMetadata,
    ReductionOutput,
    SatBlock,
    SatInput,
)

logger = setup_logging()

Family = Literal["false", "variable", "truth"]


class SatSpacers(BaseModel, frozen=True):
    """Spacer lengths per block (index i-1) and the false-selector spacer."""

    gamma: tuple[int, ...]
    lam: tuple[int, ...]
    tau: int


class SatRotation(BaseModel, frozen=True):
    """A two-pair rotation of a SAT reduction output."""

    family: Family
    index: tuple[int, ...]
    pairs: tuple[tuple[int, int], tuple[int, int]]

    @property
    def key(self) -> tuple:
        return (self.family, *self.index)


def _spacers(
    inp: SatInput,
    kind: ReductionKind,
    spacer_scale: int,
    config: ReductionConfig,
    relaxed: bool,
) -> SatSpacers:
    if spacer_scale < 1:
        raise ReductionInputError(f"spacer scale {spacer_scale} is not positive")
    if relaxed:
        base = spacer_scale * config.gamma_base
        tau = spacer_scale * config.tau_base
    else:
        base, tau = inp.n_vars**20, inp.n_vars**10
    q = inp.n_blocks
    blocks = range(1, q + 1)
    if kind == ReductionKind.SAT_BSM:
        lam = tuple(base * 4 ** (i - 1) for i in blocks)
    else:
        lam = tuple(base * 2 ** (2 * q - i) for i in blocks)
    return SatSpacers(
        gamma=tuple(base * 2 ** (i - 1) for i in blocks), lam=lam, tau=tau
    )


def _pool_size(blocks: list[SatBlock], sp: SatSpacers) -> int:
    total = sum(b.size for b in blocks)
    per_block = sum(
        (b.size - 1) * sp.lam[b.index - 1] - sp.gamma[b.index - 1] for b in blocks
    )
    return per_block + (2 * len(blocks) - total) * sp.tau


def _happy_count(blocks: list[SatBlock], sp: SatSpacers, pool: int) -> int:
    total = sum(b.size for b in blocks)
    spacers = sum(
        b.size * (sp.gamma[b.index - 1] + sp.lam[b.index - 1]) for b in blocks
    )
    return spacers + 2 * total * sp.tau + pool


def _build(
    b: InstanceBuilder, inp: SatInput, blocks: list[SatBlock], sp: SatSpacers
) -> None:
    n = inp.n_vars
    positive: dict[int, list[tuple[int, int]]] = {t: [] for t in range(1, n + 1)}
    negative: dict[int, list[tuple[int, int]]] = {t: [] for t in range(1, n + 1)}
    for block in blocks:
        for j in range(1, block.size + 1):
            for t in sorted(block.true_sets[j - 1]):
                positive[t].append((block.index, j))
            for t in sorted(block.false_set(j)):
                negative[t].append((block.index, j))

    for t in range(1, n + 1):
        b.man("variable", t)
        b.man("mirror-variable", t)
        b.woman("variable", t)
        b.woman("mirror-variable", t)
    for block in blocks:
        for j in range(1, block.size + 1):
            for gadget in ("truth", "mirror-truth", "false", "mirror-false"):
                b.man(gadget, block.index, j)
                b.woman(gadget, block.index, j)

    for t in range(1, n + 1):
        m, mh = b.man("variable", t), b.man("mirror-variable", t)
        w, wh = b.woman("variable", t), b.woman("mirror-variable", t)
        false_women = [b.woman("false", i, j) for i, j in negative[t]]
        b.set_man_list(m, [w, *false_women, wh])
        b.set_man_list(mh, [wh, w])
        b.set_woman_list(w, [mh, *(b.man("truth", i, j) for i, j in positive[t]), m])
        b.set_woman_list(wh, [m, mh])

    for block in blocks:
        i = block.index
        for j in range(1, block.size + 1):
            others = [k for k in range(1, block.size + 1) if k != j]
            m, mh = b.man("truth", i, j), b.man("mirror-truth", i, j)
            w, wh = b.woman("truth", i, j), b.woman("mirror-truth", i, j)
            b.set_man_list(
                m,
                [
                    w,
                    *(b.woman("variable", t) for t in sorted(block.true_sets[j - 1])),
                    *(b.woman("false", i, k) for k in others),
                    Filler(count=sp.gamma[i - 1]),
                    wh,
                ],
            )
            b.set_man_list(mh, [wh, w])
            b.set_woman_list(w, [mh, Filler(count=sp.lam[i - 1]), m])
            b.set_woman_list(wh, [m, mh])

            mb, mbh = b.man("false", i, j), b.man("mirror-false", i, j)
            wb, wbh = b.woman("false", i, j), b.woman("mirror-false", i, j)
            b.set_man_list(mb, [wb, Filler(count=sp.tau), wbh])
            b.set_man_list(mbh, [wbh, wb])
            b.set_woman_list(
                wb,
                [
                    mbh,
                    *(b.man("variable", t) for t in sorted(block.false_set(j))),
                    *(b.man("truth", i, k) for k in others),
                    Filler(count=sp.tau),
                    mb,
                ],
            )
            b.set_woman_list(wbh, [mb, mbh])


def _reduce(
    inp: SatInput,
    kind: ReductionKind,
    spacer_scale: int,
    config: ReductionConfig | None,
    relaxed: bool,
) -> ReductionOutput:
    config = config or ReductionConfig()
    blocks = inp.blocks()
    n, q = inp.n_vars, inp.n_blocks
    pd = inp.width * inp.block_size
    logger.info(
        "Processing SAT reduction",
        extra={"kind": kind, "relaxed": relaxed, "variables": n, "blocks": q},
    )
    extras: dict[str, int] = {
        "n": n,
        "q": q,
        "s": inp.s,
        "p": inp.width,
        "d": inp.block_size,
        "spacer_scale": spacer_scale,
    }
    bound = n + 2 * 2**pd + 2
    threshold = 100 * inp.s * 4**pd * n * n

    empty = next((block for block in blocks if block.size == 0), None)
    if empty is not None:
        logger.info(
            "SAT reduction short-circuited",
            extra={"kind": kind, "block": empty.index},
        )
        return ReductionOutput(
            instance=None,
            metadata=ReductionMetadata(
                kind=kind,
                relaxed=relaxed,
                predicted=Predictions(
                    agents=0,
                    happy_pairs=0,
                    pool=0,
                    graph="rotation",
                    treewidth_bound=bound,
                    target_kind="delta" if kind == ReductionKind.SAT_SESM else "bal",
                    target=0,
                    extras=extras,
                ),
                unsatisfiable_block=empty.index,
            ),
            source=inp,
        )

    sp = _spacers(inp, kind, spacer_scale, config, relaxed)
    pool = _pool_size(blocks, sp)
    if pool < 0:
        raise ReductionParameterError("alpha", pool)
    total = sum(block.size for block in blocks)
    happy = _happy_count(blocks, sp, pool)
    agents = 4 * n + 8 * total + 2 * happy + 2
    if agents > config.max_agents:
        raise GuardExceededError("max_agents", config.max_agents, agents)

    b = InstanceBuilder()
    _build(b, inp, blocks, sp)
    garbage = b.man("garbage")
    partner = b.woman("garbage")
    b.set_man_list(garbage, [*b.add_pool(garbage, pool), partner])
    b.set_woman_list(partner, [garbage])
    inst, men_roles, women_roles = b.build()

    extras |= {
        "alpha": pool,
        "a_total": total,
        "printed_agents": 4 * (n + 2 * q * 2**pd) + pool + 1,
    }
    if kind == ReductionKind.SAT_SESM:
        target_kind, target = "delta", threshold
    else:
        target_kind = "bal"
        target = (
            threshold
            + pool
            + sum((block.size - 1) * sp.lam[block.index - 1] for block in blocks)
            + q * sp.tau
        )
        extras["eta"] = target

    logger.info(
        "SAT reduction processed",
        extra={"kind": kind, "agents": inst.n_agents, "predicted": agents},
    )
    return ReductionOutput(
        instance=inst,
        metadata=ReductionMetadata(
            kind=kind,
            relaxed=relaxed,
            predicted=Predictions(
                agents=agents,
                happy_pairs=b.happy_pairs,
                pool=pool,
                graph="rotation",
                treewidth_bound=bound,
                target_kind=target_kind,
                target=target,
                extras=extras,
            ),
            men_roles=men_roles,
            women_roles=women_roles,
        ),
        source=inp,
    )


def reduce_sat_to_sesm(
    inp: SatInput,
    spacer_scale: int = 1,
    config: ReductionConfig | None = None,
    relaxed: bool = True,
) -> ReductionOutput:
    """
    Builds the sex-equal instance of a sparse CNF formula.

    Args:
        inp: The formula with its block size.
        spacer_scale: Multiplier applied to the relaxed spacer bases.
        config: Spacer bases and the size guard.
        relaxed: Replace n^20 and n^10 by the configured bases.

    Returns:
        The instance with roles and predictions. When some block has no
        satisfying assignment the output carries no instance and names the
        block in unsatisfiable_block.

    Raises:
        ReductionParameterError: If the pool size alpha is negative.
        GuardExceededError: If the predicted agent count exceeds the guard.
    """
    return _reduce(inp, ReductionKind.SAT_SESM, spacer_scale, config, relaxed)


def reduce_sat_to_bsm(
    inp: SatInput,
    spacer_scale: int = 1,
    config: ReductionConfig | None = None,
    relaxed: bool = True,
) -> ReductionOutput:
    """Balanced variant: truth-woman spacers grow as 4^(i-1) instead of 2^(2q-i)."""
    return _reduce(inp, ReductionKind.SAT_BSM, spacer_scale, config, relaxed)


def _require_sat(out: ReductionOutput, operation: str) -> SatInput:
    if out.kind.is_clique:
        raise UnsupportedInputError(operation, "not a SAT reduction")
    if out.instance is None:
        raise UnsupportedInputError(operation, "the formula has an unsatisfiable block")
    return out.source


def sat_rotation_families(
    out: ReductionOutput,
) -> tuple[list[SatRotation], list[SatRotation], list[SatRotation]]:
    """The false-selector, variable and truth-selector rotations, in that order."""
    inp = _require_sat(out, "sat_rotation_families")

    def rotation(family: Family, gadget: str, *index: int) -> SatRotation:
        return SatRotation(
            family=family,
            index=index,
            pairs=(
                (out.man(gadget, *index), out.woman(gadget, *index)),
                (
                    out.man(f"mirror-{gadget}", *index),
                    out.woman(f"mirror-{gadget}", *index),
                ),
            ),
        )

    blocks = inp.blocks()
    false = [
        rotation("false", "false", block.index, j)
        for block in blocks
        for j in range(1, block.size + 1)
    ]
    variable = [
        rotation("variable", "variable", t) for t in range(1, inp.n_vars + 1)
    ]
    truth = [
        rotation("truth", "truth", block.index, j)
        for block in blocks
        for j in range(1, block.size + 1)
    ]
    return false, variable, truth


def h_pi_arcs(out: ReductionOutput) -> set[tuple[tuple, tuple]]:
    """Arcs of the supergraph that contains the rotation digraph of the output."""
    false, variable, truth = sat_rotation_families(out)
    arcs = {(a.key, b.key) for a in false for b in variable}
    arcs |= {(a.key, b.key) for a in variable for b in truth}
    arcs |= {(a.key, b.key) for a in false for b in truth if a.index[0] == b.index[0]}
    return arcs


def _subsets(items: list) -> Iterator[tuple]:
    return itertools.chain.from_iterable(
        itertools.combinations(items, r) for r in range(len(items) + 1)
    )


def legal_sets(out: ReductionOutput) -> Iterator[frozenset[tuple]]:
    """
    Yields every legal rotation set as a set of rotation keys.

    A set is legal when each chosen variable rotation has every false-selector
    rotation of an assignment falsifying it, and each chosen truth rotation has
    the variable rotations of its true variables plus every other false-selector
    rotation of its block.
    """
    inp = _require_sat(out, "legal_sets")
    blocks = inp.blocks()
    false_keys = [
        ("false", block.index, j) for block in blocks for j in range(1, block.size + 1)
    ]
    falsified_by: dict[int, set[tuple]] = {t: set() for t in range(1, inp.n_vars + 1)}
    for block in blocks:
        for j in range(1, block.size + 1):
            for t in block.false_set(j):
                falsified_by[t].add(("false", block.index, j))

    for chosen_false in _subsets(false_keys):
        r1 = set(chosen_false)
        allowed_vars = [
            ("variable", t) for t in range(1, inp.n_vars + 1) if falsified_by[t] <= r1
        ]
        for chosen_vars in _subsets(allowed_vars):
            true_vars = {key[1] for key in chosen_vars}
            allowed_truth = [
                ("truth", block.index, j)
                for block in blocks
                for j in range(1, block.size + 1)
                if block.true_sets[j - 1] <= true_vars
                and all(
                    ("false", block.index, k) in r1
                    for k in range(1, block.size + 1)
                    if k != j
                )
            ]
            for chosen_truth in _subsets(allowed_truth):
                yield frozenset(r1 | set(chosen_vars) | set(chosen_truth))


def base_matching(out: ReductionOutput) -> Matching:
    """
    Every man with the first woman of his list, except the garbage man who
    holds the garbage woman while the pool women stay with their happy men.
    """
    inst = out.instance
    garbage, partner = out.man("garbage"), out.woman("garbage")
    return Matching.from_pairs(
        (m, partner if m == garbage else prefs[0][0])
        for m, prefs in enumerate(inst.men_prefs)
        if prefs
    )


def matching_of(out: ReductionOutput, keys: frozenset[tuple]) -> Matching:
    """Swaps the partners of every rotation in keys, starting from the base matching."""
    by_man = dict(base_matching(out).pairs)
    families = sat_rotation_families(out)
    for rotation in itertools.chain.from_iterable(families):
        if rotation.key in keys:
            (a, x), (c, y) = rotation.pairs
            by_man[a], by_man[c] = y, x
    return Matching.from_pairs(by_man.items())


def excellent_matchings(out: ReductionOutput) -> list[Matching]:
    """The matchings of all legal sets."""
    return [matching_of(out, keys) for keys in legal_sets(out)]


def _swapped(mu: Matching, rotation: SatRotation) -> bool | None:
    (a, x), (c, y) = rotation.pairs
    here = (mu.partner_of_man(a), mu.partner_of_man(c))
    if here == (x, y):
        return False
    if here == (y, x):
        return True
    return None


def is_good(out: ReductionOutput, mu: Matching) -> bool:
    """
    Every gadget pair is in its base or swapped position, every happy man holds
    his happy woman and the garbage collectors are together.
    """
    _require_sat(out, "is_good")
    if any(
        _swapped(mu, rotation) is None
        for rotation in itertools.chain.from_iterable(sat_rotation_families(out))
    ):
        return False
    inst = out.instance
    for m, role in enumerate(out.metadata.men_roles):
        if role.gadget in ("happy", "happy-pool"):
            expected = inst.men_prefs[m][0][0]
        elif role.gadget == "garbage":
            expected = out.woman("garbage")
        else:
            continue
        if mu.partner_of_man(m) != expected:
            return False
    return True


def is_excellent(out: ReductionOutput, mu: Matching) -> bool:
    """A good matching whose swapped rotations form a legal set."""
    if not is_good(out, mu):
        return False
    swapped = frozenset(
        rotation.key
        for rotation in itertools.chain.from_iterable(sat_rotation_families(out))
        if _swapped(mu, rotation)
    )
    inp: SatInput = out.source
    for block in inp.blocks():
        i = block.index
        for j in range(1, block.size + 1):
            if ("truth", i, j) in swapped:
                if any(("variable", t) not in swapped for t in block.true_sets[j - 1]):
                    return False
                if any(
                    ("false", i, k) not in swapped
                    for k in range(1, block.size + 1)
                    if k != j
                ):
                    return False
            for t in block.false_set(j):
                if ("variable", t) in swapped and ("false", i, j) not in swapped:
                    return False
    return True
