"""Multicolored Clique reductions to the four stable marriage objectives."""

import itertools
import math

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
    CliqueInput,
    Predictions,
    ReductionKind,
    ReductionMetadata,
    ReductionOutput,
)

logger = setup_logging()

BASE_GADGETS = ("vertex", "mirror-vertex", "edge")


class Spacers(BaseModel, frozen=True):
    """Filler run lengths standing in for |E|^10, |E|^20, |E|^30 and |E|^40."""

    s10: int
    s20: int
    s30: int
    s40: int


class LeaderForm(BaseModel, frozen=True):
    """The four leader-list conditions of one colour class."""

    colour: int
    conditions: tuple[bool, bool, bool, bool]

    @property
    def ok(self) -> bool:
        return all(self.conditions)


def _spacers(inp: CliqueInput, config: ReductionConfig, relaxed: bool) -> Spacers:
    if relaxed:
        return Spacers(s10=config.s10, s20=config.s20, s30=config.s30, s40=config.s40)
    e = inp.n_edges
    if e < inp.n_vertices:
        raise ReductionInputError(f"{e} edges are fewer than {inp.n_vertices} vertices")
    if e <= 10**inp.k:
        raise ReductionInputError(f"{e} edges do not exceed 10^{inp.k}")
    return Spacers(s10=e**10, s20=e**20, s30=e**30, s40=e**40)


def _guard(agents: int, config: ReductionConfig) -> None:
    if agents > config.max_agents:
        raise GuardExceededError("max_agents", config.max_agents, agents)


def _tilde_spacer(kind: ReductionKind, k: int, i: int, sp: Spacers) -> int:
    if kind == ReductionKind.CLIQUE_BSM:
        return 4 ** (i - 1) * sp.s40
    return 2 ** (k - i) * sp.s40


def _pool_size(inp: CliqueInput, kind: ReductionKind, sp: Spacers) -> int:
    k, p, e = inp.k, inp.p, inp.n_edges
    alpha = (
        -9 * k
        + 3 * p * k
        + 4 * k * k
        - (p * k - k + 2) * e
        - (e - 2 * math.comb(k, 2)) * sp.s10
        - (2**k - 1) * sp.s30
        + (p - 1) * (2**k - 1) * sp.s40
    )
    if kind == ReductionKind.CLIQUE_BSM:
        alpha += -(p - 1) * (2**k - 1) * sp.s40 + (p - 1) * (4**k - 1) // 3 * sp.s40
    return alpha


def _filler_count(inp: CliqueInput, kind: ReductionKind, sp: Spacers) -> int:
    k, p, e = inp.k, inp.p, inp.n_edges
    leaders = 2 * (k * p * e - 2 * e + k * (p - 1) * sp.s20)
    tilde_men = p * sp.s30 * (2**k - 1) + 2 * k
    vertex_women = 2 * k * ((p - 1) * sp.s20 + 1)
    tilde_women = sum(p * _tilde_spacer(kind, k, i, sp) for i in range(1, k + 1))
    return leaders + tilde_men + vertex_women + tilde_women + 2 * e * sp.s10


def _leader_list(
    b: InstanceBuilder,
    inp: CliqueInput,
    i: int,
    mirror: bool,
    sp: Spacers | None,
) -> list:
    entries: list = []
    order = range(inp.p, 0, -1) if mirror else range(1, inp.p + 1)
    for j in order:
        entries.append(b.woman("mirror-vertex" if mirror else "vertex", i, j))
        incident = inp.incident(i, j)
        entries.extend(b.woman("edge", e.i, e.j, e.t) for e in incident)
        if sp is not None:
            entries.append(Filler(count=inp.n_edges - len(incident)))
            if j != order[-1]:
                entries.append(Filler(count=sp.s20))
    return entries


def _basic_agents(b: InstanceBuilder, inp: CliqueInput) -> None:
    for i in range(1, inp.k + 1):
        b.man("leader", i)
        b.man("mirror-leader", i)
    for i in range(1, inp.k + 1):
        for j in range(1, inp.p + 1):
            b.woman("vertex", i, j)
            b.woman("mirror-vertex", i, j)
    for e in inp.class_edges:
        b.woman("edge", e.i, e.j, e.t)


def _build_weighted(
    b: InstanceBuilder, inp: CliqueInput, kind: ReductionKind, sp: Spacers
) -> None:
    k, p = inp.k, inp.p
    _basic_agents(b, inp)
    for i in range(1, k + 1):
        leader = b.man("leader", i)
        mirror = b.man("mirror-leader", i)
        b.set_man_list(leader, _leader_list(b, inp, i, False, sp))
        b.set_man_list(mirror, _leader_list(b, inp, i, True, sp))

        w = [None] + [b.woman("vertex", i, j) for j in range(1, p + 1)]
        wh = [None] + [b.woman("mirror-vertex", i, j) for j in range(1, p + 1)]
        sel = {j: b.man("selector", i, j) for j in range(2, p + 1)}
        msel = {j: b.man("mirror-selector", i, j) for j in range(1, p)}
        for j, m in sel.items():
            b.set_man_list(m, [w[j], w[j - 1]])
        for j, m in msel.items():
            b.set_man_list(m, [wh[j], wh[j + 1]])

        x = 2 ** (i - 1) * sp.s30
        y = _tilde_spacer(kind, k, i, sp)
        for j in range(1, p + 1):
            mt = b.man("consistency-tilde", i, j)
            mb = b.man("consistency-bar", i, j)
            wt = b.woman("consistency-tilde", i, j)
            wb = b.woman("consistency-bar", i, j)
            if j == 1:
                b.set_man_list(mt, [wt, wh[j], Filler(count=x + 1), wb])
            elif j == p:
                b.set_man_list(mt, [wt, w[j], Filler(count=x + 1), wb])
            else:
                b.set_man_list(mt, [wt, w[j], wh[j], Filler(count=x), wb])
            b.set_man_list(mb, [wb, wt])
            b.set_woman_list(wt, [mb, Filler(count=y), mt])
            b.set_woman_list(wb, [mt, mb])

        for j in range(1, p + 1):
            mt = b.man("consistency-tilde", i, j)
            if j == 1:
                b.set_woman_list(w[j], [sel[2], leader])
            elif j == p:
                tail = [mt, Filler(count=sp.s20), sel[j]]
                b.set_woman_list(w[j], [Filler(count=1), leader, *tail])
            else:
                tail = [mt, Filler(count=sp.s20), sel[j]]
                b.set_woman_list(w[j], [sel[j + 1], leader, *tail])
            if j == p:
                b.set_woman_list(wh[j], [msel[p - 1], mirror])
            elif j == 1:
                tail = [mt, Filler(count=sp.s20), msel[j]]
                b.set_woman_list(wh[j], [Filler(count=1), mirror, *tail])
            else:
                tail = [mt, Filler(count=sp.s20), msel[j]]
                b.set_woman_list(wh[j], [msel[j - 1], mirror, *tail])

    for e in inp.class_edges:
        we = b.woman("edge", e.i, e.j, e.t)
        me = b.man("edge-selector", e.i, e.j, e.t)
        mb = b.man("edge-bar", e.i, e.j, e.t)
        wb = b.woman("edge-bar", e.i, e.j, e.t)
        b.set_man_list(me, [we, Filler(count=sp.s10), wb])
        b.set_man_list(mb, [wb, we])
        b.set_woman_list(wb, [me, mb])
        leaders = [
            b.man("leader", e.i),
            b.man("mirror-leader", e.i),
            b.man("leader", e.j),
            b.man("mirror-leader", e.j),
        ]
        b.set_woman_list(we, [mb, *leaders, Filler(count=sp.s10), me])


def _build_max(b: InstanceBuilder, inp: CliqueInput) -> None:
    k, p = inp.k, inp.p
    _basic_agents(b, inp)
    for i in range(1, k + 1):
        leader = b.man("leader", i)
        mirror = b.man("mirror-leader", i)
        b.set_man_list(leader, _leader_list(b, inp, i, False, None))
        b.set_man_list(mirror, _leader_list(b, inp, i, True, None))

        w = [None] + [b.woman("vertex", i, j) for j in range(1, p + 1)]
        wh = [None] + [b.woman("mirror-vertex", i, j) for j in range(1, p + 1)]
        hub = b.woman("class", i)
        sel = {j: b.man("selector", i, j) for j in range(2, p + 1)}
        msel = {j: b.man("mirror-selector", i, j) for j in range(1, p + 1)}
        for j, m in sel.items():
            b.set_man_list(m, [(w[j - 1], w[j])])
        for j, m in msel.items():
            b.set_man_list(m, [hub, w[j], wh[j]])
            b.set_woman_list(wh[j], [m, mirror])
        b.set_woman_list(hub, [tuple(msel.values())])
        b.set_woman_list(w[1], [sel[2], msel[1], leader])
        for j in range(2, p):
            b.set_woman_list(w[j], [(sel[j], sel[j + 1]), msel[j], leader])
        b.set_woman_list(w[p], [sel[p], msel[p], leader])

    for i, j in itertools.combinations(range(1, k + 1), 2):
        edges = inp.edges_between(i, j)
        q = len(edges)
        if q == 0:
            continue
        we = {e.t: b.woman("edge", i, j, e.t) for e in edges}
        me = {t: b.man("edge-selector", i, j, t) for t in we}
        mb = {t: b.man("edge-bar", i, j, t) for t in we}
        wb = {t: b.woman("edge-bar", i, j, t) for t in we}
        mt = {t: b.man("edge-tilde", i, j, t) for t in range(2, q + 1)}
        wt = {t: b.woman("edge-tilde", i, j, t) for t in range(2, q + 1)}
        leaders = (
            b.man("leader", i),
            b.man("mirror-leader", i),
            b.man("leader", j),
            b.man("mirror-leader", j),
        )
        for t in range(1, q + 1):
            b.set_man_list(me[t], [(we[t], wb[t])])
            b.set_woman_list(we[t], [me[t], leaders, mb[t]])
            if q == 1:
                b.set_man_list(mb[t], [we[t]])
                b.set_woman_list(wb[t], [me[t]])
            elif t == 1:
                b.set_man_list(mb[t], [wt[2], we[t]])
                b.set_woman_list(wb[t], [mt[2], me[t]])
            elif t == q:
                b.set_man_list(mb[t], [wt[q], we[t]])
                b.set_woman_list(wb[t], [mt[q], me[t]])
            else:
                b.set_man_list(mb[t], [(wt[t], wt[t + 1]), we[t]])
                b.set_woman_list(wb[t], [(mt[t], mt[t + 1]), me[t]])
        for t in range(2, q + 1):
            b.set_man_list(mt[t], [(wb[t - 1], wb[t])])
            b.set_woman_list(wt[t], [(mb[t - 1], mb[t])])


def _build_min(b: InstanceBuilder, inp: CliqueInput) -> None:
    k, p = inp.k, inp.p
    _basic_agents(b, inp)
    for i in range(1, k + 1):
        leader = b.man("leader", i)
        mirror = b.man("mirror-leader", i)
        hub = b.woman("class", i)
        mirror_hub = b.woman("mirror-class", i)
        b.set_man_list(leader, [*_leader_list(b, inp, i, False, None), hub])
        b.set_man_list(mirror, [*_leader_list(b, inp, i, True, None), mirror_hub])
        b.set_woman_list(hub, [leader])
        b.set_woman_list(mirror_hub, [mirror])
        for j in range(1, p + 1):
            w = b.woman("vertex", i, j)
            wh = b.woman("mirror-vertex", i, j)
            wb = b.woman("vertex-bar", i, j)
            m = b.man("selector", i, j)
            mh = b.man("mirror-selector", i, j)
            b.set_man_list(m, [w, wb])
            b.set_man_list(mh, [wh, wb])
            b.set_woman_list(w, [(leader, m)])
            b.set_woman_list(wh, [(mirror, mh)])
            b.set_woman_list(wb, [(m, mh)])

    for i, j in itertools.combinations(range(1, k + 1), 2):
        hub = b.woman("edge-class", i, j)
        selectors = []
        leaders = (
            b.man("leader", i),
            b.man("mirror-leader", i),
            b.man("leader", j),
            b.man("mirror-leader", j),
        )
        for e in inp.edges_between(i, j):
            we = b.woman("edge", i, j, e.t)
            me = b.man("edge-selector", i, j, e.t)
            b.set_man_list(me, [hub, we])
            b.set_woman_list(we, [me, leaders])
            selectors.append(me)
        b.set_woman_list(hub, [tuple(selectors)] if selectors else [])


def _predict_agents(inp: CliqueInput, kind: ReductionKind, sp: Spacers | None) -> int:
    k, p, e = inp.k, inp.p, inp.n_edges
    match kind:
        case ReductionKind.CLIQUE_SESM | ReductionKind.CLIQUE_BSM:
            fixed = 2 * (4 * k * p + 2 * e + 1)
            happy = _filler_count(inp, kind, sp) + _pool_size(inp, kind, sp)
            return fixed + 2 * happy
        case ReductionKind.CLIQUE_MAX_SMT:
            gadgets = sum(
                3 * len(edges) - 1
                for i, j in itertools.combinations(range(1, k + 1), 2)
                if (edges := inp.edges_between(i, j))
            )
            return 4 * k * p + 2 * k + 2 * gadgets
        case _:
            return 4 * k + 5 * k * p + 2 * e + math.comb(k, 2)


def _reduce(
    inp: CliqueInput,
    kind: ReductionKind,
    config: ReductionConfig | None,
    relaxed: bool,
) -> ReductionOutput:
    config = config or ReductionConfig()
    weighted = kind in (ReductionKind.CLIQUE_SESM, ReductionKind.CLIQUE_BSM)
    sp = _spacers(inp, config, relaxed) if weighted else None
    logger.info(
        "Processing clique reduction",
        extra={"kind": kind, "relaxed": relaxed, "k": inp.k, "p": inp.p},
    )

    extras: dict[str, int] = {"k": inp.k, "p": inp.p, "edges": inp.n_edges}
    pool = 0
    if weighted:
        pool = _pool_size(inp, kind, sp)
        extras["alpha"] = pool
        if pool < 0:
            raise ReductionParameterError("alpha", pool)
    agents = _predict_agents(inp, kind, sp)
    _guard(agents, config)

    b = InstanceBuilder()
    match kind:
        case ReductionKind.CLIQUE_MAX_SMT:
            _build_max(b, inp)
        case ReductionKind.CLIQUE_MIN_SMT:
            _build_min(b, inp)
        case _:
            _build_weighted(b, inp, kind, sp)
            garbage = b.man("garbage")
            partner = b.woman("garbage")
            b.set_man_list(garbage, [*b.add_pool(garbage, pool), partner])
            b.set_woman_list(partner, [garbage])
    inst, men_roles, women_roles = b.build()

    k, p, e = inp.k, inp.p, inp.n_edges
    match kind:
        case ReductionKind.CLIQUE_SESM:
            target_kind, target = "delta", 0
        case ReductionKind.CLIQUE_BSM:
            target_kind = "bal"
            target = (
                1
                + 3 * k
                + 6 * p * k
                - k * k
                + (p * k - k + 4) * e
                + (p - 1) * k * sp.s20
                + (e - math.comb(k, 2)) * sp.s10
                + (2**k - 1) * sp.s30
                + b.happy_pairs
                + pool
            )
            extras["eta"] = target
        case ReductionKind.CLIQUE_MAX_SMT:
            target_kind, target = "max_size", inst.n_men
        case _:
            target_kind, target = "min_size", k + 2 * inp.n_vertices + e
    extras["alpha_prime"] = b.happy_pairs

    predicted = Predictions(
        agents=agents,
        happy_pairs=b.happy_pairs,
        pool=pool,
        graph="primal",
        treewidth_bound=2 * k + 12,
        target_kind=target_kind,
        target=target,
        extras=extras,
    )
    logger.info(
        "Clique reduction processed",
        extra={"kind": kind, "agents": inst.n_agents, "predicted": agents},
    )
    return ReductionOutput(
        instance=inst,
        metadata=ReductionMetadata(
            kind=kind,
            relaxed=relaxed,
            predicted=predicted,
            men_roles=men_roles,
            women_roles=women_roles,
        ),
        source=inp,
    )


def reduce_clique_to_sesm(
    inp: CliqueInput, config: ReductionConfig | None = None, relaxed: bool = True
) -> ReductionOutput:
    """
    Builds the sex-equal instance of a Multicolored Clique input.

    Args:
        inp: The coloured graph.
        config: Spacer multipliers used in relaxed mode and the size guard.
        relaxed: Replace the |E|-power spacers by the configured multipliers.

    Returns:
        The instance with agent roles and predicted quantities; the clique
        exists exactly when some stable matching has sex-equality 0.

    Raises:
        ReductionInputError: If strict-mode size preconditions fail.
        ReductionParameterError: If the garbage-collector pool size is negative.
        GuardExceededError: If the predicted agent count exceeds the guard.
    """
    return _reduce(inp, ReductionKind.CLIQUE_SESM, config, relaxed)


def reduce_clique_to_bsm(
    inp: CliqueInput, config: ReductionConfig | None = None, relaxed: bool = True
) -> ReductionOutput:
    """Balanced variant: larger pool and 4^(i-1) spacers on the tilde women."""
    return _reduce(inp, ReductionKind.CLIQUE_BSM, config, relaxed)


def reduce_clique_to_max_smt(
    inp: CliqueInput, config: ReductionConfig | None = None, relaxed: bool = True
) -> ReductionOutput:
    """Tied instance that has a perfect weakly stable matching iff a clique exists."""
    return _reduce(inp, ReductionKind.CLIQUE_MAX_SMT, config, relaxed)


def reduce_clique_to_min_smt(
    inp: CliqueInput, config: ReductionConfig | None = None, relaxed: bool = True
) -> ReductionOutput:
    """Tied instance with a weakly stable matching of size k+2|V|+|E| iff a clique."""
    return _reduce(inp, ReductionKind.CLIQUE_MIN_SMT, config, relaxed)


def find_multicolored_clique(inp: CliqueInput) -> tuple[int, ...] | None:
    """Brute force over one vertex per class; returns the first clique found."""
    adjacent = {frozenset(edge) for edge in inp.edges}
    choices = [
        [inp.vertex(i, j) for j in range(1, inp.p + 1)] for i in range(1, inp.k + 1)
    ]
    for pick in itertools.product(*choices):
        if all(frozenset(pair) in adjacent for pair in itertools.combinations(pick, 2)):
            return pick
    return None


def _selection(
    inp: CliqueInput, clique: tuple[int, ...]
) -> tuple[dict[int, int], dict[tuple[int, int], int]]:
    if len(clique) != inp.k:
        raise ReductionInputError(f"a clique needs {inp.k} vertices")
    chosen: dict[int, int] = {}
    for i, v in enumerate(clique, start=1):
        colour, position = inp.position(v)
        if colour != i:
            raise ReductionInputError(f"vertex {v + 1} is not in class {i}")
        chosen[i] = position
    edges: dict[tuple[int, int], int] = {}
    for i, j in itertools.combinations(range(1, inp.k + 1), 2):
        u, v = clique[i - 1], clique[j - 1]
        match = [e.t for e in inp.edges_between(i, j) if (e.u, e.v) == (u, v)]
        if not match:
            raise ReductionInputError(f"vertices {u + 1} and {v + 1} are not adjacent")
        edges[(i, j)] = match[0]
    return chosen, edges


def clique_witness_matching(out: ReductionOutput, clique: tuple[int, ...]) -> Matching:
    """
    Builds the canonical matching a clique induces on a clique reduction.

    Args:
        out: Output of one of the four clique reductions.
        clique: One vertex per colour class, the i-th from class i.

    Returns:
        The matching; stable, and optimal for the reduction's target.

    Raises:
        UnsupportedInputError: If out comes from a SAT reduction.
        ReductionInputError: If the vertices do not form a multicolored clique.
    """
    if not out.kind.is_clique:
        raise UnsupportedInputError("clique_witness_matching", "not a clique reduction")
    inp: CliqueInput = out.source
    chosen, selected = _selection(inp, clique)
    pairs: list[tuple[int, int]] = []

    def pair(man: tuple, woman: tuple) -> None:
        pairs.append((out.man(*man), out.woman(*woman)))

    k, p = inp.k, inp.p
    for i in range(1, k + 1):
        ell = chosen[i]
        pair(("leader", i), ("vertex", i, ell))
        pair(("mirror-leader", i), ("mirror-vertex", i, ell))
        if out.kind == ReductionKind.CLIQUE_MIN_SMT:
            pair(("selector", i, ell), ("vertex-bar", i, ell))
            for j in range(1, p + 1):
                if j != ell:
                    pair(("selector", i, j), ("vertex", i, j))
                    pair(("mirror-selector", i, j), ("mirror-vertex", i, j))
            continue
        for j in range(2, p + 1):
            pair(("selector", i, j), ("vertex", i, j - 1 if j <= ell else j))
        if out.kind == ReductionKind.CLIQUE_MAX_SMT:
            pair(("mirror-selector", i, ell), ("class", i))
            for j in range(1, p + 1):
                if j != ell:
                    pair(("mirror-selector", i, j), ("mirror-vertex", i, j))
            continue
        for j in range(1, p):
            target = j + 1 if j >= ell else j
            pair(("mirror-selector", i, j), ("mirror-vertex", i, target))
        for j in range(1, p + 1):
            if j == ell:
                pair(("consistency-tilde", i, j), ("consistency-bar", i, j))
                pair(("consistency-bar", i, j), ("consistency-tilde", i, j))
            else:
                pair(("consistency-tilde", i, j), ("consistency-tilde", i, j))
                pair(("consistency-bar", i, j), ("consistency-bar", i, j))

    for i, j in itertools.combinations(range(1, k + 1), 2):
        ell = selected[(i, j)]
        q = len(inp.edges_between(i, j))
        for t in range(1, q + 1):
            match out.kind:
                case ReductionKind.CLIQUE_MIN_SMT:
                    woman = ("edge-class", i, j) if t == ell else ("edge", i, j, t)
                    pair(("edge-selector", i, j, t), woman)
                case ReductionKind.CLIQUE_MAX_SMT:
                    if t == ell:
                        pair(("edge-selector", i, j, t), ("edge-bar", i, j, t))
                        pair(("edge-bar", i, j, t), ("edge", i, j, t))
                    else:
                        pair(("edge-selector", i, j, t), ("edge", i, j, t))
                    if t >= 2 and t <= ell:
                        pair(("edge-tilde", i, j, t), ("edge-bar", i, j, t - 1))
                        pair(("edge-bar", i, j, t - 1), ("edge-tilde", i, j, t))
                    elif t > ell:
                        pair(("edge-tilde", i, j, t), ("edge-bar", i, j, t))
                        pair(("edge-bar", i, j, t), ("edge-tilde", i, j, t))
                case _:
                    chosen_edge = t == ell
                    pair(
                        ("edge-selector", i, j, t),
                        ("edge" if chosen_edge else "edge-bar", i, j, t),
                    )
                    pair(
                        ("edge-bar", i, j, t),
                        ("edge-bar" if chosen_edge else "edge", i, j, t),
                    )

    inst = out.instance
    for m, role in enumerate(out.metadata.men_roles):
        if role.gadget in ("happy", "happy-pool"):
            pairs.append((m, inst.men_prefs[m][0][0]))
        elif role.gadget == "garbage":
            pairs.append((m, out.woman("garbage")))
    return Matching.from_pairs(pairs)


def check_leader_form(out: ReductionOutput) -> list[LeaderForm]:
    """
    Checks the leader conditions on every colour class of a clique reduction.

    For class i the conditions are: the leaders rank exactly their own vertex
    women and the edge women of the class among the basic women; vertex women
    appear in order (reversed for the mirror); every edge woman sits right after
    the vertex woman of its endpoint in the leader's list; the same holds in
    the mirror's list.
    """
    if not out.kind.is_clique:
        raise UnsupportedInputError("check_leader_form", "not a clique reduction")
    inp: CliqueInput = out.source
    inst = out.instance
    base = {
        w
        for w, role in enumerate(out.metadata.women_roles)
        if role.gadget in BASE_GADGETS
    }
    results = []
    for i in range(1, inp.k + 1):
        leader = out.man("leader", i)
        mirror = out.man("mirror-leader", i)
        edge_women = {
            out.woman("edge", e.i, e.j, e.t)
            for e in inp.class_edges
            if i in (e.i, e.j)
        }
        own = [out.woman("vertex", i, j) for j in range(1, inp.p + 1)]
        own_mirror = [out.woman("mirror-vertex", i, j) for j in range(1, inp.p + 1)]

        def domain(m: int) -> set[int]:
            return {w for w, _ in inst.men_prefs[m]} & base

        def rank(m: int, w: int) -> float:
            r = inst.man_rank(m, w)
            return math.inf if r is None else r

        first = domain(leader) == set(own) | edge_women and domain(
            mirror
        ) == set(own_mirror) | edge_women
        second = all(
            rank(leader, own[j]) < rank(leader, own[j + 1])
            and rank(mirror, own_mirror[j + 1]) < rank(mirror, own_mirror[j])
            for j in range(inp.p - 1)
        )
        third = fourth = True
        for j in range(1, inp.p + 1):
            for e in inp.incident(i, j):
                we = out.woman("edge", e.i, e.j, e.t)
                r = rank(leader, we)
                rh = rank(mirror, we)
                third &= rank(leader, own[j - 1]) < r
                if j < inp.p:
                    third &= r < rank(leader, own[j])
                fourth &= rank(mirror, own_mirror[j - 1]) < rh
                if j >= 2:
                    fourth &= rh < rank(mirror, own_mirror[j - 2])
        results.append(
            LeaderForm(colour=i, conditions=(first, second, third, fourth))
        )
    return results
