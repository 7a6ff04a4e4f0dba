"""Domain models for stable marriage instances, matchings and reports."""

from collections.abc import Iterable, Sequence
from enum import StrEnum

from matching_common import InstanceValidationError
from pydantic import BaseModel, Field, PrivateAttr, model_validator

from exceptions import MatchingStructureError

PreferenceList = tuple[tuple[int, int], ...]
"""Entries (partner index, rank) in rank order; equal ranks form a tie."""


class Problem(StrEnum):
    """Optimization objective."""

    SESM = "sesm"
    BSM = "bsm"
    MAX_SMT = "max-smt"
    MIN_SMT = "min-smt"
    GSM = "gsm"


class Method(StrEnum):
    """Algorithm family that produced a report."""

    XP = "xp"
    FPT = "fpt"
    ORACLE = "oracle"
    GS = "gs"


def _check_side(
    prefs: Sequence[PreferenceList], own: str, other: str, other_count: int
) -> None:
    for agent, entries in enumerate(prefs):
        seen: set[int] = set()
        previous = 0
        for partner, rank in entries:
            if not 0 <= partner < other_count:
                raise InstanceValidationError(
                    f"{own} {agent + 1} lists unknown {other} {partner + 1}"
                )
            if partner in seen:
                raise InstanceValidationError(
                    f"{own} {agent + 1} lists {other} {partner + 1} twice"
                )
            seen.add(partner)
            if rank not in (previous, previous + 1) or rank < 1:
                raise InstanceValidationError(
                    f"{own} {agent + 1} has rank {rank} after rank {previous}"
                )
            previous = rank


class Instance(BaseModel, frozen=True):
    """A stable marriage instance with possibly incomplete and tied lists."""

    men: tuple[str, ...]
    women: tuple[str, ...]
    men_prefs: tuple[PreferenceList, ...]
    women_prefs: tuple[PreferenceList, ...]

    _men_rank: list[dict[int, int]] = PrivateAttr()
    _women_rank: list[dict[int, int]] = PrivateAttr()

    @model_validator(mode="after")
    def _validate_structure(self) -> "Instance":
        if len(self.men_prefs) != len(self.men):
            raise InstanceValidationError(
                f"expected {len(self.men)} men lists, got {len(self.men_prefs)}"
            )
        if len(self.women_prefs) != len(self.women):
            raise InstanceValidationError(
                f"expected {len(self.women)} women lists, got {len(self.women_prefs)}"
            )
        _check_side(self.men_prefs, "man", "woman", len(self.women))
        _check_side(self.women_prefs, "woman", "man", len(self.men))

        men_accept = {(m, w) for m, lst in enumerate(self.men_prefs) for w, _ in lst}
        women_accept = {
            (m, w) for w, lst in enumerate(self.women_prefs) for m, _ in lst
        }
        for m, w in sorted(men_accept ^ women_accept):
            if (m, w) in men_accept:
                raise InstanceValidationError(
                    f"man {m + 1} lists woman {w + 1} but not vice versa"
                )
            raise InstanceValidationError(
                f"woman {w + 1} lists man {m + 1} but not vice versa"
            )
        return self

    def model_post_init(self, __context) -> None:
        self._men_rank = [dict(lst) for lst in self.men_prefs]
        self._women_rank = [dict(lst) for lst in self.women_prefs]

    @property
    def n_men(self) -> int:
        return len(self.men)

    @property
    def n_women(self) -> int:
        return len(self.women)

    @property
    def n_agents(self) -> int:
        return len(self.men) + len(self.women)

    @property
    def has_ties(self) -> bool:
        return any(
            len({rank for _, rank in lst}) < len(lst)
            for lst in (*self.men_prefs, *self.women_prefs)
        )

    def man_rank(self, m: int, w: int) -> int | None:
        """Rank of woman w in man m's list, None when unacceptable."""
        return self._men_rank[m].get(w)

    def woman_rank(self, w: int, m: int) -> int | None:
        """Rank of man m in woman w's list, None when unacceptable."""
        return self._women_rank[w].get(m)

    def acceptable(self, m: int, w: int) -> bool:
        return w in self._men_rank[m]

    def acceptable_pairs(self) -> list[tuple[int, int]]:
        return [(m, w) for m, lst in enumerate(self.men_prefs) for w, _ in lst]

    def man_vertex(self, m: int) -> int:
        return m

    def woman_vertex(self, w: int) -> int:
        return self.n_men + w

    def agent_of_vertex(self, vertex: int) -> tuple[str, int]:
        """Maps a primal-graph vertex to ('m', index) or ('w', index)."""
        if vertex < self.n_men:
            return "m", vertex
        return "w", vertex - self.n_men

    def swapped(self) -> "Instance":
        """Returns the instance with the roles of men and women exchanged."""
        return Instance(
            men=self.women,
            women=self.men,
            men_prefs=self.women_prefs,
            women_prefs=self.men_prefs,
        )

    @classmethod
    def from_rankings(
        cls,
        men: Sequence[Sequence[int | Sequence[int]]],
        women: Sequence[Sequence[int | Sequence[int]]],
        men_names: Sequence[str] | None = None,
        women_names: Sequence[str] | None = None,
    ) -> "Instance":
        """
        Builds an instance from 0-based ranked lists.

        Args:
            men: For every man, the acceptable women from best to worst; a
                tuple or list entry is a group of tied women.
            women: The same for every woman.
            men_names: Optional external names; defaults to "1", "2", ...
            women_names: Optional external names; defaults to "1", "2", ...

        Returns:
            The validated Instance.

        Raises:
            InstanceValidationError: If the lists are not a valid instance.
        """
        return cls(
            men=tuple(men_names or (str(i + 1) for i in range(len(men)))),
            women=tuple(women_names or (str(i + 1) for i in range(len(women)))),
            men_prefs=tuple(_ranked(lst) for lst in men),
            women_prefs=tuple(_ranked(lst) for lst in women),
        )


def _ranked(entries: Sequence[int | Sequence[int]]) -> PreferenceList:
    ranked: list[tuple[int, int]] = []
    for rank, entry in enumerate(entries, start=1):
        group = entry if isinstance(entry, Sequence) else (entry,)
        ranked.extend((partner, rank) for partner in group)
    return tuple(ranked)


class Matching(BaseModel, frozen=True):
    """A partial injective assignment of men to women."""

    pairs: frozenset[tuple[int, int]] = frozenset()

    _by_man: dict[int, int] = PrivateAttr()
    _by_woman: dict[int, int] = PrivateAttr()

    @model_validator(mode="after")
    def _validate_injective(self) -> "Matching":
        men = [m for m, _ in self.pairs]
        women = [w for _, w in self.pairs]
        if len(set(men)) != len(men):
            raise MatchingStructureError("a man is matched twice")
        if len(set(women)) != len(women):
            raise MatchingStructureError("a woman is matched twice")
        return self

    def model_post_init(self, __context) -> None:
        self._by_man = dict(self.pairs)
        self._by_woman = {w: m for m, w in self.pairs}

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Matching":
        return cls(pairs=frozenset(pairs))

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def men(self) -> frozenset[int]:
        return frozenset(self._by_man)

    @property
    def women(self) -> frozenset[int]:
        return frozenset(self._by_woman)

    def partner_of_man(self, m: int) -> int | None:
        return self._by_man.get(m)

    def partner_of_woman(self, w: int) -> int | None:
        return self._by_woman.get(w)

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)


class Scores(BaseModel, frozen=True):
    """Satisfaction measures of a matching."""

    sat_m: int
    sat_w: int
    delta: int
    bal: int
    size: int


class LatticeExtremes(BaseModel, frozen=True):
    """Man-optimal and woman-optimal stable matchings with the matched agents."""

    man_optimal: Matching
    woman_optimal: Matching
    matched_men: frozenset[int]
    matched_women: frozenset[int]


class SolveStats(BaseModel):
    """Work counters collected by a solver run."""

    nodes: int = 0
    width: int | None = None
    table_entries: int = 0
    tables: dict[str, int] = Field(default_factory=dict)
    elapsed_seconds: float = 0.0


class SolveReport(BaseModel):
    """Outcome of one optimization run."""

    problem: Problem
    method: Method
    optimum: int | list[tuple[int, int]] | None
    witness: Matching | None = None
    stats: SolveStats = Field(default_factory=SolveStats)
