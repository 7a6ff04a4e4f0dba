"""Incremental construction of gadget instances with happy-pair fillers."""

from collections.abc import Sequence

from pydantic import BaseModel, Field

from domain import Instance
from reductions.models import AgentRole, Side

Entry = int | tuple[int, ...]


class Filler(BaseModel, frozen=True):
    """A run of consecutive list positions taken by fresh happy agents."""

    count: int = Field(ge=0)


class InstanceBuilder:
    """
    Collects agents and preference lists, then emits a validated Instance.

    A Filler inside a list creates one fresh happy pair per position: the happy
    agent ranks its partner first and the list owner second.
    """

    def __init__(self):
        self._roles: dict[Side, list[AgentRole]] = {"m": [], "w": []}
        self._lists: dict[Side, list[list[Entry]]] = {"m": [], "w": []}
        self._ids: dict[tuple[Side, str, tuple[int, ...]], int] = {}
        self.happy_pairs = 0
        self.pool = 0

    def _add(self, side: Side, gadget: str, index: tuple[int, ...]) -> int:
        agent = len(self._roles[side])
        self._roles[side].append(AgentRole(side=side, gadget=gadget, index=index))
        self._lists[side].append([])
        self._ids[(side, gadget, index)] = agent
        return agent

    def man(self, gadget: str, *index: int) -> int:
        """Returns the man with this role, creating him on first use."""
        key = ("m", gadget, index)
        return self._ids[key] if key in self._ids else self._add("m", gadget, index)

    def woman(self, gadget: str, *index: int) -> int:
        """Returns the woman with this role, creating her on first use."""
        key = ("w", gadget, index)
        return self._ids[key] if key in self._ids else self._add("w", gadget, index)

    def _happy_pair(self, gadget: str) -> tuple[int, int]:
        self.happy_pairs += 1
        m = self._add("m", gadget, (self.happy_pairs,))
        w = self._add("w", gadget, (self.happy_pairs,))
        self._lists["m"][m].append(w)
        self._lists["w"][w].append(m)
        return m, w

    def _expand(self, side: Side, owner: int, entries: Sequence[Entry | Filler]):
        expanded: list[Entry] = []
        for entry in entries:
            if not isinstance(entry, Filler):
                expanded.append(entry)
                continue
            for _ in range(entry.count):
                m, w = self._happy_pair("happy")
                if side == "m":
                    self._lists["w"][w].append(owner)
                    expanded.append(w)
                else:
                    self._lists["m"][m].append(owner)
                    expanded.append(m)
        return expanded

    def set_man_list(self, m: int, entries: Sequence[Entry | Filler]) -> None:
        self._lists["m"][m] = self._expand("m", m, entries)

    def set_woman_list(self, w: int, entries: Sequence[Entry | Filler]) -> None:
        self._lists["w"][w] = self._expand("w", w, entries)

    def add_pool(self, owner: int, count: int) -> list[int]:
        """Adds happy pairs whose women the man owner ranks; returns the women."""
        women = []
        for _ in range(count):
            _, w = self._happy_pair("happy-pool")
            self._lists["w"][w].append(owner)
            women.append(w)
        self.pool += count
        return women

    @property
    def n_agents(self) -> int:
        return len(self._roles["m"]) + len(self._roles["w"])

    def build(self) -> tuple[Instance, tuple[AgentRole, ...], tuple[AgentRole, ...]]:
        """
        Emits the instance and the role of every man and woman.

        Raises:
            InstanceValidationError: If the gadget lists are not mutually
                consistent.
        """
        men_roles = tuple(self._roles["m"])
        women_roles = tuple(self._roles["w"])
        inst = Instance.from_rankings(
            self._lists["m"],
            self._lists["w"],
            men_names=[role.label for role in men_roles],
            women_names=[role.label for role in women_roles],
        )
        return inst, men_roles, women_roles
