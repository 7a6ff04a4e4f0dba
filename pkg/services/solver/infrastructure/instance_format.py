"""Reader and writer for the line-oriented stable marriage instance format."""

import re

from matching_common import InstanceValidationError
from matching_common.infrastructure import TextCodec

from domain import Instance

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def _join(ids: list[int]) -> str:
    return " ".join(map(str, ids))


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _entries(text: str, line: int) -> list[list[int]]:
    groups: list[list[int]] = []
    open_group: list[int] | None = None
    for token in _TOKEN.findall(text):
        if token == "(":
            if open_group is not None:
                raise InstanceValidationError("nested tie group", line)
            open_group = []
        elif token == ")":
            if not open_group:
                raise InstanceValidationError("empty or unopened tie group", line)
            groups.append(open_group)
            open_group = None
        else:
            try:
                value = int(token)
            except ValueError as e:
                raise InstanceValidationError(f"invalid id '{token}'", line, e) from e
            if open_group is None:
                groups.append([value])
            else:
                open_group.append(value)
    if open_group is not None:
        raise InstanceValidationError("unterminated tie group", line)
    return groups


class SmtiCodec(TextCodec[Instance]):
    """
    Instance documents.

    A `p smti <men> <women>` header is followed by one line per agent,
    `m <id> : <entries>` or `w <id> : <entries>`, listing opposite-sex ids
    from best to worst; a parenthesized group is a tie. Ids are 1-based and
    `#` starts a comment. Agents without a line have empty lists.
    """

    def parse(self, text: str) -> Instance:
        header: tuple[int, int] | None = None
        lists: dict[str, dict[int, list[list[int]]]] = {"m": {}, "w": {}}

        for number, raw in enumerate(text.splitlines(), start=1):
            line = _strip(raw)
            if not line:
                continue
            parts = line.split()
            if header is None:
                if len(parts) != 4 or parts[:2] != ["p", "smti"]:
                    raise InstanceValidationError(
                        "expected 'p smti <men> <women>'", number
                    )
                try:
                    header = (int(parts[2]), int(parts[3]))
                except ValueError as e:
                    raise InstanceValidationError(
                        "non-integer header counts", number, e
                    ) from e
                continue

            side, _, rest = line.partition(" ")
            if side not in ("m", "w") or ":" not in rest:
                raise InstanceValidationError(f"malformed agent line '{line}'", number)
            agent_text, _, entry_text = rest.partition(":")
            try:
                agent = int(agent_text)
            except ValueError as e:
                raise InstanceValidationError(
                    f"invalid id '{agent_text.strip()}'", number, e
                ) from e

            own_count = header[0] if side == "m" else header[1]
            other_count = header[1] if side == "m" else header[0]
            own = "man" if side == "m" else "woman"
            other = "woman" if side == "m" else "man"
            if not 1 <= agent <= own_count:
                raise InstanceValidationError(f"unknown {own} {agent}", number)
            if agent in lists[side]:
                raise InstanceValidationError(f"{own} {agent} listed twice", number)

            groups = _entries(entry_text, number)
            for group in groups:
                for partner in group:
                    if not 1 <= partner <= other_count:
                        raise InstanceValidationError(
                            f"unknown {other} {partner}", number
                        )
            lists[side][agent] = [[p - 1 for p in group] for group in groups]

        if header is None:
            raise InstanceValidationError("missing 'p smti' header")

        men = [lists["m"].get(i + 1, []) for i in range(header[0])]
        women = [lists["w"].get(i + 1, []) for i in range(header[1])]
        return Instance.from_rankings(
            [[tuple(g) if len(g) > 1 else g[0] for g in lst] for lst in men],
            [[tuple(g) if len(g) > 1 else g[0] for g in lst] for lst in women],
        )

    def render(self, value: Instance) -> str:
        out = [f"p smti {value.n_men} {value.n_women}"]
        for side, prefs in (("m", value.men_prefs), ("w", value.women_prefs)):
            for agent, entries in enumerate(prefs, start=1):
                groups: dict[int, list[int]] = {}
                for partner, rank in entries:
                    groups.setdefault(rank, []).append(partner + 1)
                tokens = [
                    str(group[0]) if len(group) == 1 else f"({_join(group)})"
                    for _, group in sorted(groups.items())
                ]
                out.append(f"{side} {agent} : {' '.join(tokens)}".rstrip())
        return "\n".join(out) + "\n"
