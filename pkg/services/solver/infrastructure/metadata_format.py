"""Side-car documents describing a generated reduction instance."""

import re

from matching_common import InstanceValidationError
from matching_common.infrastructure import TextCodec
from pydantic import ValidationError

from reductions.models import AgentRole, Predictions, ReductionMetadata

_ROLE = re.compile(r"^([a-z-]+)(?:\[(\d+(?:,\d+)*)\])?$")
_PREDICTED = (
    "agents",
    "happy_pairs",
    "pool",
    "graph",
    "treewidth_bound",
    "target_kind",
    "target",
)


def _role(side: str, label: str, line: int) -> AgentRole:
    found = _ROLE.match(label)
    if found is None:
        raise InstanceValidationError(f"malformed role '{label}'", line)
    gadget, index = found.groups()
    numbers = tuple(int(x) for x in index.split(",")) if index else ()
    return AgentRole(side=side, gadget=gadget, index=numbers)


class MetadataCodec(TextCodec[ReductionMetadata]):
    """
    Line-oriented `key: value` documents.

    Scalar keys come first, predicted extras are written as `extra <name>`
    keys and agent roles as `man <id>` / `woman <id>` keys with 1-based ids.
    """

    def parse(self, text: str) -> ReductionMetadata:
        values: dict[str, str] = {}
        extras: dict[str, int] = {}
        roles: dict[str, dict[int, AgentRole]] = {"m": {}, "w": {}}

        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition(":")
            if not sep:
                raise InstanceValidationError(
                    f"expected 'key: value' in '{line}'", number
                )
            key, value = key.strip(), value.strip()
            words = key.split()
            try:
                if words[0] == "extra" and len(words) == 2:
                    extras[words[1]] = int(value)
                elif words[0] in ("man", "woman") and len(words) == 2:
                    side = words[0][0]
                    roles[side][int(words[1])] = _role(side, value, number)
                else:
                    values[key] = value
            except ValueError as e:
                raise InstanceValidationError(
                    f"non-integer value in '{line}'", number, e
                ) from e

        for side, name in (("m", "man"), ("w", "woman")):
            expected = list(range(1, len(roles[side]) + 1))
            if sorted(roles[side]) != expected:
                raise InstanceValidationError(f"{name} roles are not numbered 1..n")
        missing = [k for k in ("kind", "relaxed", *_PREDICTED) if k not in values]
        if missing:
            raise InstanceValidationError(f"missing key '{missing[0]}'")

        block = values.get("unsatisfiable_block")
        try:
            return ReductionMetadata(
                kind=values["kind"],
                relaxed=values["relaxed"] == "true",
                predicted=Predictions(
                    **{k: values[k] for k in _PREDICTED}, extras=extras
                ),
                men_roles=tuple(roles["m"][i] for i in sorted(roles["m"])),
                women_roles=tuple(roles["w"][i] for i in sorted(roles["w"])),
                unsatisfiable_block=int(block) if block is not None else None,
            )
        except (ValidationError, ValueError) as e:
            raise InstanceValidationError(f"invalid metadata: {e}", cause=e) from e

    def render(self, value: ReductionMetadata) -> str:
        predicted = value.predicted
        out = [
            f"kind: {value.kind}",
            f"relaxed: {'true' if value.relaxed else 'false'}",
        ]
        out.extend(f"{key}: {getattr(predicted, key)}" for key in _PREDICTED)
        if value.unsatisfiable_block is not None:
            out.append(f"unsatisfiable_block: {value.unsatisfiable_block}")
        out.extend(f"extra {k}: {v}" for k, v in sorted(predicted.extras.items()))
        out.extend(f"man {i}: {r.label}" for i, r in enumerate(value.men_roles, 1))
        out.extend(
            f"woman {i}: {r.label}" for i, r in enumerate(value.women_roles, 1)
        )
        return "\n".join(out) + "\n"
