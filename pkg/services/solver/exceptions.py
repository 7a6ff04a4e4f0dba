"""Custom exceptions for the stable marriage solver service."""


class MatchingStructureError(Exception):
    """Raised when a matching is not injective or pairs unacceptable agents."""

    def __init__(self, reason: str, cause: Exception | None = None):
        self.reason = reason
        self.cause = cause
        super().__init__(f"Malformed matching: {reason}")


class UnknownAgentError(Exception):
    """Raised when an agent id does not exist in the instance."""

    def __init__(self, agent: str, cause: Exception | None = None):
        self.agent = agent
        self.cause = cause
        super().__init__(f"Unknown agent '{agent}'")


class UnknownRotationError(Exception):
    """Raised when a rotation id is not part of the rotation structure."""

    def __init__(self, rotation_id: int, cause: Exception | None = None):
        self.rotation_id = rotation_id
        self.cause = cause
        super().__init__(f"Unknown rotation {rotation_id}")


class NotClosedError(Exception):
    """Raised when a rotation set handed to elimination is not closed."""

    def __init__(self, missing: int, required_by: int, cause: Exception | None = None):
        self.missing = missing
        self.required_by = required_by
        self.cause = cause
        super().__init__(
            f"Rotation set is not closed: {missing} precedes {required_by} "
            "but is absent"
        )


class TreeDecompositionError(Exception):
    """Raised when a tree decomposition violates a defining property."""

    def __init__(self, reason: str, cause: Exception | None = None):
        self.reason = reason
        self.cause = cause
        super().__init__(f"Invalid tree decomposition: {reason}")


class DecompositionMismatchError(Exception):
    """Raised when a decomposition does not cover the graph a solver needs."""

    def __init__(self, graph_kind: str, cause: Exception | None = None):
        self.graph_kind = graph_kind
        self.cause = cause
        super().__init__(f"Decomposition does not decompose the {graph_kind} graph")


class ReductionInputError(Exception):
    """Raised when a reduction source instance is malformed."""

    def __init__(self, reason: str, cause: Exception | None = None):
        self.reason = reason
        self.cause = cause
        super().__init__(f"Invalid reduction input: {reason}")


class ReductionParameterError(Exception):
    """Raised when reduction parameters produce an invalid construction."""

    def __init__(self, parameter: str, value: int, cause: Exception | None = None):
        self.parameter = parameter
        self.value = value
        self.cause = cause
        super().__init__(
            f"Reduction parameter '{parameter}' is invalid ({value}); "
            "increase the spacer multipliers"
        )


class InvalidStateError(Exception):
    """Raised when a rotation subset is not part of a decomposition node's bag."""

    def __init__(self, node: int, reason: str, cause: Exception | None = None):
        self.node = node
        self.reason = reason
        self.cause = cause
        super().__init__(f"Invalid state at node {node}: {reason}")
