"""Shared exception types."""


class InvariantError(RuntimeError):
    """An internal exactness invariant failed; never returned silently."""


class NodeLimitExceeded(RuntimeError):
    """Branch and bound ran out of its node budget."""


class PipelinePreconditionError(ValueError):
    """An inequality-form instance failed a pipeline precondition flag."""


class GenerationExhausted(RuntimeError):
    """Rejection sampling hit its attempt cap without an acceptable instance."""


class InstanceFormatError(ValueError):
    """A problem document could not be parsed; the message carries a location."""
