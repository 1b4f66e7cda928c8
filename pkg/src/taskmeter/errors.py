"""Exception types shared across the package."""


class TaskMeterError(Exception):
    """Base class for every error raised by taskmeter."""


class InvalidTopology(TaskMeterError):
    """Network layer specification is unusable (too short, or a size < 1)."""


class ShapeError(TaskMeterError):
    """Array dimensions do not match what the operation requires."""


class EmptyDataset(TaskMeterError):
    """An evaluation split contains no rows."""


class FormatError(TaskMeterError):
    """A binary or text input file does not follow its documented layout."""


class GenerationError(TaskMeterError):
    """A synthetic data generator failed to produce any samples."""


class InvalidArgument(TaskMeterError):
    """A parameter value is outside the operation's documented domain."""


class DegenerateInput(TaskMeterError):
    """Input has no usable variation (constant, all-zero, or too small)."""


class DegenerateFit(TaskMeterError):
    """The capability estimator has non-positive slope; score does not grow
    with capability, so the difficulty integral is undefined."""


class AgentTrainingError(TaskMeterError):
    """Training one agent of a population failed; carries the agent index."""

    def __init__(self, agent_index: int, message: str):
        super().__init__(f"agent {agent_index}: {message}")
        self.agent_index = agent_index
