"""Exception types shared across the package.

All of them derive from ``ValueError`` so callers that only care about
"bad input" can catch that.
"""


class ScenarioError(ValueError):
    """Base class for inputs that do not describe a valid scenario."""


class InvalidScenarioError(ScenarioError):
    """Events and slices are not arranged as the two-observer scenario requires."""


class InconsistentRecordError(ScenarioError):
    """A measurement record names a particle whose kick has not happened yet."""


class InconsistentBranchError(ScenarioError):
    """An outcome branch disagrees with which measurements precede a slice."""


class ImpossibleOutcomeError(ScenarioError):
    """An observation has zero probability under the current description."""


class OutOfModelError(ScenarioError):
    """The request lies outside what the model specifies (e.g. post-kick motion)."""
