"""Error types shared across the package.

Each failure class gets its own exception so callers (and the CLI exit-code
mapping) can tell malformed input, exhausted budgets, and state mismatches
apart without string matching.
"""


class CycleBreakError(Exception):
    """Base class for all package errors."""


class NonPositiveConductance(CycleBreakError):
    """A conductance was zero, negative, or unparseable."""


class DisconnectedNetwork(CycleBreakError):
    """The (multi)graph is not connected."""


class UnknownVertex(CycleBreakError):
    """A vertex id is not part of the network."""


class MissingEdge(CycleBreakError):
    """No edge exists between two vertices where one was required."""


class MissingBoundary(CycleBreakError):
    """The contraction has no boundary vertex but one was required."""


class StepBudgetExceeded(CycleBreakError):
    """A random walk ran past its step budget without hitting its target."""


class RootTail(CycleBreakError):
    """An update was proposed at an edge whose tail has no outgoing edge."""


class NotSupercritical(CycleBreakError):
    """The offspring distribution has mean <= 1."""


class BudgetExceeded(CycleBreakError):
    """An exact computation was asked to exceed its size guard."""


class StateMismatch(CycleBreakError):
    """Two exact objects disagree on their underlying state space."""


class LowExpectedCounts(CycleBreakError):
    """A goodness-of-fit cell has expected count below the validity floor."""


class ConfigError(CycleBreakError):
    """An experiment configuration failed to parse or validate."""


class CertificationFailure(CycleBreakError):
    """An exact certificate (residual, slack, or construction) did not hold."""


class StatisticalFailure(CycleBreakError):
    """A statistical check fell outside its agreed threshold."""
