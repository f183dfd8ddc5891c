"""Exception and warning types shared across the package."""


class RatdynError(Exception):
    """Base class for all domain errors raised by this package."""


class DegenerateMap(RatdynError):
    """gamma = 0: the map degenerates to a Moebius map, which is unsupported."""


class IndeterminateValue(RatdynError):
    """Evaluation hit a 0/0 point and no algebraic reduction is known."""


class PoleDerivative(RatdynError):
    """Derivative requested at a pole of the map."""


class NotAFixedPoint(RatdynError):
    """The point given for stability classification is not a fixed point."""


class WrongTag(RatdynError):
    """No closed-form fixed points exist for the requested special case."""


class NotConverged(RatdynError):
    """Convergence time requested for an orbit that did not converge."""


class NotACycle(RatdynError):
    """Cycle verification failed; ``index`` names the offending point."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class DeflationFailure(RatdynError):
    """A fixed-point root could not be deflated from the second-iterate set."""


class IdenticallyPeriodic(RatdynError):
    """The second-iterate displacement polynomial vanishes identically
    (the two-fold composition of the map is the identity)."""


class NotChaotic(RatdynError):
    """Fractal classification requested for a non-chaotic report (lambda <= 0)."""


class InsufficientSamples(RatdynError):
    """Too many iterates were skipped to trust the Lyapunov estimate."""


class DegenerateCloud(RatdynError):
    """Point cloud has a zero-area bounding box and no one-dimensional fallback."""


class EmptyPlot(RatdynError):
    """Nothing to render: every input point is at infinity."""


class ConditioningWarning(UserWarning):
    """The fixed-point cubic is close to having multiple roots."""


class ParameterWarning(UserWarning):
    """A parameter choice degenerates part of the analysis (e.g. beta = 0)."""
