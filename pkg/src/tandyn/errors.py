"""Exception hierarchy for tandyn."""


class TanDynError(Exception):
    """Base class for computational failures."""


class InvalidParameter(TanDynError, ValueError):
    """lambda must be a finite nonzero complex number."""


class PoleProximity(TanDynError):
    def __init__(self, z, pole_index, distance):
        self.z = z
        self.pole_index = pole_index
        self.distance = distance
        super().__init__(
            f"{z!r} is {distance:.3g} from the pole s_{pole_index}")


class InfinityInput(TanDynError):
    """A finite point was required but the point at infinity was given."""


class AsymptoticValueInput(TanDynError):
    """An inverse branch was asked for an omitted value +-lambda*i."""

    def __init__(self, z, depth=0):
        self.z = z
        self.depth = depth
        super().__init__(
            f"{z!r} is an asymptotic value (inverse depth {depth})")


class NoConvergence(TanDynError):
    pass


class PoleCollision(TanDynError):
    pass


class ContractionFailure(TanDynError):
    pass


class StepFailure(TanDynError):
    def __init__(self, message, last_good=None):
        self.last_good = last_good
        super().__init__(message)


class ContinuationFailure(TanDynError):
    def __init__(self, message, last_good=None):
        self.last_good = last_good
        super().__init__(message)


class NotHyperbolic(TanDynError):
    pass


class AsymptoticValueCollision(TanDynError):
    pass
