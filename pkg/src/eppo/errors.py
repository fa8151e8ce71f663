"""Exception types shared across the package."""


class EppoError(Exception):
    """Base class for all errors raised by this package."""


class ThresholdExceeded(EppoError):
    """An operation would have to enumerate more elements than allowed."""

    def __init__(self, what, size, threshold):
        self.what = what
        self.size = size
        self.threshold = threshold
        super().__init__(
            f"{what}: group order {size} exceeds the enumeration threshold "
            f"{threshold}; use a sampled method or raise --threshold"
        )


class DegreeMismatch(EppoError, ValueError):
    pass


class NotAMember(EppoError, ValueError):
    pass


class HypothesisUnmet(EppoError):
    """The input does not satisfy the hypotheses of a structural check."""


class CapExceeded(EppoError):
    pass


class ParseError(EppoError, ValueError):
    pass
