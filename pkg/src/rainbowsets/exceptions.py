class CapExceeded(ValueError):
    """An exact search was asked to run past its size or node cap.

    ``lower_bound`` carries the best value known when the search stopped,
    if the operation tracks one.
    """

    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class ExtractionError(Exception):
    """Raised when an extractor cannot produce a rainbow independent set.

    The attached :class:`~rainbowsets.family.FailureReport` names the stage
    that starved.
    """

    def __init__(self, report):
        super().__init__(f"{report.stage}: {report.detail}")
        self.report = report


class PowerAgreementError(AssertionError):
    """G^r[X] and G[X']^r disagree on X; the shortest-path closure is broken."""
