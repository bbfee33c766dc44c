"""Exception hierarchy shared by every module."""


class SegmentationError(Exception):
    """Base class for all errors raised by spseg."""


class GridMismatch(SegmentationError, ValueError):
    pass


class InvalidMarket(SegmentationError, ValueError):
    pass


class DegenerateMarket(SegmentationError, ValueError):
    """An all-zero market was given where a priced market is required."""


class NonUniqueOptimum(SegmentationError, ValueError):
    """The aggregate market has more than one optimal uniform price."""


class DegenerateAssumption(SegmentationError, ValueError):
    """The optimal uniform price is the lowest valuation."""


class NonRationalAssignment(SegmentationError, ValueError):
    """A price is not revenue-maximizing in the market it is assigned to."""


class TargetOutOfRange(SegmentationError, ValueError):
    pass


class NonIntegralGrid(SegmentationError, ValueError):
    """Aggregate masses are not multiples of the enumeration quantum."""


class InputFormatError(SegmentationError, ValueError):
    """Malformed market or segmentation file."""
