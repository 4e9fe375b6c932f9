"""Exception types raised by blocktensor."""


class ShapeError(ValueError):
    """Operand sizes or shapes do not agree."""


class BlockingError(ValueError):
    """A partition vector is invalid for the mode it is meant to split."""


class PlanError(ValueError):
    """A contraction plan is inconsistent with its operands."""


class TensorFormatError(ValueError):
    """A tensor text file could not be parsed."""
