"""Exception types raised by the solver."""


class CurveFlowError(Exception):
    """Base class for all errors raised by curveflow."""


class InvalidArgumentError(CurveFlowError, ValueError):
    pass


class DegenerateMeshError(CurveFlowError):
    """An element of the curve has (numerically) zero length."""

    def __init__(self, element, length):
        self.element = element
        self.length = length
        super().__init__(f"degenerate element {element}: chord length {length:.3e}")


class SingularBoundaryError(CurveFlowError):
    """The boundary gradient vanishes where a tangent direction is needed."""


class SingularSystemError(CurveFlowError):
    """A direct solve hit a zero pivot."""

    def __init__(self, row):
        self.row = row
        super().__init__(f"zero pivot in row {row}")


class ProjectionFailedError(CurveFlowError):
    pass


class ConfigError(CurveFlowError, ValueError):
    pass
