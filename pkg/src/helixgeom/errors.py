"""Exception hierarchy shared by all modules."""


class GeometryError(Exception):
    """Base class for every error raised by helixgeom."""


class BoundaryError(GeometryError):
    """A finite-difference stencil would leave the curve's domain."""


class EvaluationError(GeometryError):
    """A map returned non-finite values."""


class DegenerateCurveError(GeometryError):
    """The curve speed vanishes (regularity lost)."""


class InsufficientSamplesError(GeometryError):
    pass


class ParametrizationError(GeometryError):
    """A curve that must be unit-speed is not."""


class SingularPatchError(GeometryError):
    """Chart Jacobian lost rank or the induced metric is not SPD."""


class DomainExitError(GeometryError):
    """An integrated trajectory left the chart box."""

    def __init__(self, message: str, s_exit: float):
        super().__init__(message)
        self.s_exit = s_exit


class IntegratorAccuracyError(GeometryError):
    pass


class DegenerateAngleError(GeometryError):
    """The helix angle sits at 0 or pi/2, where the direction split is undefined."""


class InconclusiveError(GeometryError):
    """Not enough well-defined samples to decide a check."""


class ScenarioError(GeometryError):
    """A scenario document failed validation; ``problems`` lists every violation."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("invalid scenario:\n  - " + "\n  - ".join(self.problems))
