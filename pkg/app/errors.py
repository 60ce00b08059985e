class CurveToolError(Exception):
    """Base class for every error raised by the services."""


class ZeroInput(CurveToolError, ValueError):
    pass


class DomainError(CurveToolError, ValueError):
    pass


class SingularCurve(CurveToolError):
    pass


class DegenerateParameter(CurveToolError):
    pass


class PointNotOnCurve(CurveToolError):
    pass


class NoSolution(CurveToolError):
    pass


class UsageError(CurveToolError):
    """Bad command-line input that argparse itself cannot catch."""
