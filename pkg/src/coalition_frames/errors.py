"""Exception hierarchy shared by all modules."""

from __future__ import annotations

__all__ = [
    "FrameError",
    "CoalitionNotSubset",
    "OverlappingCoalitions",
    "NotAGcgf",
    "NotRepresentative",
    "NotTwoAgents",
    "PreconditionNotChecked",
    "EmptyAtState",
    "NotDeterministic",
    "NotSID",
    "InvalidParams",
    "GenerationFailed",
    "ParseError",
    "KindMismatch",
]


class FrameError(Exception):
    """Base class for every error raised by this package."""


class CoalitionNotSubset(FrameError):
    pass


class OverlappingCoalitions(FrameError):
    pass


class NotAGcgf(FrameError):
    """Raised when a raw action frame violates GCI or ODA."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"frame is not a general concurrent game frame: {report.summary()}")


class NotRepresentative(FrameError):
    """Raised when a neighborhood frame fails a representativeness condition."""

    def __init__(self, reports):
        self.reports = list(reports)
        failed = [r.name for r in self.reports if not r.holds]
        super().__init__(f"representativeness violated: {', '.join(failed)}")


class NotTwoAgents(FrameError):
    pass


class PreconditionNotChecked(FrameError):
    pass


class EmptyAtState(FrameError):
    pass


class NotDeterministic(FrameError):
    pass


class NotSID(FrameError):
    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        super().__init__(f"component is not {condition}" + (f": {detail}" if detail else ""))


class InvalidParams(FrameError):
    pass


class GenerationFailed(FrameError):
    pass


class ParseError(FrameError):
    pass


class KindMismatch(FrameError):
    pass
