"""
AnnulusTilings Error Types
Exception hierarchy shared by the engine, the combinatorics and the CLI
"""

from typing import Any, Optional


class TilingError(Exception):
    """Root of every domain error raised by the package"""

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report

    def to_dict(self) -> dict:
        payload = {'error': type(self).__name__, 'message': str(self)}
        if self.report is not None and hasattr(self.report, 'to_dict'):
            payload['report'] = self.report.to_dict()
        return payload


class InvalidPeriodError(TilingError):
    """Raised for m <= 0 or n <= 0: no positive integral tiling exists there"""


class InternalInconsistencyError(TilingError):
    """A derivation produced a value the theory rules out (corrupted state)"""


class PreconditionViolatedError(TilingError):
    """A seed failed its integrality conditions; the CheckReport is attached"""


class WindowTooSmallError(TilingError):
    pass


class NotAnEarError(TilingError):
    pass


class EmptyBoundaryError(TilingError):
    """Removing the ear would leave a boundary component without marked points"""


class IndexOutOfRangeError(TilingError):
    pass


class CyclicOrderError(TilingError):
    pass


class NonPositiveFriezeError(TilingError):
    """The quiddity does not define a positive infinite frieze pattern"""


class FormatError(TilingError):
    """Malformed JSON document or command-line value"""
