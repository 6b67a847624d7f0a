"""Exception handler for centralized error management.

Provides the cutbench exception hierarchy, the FAIL value returned by
Monte Carlo procedures, and helpers that log exceptions or turn them into
report rows so one broken trial never takes a whole campaign down.
"""

import logging
import traceback
from dataclasses import dataclass, field
from datetime import datetime
from functools import wraps
from typing import Any, Callable, Dict, Optional

from pydantic import ValidationError

logger = logging.getLogger(__name__)


class CutBenchError(Exception):
    """Base exception for cutbench errors."""

    def __init__(self, message: str, error_code: str = "INTERNAL_ERROR",
                 details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        self.timestamp = datetime.utcnow().isoformat()
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to a dict for logs and reports."""
        return {
            "error": {
                "code": self.error_code,
                "message": self.message,
                "timestamp": self.timestamp,
                "details": self.details
            }
        }


class InvalidInputError(CutBenchError):
    """Raised when an operation's precondition on its arguments fails."""

    def __init__(self, message: str, details: Optional[Dict] = None):
        super().__init__(message, "INVALID_INPUT", details)


class GraphFormatError(InvalidInputError):
    """Raised when a graph or stream file cannot be parsed."""

    def __init__(self, path: str, line_no: int, reason: str):
        message = f"{path}:{line_no}: {reason}"
        super().__init__(message, {"path": path, "line": line_no, "reason": reason})
        self.error_code = "GRAPH_FORMAT"


class ContractViolationError(CutBenchError):
    """Raised when an oracle answer contradicts a declared contract."""

    def __init__(self, message: str, details: Optional[Dict] = None):
        super().__init__(message, "CONTRACT_VIOLATION", details)


class SetTooLargeError(CutBenchError):
    """Raised when a brute-force check would enumerate too many members."""

    def __init__(self, size: int, limit: int):
        message = f"declared set has {size} members, limit is {limit}"
        super().__init__(message, "SET_TOO_LARGE", {"size": size, "limit": limit})


class StreamExhaustedError(CutBenchError):
    """Raised when a stream ends before a reader got what it needs."""

    def __init__(self, needed: int, available: int):
        message = f"stream ended after {available} vertices, needed {needed}"
        super().__init__(message, "STREAM_EXHAUSTED",
                         {"needed": needed, "available": available})


class AmplificationExhaustedError(CutBenchError):
    """Raised when every amplified trial returned FAIL."""

    def __init__(self, trials: int):
        message = f"all {trials} trials failed"
        super().__init__(message, "AMPLIFICATION_EXHAUSTED", {"trials": trials})


class QueryBudgetExceeded(CutBenchError):
    """Raised by the ledger when a clocked section runs past its limit."""

    def __init__(self, limit: int, used: int):
        message = f"query clock exceeded: {used} > {limit} units"
        super().__init__(message, "BUDGET_EXCEEDED", {"limit": limit, "used": used})
        self.limit = limit
        self.used = used


@dataclass(frozen=True)
class Failure:
    """FAIL outcome of a Monte Carlo procedure (a value, not an error)."""
    stage: str
    reason: str
    details: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __str__(self) -> str:
        return f"FAIL[{self.stage}]: {self.reason}"


def is_failure(value: Any) -> bool:
    """True when value is a FAIL outcome."""
    return isinstance(value, Failure)


class ExceptionHandler:
    """Centralized exception handling utility."""

    @staticmethod
    def log_exception(exc: Exception, context: Optional[Dict] = None) -> None:
        """Log exception with context."""
        context = context or {}
        logger.error(
            f"Exception occurred: {exc.__class__.__name__}: {exc}",
            exc_info=True,
            extra={"context": context}
        )

    @staticmethod
    def to_row(exc: Exception, context: Optional[Dict] = None) -> Dict[str, Any]:
        """Turn an exception into a trial-error report row."""
        ExceptionHandler.log_exception(exc, context)
        row: Dict[str, Any] = dict(context or {})
        if isinstance(exc, CutBenchError):
            row["error_code"] = exc.error_code
            row["error"] = exc.message
        else:
            row["error_code"] = "INTERNAL_ERROR"
            row["error"] = f"{exc.__class__.__name__}: {exc}"
        row["traceback_tail"] = traceback.format_exception_only(type(exc), exc)[-1].strip()
        return row

    @staticmethod
    def handle_exceptions(func: Callable) -> Callable:
        """Decorator for command entry points that logs and normalises exceptions.

        Cutbench errors pass through, pydantic validation errors become
        InvalidInputError, anything else is wrapped as INTERNAL_ERROR.
        """
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except CutBenchError as e:
                logger.error(f"cutbench error: {e.message}",
                             extra={"error_code": e.error_code})
                raise
            except ValidationError as e:
                logger.error(f"invalid arguments to {func.__name__}: {e.error_count()} error(s)")
                raise InvalidInputError(
                    f"invalid arguments: {e}",
                    {"fields": [".".join(str(part) for part in err["loc"]) for err in e.errors()]}
                ) from e
            except Exception as e:
                logger.error(f"Unexpected error: {str(e)}", exc_info=True)
                raise CutBenchError(
                    f"internal error in {func.__name__}: {e}",
                    "INTERNAL_ERROR"
                ) from e
        return wrapper
