from errors.exception_handler import (
    AmplificationExhaustedError,
    ContractViolationError,
    CutBenchError,
    ExceptionHandler,
    Failure,
    GraphFormatError,
    InvalidInputError,
    QueryBudgetExceeded,
    SetTooLargeError,
    StreamExhaustedError,
    is_failure,
)

__all__ = [
    "AmplificationExhaustedError",
    "ContractViolationError",
    "CutBenchError",
    "ExceptionHandler",
    "Failure",
    "GraphFormatError",
    "InvalidInputError",
    "QueryBudgetExceeded",
    "SetTooLargeError",
    "StreamExhaustedError",
    "is_failure",
]
