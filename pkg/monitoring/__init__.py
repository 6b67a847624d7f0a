from monitoring.timing import (
    LOG_FORMAT,
    TimingEvent,
    TimingRegistry,
    TimingSummary,
    configure_logging,
    get_timing_registry,
    timed,
)

__all__ = [
    "LOG_FORMAT",
    "TimingEvent",
    "TimingRegistry",
    "TimingSummary",
    "configure_logging",
    "get_timing_registry",
    "timed",
]
