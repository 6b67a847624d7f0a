"""Repeat a Monte Carlo run and keep the smallest answer."""

import logging
from typing import Callable, List, Union

from connectivity.outcome import EcOutcome
from errors import AmplificationExhaustedError, Failure, InvalidInputError, is_failure

logger = logging.getLogger(__name__)

TrialResult = Union[EcOutcome, Failure, int]


def _value(result: TrialResult) -> Union[int, Failure]:
    return result.value if isinstance(result, EcOutcome) else result


def ec_amplified(runner: Callable[[int], TrialResult], trials: int) -> int:
    """Minimum over the non-FAIL values of `trials` runs.

    Args:
        runner: Called with the trial index.
        trials: Number of runs.

    Raises:
        AmplificationExhaustedError: Every run returned FAIL.
    """
    if trials < 1:
        raise InvalidInputError(f"trials must be >= 1, got {trials}")
    values: List[int] = []
    for t in range(trials):
        value = _value(runner(t))
        if not is_failure(value):
            values.append(int(value))
    if not values:
        raise AmplificationExhaustedError(trials)
    logger.debug(f"amplified over {trials} trials: {len(values)} values, min {min(values)}")
    return min(values)
