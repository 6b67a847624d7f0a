"""Built-in scaling suites.

Each suite is an ExperimentSpec over a doubling n-grid. The quick grids
finish on a laptop; `full=True` switches to grids up to n = 2^14.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from connectivity import EcConfig
from errors import InvalidInputError
from harness.experiment import ExperimentReport, ExperimentSpec, run_experiment
from harness.generators import GnpFamily
from harness.reports import log_ratio_constant

logger = logging.getLogger(__name__)

# suite -> (algorithm, family, quick grid, full grid)
SUITES: Dict[str, Tuple[str, GnpFamily, List[int], List[int]]] = {
    "boruvka": ("boruvka", GnpFamily(n=512, p=0.05, with_cycle=True),
                [2 ** e for e in range(7, 11)], [2 ** e for e in range(9, 14)]),
    "ec_linear": ("ec_linear", GnpFamily(n=512, p=0.125, with_cycle=True),
                  [2 ** e for e in range(6, 9)], [2 ** e for e in range(9, 14)]),
    "ec_mdcp": ("ec_mdcp", GnpFamily(n=1024, p=0.25, with_cycle=True),
                [2 ** e for e in range(7, 10)], [2 ** e for e in range(10, 15)]),
    "recover": ("recover", GnpFamily(n=512, p=0.1, with_cycle=True),
                [2 ** e for e in range(7, 10)], [2 ** e for e in range(9, 13)]),
    "stream_memory": ("stream_complete", GnpFamily(n=128, p=0.1, with_cycle=True),
                      [2 ** e for e in range(5, 8)], [2 ** e for e in range(7, 12)]),
}

# suite -> (lowest slope, highest slope, largest doubling ratio); None means unchecked
SCALING_LIMITS: Dict[str, Tuple[Optional[float], Optional[float], Optional[float]]] = {
    "boruvka": (0.9, 1.15, 2.25),
    "ec_linear": (0.9, 1.15, 2.25),
    "ec_mdcp": (None, 0.75, None),
}


def suite_spec(name: str, seed: int, trials: int, preset: str = "desk", full: bool = False,
               output: Optional[Path] = None) -> ExperimentSpec:
    if name not in SUITES:
        raise InvalidInputError(f"unknown bench suite {name!r}", {"known": sorted(SUITES)})
    algorithm, family, quick, wide = SUITES[name]
    return ExperimentSpec(algorithm=algorithm, family=family, sizes=wide if full else quick,
                          trials=trials, seed=seed, preset=preset, output=output)


def scaling_violations(name: str, aggregate: Dict[str, Any]) -> List[str]:
    """Where an aggregate breaks the suite's slope or doubling-ratio limits."""
    if name not in SCALING_LIMITS:
        return []
    low, high, max_ratio = SCALING_LIMITS[name]
    exponent = aggregate["exponent"]
    if exponent is None:
        return ["no exponent could be fitted"]
    problems = []
    if low is not None and exponent < low:
        problems.append(f"slope {exponent:.3f} below {low}")
    if high is not None and exponent > high:
        problems.append(f"slope {exponent:.3f} above {high}")
    if max_ratio is not None:
        for i, ratio in enumerate(aggregate["doubling_ratios"]):
            if ratio is not None and ratio > max_ratio:
                problems.append(f"doubling ratio {ratio:.3f} > {max_ratio} at grid step {i + 1}")
    return problems


def run_bench(name: str, cfg: EcConfig, seed: int, trials: int, out_dir: Union[str, Path],
              full: bool = False, workers: int = 1) -> ExperimentReport:
    """Run one suite and write <out_dir>/<name>.csv and .json."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec = suite_spec(name, seed, trials, cfg.preset, full)
    report = run_experiment(spec, cfg, workers=workers)
    report.summary["suite"] = name
    if name == "stream_memory":
        for group in report.summary["aggregate"]["groups"]:
            mean_words = group.get("mean_words")
            group["words_constant"] = (log_ratio_constant(group["n"], mean_words)
                                       if mean_words else None)
    violations = scaling_violations(name, report.summary["aggregate"])
    report.summary["scaling_violations"] = violations
    report.write(out_dir / f"{name}.csv")
    exponent = report.summary["aggregate"]["exponent"]
    logger.info(f"bench {name}: exponent {exponent}")
    for problem in violations:
        logger.warning(f"bench {name}: {problem}")
    return report
