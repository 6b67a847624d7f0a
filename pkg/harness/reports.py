"""CSV rows, JSON summaries and scaling fits.

Outputs are deterministic: rows keep trial order, JSON keys are sorted and
floats are written by repr, so a rerun of the same spec is byte-identical.
"""

import csv
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "algorithm", "preset", "n", "m", "delta", "lambda_true", "value", "fail", "branch",
    "cut_units", "modeled_units", "seed", "trial", "words", "error",
]

PathLike = Union[str, Path]


def write_rows_csv(rows: Iterable[Dict[str, Any]], path: PathLike,
                   columns: Sequence[str] = tuple(CSV_COLUMNS)) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(columns), extrasaction="ignore",
                                lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({c: "" if row.get(c) is None else row.get(c) for c in columns})


def read_rows_csv(path: PathLike) -> List[Dict[str, str]]:
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


def write_summary_json(summary: Dict[str, Any], path: PathLike) -> None:
    Path(path).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")


def fit_exponent(sizes: Sequence[float], values: Sequence[float]) -> Optional[float]:
    """Least-squares slope of log(value) against log(size)."""
    points = [(s, v) for s, v in zip(sizes, values) if s > 0 and v > 0]
    if len({s for s, _ in points}) < 2:
        return None
    x = np.log([s for s, _ in points])
    y = np.log([v for _, v in points])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def doubling_ratios(values: Sequence[float]) -> List[Optional[float]]:
    """values[i+1]/values[i] for consecutive grid points."""
    ratios: List[Optional[float]] = []
    for i in range(1, len(values)):
        ratios.append(values[i] / values[i - 1] if values[i - 1] else None)
    return ratios


def _median(values: List[float]) -> Optional[float]:
    return float(np.median(values)) if values else None


def _mean(values: List[float]) -> Optional[float]:
    return float(np.mean(values)) if values else None


def aggregate(rows: Sequence[Dict[str, Any]], metric: str = "cut_units") -> Dict[str, Any]:
    """Per-n statistics in ascending n, plus the fitted scaling exponent of the mean metric."""
    by_n: Dict[int, List[Dict[str, Any]]] = {}
    for row in rows:
        by_n.setdefault(int(row["n"]), []).append(row)
    groups = []
    for n in sorted(by_n):
        group = by_n[n]
        measured = [float(r[metric]) for r in group if r.get(metric) not in (None, "")]
        checked = [r for r in group if r.get("lambda_true") not in (None, "")]
        exact = [r for r in checked if not r["fail"] and r.get("value") == r["lambda_true"]]
        under = [r for r in checked if not r["fail"] and r.get("value") is not None
                 and r["value"] < r["lambda_true"]]
        groups.append({
            "n": n,
            "trials": len(group),
            "fails": sum(1 for r in group if r["fail"]),
            "errors": sum(1 for r in group if r.get("error")),
            f"mean_{metric}": _mean(measured),
            f"median_{metric}": _median(measured),
            "success_rate": len(exact) / len(group) if checked else None,
            "underestimates": len(under),
        })
    sizes = [g["n"] for g in groups if g[f"mean_{metric}"]]
    means = [g[f"mean_{metric}"] for g in groups if g[f"mean_{metric}"]]
    exponent = fit_exponent(sizes, means)
    return {
        "metric": metric,
        "groups": groups,
        "exponent": exponent,
        "doubling_ratios": doubling_ratios(means),
    }


def log_ratio_constant(n: int, value: float, power: float = 2.0) -> float:
    """value / (n log2^power n), the constant in front of n polylog n."""
    return value / (n * max(1.0, math.log2(max(n, 2))) ** power)
