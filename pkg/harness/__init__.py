from harness.bench import SCALING_LIMITS, SUITES, run_bench, scaling_violations, suite_spec
from harness.experiment import (
    ALGORITHMS,
    ExperimentReport,
    ExperimentSpec,
    TrialResult,
    graph_seed,
    run_experiment,
    run_trial,
    trial_rng,
)
from harness.generators import (
    BarbellFamily,
    CompleteFamily,
    CycleFamily,
    GnpFamily,
    GraphFamily,
    MixedFamily,
    NearRegularFamily,
    PathFamily,
    PlantedCutFamily,
    StarFamily,
    generate,
    parse_family,
    resolve_mixed,
)
from harness.reports import CSV_COLUMNS, aggregate, doubling_ratios, fit_exponent, read_rows_csv, write_rows_csv
from harness.verify import VerifyReport, exact_lambda, exact_witness, verify

__all__ = [
    "ALGORITHMS",
    "BarbellFamily",
    "CSV_COLUMNS",
    "CompleteFamily",
    "CycleFamily",
    "ExperimentReport",
    "ExperimentSpec",
    "GnpFamily",
    "GraphFamily",
    "MixedFamily",
    "NearRegularFamily",
    "PathFamily",
    "PlantedCutFamily",
    "StarFamily",
    "SCALING_LIMITS",
    "SUITES",
    "TrialResult",
    "VerifyReport",
    "aggregate",
    "doubling_ratios",
    "exact_lambda",
    "exact_witness",
    "fit_exponent",
    "generate",
    "graph_seed",
    "parse_family",
    "resolve_mixed",
    "read_rows_csv",
    "run_bench",
    "run_experiment",
    "run_trial",
    "scaling_violations",
    "suite_spec",
    "trial_rng",
    "verify",
    "write_rows_csv",
]
