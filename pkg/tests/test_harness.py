"""Tests for graph families, the trial runner, reports and verification."""

import numpy as np
import pytest
from pydantic import ValidationError

from connectivity import load_config
from errors import InvalidInputError
from graphs import SimpleGraph, cut_edges, min_degree
from harness import (
    CSV_COLUMNS,
    SCALING_LIMITS,
    SUITES,
    BarbellFamily,
    CompleteFamily,
    CycleFamily,
    ExperimentSpec,
    GnpFamily,
    MixedFamily,
    NearRegularFamily,
    PathFamily,
    PlantedCutFamily,
    aggregate,
    doubling_ratios,
    exact_lambda,
    exact_witness,
    fit_exponent,
    generate,
    graph_seed,
    parse_family,
    read_rows_csv,
    resolve_mixed,
    run_trial,
    scaling_violations,
    suite_spec,
    trial_rng,
    verify,
    write_rows_csv,
)
from harness.reports import log_ratio_constant
from monitoring import get_timing_registry
from tests.builders import cycle_graph


def _row(n, value, cut_units, lambda_true=2, fail=False):
    return {"n": n, "value": value, "cut_units": cut_units, "lambda_true": lambda_true,
            "fail": fail, "error": ""}


class TestFamilies:
    """Deterministic graph generation."""

    def test_cycle(self):
        """C8 has delta = lambda = 2."""
        graph = generate(CycleFamily(n=8), seed=1)
        assert min_degree(graph) == 2
        assert exact_lambda(graph) == 2

    def test_complete(self):
        """K5 has lambda = 4."""
        assert exact_lambda(generate(CompleteFamily(n=5), seed=1)) == 4

    def test_planted_cut(self):
        """The planted cut is the unique non-trivial minimum."""
        graph = generate(PlantedCutFamily(n1=32, n2=32, cut=3), seed=5)
        witness = exact_witness(graph)
        assert witness.value == 3
        assert not witness.is_trivial()
        assert len(cut_edges(graph, witness.side)) == 3
        assert min_degree(graph) > 3

    def test_planted_cut_infeasible(self):
        """A cut as large as the blob degree cannot be planted."""
        with pytest.raises(InvalidInputError):
            generate(PlantedCutFamily(n1=4, n2=4, cut=3), seed=1)

    def test_planted_cut_needs_distinct_endpoints(self):
        """cut > min(n1, n2) does not validate."""
        with pytest.raises(ValidationError):
            PlantedCutFamily(n1=4, n2=8, cut=5)

    def test_near_regular_parity(self):
        """n d odd bumps the degree by one."""
        graph = generate(NearRegularFamily(n=7, d=3), seed=2)
        assert graph.degrees.tolist() == [4] * 7

    def test_near_regular_too_dense(self):
        """d >= n is infeasible."""
        with pytest.raises(InvalidInputError):
            generate(NearRegularFamily(n=4, d=4), seed=2)

    def test_seed_determinism(self):
        """Same seed, same graph; another seed, another graph."""
        family = GnpFamily(n=40, p=0.2, with_cycle=True)
        assert generate(family, 3).digest() == generate(family, 3).digest()
        assert generate(family, 3).digest() != generate(family, 4).digest()

    def test_gnp_with_cycle_connected(self):
        """with_cycle adds a Hamiltonian cycle, so delta >= 2."""
        graph = generate(GnpFamily(n=30, p=0.0, with_cycle=True), seed=9)
        assert graph.m == 30
        assert exact_lambda(graph) == 2

    def test_resized(self):
        """Grid resizing keeps the other parameters."""
        planted = PlantedCutFamily(n1=8, n2=8, cut=2, density=0.5).resized(11)
        assert (planted.n1, planted.n2, planted.cut, planted.density) == (5, 6, 2, 0.5)
        assert BarbellFamily(clique=4, bridge=2).resized(20).n == 20
        assert PathFamily(n=3).resized(9).n == 9

    def test_mixed_draws_are_seeded(self):
        """A mixed family picks a concrete family per seed, the same one every time."""
        family = MixedFamily(n=64)
        kinds = {resolve_mixed(family, np.random.default_rng(s)).kind for s in range(40)}
        assert kinds == {"gnp", "near_regular", "planted_cut", "barbell"}
        assert generate(family, 8).digest() == generate(family, 8).digest()
        assert generate(family, 8).n == 64

    def test_mixed_large_n_skips_barbell(self):
        """Barbells are only drawn for small n."""
        family = MixedFamily(n=256)
        kinds = {resolve_mixed(family, np.random.default_rng(s)).kind for s in range(40)}
        assert "barbell" not in kinds
        assert all(resolve_mixed(family, np.random.default_rng(s)).n == 256 for s in range(10))

    def test_mixed_minimum_size(self):
        """n below 16 does not validate."""
        with pytest.raises(ValidationError):
            parse_family({"kind": "mixed", "n": 8})
        assert parse_family({"kind": "mixed", "n": 32}).resized(512).n == 512

    def test_parse_family(self):
        """Plain mappings dispatch on kind."""
        assert isinstance(parse_family({"kind": "cycle", "n": 5}), CycleFamily)
        assert parse_family({"kind": "planted_cut", "n1": 6, "n2": 6, "cut": 2}).n == 12
        with pytest.raises(ValidationError):
            parse_family({"kind": "hypercube", "n": 8})


class TestSeeds:
    """Per-trial randomness."""

    def test_trial_rng_reproducible(self):
        """The same counter gives the same stream."""
        assert trial_rng(1, 0, 3).random() == trial_rng(1, 0, 3).random()
        assert trial_rng(1, 0, 3).random() != trial_rng(1, 0, 4).random()

    def test_graph_seed_salted(self):
        """Graph seeds are stable and differ across trials and grid points."""
        assert graph_seed(7, 1, 2) == graph_seed(7, 1, 2)
        assert len({graph_seed(7, s, t) for s in range(3) for t in range(3)}) == 9


class TestRunTrial:
    """One row per trial."""

    def test_sequential_row(self, desk_cfg):
        """The explicit algorithm on C12 gives an exact, non-FAIL row."""
        spec = ExperimentSpec(algorithm="ec_sequential", family=CycleFamily(n=12))
        row = run_trial(spec, desk_cfg, 0, 12, 0)
        assert (row["value"], row["lambda_true"], row["fail"]) == (2, 2, False)
        assert row["branch"] == "sequential"
        assert row["seed"] == f"{spec.seed}/0/0"
        assert (row["n"], row["m"], row["delta"]) == (12, 12, 2)
        assert row["error"] == ""

    def test_error_row(self, desk_cfg):
        """A generator exception becomes a FAIL row with the error code."""
        spec = ExperimentSpec(algorithm="ec_loglog", family=PlantedCutFamily(n1=4, n2=4, cut=3))
        row = run_trial(spec, desk_cfg, 0, 8, 0)
        assert row["fail"] is True
        assert row["branch"] == "error"
        assert row["error_code"] == "INVALID_INPUT"
        assert "planted cut" in row["error"]

    def test_boruvka_row(self, desk_cfg):
        """A forest of P16 has 15 edges; no lambda for forest runs."""
        spec = ExperimentSpec(algorithm="boruvka", family=PathFamily(n=16))
        row = run_trial(spec, desk_cfg, 0, 16, 0)
        assert row["value"] == 15
        assert row["lambda_true"] is None
        assert row["cut_units"] > 0

    def test_recover_row(self, desk_cfg):
        """Recovery rows never fail."""
        spec = ExperimentSpec(algorithm="recover", family=CompleteFamily(n=16))
        row = run_trial(spec, desk_cfg, 0, 16, 0)
        assert not row["fail"]
        assert row["branch"] in ("recover", "recover_empty")

    def test_amplified_row(self, desk_cfg):
        """amplify > 1 takes the minimum and sums the cost."""
        spec = ExperimentSpec(algorithm="ec_sequential", family=CycleFamily(n=10), amplify=3)
        row = run_trial(spec, desk_cfg, 0, 10, 0)
        assert row["branch"] == "amplified"
        assert row["value"] == 2

    def test_stream_row_reports_words(self, desk_cfg):
        """Streaming rows carry the peak word count."""
        spec = ExperimentSpec(algorithm="stream_complete", family=CycleFamily(n=16))
        row = run_trial(spec, desk_cfg, 0, 16, 0)
        assert row["words"] > 0
        assert row["fail"] or row["value"] == 2

    def test_trials_are_timed(self, desk_cfg):
        """Every trial records a duration metric."""
        registry = get_timing_registry()
        before = len(registry.events("trial"))
        run_trial(ExperimentSpec(algorithm="ec_sequential", family=CycleFamily(n=6)),
                  desk_cfg, 0, 6, 0)
        assert registry.summary("trial").count == before + 1


class TestExperimentSpec:
    """YAML specs."""

    def test_from_yaml(self, tmp_path):
        """Families, grids and defaults load from YAML."""
        path = tmp_path / "spec.yml"
        path.write_text("algorithm: ec_loglog\nfamily: {kind: cycle, n: 16}\nsizes: [8, 16]\ntrials: 2\n")
        spec = ExperimentSpec.from_yaml(path)
        assert isinstance(spec.family, CycleFamily)
        assert spec.grid() == [8, 16]
        assert spec.preset == "desk"

    def test_grid_defaults_to_family_size(self):
        """No sizes means the family's own n."""
        assert ExperimentSpec(algorithm="ec_linear", family=CompleteFamily(n=9)).grid() == [9]

    def test_unknown_algorithm(self):
        """Only the known runners validate."""
        with pytest.raises(ValidationError):
            ExperimentSpec(algorithm="karger", family=CycleFamily(n=5))


class TestReports:
    """Aggregation and CSV output."""

    def test_aggregate(self):
        """Per-n means, success rate and the fitted exponent."""
        rows = [_row(8, 2, 10), _row(8, 3, 30), _row(16, 2, 40), _row(16, None, 40, fail=True)]
        summary = aggregate(rows)
        small, large = summary["groups"]
        assert small["mean_cut_units"] == 20.0
        assert small["success_rate"] == 0.5
        assert large["fails"] == 1
        assert summary["exponent"] == pytest.approx(1.0)
        assert summary["doubling_ratios"] == [pytest.approx(2.0)]

    def test_underestimates_counted(self):
        """Values below lambda are counted per group."""
        assert aggregate([_row(8, 1, 5), _row(8, 2, 5)])["groups"][0]["underestimates"] == 1

    def test_no_ground_truth(self):
        """Without lambda_true there is no success rate."""
        group = aggregate([_row(8, 4, 5, lambda_true=None)])["groups"][0]
        assert group["success_rate"] is None

    def test_fit_exponent(self):
        """values = 3 n^2 gives slope 2."""
        assert fit_exponent([1, 2, 4], [3, 12, 48]) == pytest.approx(2.0)
        assert fit_exponent([4, 4], [1, 2]) is None

    def test_doubling_ratios(self):
        """A zero predecessor gives None."""
        assert doubling_ratios([0, 2, 4]) == [None, 2.0]

    def test_log_ratio_constant(self):
        """value / (n log2^2 n)."""
        assert log_ratio_constant(16, 256) == pytest.approx(1.0)
        assert log_ratio_constant(1, 3) == pytest.approx(3.0)

    def test_csv_columns(self, tmp_path):
        """Fixed header; None written as empty."""
        path = tmp_path / "rows.csv"
        write_rows_csv([{"algorithm": "ec_linear", "n": 8, "value": None, "extra": 1}], path)
        assert path.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)
        (row,) = read_rows_csv(path)
        assert row["value"] == ""
        assert row["n"] == "8"
        assert "extra" not in row


class TestVerify:
    """Claimed versus exact connectivity."""

    def test_pass(self, c6):
        """lambda itself passes with the witness cut."""
        report = verify(c6, 2)
        assert report.verdict == "pass"
        assert len(report.witness_edges) == 2

    def test_underestimate(self, c6):
        """Below lambda is flagged."""
        report = verify(c6, 1)
        assert (report.verdict, report.margin) == ("underestimate", -1)

    def test_overestimate(self, c6):
        """Above lambda reports the margin."""
        report = verify(c6, 4)
        assert (report.verdict, report.margin, report.exact) == ("overestimate", 2, 2)
        payload = report.to_dict()
        assert payload["verdict"] == "overestimate"
        assert payload["witness_edges"] == [list(e) for e in report.witness_edges]

    def test_too_small(self):
        """One vertex has no cut."""
        with pytest.raises(InvalidInputError):
            verify(SimpleGraph(1), 0)

    def test_exact_lambda_limit(self):
        """Above the limit there is no ground truth."""
        assert exact_lambda(cycle_graph(10), limit=5) is None
        assert exact_lambda(SimpleGraph(1)) == 0

    def test_witness_memoised(self):
        """A repeated graph is answered from the digest cache."""
        graph = cycle_graph(23)
        exact_witness(graph)
        hits = exact_witness.table.hits
        exact_witness(cycle_graph(23))
        assert exact_witness.table.hits == hits + 1


class TestBenchSuites:
    """Built-in suites."""

    def test_quick_and_full_grids(self):
        """Doubling grids, small by default."""
        assert suite_spec("ec_linear", 1, 2).sizes == [64, 128, 256]
        assert suite_spec("ec_linear", 1, 2, full=True).sizes[0] == 512

    def test_unknown_suite(self):
        """Unknown names list the known suites."""
        with pytest.raises(InvalidInputError) as info:
            suite_spec("karger", 1, 1)
        assert "boruvka" in info.value.details["known"]

    def test_scaling_limits(self):
        """Slopes and doubling ratios are checked against the suite's limits."""
        linear = {"exponent": 1.02, "doubling_ratios": [2.05, 2.1, 1.98]}
        assert scaling_violations("ec_linear", linear) == []
        steep = {"exponent": 1.3, "doubling_ratios": [2.0, 2.4]}
        assert scaling_violations("boruvka", steep) == ["slope 1.300 above 1.15",
                                                        "doubling ratio 2.400 > 2.25 at grid step 2"]
        assert scaling_violations("ec_mdcp", {"exponent": 0.6, "doubling_ratios": [9.0]}) == []
        assert scaling_violations("ec_mdcp", {"exponent": 0.8, "doubling_ratios": []}) == [
            "slope 0.800 above 0.75"]
        assert scaling_violations("ec_linear", {"exponent": None, "doubling_ratios": []}) == [
            "no exponent could be fitted"]
        assert scaling_violations("stream_memory", steep) == []
        assert set(SCALING_LIMITS) <= set(SUITES)

    def test_preset_carried(self):
        """The suite spec runs under the requested preset."""
        spec = suite_spec("stream_memory", 3, 1, preset="paper")
        assert (spec.preset, spec.algorithm, spec.seed) == ("paper", "stream_complete", 3)
        assert load_config(spec.preset).preset == "paper"


def test_rows_use_numpy_free_types(desk_cfg):
    """Row values are plain Python types, so the JSON summary serialises."""
    row = run_trial(ExperimentSpec(algorithm="ec_sequential", family=CycleFamily(n=8)),
                    desk_cfg, 0, 8, 0)
    assert all(not isinstance(v, np.generic) for v in row.values())
