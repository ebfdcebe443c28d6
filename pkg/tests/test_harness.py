"""Tests for the verification suites and the scaling benchmark."""

import io

import pytest

from allnorms_cc.core.config import Config, HarnessConfig
from allnorms_cc.core.errors import InvalidParameterError
from allnorms_cc.core.graph import save_graph
from allnorms_cc.generators.graph_generator import star
from allnorms_cc.harness.bench import CSV_COLUMNS, bench_graph, run_bench, scaling_summary, write_csv
from allnorms_cc.harness.verify import (
    SUITES,
    InvariantVerifier,
    circulant_corpus,
    input_corpus,
    instance_from_label,
    metric_corpus,
    oracle_corpus,
)


@pytest.fixture
def small_verifier():
    harness = HarnessConfig(trials=4, n=12, max_n=5, cost_trials=8, workers=2, seed=3)
    return InvariantVerifier(Config(harness=harness))


class TestCorpora:
    """Test the generated instance lists."""

    def test_metric_corpus(self):
        corpus = metric_corpus(3, 10, 0)
        assert len(corpus) == 3 + 10 + 5
        assert [i.seed for i in corpus[:3]] == [0, 1, 2]
        assert corpus[3].label == "star(1)"
        assert all(i.graph.n == 10 for i in corpus[:3])

    def test_oracle_corpus(self):
        corpus = oracle_corpus(4, 3, 0)
        assert len(corpus) == 15
        assert [i.graph.n for i in corpus[:4]] == [1, 2, 3, 1]
        assert max(i.graph.n for i in corpus) == 3

    def test_circulant_corpus(self):
        corpus = circulant_corpus()
        assert len(corpus) == 20
        assert all(i.graph.is_regular for i in corpus)


class TestInvariantVerifier:
    """Test every suite on a small corpus."""

    @pytest.mark.parametrize("suite", SUITES)
    async def test_suite_passes(self, small_verifier, suite):
        result = await small_verifier.run_suite(suite)
        assert result.passed, [f.message for f in result.findings]
        assert result.instances > 0
        assert result.duration_ms >= 0

    async def test_ratios_are_recorded(self, small_verifier):
        guarantee = await small_verifier.run_suite("guarantee")
        assert 0 < guarantee.max_ratios["alg/fractional"] <= 12
        dual = await small_verifier.run_suite("dual")
        assert dual.max_ratios["dual/opt_edges"] <= 1 + 1e-9
        assert dual.max_ratios["edge_fractional/dual"] <= 6 + 1e-9

    async def test_run_keeps_suite_order(self, small_verifier):
        report = await small_verifier.run(["dual", "triangle"])
        assert [s.suite for s in report.suites] == ["dual", "triangle"]
        assert report.passed
        assert report.seed == 3

    async def test_unknown_suite(self, small_verifier):
        with pytest.raises(InvalidParameterError):
            await small_verifier.run(["triangle", "speed"])
        with pytest.raises(InvalidParameterError):
            await small_verifier.run_suite("speed")

    @pytest.mark.slow
    async def test_default_corpus_passes(self):
        report = await InvariantVerifier(Config()).run()
        assert report.passed, [f.message for f in report.findings]


@pytest.fixture
def given_verifier(tmp_path):
    """A small star file plus one graph too large for the exhaustive suites."""
    path = tmp_path / "star5.txt"
    save_graph(star(5), path)
    instances = input_corpus([path]) + [instance_from_label("random(n=20,q=0.2,seed=4)")]
    harness = HarnessConfig(max_n=5, cost_trials=8, workers=2)
    return InvariantVerifier(Config(harness=harness), instances)


class TestReplay:
    """Test rebuilding recorded instances and verifying given graphs."""

    def test_labels_rebuild_generated_instances(self):
        for instance in metric_corpus(6, 12, 4) + oracle_corpus(10, 5, 2):
            rebuilt = instance_from_label(instance.label)
            assert rebuilt.graph.pos_sets == instance.graph.pos_sets, instance.label
            assert rebuilt.seed == instance.seed
            assert rebuilt.label == instance.label

    def test_positional_circulant_label(self):
        assert instance_from_label("regular_circulant(8,4)").graph.max_loop_free_degree == 4
        assert instance_from_label(" star(5) ").graph.n == 5

    @pytest.mark.parametrize("label", ["cube(4)", "random(n=5)", "star", "star(4,5)", "star(four)"])
    def test_bad_labels(self, label):
        with pytest.raises(InvalidParameterError):
            instance_from_label(label)

    def test_input_corpus_labels_by_path(self, tmp_path):
        path = tmp_path / "g.txt"
        save_graph(star(3), path)
        (instance,) = input_corpus([path])
        assert instance.label == str(path)
        assert instance.graph.n == 3
        assert instance.seed is None

    async def test_given_instances_replace_corpora(self, given_verifier):
        report = await given_verifier.run()
        assert report.passed, [f.message for f in report.findings]
        counts = {s.suite: (s.instances, s.skipped) for s in report.suites}
        assert counts == {
            "triangle": (2, 0),
            "guarantee": (2, 0),
            "cost-bounds": (1, 1),
            "dual": (1, 1),
            "oracle-ratios": (1, 1),
        }


class TestBench:
    """Test benchmark rows, CSV output and the scaling summary."""

    async def test_row_order_and_seeds(self):
        rows = await run_bench([20, 40], 4, 2, seed=5)
        assert [(r.family, r.n, r.seed) for r in rows] == [
            ("regular-circulant", 20, 5), ("regular-circulant", 40, 5), ("random", 20, 5), ("random", 40, 5),
            ("regular-circulant", 20, 6), ("regular-circulant", 40, 6), ("random", 20, 6), ("random", 40, 6),
        ]
        for row in rows:
            assert row.delta == 4
            assert row.dual_lb <= row.l1 / 2 + 1e-9
            assert row.dual_lb <= row.pivot_l1 / 2 + 1e-9
            assert row.linf <= row.l2 <= row.l1

    async def test_single_family(self):
        rows = await run_bench([20], 4, 2, families=["random"])
        assert [(r.family, r.seed) for r in rows] == [("random", 0), ("random", 1)]

    async def test_parallel_rows_match_sequential(self):
        sequential = await run_bench([30], 6, 3, families=["random"])
        parallel = await run_bench([30], 6, 3, families=["random"], workers=3)
        strip = [(r.l1, r.linf, r.pivot_l1, r.dual_lb) for r in sequential]
        assert strip == [(r.l1, r.linf, r.pivot_l1, r.dual_lb) for r in parallel]

    @pytest.mark.parametrize("sizes, families", [
        ([40, 20], ["regular-circulant"]),
        ([20], ["hypercube"]),
        ([20], []),
    ])
    async def test_invalid_arguments(self, sizes, families):
        with pytest.raises(InvalidParameterError):
            await run_bench(sizes, 2, 1, families=families)

    def test_bench_graph(self):
        assert bench_graph("regular-circulant", 30, 6, 0).max_loop_free_degree == 6
        assert bench_graph("random", 30, 6, 0).n == 30

    async def test_csv(self):
        rows = await run_bench([20], 2, 1)
        stream = io.StringIO()
        write_csv(rows, stream)
        lines = stream.getvalue().split("\r\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert lines[0] == "n,delta,seed,t_metric_ms,t_adjust_ms,t_round_ms,l1,l2,linf,pivot_l1,dual_lb"
        assert lines[1].startswith("20,2,0,")
        assert lines[2].startswith("20,2,0,")
        assert lines[3] == ""

    async def test_scaling_summary(self):
        rows = await run_bench([20, 40], 4, 3)
        summary = scaling_summary(rows)["families"]
        assert list(summary) == ["regular-circulant", "random"]
        for stats in summary.values():
            assert set(stats["median_total_ms"]) == {20, 40}
            assert [(r["from_n"], r["to_n"]) for r in stats["ratios"]] in ([(20, 40)], [])
