"""
Unit tests for the bench harness: corpus generation, the result store, the
run matrix and the aggregate statistics.
"""

import math
import tempfile
import unittest
from pathlib import Path

import numpy as np
import numpy.testing as npt

from cutlab.bench import (
    CorpusSize,
    ResultStore,
    center_invalidation_rate,
    density_summary,
    evaluate_picker,
    gen_corpus,
    head_to_head,
    load_corpus,
    metric_value,
    run_matrix,
    sgm_by_variant,
    shifted_geo_mean,
    training_records,
    virtual_best_ratios,
    write_corpus,
)
from cutlab.bnb import brute_force_optimum
from cutlab.regress import train
from cutlab.types.learning import FeatureVector
from cutlab.types.measures import MeasureKind
from cutlab.types.records import ExperimentRecord, MipStatus, NodeStats, SeparationConfig

FEATURES = FeatureVector.from_array([0.1, 0.2, 0.3, 0.4, 0.5])


def record(instance, variant, seed=1, nodes=1, gap=0.0, status=MipStatus.OPTIMAL, features=FEATURES, **extra):
    stats = NodeStats(
        status=status, nodes_processed=nodes, lp_iterations_total=10 * nodes,
        primal_bound=0.0, dual_bound=0.0, gap_after_root=gap,
    )
    fields = dict(cuts_added=0, rounds_executed=1)
    fields.update(extra)
    return ExperimentRecord(instance=instance, seed=seed, variant=variant, stats=stats, features=features, **fields)


class TestShiftedGeoMean(unittest.TestCase):
    def test_ones(self):
        self.assertAlmostEqual(shifted_geo_mean([1, 1, 1], 1.0), 1.0)

    def test_zero_and_three(self):
        self.assertAlmostEqual(shifted_geo_mean([0, 3], 1.0), 1.0)

    def test_single_value(self):
        self.assertAlmostEqual(shifted_geo_mean([42.0], 10.0), 42.0)

    def test_empty(self):
        with self.assertRaises(ValueError):
            shifted_geo_mean([])

    def test_non_positive_shifted_values(self):
        with self.assertRaises(ValueError):
            shifted_geo_mean([-2.0, 1.0], 1.0)


class TestHeadToHead(unittest.TestCase):
    def test_identical_records(self):
        records = [record("a", v, seed=s, nodes=5) for v in ("eff", "dcd") for s in (1, 2, 3)]
        h2h = head_to_head(records)
        self.assertEqual(h2h.variants, ("eff", "dcd"))
        self.assertEqual((h2h.win[0, 1], h2h.loss[0, 1]), (0.0, 0.0))
        self.assertTrue(math.isnan(h2h.win[0, 0]))

    def test_uniformly_better(self):
        records = []
        for inst in ("a", "b"):
            for s in (1, 2, 3):
                records += [record(inst, "eff", seed=s, nodes=3), record(inst, "a-dcd", seed=s, nodes=7)]
        h2h = head_to_head(records)
        i, j = h2h.variants.index("a-dcd"), h2h.variants.index("eff")
        self.assertEqual((h2h.win[j, i], h2h.loss[j, i]), (1.0, 0.0))
        self.assertEqual((h2h.win[i, j], h2h.loss[i, j]), (0.0, 1.0))
        self.assertEqual(h2h.instances[i, j], 2)

    def test_hand_tally(self):
        nodes = {
            # instance: (eff seeds, dcd seeds)
            "p": ((1, 2), (2, 2)),   # eff wins
            "q": ((3, 1), (1, 3)),   # mixed, nobody wins
            "r": ((4, 4), (4, 3)),   # dcd wins
        }
        records = []
        for inst, (eff, dcd) in nodes.items():
            for s in (0, 1):
                records += [record(inst, "eff", seed=s, nodes=eff[s]), record(inst, "dcd", seed=s, nodes=dcd[s])]
        h2h = head_to_head(records)
        npt.assert_allclose([h2h.win[0, 1], h2h.loss[0, 1]], [1 / 3, 1 / 3])

    def test_loss_is_transposed_win(self):
        rng = np.random.default_rng(0)
        records = [
            record(inst, v, seed=s, nodes=int(rng.integers(1, 5)))
            for inst in "abcd" for v in ("eff", "dcd", "mineff") for s in (1, 2)
        ]
        h2h = head_to_head(records)
        npt.assert_array_equal(h2h.loss, h2h.win.T)

    def test_time_limit_excluded_for_nodes(self):
        records = [
            record("a", "eff", nodes=1), record("a", "dcd", nodes=2, status=MipStatus.TIME_LIMIT),
            record("b", "eff", nodes=2), record("b", "dcd", nodes=1),
        ]
        h2h = head_to_head(records)
        self.assertEqual(h2h.instances[0, 1], 1)
        self.assertEqual(h2h.win[1, 0], 1.0)
        # the gap comparison keeps both instances
        self.assertEqual(head_to_head(records, metric="gap").instances[0, 1], 2)


class TestVirtualBest(unittest.TestCase):
    def test_uniformly_best(self):
        records = [record(i, "eff", gap=1.0) for i in "ab"] + [record(i, "dcd", gap=3.0) for i in "ab"]
        ratios = virtual_best_ratios(records)
        self.assertEqual({r["eff"] for r in ratios.values()}, {1.0})

    def test_two_measures(self):
        records = [record("a", "eff", gap=10.0), record("a", "dcd", gap=20.0)]
        self.assertEqual(virtual_best_ratios(records)["a"], {"eff": 1.0, "dcd": 2.0})
        self.assertEqual(virtual_best_ratios(records, reciprocal=True)["a"], {"eff": 1.0, "dcd": 0.5})

    def test_seed_average(self):
        records = [
            record("a", "eff", seed=1, gap=2.0), record("a", "eff", seed=2, gap=4.0),
            record("a", "dcd", seed=1, gap=1.0), record("a", "dcd", seed=2, gap=5.0),
            record("a", "mineff", seed=1, gap=6.0), record("a", "mineff", seed=2, gap=6.0),
        ]
        self.assertEqual(virtual_best_ratios(records)["a"], {"eff": 1.0, "dcd": 1.0, "mineff": 2.0})

    def test_zero_best(self):
        records = [record("a", "eff", gap=0.0), record("a", "dcd", gap=1.0)]
        self.assertEqual(virtual_best_ratios(records)["a"]["dcd"], math.inf)


class TestSummaries(unittest.TestCase):
    def test_sgm_by_variant(self):
        records = [record("a", "eff", nodes=0), record("b", "eff", nodes=30), record("a", "dcd", nodes=5),
                   record("b", "dcd", nodes=5)]
        sgm = sgm_by_variant(records, shift=10.0)
        self.assertEqual(list(sgm), ["eff", "dcd"])
        self.assertAlmostEqual(sgm["eff"], 10.0)
        self.assertAlmostEqual(sgm["dcd"], 5.0)

    def test_unknown_metric(self):
        with self.assertRaises(ValueError):
            metric_value(record("a", "eff"), "speed")

    def test_density_summary(self):
        records = [
            record("a", "eff", nodes=10, max_relative_density=0.9),
            record("a", "eff-20", nodes=20, max_relative_density=0.1),
            record("b", "eff", nodes=10, max_relative_density=0.1),
            record("b", "eff-20", nodes=10, max_relative_density=0.1),
        ]
        rows = density_summary(records, subsets=(0.0, 0.8))
        self.assertEqual([(r.min_density, r.variant, r.instances) for r in rows],
                         [(0.0, "eff", 2), (0.0, "eff-20", 2), (0.8, "eff", 1), (0.8, "eff-20", 1)])
        self.assertEqual(rows[0].nodes, 1.0)
        # shift 10 leaves single values unchanged: 20 / 10
        self.assertAlmostEqual(rows[3].nodes, 2.0)

    def test_center_invalidation_rate(self):
        records = [
            record("a", "app-a-dcd", rounds_executed=4, center_recomputations=1),
            record("b", "app-a-dcd", rounds_executed=6, center_recomputations=2),
            record("a", "eff", rounds_executed=5),
        ]
        self.assertAlmostEqual(center_invalidation_rate(records), 0.3)
        self.assertEqual(center_invalidation_rate(records[2:]), 0.0)

    def test_training_records(self):
        kinds = [k.value for k in MeasureKind.ordered()]
        records = [record("a", k, nodes=i + 1) for i, k in enumerate(kinds)]
        records += [record("b", k, nodes=3) for k in kinds[:-1]]
        samples = training_records(records)
        self.assertEqual(len(samples), 1)
        npt.assert_allclose(samples[0].targets, 1.0 / np.arange(1, 9))

    def test_evaluate_picker(self):
        rng = np.random.default_rng(1)
        kinds = [k.value for k in MeasureKind.ordered()]
        records = []
        for i in range(12):
            features = FeatureVector.from_array(rng.uniform(size=5))
            records += [
                record(f"i{i}", k, nodes=int(rng.integers(1, 50)), features=features) for k in kinds
            ]
        model = train(training_records(records))
        summary = evaluate_picker(records, model)
        self.assertEqual(summary.pairs, 12)
        self.assertEqual(sum(summary.picks.values()), 12)
        for kind in kinds + ["picked"]:
            self.assertGreaterEqual(summary.sgm_nodes[kind], summary.sgm_nodes["virtual-best"] - 1e-9)


class TestResultStore(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.path = Path(self.tmp.name) / "runs" / "records.jsonl"

    def tearDown(self):
        self.tmp.cleanup()

    def test_missing_file(self):
        self.assertEqual(ResultStore(self.path).load(), [])

    def test_append_and_load(self):
        store = ResultStore(self.path)
        store.append(record("a", "eff", gap=math.inf))
        store.append(record("a", "dcd"))
        loaded = store.load()
        self.assertEqual(store.keys(), {("a", 1, "eff"), ("a", 1, "dcd")})
        self.assertEqual(loaded[0].stats.gap_after_root, math.inf)

    def test_truncated_line_skipped(self):
        store = ResultStore(self.path)
        store.append(record("a", "eff"))
        with open(self.path, "a") as handle:
            handle.write('{"instance": "a", "seed"')
        self.assertEqual(len(store.load()), 1)

    def test_later_line_wins(self):
        store = ResultStore(self.path)
        store.append(record("a", "eff", nodes=3))
        store.append(record("a", "eff", nodes=4))
        self.assertEqual([r.stats.nodes_processed for r in store.load()], [4])


class TestCorpus(unittest.TestCase):
    def test_seeded_corpus_is_reproducible(self):
        a = gen_corpus("packing", 3, CorpusSize(n=6, m=2), seed=5)
        b = gen_corpus("packing", 3, CorpusSize(n=6, m=2), seed=5)
        self.assertEqual([i.to_json_dict() for i in a], [i.to_json_dict() for i in b])
        self.assertEqual([i.name for i in a], ["packing-5-000", "packing-5-001", "packing-5-002"])

    def test_knapsacks_are_solvable(self):
        corpus = gen_corpus("knapsack", 10, CorpusSize(n=10, m=2))
        self.assertEqual(len(corpus), 10)
        for inst in corpus:
            self.assertEqual(brute_force_optimum(inst).status, MipStatus.OPTIMAL)

    def test_set_cover_rows_are_negated(self):
        for inst in gen_corpus("set_cover", 3, CorpusSize(n=8, m=4)):
            self.assertTrue(np.all(inst.rows <= 0))
            npt.assert_array_equal(inst.rhs, -1.0)
            self.assertEqual(len(inst.integer), inst.n)

    def test_mixed_has_continuous_variables(self):
        inst = gen_corpus("mixed", 1, CorpusSize(n=6, m=2))[0]
        self.assertEqual(inst.integer, (0, 1, 2))

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            gen_corpus("tsp", 1)

    def test_write_and_load(self):
        corpus = gen_corpus("knapsack", 2, CorpusSize(n=5, m=1), seed=9)
        with tempfile.TemporaryDirectory() as tmp:
            write_corpus(corpus, tmp)
            back = load_corpus(tmp)
        self.assertEqual([i.to_json_dict() for i in back], [i.to_json_dict() for i in corpus])

    def test_missing_directory(self):
        with self.assertRaises(FileNotFoundError):
            load_corpus("/nonexistent/corpus")


class TestRunMatrix(unittest.TestCase):
    def setUp(self):
        self.corpus = gen_corpus("knapsack", 2, CorpusSize(n=6, m=2), seed=3)
        self.cfg = SeparationConfig(rounds=3)

    def test_cardinality_and_order(self):
        records = run_matrix(self.corpus, ["eff", "dcd"], seeds=(1, 2, 3), cfg=self.cfg)
        self.assertEqual(len(records), 12)
        self.assertEqual([r.key for r in records], sorted(r.key for r in records))
        optima = {inst.name: brute_force_optimum(inst).value for inst in self.corpus}
        for r in records:
            self.assertEqual(r.stats.status, MipStatus.OPTIMAL)
            self.assertAlmostEqual(r.stats.primal_bound, optima[r.instance])

    def test_resume_does_not_duplicate(self):
        with tempfile.TemporaryDirectory() as tmp:
            store = ResultStore(Path(tmp) / "records.jsonl")
            run_matrix(self.corpus[:1], ["eff"], seeds=(1,), cfg=self.cfg, store=store)
            records = run_matrix(self.corpus, ["eff"], seeds=(1,), cfg=self.cfg, store=store)
            lines = (Path(tmp) / "records.jsonl").read_text().splitlines()
        self.assertEqual(len(records), 2)
        self.assertEqual(len(lines), 2)

    def test_density_variant(self):
        records = run_matrix(self.corpus, ["eff-05"], seeds=(1,), cfg=self.cfg)
        for r in records:
            self.assertLessEqual(r.max_relative_density, 0.05)

    def test_duplicate_names(self):
        with self.assertRaises(ValueError):
            run_matrix([self.corpus[0], self.corpus[0]], ["eff"], seeds=(1,))

    def test_unknown_variant(self):
        with self.assertRaises(ValueError):
            run_matrix(self.corpus, ["nope"], seeds=(1,))

    def test_process_pool_matches_serial(self):
        serial = run_matrix(self.corpus, ["eff", "a-dcd"], seeds=(1, 2), cfg=self.cfg, jobs=1)
        pooled = run_matrix(self.corpus, ["eff", "a-dcd"], seeds=(1, 2), cfg=self.cfg, jobs=2)
        self.assertEqual([r.model_dump_json() for r in pooled], [r.model_dump_json() for r in serial])

    def test_tighter_density_never_closes_more_gap(self):
        # n = 6 leaves eff-05 without any admissible cut
        records = run_matrix(self.corpus, ["eff-80", "eff-05"], seeds=(1,), cfg=self.cfg)
        self.assertTrue(all(r.cuts_added == 0 for r in records if r.variant == "eff-05"))
        sgm = sgm_by_variant(records, metric="gap", shift=1.0)
        self.assertGreaterEqual(sgm["eff-05"], sgm["eff-80"] - 1e-12)


if __name__ == "__main__":
    unittest.main()
