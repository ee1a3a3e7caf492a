"""
Unit tests for Gomory cut generation, cut selection and the root loop.
"""

import itertools
import math
import unittest
from unittest.mock import patch

import numpy as np
import numpy.testing as npt

from cutlab.bench.corpus import CorpusSize, gen_corpus
from cutlab.bnb import branch_and_cut, brute_force_optimum
from cutlab.errors import LpInfeasibleError, NoConvergenceError
from cutlab.lp import solve_lp_with_state
from cutlab.lp.auxiliary import bounds_list, solve_aux_lp
from cutlab.lp.barrier import analytic_center
from cutlab.measures import relative_density
from cutlab.separation import filter_density, generate_gomory, run_separation, select_cuts
from cutlab.separation.selection import cosine
from cutlab.types.instance import Cut, CutOrigin, Incumbent, MipInstance
from cutlab.types.measures import MeasureKind, ScoringContext
from cutlab.types.records import SeparationConfig


def one_var_knapsack():
    return MipInstance(objective=[-1], rows=[[2]], rhs=[3], lower=[0], upper=[2], integer=[0])


def two_var_knapsack():
    return MipInstance(
        objective=[-5, -4], rows=[[6, 4], [1, 2]], rhs=[24, 6], upper=[10, 10], integer=[0, 1],
    )


def integer_points(inst):
    ranges = [range(int(lo), int(hi) + 1) for lo, hi in zip(inst.lower, inst.upper)]
    for x in itertools.product(*ranges):
        x = np.array(x, dtype=float)
        if np.all(inst.rows @ x <= inst.rhs + 1e-9):
            yield x


def fractional_upper_bound():
    # x1 <= 1.5 is not integral, so t = 1.5 - x1 is continuous at integer points
    return MipInstance(objective=[-1, -1], rows=[[1, 2]], rhs=[3.4], upper=[1.5, 3], integer=[0, 1])


def mixed_instance():
    return MipInstance(
        objective=[-1, -1, -0.5], rows=[[2, 3, 1], [3, -1, 2]], rhs=[7.3, 4.1], upper=[3, 3, 2.5], integer=[0, 1],
    )


def max_violation(inst, cut):
    """Largest violation of ``cut`` over the mixed-integer feasible set."""
    ranges = [
        range(math.ceil(inst.lower[j]), math.floor(inst.upper[j]) + 1) if j in inst.integer else [None]
        for j in range(inst.n)
    ]
    worst = -np.inf
    for values in itertools.product(*ranges):
        lower, upper = inst.lower.copy(), inst.upper.copy()
        for j, v in enumerate(values):
            if v is not None:
                lower[j] = upper[j] = v
        res = solve_aux_lp(-cut.coeffs, inst.rows, inst.rhs, bounds=bounds_list(lower, upper))
        if res.x is not None:
            worst = max(worst, -res.value - cut.rhs)
    return worst


class TestGomory(unittest.TestCase):
    def test_single_row_cut(self):
        inst = one_var_knapsack()
        lp, state = solve_lp_with_state(inst)
        cuts = generate_gomory(inst, [], lp, state)
        self.assertEqual(len(cuts), 1)
        cut = cuts[0]
        self.assertEqual(cut.origin, CutOrigin.GOMORY)
        # x1 <= 1 up to positive scaling
        self.assertGreater(cut.coeffs[0], 0)
        self.assertAlmostEqual(cut.rhs / cut.coeffs[0], 1.0)
        for x1 in (0.0, 1.0):
            self.assertLessEqual(cut.coeffs[0] * x1, cut.rhs + 1e-9)
        self.assertGreater(cut.coeffs[0] * 2.0, cut.rhs)

    def test_integral_lp_gives_no_cuts(self):
        inst = MipInstance(objective=[-1, -1], upper=[1, 1], integer=[0, 1])
        lp, state = solve_lp_with_state(inst)
        self.assertEqual(generate_gomory(inst, [], lp, state), [])

    def test_cuts_keep_every_integer_point(self):
        inst = two_var_knapsack()
        cuts = []
        for r in range(4):
            lp, state = solve_lp_with_state(inst, cuts)
            new = generate_gomory(inst, cuts, lp, state, round_index=r)
            for cut in new:
                self.assertGreater(cut.coeffs @ lp.point - cut.rhs, 0.0)
                self.assertEqual(cut.round, r)
            cuts.extend(new)
        self.assertTrue(cuts)
        for x in integer_points(inst):
            for cut in cuts:
                self.assertLessEqual(cut.coeffs @ x, cut.rhs + 1e-7)

    def test_fractional_bound_is_not_rounded(self):
        inst = fractional_upper_bound()
        lp, state = solve_lp_with_state(inst)
        npt.assert_allclose(lp.point, [1.5, 0.95], atol=1e-9)
        cuts = generate_gomory(inst, [], lp, state)
        self.assertTrue(cuts)
        for cut in cuts:
            # (1, 1) is feasible and must survive
            self.assertLessEqual(cut.coeffs @ np.array([1.0, 1.0]), cut.rhs + 1e-7)
            self.assertLessEqual(max_violation(inst, cut), 1e-7)

    def test_fractional_bound_optimum(self):
        inst = fractional_upper_bound()
        self.assertAlmostEqual(brute_force_optimum(inst).value, -2.0)
        self.assertAlmostEqual(branch_and_cut(inst, SeparationConfig()).primal_bound, -2.0)

    def test_continuous_columns(self):
        inst = mixed_instance()
        cuts = []
        for r in range(3):
            lp, state = solve_lp_with_state(inst, cuts)
            cuts.extend(generate_gomory(inst, cuts, lp, state, round_index=r))
        self.assertTrue(cuts)
        for cut in cuts:
            self.assertLessEqual(max_violation(inst, cut), 1e-7)
        self.assertAlmostEqual(
            branch_and_cut(inst, SeparationConfig()).primal_bound, brute_force_optimum(inst).value, places=6,
        )


class TestFilterDensity(unittest.TestCase):
    def setUp(self):
        self.cands = [
            Cut(coeffs=[1, 0, 0, 0], rhs=1),
            Cut(coeffs=[1, 1, 0, 0], rhs=1),
            Cut(coeffs=[1, 1, 1, 1], rhs=1),
        ]

    def test_tight_threshold_removes_everything(self):
        self.assertEqual(filter_density(self.cands, 0.05, 4), [])

    def test_full_threshold_is_identity(self):
        self.assertEqual(filter_density(self.cands, 1.0, 4), self.cands)
        self.assertEqual(filter_density(self.cands, None, 4), self.cands)

    def test_half_threshold(self):
        kept = filter_density(self.cands, 0.5, 4)
        self.assertEqual(kept, [c for c in self.cands if relative_density(c, 4) <= 0.5])
        self.assertEqual(len(kept), 2)


class TestSelectCuts(unittest.TestCase):
    def setUp(self):
        self.ctx = ScoringContext(x_lp=[2, 2])

    def test_identical_cuts(self):
        cut = Cut(coeffs=[1, 0], rhs=1)
        self.assertEqual(len(select_cuts([cut, cut], self.ctx, SeparationConfig())), 1)

    def test_orthogonal_cuts(self):
        cands = [Cut(coeffs=[1, 0], rhs=1), Cut(coeffs=[0, 1], rhs=1)]
        self.assertEqual(len(select_cuts(cands, self.ctx, SeparationConfig())), 2)

    def test_budget_and_parallelism(self):
        cands = [
            Cut(coeffs=[1, 0], rhs=1),      # 1.0
            Cut(coeffs=[0, 1], rhs=0.5),    # 1.5
            Cut(coeffs=[1, 1], rhs=2),      # 1.414
            Cut(coeffs=[0, 2], rhs=1.2),    # 1.4, parallel to the best
            Cut(coeffs=[1, 0], rhs=1.9),    # 0.1
        ]
        selected = select_cuts(cands, self.ctx, SeparationConfig(max_cuts_per_round=2))
        self.assertEqual(selected, [cands[1], cands[2]])

    def test_unviolated_cuts_skipped(self):
        cands = [Cut(coeffs=[1, 0], rhs=3), Cut(coeffs=[1, 1], rhs=4)]
        self.assertEqual(select_cuts(cands, self.ctx, SeparationConfig()), [])

    def test_measure_override(self):
        ctx = ScoringContext(x_lp=[2, 0], incumbent=Incumbent(point=[0, 2], value=0.0))
        cands = [Cut(coeffs=[1, 0], rhs=1), Cut(coeffs=[1, 1], rhs=1.5)]
        selected = select_cuts(cands, ctx, SeparationConfig(max_cuts_per_round=1), kind=MeasureKind.DCD)
        # along (-1, 1) the second cut is parallel and cannot be scored
        self.assertEqual(selected, [cands[0]])


class TestRunSeparation(unittest.TestCase):
    def test_integral_root(self):
        inst = MipInstance(objective=[-1, -1], upper=[1, 1], integer=[0, 1])
        result = run_separation(inst, SeparationConfig())
        self.assertEqual(result.cuts, ())
        self.assertEqual(result.reports, ())
        self.assertAlmostEqual(result.root_value, -2.0)

    def test_knapsack_closes_in_one_round(self):
        result = run_separation(one_var_knapsack(), SeparationConfig(rounds=50))
        self.assertEqual(len(result.cuts), 1)
        self.assertEqual(len(result.reports), 1)
        report = result.reports[0]
        self.assertEqual((report.round, report.generated, report.added), (0, 1, 1))
        self.assertAlmostEqual(report.lp_value, -1.0)
        self.assertAlmostEqual(result.root_value, -1.0)

    def test_zero_rounds(self):
        result = run_separation(one_var_knapsack(), SeparationConfig(rounds=0))
        self.assertEqual(result.cuts, ())
        self.assertAlmostEqual(result.root_value, -1.5)
        self.assertIsNotNone(result.features)

    def test_every_measure_runs(self):
        inst = two_var_knapsack()
        incumbent = Incumbent(point=[4, 0], value=-20.0)
        for kind in MeasureKind.ordered():
            cfg = SeparationConfig(rounds=3, measure=kind, k_optima=3)
            result = run_separation(inst, cfg, incumbent=incumbent)
            self.assertTrue(result.reports, msg=kind.value)
            self.assertTrue(all(r.measure_used == kind for r in result.reports), msg=kind.value)
            for x in integer_points(inst):
                for cut in result.cuts:
                    self.assertLessEqual(cut.coeffs @ x, cut.rhs + 1e-7)

    def test_dcd_without_incumbent_scores_as_eff(self):
        result = run_separation(two_var_knapsack(), SeparationConfig(rounds=2, measure=MeasureKind.DCD))
        self.assertEqual(result.reports[0].measure_used, MeasureKind.EFF)

    def test_density_threshold_respected(self):
        inst = two_var_knapsack()
        result = run_separation(inst, SeparationConfig(rounds=5, density_threshold=0.5))
        self.assertLessEqual(result.max_relative_density, 0.5)
        for cut in result.cuts:
            self.assertLessEqual(relative_density(cut, inst.n), 0.5)

    def test_bound_never_decreases(self):
        result = run_separation(two_var_knapsack(), SeparationConfig(rounds=10))
        values = [r.lp_value for r in result.reports]
        npt.assert_array_equal(np.diff(values) >= -1e-9, True)

    def test_failed_cache_refresh_scores_as_eff(self):
        calls = []

        def flaky_center(*args, **kwargs):
            calls.append(args)
            if len(calls) == 2:
                raise NoConvergenceError("line search failed", iterations=3)
            return analytic_center(*args, **kwargs)

        cfg = SeparationConfig(rounds=3, measure=MeasureKind.APP_A_DCD)
        with patch("cutlab.separation.loop.analytic_center", side_effect=flaky_center), \
                patch("cutlab.separation.loop.center_still_valid", return_value=False):
            result = run_separation(two_var_knapsack(), cfg)
        self.assertEqual(result.reports[0].measure_used, MeasureKind.EFF)
        self.assertFalse(result.reports[0].center_recomputed)
        self.assertGreaterEqual(result.center_recomputations, 1)
        if len(result.reports) > 1:
            self.assertEqual(result.reports[1].measure_used, MeasureKind.APP_A_DCD)

    def test_deterministic_for_fixed_seed(self):
        inst = gen_corpus("knapsack", 1, CorpusSize(n=8, m=2), seed=11)[0]
        for kind in (MeasureKind.A_DCD, MeasureKind.MINEFF):
            cfg = SeparationConfig(rounds=5, measure=kind, seed=7)
            first = run_separation(inst, cfg).model_dump_json()
            self.assertEqual(run_separation(inst, cfg).model_dump_json(), first, msg=kind.value)

    def test_cuts_of_one_round_are_not_parallel(self):
        inst = gen_corpus("knapsack", 1, CorpusSize(n=8, m=3), seed=5)[0]
        cfg = SeparationConfig(rounds=5, parallelism_threshold=0.5)
        result = run_separation(inst, cfg)
        self.assertTrue(result.cuts)
        for r in {cut.round for cut in result.cuts}:
            same_round = [cut for cut in result.cuts if cut.round == r]
            for a, b in itertools.combinations(same_round, 2):
                self.assertLessEqual(cosine(a, b), 0.5 + 1e-12)

    def test_infeasible_root(self):
        inst = MipInstance(objective=[1], rows=[[1]], rhs=[-1], upper=[1], integer=[0])
        with self.assertRaises(LpInfeasibleError):
            run_separation(inst, SeparationConfig())


if __name__ == "__main__":
    unittest.main()
