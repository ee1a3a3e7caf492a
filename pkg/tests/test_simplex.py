"""
Unit tests for the bounded-variable primal simplex and its tableau rows.
"""

import unittest

import numpy as np
import numpy.testing as npt
from scipy.optimize import linprog

from cutlab.errors import DimensionError, NotBasicError
from cutlab.lp import solve_lp, solve_lp_with_state, tableau_row
from cutlab.types.instance import Cut, MipInstance, RowKind
from cutlab.types.solution import LpStatus, VarStatus


def one_var_knapsack():
    # min -x1 s.t. 2 x1 <= 3, 0 <= x1 <= 2
    return MipInstance(objective=[-1], rows=[[2]], rhs=[3], lower=[0], upper=[2], integer=[0])


class TestSolveLp(unittest.TestCase):
    def test_box_optimum_at_upper_corner(self):
        inst = MipInstance(objective=[-1, -1], lower=[0, 0], upper=[1, 1])
        lp = solve_lp(inst)
        self.assertEqual(lp.status, LpStatus.OPTIMAL)
        self.assertAlmostEqual(lp.value, -2.0)
        npt.assert_allclose(lp.point, [1, 1])
        self.assertEqual(lp.basis, (VarStatus.AT_UPPER, VarStatus.AT_UPPER))

    def test_simplex_row(self):
        inst = MipInstance(objective=[1, 0], rows=[[1, 1]], rhs=[1])
        lp = solve_lp(inst)
        self.assertEqual(lp.status, LpStatus.OPTIMAL)
        self.assertAlmostEqual(lp.value, 0.0)

    def test_unbounded(self):
        inst = MipInstance(objective=[-1, 0], rows=[[1, -1]], rhs=[0])
        self.assertEqual(solve_lp(inst).status, LpStatus.UNBOUNDED)

    def test_infeasible(self):
        inst = MipInstance(objective=[0], rows=[[1]], rhs=[-1], lower=[0], upper=[1])
        lp = solve_lp(inst)
        self.assertEqual(lp.status, LpStatus.INFEASIBLE)
        self.assertIsNone(lp.point)

    def test_equality_row(self):
        inst = MipInstance(objective=[1, 2], rows=[[1, 1]], rhs=[1], row_kind=[RowKind.EQ])
        lp = solve_lp(inst)
        self.assertAlmostEqual(lp.value, 1.0)
        npt.assert_allclose(lp.point, [1, 0], atol=1e-9)

    def test_free_variable(self):
        inst = MipInstance(objective=[1], rows=[[-1]], rhs=[2], lower=[None])
        lp = solve_lp(inst)
        self.assertAlmostEqual(lp.value, -2.0)

    def test_extra_cuts_tighten(self):
        inst = MipInstance(objective=[-1, -1], lower=[0, 0], upper=[1, 1])
        lp = solve_lp(inst, [Cut(coeffs=[1, 1], rhs=1.5)])
        self.assertAlmostEqual(lp.value, -1.5)
        self.assertEqual(len(lp.row_basis), 1)

    def test_objective_override(self):
        inst = MipInstance(objective=[-1, -1], lower=[0, 0], upper=[1, 1])
        lp = solve_lp(inst, objective_override=np.array([1.0, 1.0]))
        self.assertAlmostEqual(lp.value, 0.0)

    def test_cut_dimension_checked(self):
        with self.assertRaises(DimensionError):
            solve_lp(one_var_knapsack(), [Cut(coeffs=[1, 1], rhs=1)])

    def test_same_seed_same_outcome(self):
        inst = MipInstance(objective=[-1, -1, 0], rows=[[1, 1, 1], [1, -1, 0]], rhs=[2, 0.5], upper=[1, 1, 1])
        a, b = solve_lp(inst, pivot_seed=7), solve_lp(inst, pivot_seed=7)
        npt.assert_array_equal(a.point, b.point)
        self.assertEqual(a.basis, b.basis)
        self.assertEqual(a.iterations, b.iterations)

    def test_agrees_with_highs_on_random_lps(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            n, m = 6, 4
            A = rng.uniform(-1, 1, size=(m, n))
            b = rng.uniform(0.5, 2.0, size=m)
            c = rng.normal(size=n)
            upper = rng.uniform(1.0, 3.0, size=n)
            inst = MipInstance(objective=c, rows=A, rhs=b, upper=upper)
            ours = solve_lp(inst, pivot_seed=int(rng.integers(100)))
            ref = linprog(c, A_ub=A, b_ub=b, bounds=list(zip(np.zeros(n), upper)), method="highs")
            self.assertEqual(ours.status, LpStatus.OPTIMAL)
            self.assertAlmostEqual(ours.value, ref.fun, places=7)
            self.assertTrue(np.all(A @ ours.point <= b + 1e-7))

    def test_reduced_cost_signs_at_optimum(self):
        rng = np.random.default_rng(5)
        inst = MipInstance(
            objective=rng.normal(size=5), rows=rng.uniform(-1, 1, size=(3, 5)), rhs=[1, 1, 1], upper=np.ones(5),
        )
        lp = solve_lp(inst)
        for status, d in zip(lp.basis, lp.reduced_costs):
            if status == VarStatus.AT_LOWER:
                self.assertGreaterEqual(d, -1e-7)
            elif status == VarStatus.AT_UPPER:
                self.assertLessEqual(d, 1e-7)


class TestTableauRow(unittest.TestCase):
    def test_knapsack_row(self):
        lp, state = solve_lp_with_state(one_var_knapsack())
        self.assertAlmostEqual(lp.point[0], 1.5)
        row = tableau_row(state, 0)
        # x1 + 0.5 s = 1.5
        npt.assert_allclose(row.coeffs, [1.0, 0.5])
        self.assertAlmostEqual(row.rhs, 1.5)

    def test_row_holds_at_the_vertex(self):
        inst = MipInstance(objective=[-2, -3], rows=[[1, 2], [3, 1]], rhs=[4, 6], upper=[5, 5])
        lp, state = solve_lp_with_state(inst)
        slacks = inst.rhs - inst.rows @ lp.point
        full = np.concatenate([lp.point, slacks])
        for j in range(inst.n):
            if lp.basis[j] == VarStatus.BASIC:
                row = tableau_row(state, j)
                self.assertAlmostEqual(float(row.coeffs @ full), row.rhs)

    def test_nonbasic_variable_rejected(self):
        _, state = solve_lp_with_state(one_var_knapsack())
        with self.assertRaises(NotBasicError):
            tableau_row(state, 1)
        with self.assertRaises(NotBasicError):
            tableau_row(state, 5)


if __name__ == "__main__":
    unittest.main()
