"""
Unit tests for analytic centers of the polytope and of the optimal face.
"""

import unittest

import numpy as np
import numpy.testing as npt

from cutlab.errors import NoConvergenceError, RegionEmptyError
from cutlab.lp import analytic_center, optimal_face_center, solve_lp
from cutlab.types.instance import Cut, MipInstance
from cutlab.types.solution import CenterKind, LpOutcome, LpStatus

ATOL = 1e-5


def triangle(objective):
    return MipInstance(objective=objective, rows=[[1, 1]], rhs=[1])


class TestAnalyticCenter(unittest.TestCase):
    def test_unit_box(self):
        inst = MipInstance(objective=[0, 0], upper=[1, 1])
        center = analytic_center(inst)
        npt.assert_allclose(center.point, [0.5, 0.5], atol=ATOL)
        self.assertEqual(center.kind, CenterKind.POLYTOPE)
        self.assertGreater(center.min_slack, 0.0)

    def test_triangle(self):
        npt.assert_allclose(analytic_center(triangle([0, 0])).point, [1 / 3, 1 / 3], atol=ATOL)

    def test_rectangle(self):
        inst = MipInstance(objective=[0, 0], upper=[1, 3])
        npt.assert_allclose(analytic_center(inst).point, [0.5, 1.5], atol=ATOL)

    def test_cuts_shrink_the_region(self):
        inst = MipInstance(objective=[0, 0], upper=[1, 1])
        center = analytic_center(inst, [Cut(coeffs=[1, 0], rhs=0.5)])
        npt.assert_allclose(center.point, [0.25, 0.5], atol=ATOL)

    def test_invariant_under_row_scaling(self):
        a = analytic_center(triangle([0, 0])).point
        b = analytic_center(MipInstance(objective=[0, 0], rows=[[10, 10]], rhs=[10])).point
        npt.assert_allclose(a, b, atol=ATOL)

    def test_flat_region_fixes_implicit_equality(self):
        # x1 + x2 <= 1 and x1 + x2 >= 1 pin the segment between (0,1) and (1,0)
        inst = MipInstance(objective=[0, 0], rows=[[1, 1], [-1, -1]], rhs=[1, -1])
        center = analytic_center(inst)
        npt.assert_allclose(center.point, [0.5, 0.5], atol=ATOL)
        self.assertGreaterEqual(center.tight_constraints, 1)

    def test_newton_decrement_does_not_rise_at_the_end(self):
        regions = [
            (triangle([0, 0]), []),
            (MipInstance(objective=[0, 0], upper=[1, 1]), [Cut(coeffs=[1, 0], rhs=0.5)]),
            (MipInstance(objective=[0, 0], rows=[[1, 2], [3, 1]], rhs=[4, 6], upper=[5, 5]), []),
        ]
        for inst, cuts in regions:
            center = analytic_center(inst, cuts)
            tail = center.last_decrements
            self.assertTrue(tail)
            self.assertLessEqual(len(tail), 5)
            self.assertAlmostEqual(tail[-1], center.residual)
            self.assertLessEqual(center.residual, 1e-8)
            for earlier, later in zip(tail, tail[1:]):
                self.assertLessEqual(later, earlier)

    def test_empty_region(self):
        inst = MipInstance(objective=[0], rows=[[-1]], rhs=[-2], upper=[1])
        with self.assertRaises(RegionEmptyError):
            analytic_center(inst)

    def test_unbounded_region(self):
        inst = MipInstance(objective=[0, 0])
        with self.assertRaises(NoConvergenceError):
            analytic_center(inst)


class TestOptimalFaceCenter(unittest.TestCase):
    def test_edge_face_of_box(self):
        inst = MipInstance(objective=[1, 0], upper=[1, 1])
        center = optimal_face_center(inst, [], solve_lp(inst))
        npt.assert_allclose(center.point, [0.0, 0.5], atol=ATOL)
        self.assertEqual(center.kind, CenterKind.OPTIMAL_FACE)

    def test_unique_vertex(self):
        inst = triangle([1, 1])
        lp = solve_lp(inst)
        npt.assert_allclose(optimal_face_center(inst, [], lp).point, lp.point, atol=ATOL)

    def test_edge_face_of_triangle(self):
        inst = triangle([1, 0])
        center = optimal_face_center(inst, [], solve_lp(inst))
        npt.assert_allclose(center.point, [0.0, 0.5], atol=ATOL)

    def test_zero_objective_gives_polytope_center(self):
        inst = MipInstance(objective=[0, 0], upper=[1, 1])
        npt.assert_allclose(optimal_face_center(inst, [], solve_lp(inst)).point, [0.5, 0.5], atol=ATOL)

    def test_requires_optimal_lp(self):
        inst = triangle([1, 1])
        with self.assertRaises(RegionEmptyError):
            optimal_face_center(inst, [], LpOutcome(status=LpStatus.INFEASIBLE))


if __name__ == "__main__":
    unittest.main()
