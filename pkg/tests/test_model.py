"""
Unit tests for the problem types and their basic operations.
"""

import unittest

import numpy as np
import numpy.testing as npt
from pydantic import ValidationError

from cutlab.errors import DimensionError
from cutlab.model import is_lp_feasible, is_mip_feasible, row_violations, violation
from cutlab.types.instance import INFINITE_BOUND, Cut, MipInstance, RowKind


def unit_box(n=2, integer=True, **kwargs):
    return MipInstance(
        objective=np.zeros(n), lower=np.zeros(n), upper=np.ones(n),
        integer=range(n) if integer else (), **kwargs,
    )


class TestViolation(unittest.TestCase):
    def test_axis_aligned(self):
        self.assertEqual(violation(Cut(coeffs=[1, 0], rhs=1), [3, 7]), 2.0)

    def test_boundary_point(self):
        self.assertEqual(violation(Cut(coeffs=[1, 1], rhs=2), [1, 1]), 0.0)

    def test_general_cut(self):
        self.assertAlmostEqual(violation(Cut(coeffs=[3, 4], rhs=0), [1, 1]), 7.0)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionError):
            violation(Cut(coeffs=[1, 0], rhs=1), [1, 2, 3])

    def test_linear_in_the_point(self):
        rng = np.random.default_rng(3)
        cut = Cut(coeffs=rng.normal(size=4), rhs=0.7)
        x, y = rng.normal(size=4), rng.normal(size=4)
        for a in (-1.5, 0.0, 0.3, 2.0):
            self.assertAlmostEqual(
                violation(cut, a * x + (1 - a) * y),
                a * violation(cut, x) + (1 - a) * violation(cut, y),
            )

    def test_scaling_scales_violation(self):
        cut = Cut(coeffs=[1, -2], rhs=0.5)
        self.assertAlmostEqual(violation(cut.scaled(3.0), [2, 1]), 3.0 * violation(cut, [2, 1]))


class TestFeasibility(unittest.TestCase):
    def test_integral_point_in_box(self):
        self.assertTrue(is_mip_feasible(unit_box(), [1, 0]))

    def test_fractional_integer_variable(self):
        self.assertFalse(is_mip_feasible(unit_box(), [0.5, 0]))

    def test_row_violated(self):
        inst = unit_box(rows=[[1, 1]], rhs=[1])
        self.assertFalse(is_mip_feasible(inst, [1, 1]))

    def test_lp_feasibility_with_cuts(self):
        inst = unit_box(integer=False)
        self.assertTrue(is_lp_feasible(inst, [0.5, 0.5]))
        self.assertFalse(is_lp_feasible(inst, [0.5, 0.5], [Cut(coeffs=[1, 1], rhs=0.5)]))

    def test_equality_rows_checked_both_ways(self):
        inst = unit_box(rows=[[1, 1]], rhs=[1], row_kind=[RowKind.EQ])
        viol = row_violations(inst, [0.2, 0.2])
        self.assertAlmostEqual(viol.max(), 0.6)
        self.assertTrue(is_lp_feasible(inst, [0.4, 0.6]))


class TestMipInstance(unittest.TestCase):
    def test_defaults(self):
        inst = MipInstance(objective=[1, 2, 3])
        self.assertEqual((inst.n, inst.m), (3, 0))
        npt.assert_array_equal(inst.lower, np.zeros(3))
        self.assertTrue(np.all(np.isinf(inst.upper)))

    def test_sentinel_bounds_are_infinite(self):
        inst = MipInstance(objective=[1], lower=[-INFINITE_BOUND], upper=[None])
        self.assertEqual(inst.lower[0], -np.inf)
        self.assertEqual(inst.upper[0], np.inf)
        self.assertEqual(inst.to_json_dict()["lower"], [-INFINITE_BOUND])

    def test_dimension_checks(self):
        with self.assertRaises(ValidationError):
            MipInstance(objective=[1, 1], rows=[[1, 1]], rhs=[1, 2])
        with self.assertRaises(ValidationError):
            MipInstance(objective=[1, 1], rows=[[1, 1, 1]], rhs=[1])
        with self.assertRaises(ValidationError):
            MipInstance(objective=[1, 1], n=3)

    def test_rejects_bad_values(self):
        with self.assertRaises(ValidationError):
            MipInstance(objective=[1, np.nan])
        with self.assertRaises(ValidationError):
            MipInstance(objective=[1], lower=[2], upper=[1])
        with self.assertRaises(ValidationError):
            MipInstance(objective=[1, 1], integer=[2])

    def test_arrays_are_read_only(self):
        inst = unit_box()
        with self.assertRaises(ValueError):
            inst.objective[0] = 5.0

    def test_with_bounds_copies(self):
        inst = unit_box()
        child = inst.with_bounds(np.array([1.0, 0.0]), np.array([1.0, 1.0]))
        npt.assert_array_equal(child.lower, [1.0, 0.0])
        npt.assert_array_equal(inst.lower, [0.0, 0.0])

    def test_inequality_form(self):
        inst = MipInstance(
            objective=[0, 0], rows=[[1, 1], [1, -1]], rhs=[2, 0],
            row_kind=[RowKind.LE, RowKind.EQ], lower=[0, None], upper=[3, 4],
        )
        G, h = inst.inequality_form()
        # one LE row, an EQ pair, two upper bounds, one finite lower bound
        self.assertEqual(G.shape, (6, 2))
        npt.assert_array_equal(G[1], [1, -1])
        npt.assert_array_equal(G[2], [-1, 1])
        npt.assert_array_equal(h, [2, 0, 0, 3, 4, 0])


class TestCut(unittest.TestCase):
    def test_zero_coefficients_rejected(self):
        with self.assertRaises(ValidationError):
            Cut(coeffs=[0, 0], rhs=1)

    def test_non_finite_rejected(self):
        with self.assertRaises(ValidationError):
            Cut(coeffs=[1, np.inf], rhs=1)

    def test_scaled_rejects_non_positive(self):
        with self.assertRaises(ValueError):
            Cut(coeffs=[1, 0], rhs=1).scaled(0.0)


if __name__ == "__main__":
    unittest.main()
