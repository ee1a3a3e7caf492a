"""
Unit tests for collecting alternative LP optima.
"""

import unittest

import numpy as np

from cutlab.errors import LpInfeasibleError
from cutlab.lp import collect_optima
from cutlab.types.instance import MipInstance


def as_set(optima):
    return {tuple(np.round(p, 9)) for p in optima.points}


class TestCollectOptima(unittest.TestCase):
    def test_edge_face_has_two_vertices(self):
        inst = MipInstance(objective=[1, 0], upper=[1, 1])
        optima = collect_optima(inst, k=3)
        self.assertEqual(as_set(optima), {(0.0, 0.0), (0.0, 1.0)})
        self.assertEqual(optima.k_requested, 3)
        self.assertAlmostEqual(optima.objective_value, 0.0)

    def test_unique_optimum(self):
        inst = MipInstance(objective=[-1, -1], upper=[1, 1])
        optima = collect_optima(inst, k=3)
        self.assertEqual(len(optima), 1)

    def test_zero_objective_on_interval(self):
        inst = MipInstance(objective=[0], upper=[1])
        self.assertEqual(as_set(collect_optima(inst, k=3)), {(0.0,), (1.0,)})

    def test_never_more_than_k(self):
        inst = MipInstance(objective=[0, 0, 0], upper=[1, 1, 1])
        self.assertLessEqual(len(collect_optima(inst, k=2)), 2)

    def test_every_point_is_optimal(self):
        inst = MipInstance(objective=[1, 1, 0], rows=[[1, 1, 1]], rhs=[2], upper=[1, 1, 1])
        optima = collect_optima(inst, k=3, seed=4)
        for p in optima.points:
            self.assertAlmostEqual(float(inst.objective @ p), optima.objective_value)

    def test_seed_is_deterministic(self):
        inst = MipInstance(objective=[0, 0], upper=[1, 1])
        a, b = collect_optima(inst, k=3, seed=9), collect_optima(inst, k=3, seed=9)
        self.assertEqual([tuple(p) for p in a.points], [tuple(p) for p in b.points])

    def test_infeasible_lp(self):
        inst = MipInstance(objective=[1], rows=[[1]], rhs=[-1], upper=[1])
        with self.assertRaises(LpInfeasibleError):
            collect_optima(inst)

    def test_k_must_be_positive(self):
        with self.assertRaises(ValueError):
            collect_optima(MipInstance(objective=[1], upper=[1]), k=0)


if __name__ == "__main__":
    unittest.main()
