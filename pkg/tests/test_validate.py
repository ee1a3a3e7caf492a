"""
Unit tests for command-line input validation.
"""

import unittest

import numpy.testing as npt

from cutlab.validate import parse_cut, parse_feature_values, validate_seeds, validate_variants


class TestValidateVariants(unittest.TestCase):
    def test_comma_separated(self):
        self.assertEqual(validate_variants("eff, A-DCD ,eff-20"), ["eff", "a-dcd", "eff-20"])

    def test_sequence(self):
        self.assertEqual(validate_variants(["mineff", "dcd"]), ["mineff", "dcd"])

    def test_unknown_variant(self):
        with self.assertRaises(ValueError) as ctx:
            validate_variants("eff,steepest")
        self.assertIn("steepest", str(ctx.exception))

    def test_duplicate_variant(self):
        with self.assertRaises(ValueError):
            validate_variants("eff,EFF")

    def test_empty(self):
        with self.assertRaises(ValueError):
            validate_variants(" , ")


class TestValidateSeeds(unittest.TestCase):
    def test_parses_string(self):
        self.assertEqual(validate_seeds("1,2, 3"), (1, 2, 3))

    def test_non_integer(self):
        with self.assertRaises(ValueError):
            validate_seeds("1,x")

    def test_repeated(self):
        with self.assertRaises(ValueError):
            validate_seeds([4, 4])

    def test_empty(self):
        with self.assertRaises(ValueError):
            validate_seeds("")


class TestParseFeatureValues(unittest.TestCase):
    def test_positional(self):
        fv = parse_feature_values("0.1,0.2,0.3,0.4,0.5")
        self.assertAlmostEqual(fv.dual_degeneracy, 0.1)
        self.assertAlmostEqual(fv.density, 0.5)

    def test_named(self):
        fv = parse_feature_values(
            "density=0.5,thinness=0.4,fractionality=0.3,primal_degeneracy=0.2,dual_degeneracy=0.1"
        )
        self.assertEqual(fv, parse_feature_values("0.1,0.2,0.3,0.4,0.5"))

    def test_unknown_name(self):
        with self.assertRaises(ValueError):
            parse_feature_values("dual_degeneracy=0.1,sparsity=0.2")

    def test_missing_name(self):
        with self.assertRaises(ValueError):
            parse_feature_values("dual_degeneracy=0.1")

    def test_wrong_count(self):
        with self.assertRaises(ValueError):
            parse_feature_values("0.1,0.2")


class TestParseCut(unittest.TestCase):
    def test_parses(self):
        cut = parse_cut("1,-2<=2.5", 2)
        npt.assert_array_equal(cut.coeffs, [1.0, -2.0])
        self.assertEqual(cut.rhs, 2.5)

    def test_missing_operator(self):
        with self.assertRaises(ValueError):
            parse_cut("1,2", 2)

    def test_non_numeric(self):
        with self.assertRaises(ValueError):
            parse_cut("1,a<=2", 2)

    def test_dimension(self):
        with self.assertRaises(ValueError):
            parse_cut("1,2,3<=1", 2)


if __name__ == "__main__":
    unittest.main()
