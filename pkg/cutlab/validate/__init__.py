from cutlab.validate.run_inputs import parse_cut, parse_feature_values, validate_seeds, validate_variants

__all__ = ["parse_cut", "parse_feature_values", "validate_seeds", "validate_variants"]
