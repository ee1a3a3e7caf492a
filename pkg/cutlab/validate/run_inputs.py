from typing import List, Sequence, Tuple, Union

from cutlab.measures import parse_variant
from cutlab.types.instance import Cut
from cutlab.types.learning import FEATURE_NAMES, FeatureVector

DENSITY_VARIANTS = ("eff-05", "eff-10", "eff-20", "eff-40", "eff-80")


def validate_variants(names: Union[str, Sequence[str]]) -> List[str]:
    """Checks a comma-separated (or listed) set of variant names and returns them normalised."""
    if isinstance(names, str):
        names = names.split(",")
    names = [name.strip().lower() for name in names if name.strip()]
    if not names:
        raise ValueError("No variants were provided")

    seen = set()
    for name in names:
        try:
            parse_variant(name)
        except ValueError:
            raise ValueError(
                f"Unknown variant '{name}'. Valid variants are measure names or eff-XX density filters, e.g. {', '.join(DENSITY_VARIANTS)}"
            ) from None
        if name in seen:
            raise ValueError(f"Variant '{name}' was given more than once")
        seen.add(name)
    return names


def validate_seeds(seeds: Union[str, Sequence[int]]) -> Tuple[int, ...]:
    if isinstance(seeds, str):
        try:
            seeds = [int(part) for part in seeds.split(",") if part.strip()]
        except ValueError:
            raise ValueError(f"Seeds must be comma-separated integers, got '{seeds}'") from None
    seeds = tuple(seeds)
    if not seeds:
        raise ValueError("No seeds were provided")
    if len(set(seeds)) != len(seeds):
        raise ValueError(f"Seeds must be distinct, got {seeds}")
    return seeds


def parse_feature_values(text: str) -> FeatureVector:
    """Five comma-separated fractions, or name=value pairs, as a FeatureVector."""
    parts = [part.strip() for part in text.split(",") if part.strip()]
    if parts and all("=" in part for part in parts):
        values = {}
        for part in parts:
            name, _, raw = part.partition("=")
            name = name.strip()
            if name not in FEATURE_NAMES:
                raise ValueError(
                    f"Unexpected feature '{name}' provided. Valid features are: {', '.join(FEATURE_NAMES)}"
                )
            values[name] = float(raw)
        missing = [name for name in FEATURE_NAMES if name not in values]
        if missing:
            raise ValueError(f"Required features {', '.join(missing)} were not provided")
        return FeatureVector(**values)
    if len(parts) != len(FEATURE_NAMES):
        raise ValueError(f"Expected {len(FEATURE_NAMES)} feature values ({', '.join(FEATURE_NAMES)}), got {len(parts)}")
    return FeatureVector.from_array([float(part) for part in parts])


def parse_cut(text: str, n: int) -> Cut:
    """'1,-2<=2.5' as the cut x1 - 2 x2 <= 2.5 over ``n`` variables."""
    lhs, sep, rhs = text.partition("<=")
    if not sep:
        raise ValueError(f"Cut '{text}' must have the form 'a1,...,an<=b'")
    try:
        coeffs = [float(part) for part in lhs.split(",")]
        bound = float(rhs)
    except ValueError:
        raise ValueError(f"Cut '{text}' contains a non-numeric entry") from None
    if len(coeffs) != n:
        raise ValueError(f"Cut '{text}' has {len(coeffs)} coefficients, the instance has {n} variables")
    return Cut(coeffs=coeffs, rhs=bound)
