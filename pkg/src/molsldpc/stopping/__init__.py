"""Subrectangles, pattern catalog and stopping-set enumeration."""
from .enumerate import (
    StoppingSetReport,
    brute_force_histogram,
    enumerate_stopping_sets,
    is_stopping_set,
    low_weight_codewords,
    maximal_stopping_subset,
)
from .patterns import LABELLED_PATTERNS, classify, occurring_classes, regenerate_catalog
from .structural import Size8Witness, classify_size8, structural_search_size8
from .subrect import (
    CorrelatingFamily,
    Subrectangle,
    columns_to_family,
    duplicate_to_full,
    family_columns,
    family_to_configuration,
    is_full,
    polygon_check,
    polygon_form,
    six_polygon,
    translate,
)
