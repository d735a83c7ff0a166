from category.bounds import cat_bracket, cri_bracket, gcat_bracket, strong_category_bracket, tcat_bracket
from category.covers import Cover, CoverMode, Coverage, normalize_cover, verify_cover
from category.factory import EvaluatorMode, create_evaluator
from category.gcat import gcat_exact

__all__ = [
    "Cover",
    "CoverMode",
    "Coverage",
    "EvaluatorMode",
    "cat_bracket",
    "create_evaluator",
    "cri_bracket",
    "gcat_bracket",
    "gcat_exact",
    "normalize_cover",
    "strong_category_bracket",
    "tcat_bracket",
    "verify_cover",
]
