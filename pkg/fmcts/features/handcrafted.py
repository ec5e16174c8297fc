"""
Handcrafted Yavalath features: immediate wins weighted up, immediate losses down.
"""

from importlib import resources

import numpy as np

from .feature import FeatureSet
from .serialization import parse_feature_set

YAVALATH_HANDCRAFTED = "yavalath_handcrafted.feat"


def load_handcrafted_yavalath() -> tuple[FeatureSet, np.ndarray]:
    """A four-in-a-row feature (+3000) and two three-in-a-row features (-1000)."""
    text = resources.files("fmcts.features").joinpath("data", YAVALATH_HANDCRAFTED).read_text(encoding="utf-8")
    return parse_feature_set(text)
