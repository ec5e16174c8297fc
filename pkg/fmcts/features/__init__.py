"""
Features: representation, generation, compilation, combination and files.
"""

from .feature import (
    EMPTY,
    ENEMY,
    FRIEND,
    OFF,
    Element,
    ElementKind,
    Feature,
    FeatureSet,
    InconsistentFeatureError,
    Requirement,
    item_index,
    owned_by,
)
from .instances import (
    CompiledFeatureSet,
    FeatureInstance,
    active_instances,
    compile_features,
    feature_vector,
    feature_vectors,
)
from .atomic import generate_atomic_features
from .combine import INCOMPATIBLE, Incompatible, combine_instances
from .handcrafted import load_handcrafted_yavalath
from .naive import naive_active_instances, naive_feature_vector
from .render import render_feature
from .serialization import FeatureFileError, parse_feature_set, read_feature_file, serialize, write_feature_file

__all__ = [
    "ElementKind",
    "Element",
    "OFF",
    "EMPTY",
    "FRIEND",
    "ENEMY",
    "owned_by",
    "item_index",
    "Requirement",
    "Feature",
    "FeatureSet",
    "InconsistentFeatureError",
    "FeatureInstance",
    "CompiledFeatureSet",
    "compile_features",
    "active_instances",
    "feature_vector",
    "feature_vectors",
    "generate_atomic_features",
    "combine_instances",
    "Incompatible",
    "INCOMPATIBLE",
    "naive_active_instances",
    "naive_feature_vector",
    "render_feature",
    "load_handcrafted_yavalath",
    "serialize",
    "parse_feature_set",
    "read_feature_file",
    "write_feature_file",
    "FeatureFileError",
]
