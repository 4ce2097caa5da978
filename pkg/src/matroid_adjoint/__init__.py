"""Adjoints of matroids: type I adjoints, adjoint sequences, derived matroids."""

__version__ = "0.1.0"

from .errors import InternalConsistencyError, NotAMatroidError, Refutation, ResourceError
from .matroid import (BasisMatroid, Flat, LinearMatroid, Matroid, components, direct_sum,
                      from_bases, from_columns, from_matrix, is_connected, simplify)
from .fixtures import fixture

__all__ = [
    "BasisMatroid", "Flat", "InternalConsistencyError", "LinearMatroid", "Matroid",
    "NotAMatroidError", "Refutation", "ResourceError", "components", "direct_sum", "fixture",
    "from_bases", "from_columns", "from_matrix", "is_connected", "simplify",
]
