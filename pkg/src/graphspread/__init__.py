"""Spectral (i, j)-spread of graphs with self-loops."""

from .graph import (
    DegreeProfile,
    GraphError,
    LoopedGraph,
    blowup,
    build,
    canonical_form,
    closed_complement,
    degree_profile,
    disjoint_union,
    is_isomorphic,
    underlying_simple,
)
from .spectral import Spectrum, SpreadQuery, eigenvalues, singular_values, spread, spread_ratio

__version__ = "0.1.0"
