"""Rainbow cycles in edge-colored graphs whose classes are edges, 2-matchings, triangles or stars."""

from .graph_core import (
    ClassCensus,
    ColorClass,
    ECGParseError,
    EdgeColoredGraph,
    Kind,
    census,
    classify_class,
    parse,
    reduce_class,
    reduce_graph,
    serialize,
    validate,
)
from .rainbow_search import (
    GirthResult,
    RainbowCycle,
    SimpleGraph,
    brute_force_rainbow_girth,
    girth,
    rainbow_girth_exact,
    representative_subgraph,
    verify_rainbow,
)

__version__ = "0.1.0"
