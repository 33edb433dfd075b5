"""Graph products of right LCM monoids: normal forms, structure, foundation sets, scales."""

from ._kernels import BACKEND
from .graph import Graph, coconnected_components, complement, is_coconnected
from .monoids import VertexElement, VertexMonoidSpec
from .traces import Syllable, Trace, from_word, identity, multiply, right_lcm

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Graph",
    "Syllable",
    "Trace",
    "VertexElement",
    "VertexMonoidSpec",
    "coconnected_components",
    "complement",
    "from_word",
    "identity",
    "is_coconnected",
    "multiply",
    "right_lcm",
]
