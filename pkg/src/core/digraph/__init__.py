"""Connection sets, colored digraphs and Cayley digraphs."""

from src.core.digraph.connection_set import ConnectionSet
from src.core.digraph.digraph import ColoredDigraph, is_automorphism, is_isomorphism, normalise_colors
from src.core.digraph.cayley import cayley

__all__ = [
    "ConnectionSet",
    "ColoredDigraph",
    "cayley",
    "is_automorphism",
    "is_isomorphism",
    "normalise_colors",
]
