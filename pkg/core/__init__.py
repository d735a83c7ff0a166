"""Shared graph model, I/O, configuration and error types."""

__version__ = "0.1.0"

from core.brackets import CategoryBracket
from core.canonical import are_isomorphic, canonical_form, certificate
from core.cliques import cliques, euler_characteristic, fvector
from core.config import SearchBudget, Settings, get_settings, override_settings
from core.fixtures import fixture, list_fixtures
from core.graph import SimpleGraph
from core.graph_io import load_graph, parse_edge_list, parse_graph6, parse_json, serialize_graph6, serialize_json

__all__ = [
    "CategoryBracket",
    "SearchBudget",
    "Settings",
    "SimpleGraph",
    "are_isomorphic",
    "canonical_form",
    "certificate",
    "cliques",
    "euler_characteristic",
    "fixture",
    "fvector",
    "get_settings",
    "list_fixtures",
    "load_graph",
    "override_settings",
    "parse_edge_list",
    "parse_graph6",
    "parse_json",
    "serialize_graph6",
    "serialize_json",
]
