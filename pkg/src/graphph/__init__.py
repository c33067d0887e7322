"""Persistent homology features for graph classification."""
from .errors import ComputationError, FormatError, GraphPHError, InputError, ValidationError
from .graph import Graph, GraphDataset, graph_from_edge_list, parse_tu_dataset

__version__ = "0.1.0"
