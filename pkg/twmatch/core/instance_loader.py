"""Instance file loading utilities."""

import logging
from pathlib import Path
from typing import Optional, Tuple

from .decomposition import NiceDecomposition, TreeDecomposition, make_nice_deferred, min_fill_decompose, read_td
from .errors import DecompositionError
from .graph import Graph, parse_graph


class InstanceLoader:
    """Loads a graph file and, optionally, a supplied .td decomposition."""

    def __init__(self, graph_path: str, td_path: Optional[str] = None):
        self.graph_path = Path(graph_path)
        self.td_path = Path(td_path) if td_path else None
        self.graph: Optional[Graph] = None
        self.decomposition: Optional[TreeDecomposition] = None
        self.logger = logging.getLogger(__name__)

    def load(self) -> Graph:
        """
        Read and parse the graph file.

        Raises:
            FileNotFoundError: If the graph file does not exist
            GraphFormatError: If the file is malformed
        """
        if not self.graph_path.is_file():
            raise FileNotFoundError(f"Graph file not found: {self.graph_path}")
        self.graph = parse_graph(self.graph_path.read_text())
        self.logger.info(f"Loaded {self.graph_path.name}: n={self.graph.n}, m={self.graph.m}")
        return self.graph

    def tree_decomposition(self) -> Tuple[TreeDecomposition, str]:
        """
        The supplied decomposition, or a min-fill one when none was given.

        Returns:
            Tuple of (decomposition, source) with source "supplied" or "min-fill"
        """
        graph = self.graph if self.graph is not None else self.load()
        if self.td_path is None:
            self.decomposition = min_fill_decompose(graph)
            self.logger.info(f"min-fill decomposition of width {self.decomposition.width}")
            return self.decomposition, "min-fill"

        if not self.td_path.is_file():
            raise FileNotFoundError(f"Decomposition file not found: {self.td_path}")
        header = next(
            (line.split() for line in self.td_path.read_text().splitlines() if line.startswith("s td")),
            None,
        )
        if header is not None and len(header) == 5 and header[4].isdigit() and int(header[4]) != graph.n:
            raise DecompositionError(f"{self.td_path.name} is for {header[4]} vertices, graph has {graph.n}")
        self.decomposition = read_td(self.td_path.read_text())
        self.logger.info(f"Loaded {self.td_path.name}: {len(self.decomposition.bags)} bags, width {self.decomposition.width}")
        return self.decomposition, "supplied"

    def nice_decomposition(self) -> Tuple[NiceDecomposition, TreeDecomposition, str]:
        """Nice form of tree_decomposition(); raises DecompositionError if it is invalid."""
        td, source = self.tree_decomposition()
        return make_nice_deferred(self.graph, td), td, source
