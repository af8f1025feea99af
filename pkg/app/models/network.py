from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from app.config import settings
from app.exceptions import ScenarioValidationError, SizeGuardError
from app.utils.logger import setup_logger

logger = setup_logger(__name__)

Link = tuple[int, int]


@dataclass(frozen=True)
class NetworkGraph:
    """Radio network: a simple undirected graph on nodes 0..n-1.

    Each undirected edge stands for the two directed links u->w and w->u.
    Connectivity is not required; itineraries are checked one packet at a time.
    """

    node_count: int
    edges: frozenset[Link]

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[Sequence[int]]) -> "NetworkGraph":
        """Build a graph from an edge list, rejecting loops, duplicates and unknown names."""
        if node_count < 1:
            raise ScenarioValidationError(f"node_count must be positive, got {node_count}")

        normalized: set[Link] = set()
        for edge in edges:
            if len(edge) != 2:
                raise ScenarioValidationError(f"edge {list(edge)} must have exactly two endpoints")
            u, w = int(edge[0]), int(edge[1])
            if u == w:
                raise ScenarioValidationError(f"self-loop at node {u}")
            for node in (u, w):
                if not 0 <= node < node_count:
                    raise ScenarioValidationError(f"node {node} outside [0, {node_count - 1}]")
            key = (min(u, w), max(u, w))
            if key in normalized:
                raise ScenarioValidationError(f"duplicate edge {key}")
            normalized.add(key)

        return cls(node_count=node_count, edges=frozenset(normalized))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        neighbors: list[set[int]] = [set() for _ in range(self.node_count)]
        for u, w in self.edges:
            neighbors[u].add(w)
            neighbors[w].add(u)
        return tuple(tuple(sorted(ns)) for ns in neighbors)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(ns) for ns in self.adjacency)

    def neighbors(self, node: int) -> tuple[int, ...]:
        return self.adjacency[node]

    def has_edge(self, u: int, w: int) -> bool:
        return (min(u, w), max(u, w)) in self.edges

    @cached_property
    def directed_links(self) -> tuple[Link, ...]:
        """Both orientations of every edge, sorted."""
        return tuple(sorted([(u, w) for u, w in self.edges] + [(w, u) for u, w in self.edges]))

    @property
    def max_degree(self) -> int:
        return max((len(ns) for ns in self.adjacency), default=0)

    def sorted_edges(self) -> list[Link]:
        return sorted(self.edges)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.node_count))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class WirelineGraph:
    """Directed wireline network; only used as input to the equivalent-network transform."""

    node_count: int
    links: tuple[Link, ...]

    @classmethod
    def from_links(cls, node_count: int, links: Iterable[Sequence[int]]) -> "WirelineGraph":
        if node_count < 1:
            raise ScenarioValidationError(f"node_count must be positive, got {node_count}")

        seen: set[Link] = set()
        for link in links:
            if len(link) != 2:
                raise ScenarioValidationError(f"link {list(link)} must have exactly two endpoints")
            u, w = int(link[0]), int(link[1])
            if u == w:
                raise ScenarioValidationError(f"self-loop link at node {u}")
            for node in (u, w):
                if not 0 <= node < node_count:
                    raise ScenarioValidationError(f"node {node} outside [0, {node_count - 1}]")
            if (u, w) in seen:
                raise ScenarioValidationError(f"duplicate link {(u, w)}")
            seen.add((u, w))

        return cls(node_count=node_count, links=tuple(sorted(seen)))

    @cached_property
    def link_index(self) -> dict[Link, int]:
        return {link: i for i, link in enumerate(self.links)}

    def out_links(self, node: int) -> list[Link]:
        return [link for link in self.links if link[0] == node]

    def path_links(self, path: Sequence[int]) -> list[int]:
        """Link indices traversed by a node path; raises if a hop is not a link."""
        indices = []
        for u, w in zip(path, path[1:]):
            if (u, w) not in self.link_index:
                raise ScenarioValidationError(f"path {list(path)} uses missing link {(u, w)}")
            indices.append(self.link_index[(u, w)])
        return indices

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.node_count))
        graph.add_edges_from(self.links)
        return graph


def validate_itinerary(graph: NetworkGraph, path: Sequence[int]) -> bool:
    """True iff every consecutive pair of the path is an edge of the graph.

    Revisiting nodes is allowed; the longest-simple-path parameter is a separate notion.
    """
    if not path:
        return False
    if any(not 0 <= node < graph.node_count for node in path):
        return False
    return all(graph.has_edge(u, w) for u, w in zip(path, path[1:]))


def longest_simple_path_length(graph: NetworkGraph, exhaustive: bool = True) -> int:
    """Number of edges on the longest simple path of the graph.

    Each undirected edge is read as two directed links, so the directed and undirected
    answers coincide. With ``exhaustive=False`` the n-1 upper bound is returned.
    """
    if not exhaustive:
        return graph.node_count - 1

    limit = settings.EXHAUSTIVE_PATH_NODE_LIMIT
    if graph.node_count > limit:
        raise SizeGuardError(
            f"exhaustive longest-path search refused for {graph.node_count} nodes "
            f"(limit {limit}); request the n-1 upper bound instead"
        )

    best = 0
    for component in nx.connected_components(graph.to_networkx()):
        ceiling = len(component) - 1
        if ceiling <= best:
            continue
        best = max(best, _longest_in_component(graph, sorted(component), ceiling))

    logger.debug(f"Longest simple path on {graph.node_count} nodes: {best}")
    return best


def _longest_in_component(graph: NetworkGraph, nodes: list[int], ceiling: int) -> int:
    best = 0

    # Depth-first over simple paths, stopping once a Hamiltonian path is seen.
    for start in nodes:
        stack: list[tuple[int, int, frozenset[int]]] = [(start, 0, frozenset([start]))]
        while stack:
            node, length, visited = stack.pop()
            if length > best:
                best = length
                if best == ceiling:
                    return best
            for neighbor in graph.adjacency[node]:
                if neighbor not in visited:
                    stack.append((neighbor, length + 1, visited | {neighbor}))
    return best
