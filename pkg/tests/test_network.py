import networkx as nx
import pytest

from app.config import settings
from app.exceptions import ScenarioValidationError, SizeGuardError
from app.models.network import (
    NetworkGraph,
    WirelineGraph,
    longest_simple_path_length,
    validate_itinerary,
)
from app.models.packet import Packet
from app.models.state import RoundState
from app.exceptions import InvariantViolation


def triangle() -> NetworkGraph:
    return NetworkGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])


class TestNetworkGraph:
    def test_edges_are_normalized(self):
        graph = NetworkGraph.from_edges(3, [(1, 0), (2, 1)])
        assert graph.edges == frozenset({(0, 1), (1, 2)})
        assert graph.adjacency == ((1,), (0, 2), (1,))
        assert graph.directed_links == ((0, 1), (1, 0), (1, 2), (2, 1))

    @pytest.mark.parametrize(
        "edges",
        [[(0, 0)], [(0, 1), (1, 0)], [(0, 3)], [(0, 1, 2)]],
        ids=["self-loop", "duplicate", "unknown-node", "three-endpoints"],
    )
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(ScenarioValidationError):
            NetworkGraph.from_edges(3, edges)

    def test_max_degree_and_networkx(self, star):
        assert star.max_degree == 2
        assert nx.is_isomorphic(star.to_networkx(), nx.star_graph(2))

    def test_isolated_nodes_are_kept(self):
        graph = NetworkGraph.from_edges(4, [(0, 1)])
        assert graph.adjacency[3] == ()
        assert graph.to_networkx().number_of_nodes() == 4


class TestItineraries:
    def test_triangle_path(self):
        assert validate_itinerary(triangle(), [0, 1, 2])

    def test_revisits_allowed(self):
        assert validate_itinerary(NetworkGraph.from_edges(2, [(0, 1)]), [0, 1, 0])

    def test_missing_edge(self):
        assert not validate_itinerary(NetworkGraph.from_edges(2, [(0, 1)]), [0, 2])

    def test_empty_path(self):
        assert not validate_itinerary(triangle(), [])


class TestLongestSimplePath:
    def test_single_edge(self):
        assert longest_simple_path_length(NetworkGraph.from_edges(2, [(0, 1)])) == 1

    def test_triangle(self):
        assert longest_simple_path_length(triangle()) == 2

    def test_path_of_four(self, path4):
        assert longest_simple_path_length(path4) == 3

    def test_star_is_not_hamiltonian(self):
        graph = NetworkGraph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
        assert longest_simple_path_length(graph) == 2

    def test_disconnected_takes_best_component(self):
        graph = NetworkGraph.from_edges(6, [(0, 1), (2, 3), (3, 4), (4, 5)])
        assert longest_simple_path_length(graph) == 3

    def test_size_guard(self):
        n = settings.EXHAUSTIVE_PATH_NODE_LIMIT + 1
        graph = NetworkGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
        with pytest.raises(SizeGuardError):
            longest_simple_path_length(graph)
        assert longest_simple_path_length(graph, exhaustive=False) == n - 1


class TestWirelineGraph:
    def test_links_sorted_and_indexed(self):
        graph = WirelineGraph.from_links(3, [(2, 0), (0, 1), (1, 2)])
        assert graph.links == ((0, 1), (1, 2), (2, 0))
        assert graph.path_links([0, 1, 2, 0]) == [0, 1, 2]
        assert graph.out_links(1) == [(1, 2)]

    def test_missing_link(self):
        graph = WirelineGraph.from_links(3, [(0, 1)])
        with pytest.raises(ScenarioValidationError):
            graph.path_links([1, 0])

    def test_duplicate_link(self):
        with pytest.raises(ScenarioValidationError):
            WirelineGraph.from_links(2, [(0, 1), (0, 1)])


class TestPacketAndState:
    def test_packet_progress(self):
        packet = Packet(id=0, injection_round=3, itinerary=(0, 1, 2))
        assert not packet.eligible(3)
        assert packet.eligible(4)
        packet.advance(4)
        assert packet.current_node == 1
        assert packet.arrived_at == 4
        assert packet.remaining_hops == 1
        packet.advance(6)
        assert packet.delivered
        assert packet.delivery_round == 6
        with pytest.raises(ValueError):
            packet.advance(7)

    def test_packet_cannot_leave_in_arrival_round(self):
        packet = Packet(id=0, injection_round=2, itinerary=(0, 1))
        with pytest.raises(ValueError):
            packet.advance(2)

    def test_invariants_catch_duplicates(self):
        state = RoundState.empty(2)
        packet = Packet(id=0, injection_round=0, itinerary=(0, 1))
        state.packets[0] = packet
        state.injected = 1
        state.enqueue(0, packet)
        state.check_invariants()
        state.enqueue(0, packet)
        with pytest.raises(InvariantViolation):
            state.check_invariants()

    def test_invariants_catch_lost_packets(self):
        state = RoundState.empty(2)
        state.injected = 1
        with pytest.raises(InvariantViolation):
            state.check_invariants()
