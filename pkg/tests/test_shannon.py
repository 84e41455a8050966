import networkx as nx
import pytest

from lgs_toolkit.core.models import INADMISSIBLE, ShannonGraphError, SubordinationError
from lgs_toolkit.core.oracles import MonoidOracle
from lgs_toolkit.core.shannon import (
    ShannonGraph, check_right_resolving, depth_n_equivalent, eventual_image, follower_partition,
    follower_subset_graph, forward_context, is_forward_separated, is_label_isomorphic, pair_graph,
    subordinate_to_depth, tau_sigma,
)
from lgs_toolkit.core.shifts import dyck2_table, enumerate_words, gamma_table


def fischer_gm():
    return ShannonGraph.from_edges([("A", "A", "0"), ("A", "B", "1"), ("B", "A", "0")])


def test_right_resolving_cover_passes():
    assert check_right_resolving(fischer_gm().graph) == []
    assert check_right_resolving(nx.MultiDiGraph()) == []


def test_two_loops_with_one_label_violate():
    graph = nx.MultiDiGraph()
    graph.add_edge("v", "v", label="0")
    graph.add_edge("v", "v", label="0")
    assert check_right_resolving(graph) == [("v", "0")]
    with pytest.raises(ShannonGraphError) as info:
        ShannonGraph(graph)
    assert info.value.vertices == ["v"]


def test_tau_sigma_on_words():
    context = frozenset({("0", "0"), ("0", "1"), ("1", "0")})
    assert tau_sigma(context, "1") == {("0",)}
    assert tau_sigma(context, "0") == {("0",), ("1",)}


def test_tau_sigma_on_vertices_and_oracles():
    graph = fischer_gm()
    assert tau_sigma({"A", "B"}, "1", graph=graph) == {"B"}
    assert tau_sigma({"B"}, "1", graph=graph) == frozenset()
    oracle = MonoidOracle(dyck2_table())
    assert tau_sigma((("a-", "b-"), False), "a+", oracle=oracle) is INADMISSIBLE


def test_eventual_image_drops_transient_chain():
    graph = ShannonGraph.from_edges([("a", "b", "0"), ("b", "c", "0"), ("c", "c", "0")])
    assert eventual_image(graph).vertices == ["c"]


def test_eventual_image_keeps_strongly_connected_graph():
    graph = fischer_gm()
    assert sorted(eventual_image(graph).vertices) == ["A", "B"]


def test_eventual_image_needs_outgoing_edges():
    graph = ShannonGraph.from_edges([("a", "b", "0")])
    with pytest.raises(ShannonGraphError) as info:
        eventual_image(graph)
    assert info.value.vertices == ["b"]


def test_golden_mean_subset_graph():
    subsets = follower_subset_graph(fischer_gm())
    assert len(subsets) == 2
    assert is_forward_separated(subsets)
    assert eventual_image(subsets).vertices == subsets.vertices


def test_full_shift_subset_graph_has_one_state():
    graph = ShannonGraph.from_edges([(0, 0, "0"), (0, 0, "1")])
    assert len(follower_subset_graph(graph)) == 1


def test_even_shift_subset_graph_matches_word_followers(even):
    subsets = follower_subset_graph(even.presentation())
    assert len(subsets) == 3
    words = enumerate_words(even, 4)
    union = set()
    for vertex in subsets.vertices:
        union |= forward_context(subsets, vertex, 4)
    assert union == words


def test_follower_partition_merges_equal_contexts():
    graph = ShannonGraph.from_edges([("a", "b", "0"), ("b", "a", "0")])
    blocks = follower_partition(graph)
    assert blocks["a"] == blocks["b"]
    assert not is_forward_separated(graph)


def test_label_isomorphism_ignores_vertex_names():
    renamed = ShannonGraph.from_edges([(1, 1, "0"), (1, 2, "1"), (2, 1, "0")])
    assert is_label_isomorphic(fischer_gm(), renamed)
    relabeled = ShannonGraph.from_edges([(1, 1, "1"), (1, 2, "0"), (2, 1, "1")])
    assert not is_label_isomorphic(fischer_gm(), relabeled)


def test_depth_equivalence_on_dyck_stacks():
    oracle = MonoidOracle(dyck2_table())
    a = (("a-",), False)
    b = (("b-",), False)
    assert depth_n_equivalent(oracle, a, a, 4)
    assert not depth_n_equivalent(oracle, a, b, 1)
    deep_a = (("a-", "a-", "b-", "a-", "b-"), False)
    deep_b = (("b-", "a-", "b-", "a-", "b-"), False)
    assert depth_n_equivalent(oracle, deep_a, deep_b, 3)
    assert not depth_n_equivalent(oracle, deep_a, deep_b, 5)


def test_gamma_opener_absorbs_both_closers():
    dyck = MonoidOracle(dyck2_table())
    gamma = MonoidOracle(gamma_table(1))
    assert subordinate_to_depth(dyck, (("a-",), False), gamma, (("g1-",), False), 2)
    assert not subordinate_to_depth(dyck, (("a-",), False), dyck, (("b-",), False), 1)
    assert subordinate_to_depth(dyck, (("a-",), False), dyck, (("a-",), False), 3)


def test_pair_graph_of_golden_mean_with_itself():
    graph = fischer_gm()
    pairs = pair_graph(graph, graph)
    assert ("A", "A") in pairs and ("B", "B") in pairs
    assert ("B", "A") in pairs
    assert ("A", "B") not in pairs


def test_pair_graph_of_zero_loop():
    zeros = ShannonGraph.from_edges([("z", "z", "0")])
    pairs = pair_graph(zeros, fischer_gm())
    assert sorted(pairs.vertices) == [("z", "A"), ("z", "B")]
    assert pairs.successor(("z", "B"), "0") == ("z", "A")


def test_pair_graph_reports_separating_word():
    ones = ShannonGraph.from_edges([("v", "v", "1")])
    with pytest.raises(SubordinationError) as info:
        pair_graph(ones, fischer_gm())
    assert info.value.witness == ("1", "1")


def test_forward_context_from_graph_vertex():
    graph = fischer_gm()
    assert forward_context(graph, "B", 2) == {("0", "0"), ("0", "1")}
    assert forward_context(graph, ["A", "B"], 1) == {("0",), ("1",)}
