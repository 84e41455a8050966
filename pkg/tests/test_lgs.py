from collections import Counter

import pytest

from lgs_toolkit.core.lgs import (
    LambdaGraphSystem, SymbolicMatrix, check_commutation, extract_sms, iota_orbit_transitions, mixed_radix,
    product_lgs, symbolic_matmul, vertex_context,
)
from lgs_toolkit.core.models import Alphabet, BuilderConfig, LgsError
from lgs_toolkit.core.shannon import follower_subset_graph, is_label_isomorphic
from lgs_toolkit.processors.builders import build_canonical_lgs, build_word_lgs


def word(*symbols):
    return Counter({tuple(symbols): 1})


def test_matmul_concatenates_and_keeps_multiplicity():
    left = SymbolicMatrix(1, 2, {(0, 0): word("a"), (0, 1): Counter({("b",): 2})})
    right = SymbolicMatrix(2, 1, {(0, 0): word("c"), (1, 0): word("c")})
    product = symbolic_matmul(left, right)
    assert product.shape == (1, 1)
    assert product[0, 0] == Counter({("a", "c"): 1, ("b", "c"): 2})
    assert left @ right == product


def test_matmul_shape_mismatch():
    with pytest.raises(ValueError):
        symbolic_matmul(SymbolicMatrix(1, 2), SymbolicMatrix(1, 2))


def test_zero_entries_are_dropped():
    matrix = SymbolicMatrix(2, 2, {(0, 1): Counter()})
    assert matrix.entries == {}
    with pytest.raises(ValueError):
        SymbolicMatrix(1, 1, {(1, 0): word("a")})


def test_map_letters_substitutes_every_symbol():
    matrix = SymbolicMatrix(1, 1, {(0, 0): Counter({("a", "b"): 1})})
    mapped = matrix.map_letters(lambda s: (s, s.upper()))
    assert mapped[0, 0] == Counter({("a", "A", "b", "B"): 1})


def test_function_matrix_and_first_difference():
    iota = SymbolicMatrix.from_function(3, 2, [0, 1, 1])
    assert iota[2, 1] == Counter({(): 1})
    other = SymbolicMatrix.from_function(3, 2, [0, 1, 0])
    assert iota.first_difference(other) == (2, 0)
    assert iota.first_difference(iota) is None


def test_to_lists_is_dense_and_sorted():
    matrix = SymbolicMatrix(1, 2, {(0, 1): Counter({("b",): 1, ("a",): 2})})
    assert matrix.to_lists() == [[[], [["a"], ["a"], ["b"]]]]


def test_canonical_golden_mean_commutes(gm):
    system = build_canonical_lgs(gm, BuilderConfig(5))
    results = check_commutation(extract_sms(system))
    assert len(results) == 4
    assert all(r.passed for r in results)


def test_sms_shapes(gm):
    system = build_canonical_lgs(gm, BuilderConfig(3))
    sms = extract_sms(system)
    assert sms.counts == [1, 2, 2, 2]
    assert sms.M[1].shape == (2, 1)
    assert sms.I[3].shape == (2, 2)
    assert sms.top_level == 3


def test_vertex_context_of_word_system(gm):
    system = build_word_lgs(gm, 3)
    index = system.vertices[3].index(("0", "1", "0"))
    assert vertex_context(system, 3, index) == {("0", "1", "0")}


def test_product_system_counts(gm):
    system = build_canonical_lgs(gm, BuilderConfig(3))
    square = product_lgs([system, system], name="gm x gm")
    assert square.counts() == [1, 4, 4, 4]
    assert all(r.passed for r in check_commutation(extract_sms(square)))
    assert square.alphabet.symbols[0] == ("0", "0")


def test_product_needs_equal_levels(gm):
    with pytest.raises(ValueError):
        product_lgs([build_word_lgs(gm, 2), build_word_lgs(gm, 3)])
    with pytest.raises(ValueError):
        product_lgs([])


def test_mixed_radix():
    assert mixed_radix([1, 2], [3, 4]) == 6
    assert mixed_radix([], []) == 0


def test_iota_orbits_recover_golden_mean_follower_graph(gm):
    system = build_canonical_lgs(gm, BuilderConfig(5))
    orbits = iota_orbit_transitions(system)
    assert len(orbits) == 2
    assert is_label_isomorphic(orbits, follower_subset_graph(gm.presentation()))


def test_iota_orbits_of_word_system_follow_one_edge_per_chain(gm):
    system = build_word_lgs(gm, 3)
    orbits = iota_orbit_transitions(system)
    for chain in range(system.vertex_count(3)):
        assert orbits.graph.out_degree(chain) == 1
    assert any(isinstance(node, tuple) and node[0] == "partial" for node in orbits.vertices)


def test_iota_orbits_of_full_shift_are_one_chain(full2):
    orbits = iota_orbit_transitions(build_canonical_lgs(full2, BuilderConfig(3)))
    assert orbits.vertices == [0]
    assert sorted(orbits.out_labels(0)) == ["0", "1"]
    assert orbits.successor(0, "0") == 0


def test_iota_orbits_need_a_level():
    system = LambdaGraphSystem(Alphabet(("0",)), [[0]], [[]], [[]])
    with pytest.raises(LgsError):
        iota_orbit_transitions(system)


def test_system_shape_check():
    with pytest.raises(ValueError):
        LambdaGraphSystem(Alphabet(("0",)), [[0], [0]], [[]], [[]])
