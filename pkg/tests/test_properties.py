"""Randomized invariants, 200 seeded cases per property."""

import random
from collections import Counter

import pytest

from lgs_toolkit.core.lgs import SymbolicMatrix
from lgs_toolkit.core.models import INADMISSIBLE, ZERO
from lgs_toolkit.core.oracles import MonoidOracle
from lgs_toolkit.core.shannon import ShannonGraph, depth_n_equivalent, eventual_image
from lgs_toolkit.core.shifts import dyck2_table, gamma_table, is_admissible, monoid_reduce, product_spec
from lgs_toolkit.utils.examples import (
    PHI_MINUS, PHI_PLUS, dyck2, dyck_embedding, even_shift, full_shift, gamma_shift, golden_mean,
)

pytestmark = pytest.mark.property

CASES = 200


def random_walk(spec, rng, length):
    """Admissible word read off a random path of the follower oracle."""
    oracle = spec.oracle
    state = oracle.root_state()
    word = []
    for _ in range(length):
        options = list(oracle.successors(state))
        if not options:
            break
        symbol, state = rng.choice(options)
        word.append(symbol)
    return tuple(word)


def random_matrix(rng, rows, cols, letters=("x", "y")):
    entries = {}
    for i in range(rows):
        for j in range(cols):
            if rng.random() < 0.5:
                continue
            cell = Counter()
            for _ in range(rng.randint(1, 2)):
                word = tuple(rng.choice(letters) for _ in range(rng.randint(0, 2)))
                cell[word] += rng.randint(1, 2)
            entries[(i, j)] = cell
    return SymbolicMatrix(rows, cols, entries)


def test_reduction_is_idempotent_and_multiplicative():
    table = gamma_table(1)
    letters = list(table.alphabet)
    for seed in range(CASES):
        rng = random.Random(seed)
        first = tuple(rng.choice(letters) for _ in range(rng.randint(0, 8)))
        second = tuple(rng.choice(letters) for _ in range(rng.randint(0, 8)))
        reduced = monoid_reduce(table, first)
        if reduced is not ZERO:
            assert monoid_reduce(table, reduced.symbols) == reduced, seed
        whole = monoid_reduce(table, first + second)
        other = monoid_reduce(table, second)
        if reduced is ZERO or other is ZERO:
            assert whole is ZERO, seed
        else:
            assert monoid_reduce(table, reduced.symbols + other.symbols) == whole, seed


FACTOR_CLOSED = {
    "golden_mean": golden_mean,
    "even": even_shift,
    "dyck": dyck2,
    "gamma": lambda: gamma_shift(2),
    "dyck_times_full": lambda: product_spec([dyck2(), full_shift(2)]),
    "openers_embedding": lambda: dyck_embedding([None, PHI_MINUS]),
    "closers_embedding": lambda: dyck_embedding([None, PHI_PLUS]),
}


@pytest.mark.parametrize("name", sorted(FACTOR_CLOSED))
def test_factors_of_admissible_words_are_admissible(name):
    spec = FACTOR_CLOSED[name]()
    for seed in range(CASES):
        rng = random.Random(seed)
        word = random_walk(spec, rng, rng.randint(1, 10))
        assert is_admissible(spec, word), seed
        i = rng.randint(0, len(word))
        j = rng.randint(i, len(word))
        assert is_admissible(spec, word[i:j]), (seed, word[i:j])


def test_eventual_image_is_idempotent():
    labels = ("0", "1", "2")
    for seed in range(CASES):
        rng = random.Random(seed)
        size = rng.randint(1, 6)
        edges = []
        for v in range(size):
            used = rng.sample(labels, rng.randint(1, len(labels)))
            edges.extend((v, rng.randrange(size), label) for label in used)
        graph = ShannonGraph.from_edges(edges, vertices=range(size))
        image = eventual_image(graph)
        assert image.vertices, seed
        again = eventual_image(image)
        assert set(again.vertices) == set(image.vertices), seed
        assert len(again.edges) == len(image.edges), seed


def test_depth_equivalence_refines_with_depth():
    oracle = MonoidOracle(dyck2_table())
    openers = ("a-", "b-")
    for seed in range(CASES):
        rng = random.Random(seed)
        states = [
            (tuple(rng.choice(openers) for _ in range(rng.randint(0, 5))), False)
            for _ in range(2)
        ]
        verdicts = [depth_n_equivalent(oracle, states[0], states[1], n) for n in range(7)]
        assert verdicts[0], seed
        # once two states separate they stay separated at every greater depth
        assert verdicts == sorted(verdicts, reverse=True), (seed, states)
        if states[0] == states[1]:
            assert all(verdicts), seed


def test_readable_words_stay_readable_after_truncation():
    oracle = MonoidOracle(dyck2_table())
    for seed in range(CASES):
        rng = random.Random(seed)
        word = random_walk(dyck2(), rng, rng.randint(0, 8))
        state = oracle.read(oracle.root_state(), word)
        assert state is not INADMISSIBLE, seed
        n = rng.randint(0, 4)
        truncated = oracle.state_for_key(oracle.level_key(state, n), n)
        assert depth_n_equivalent(oracle, state, truncated, n), seed


def test_symbolic_product_is_associative():
    for seed in range(CASES):
        rng = random.Random(seed)
        a, b, c, d = (rng.randint(1, 3) for _ in range(4))
        left, middle, right = random_matrix(rng, a, b), random_matrix(rng, b, c), random_matrix(rng, c, d)
        assert (left @ middle) @ right == left @ (middle @ right), seed


def test_letter_substitution_distributes_over_products():
    def spell(symbol):
        return (symbol, symbol.upper())

    for seed in range(CASES):
        rng = random.Random(seed)
        a, b, c = (rng.randint(1, 3) for _ in range(3))
        left, right = random_matrix(rng, a, b), random_matrix(rng, b, c)
        assert (left @ right).map_letters(spell) == left.map_letters(spell) @ right.map_letters(spell), seed
