#!/usr/bin/env python3
"""
λ-graph system toolkit - Shannon graphs

Right-resolving labeled graphs stored as ``networkx.MultiDiGraph`` objects
with a ``label`` edge attribute, together with the transition rules, the
eventual image, the follower-subset construction, depth-bounded
equivalence/subordination of follower states and pair graphs.
"""

import logging
from collections import deque
from collections.abc import Hashable
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import categorical_multiedge_match

from .models import (
    INADMISSIBLE, Alphabet, ShannonGraphError, SubordinationError, Symbol, Word, symbol_name,
)

log = logging.getLogger(__name__)


def check_right_resolving(graph) -> List[Tuple[Any, Symbol]]:
    """Return the (vertex, label) pairs with two or more outgoing edges."""
    if isinstance(graph, ShannonGraph):
        graph = graph.graph
    violations = []
    for vertex in graph.nodes:
        seen = set()
        reported = set()
        for _, _, label in graph.out_edges(vertex, data="label"):
            if label in seen and label not in reported:
                violations.append((vertex, label))
                reported.add(label)
            seen.add(label)
    return violations


class ShannonGraph:
    """A 1-right-resolving labeled graph.

    Vertex order is the insertion order of the underlying graph and is used
    for every deterministic iteration (exports, subset construction).
    """

    def __init__(self, graph: nx.MultiDiGraph, alphabet: Optional[Alphabet] = None):
        violations = check_right_resolving(graph)
        if violations:
            raise ShannonGraphError(
                f"graph is not right-resolving at {violations[:5]}",
                [vertex for vertex, _ in violations],
            )
        self.graph = graph
        if alphabet is None:
            labels = []
            for _, _, label in graph.edges(data="label"):
                if label not in labels:
                    labels.append(label)
            alphabet = Alphabet(tuple(sorted(labels, key=symbol_name))) if labels else None
        self.alphabet = alphabet
        self._delta: Dict[Hashable, Dict[Symbol, Hashable]] = {v: {} for v in graph.nodes}
        for source, target, label in graph.edges(data="label"):
            self._delta[source][label] = target

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[Hashable, Hashable, Symbol]],
                   vertices: Sequence[Hashable] = (),
                   alphabet: Optional[Alphabet] = None) -> "ShannonGraph":
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(vertices)
        for source, target, label in edges:
            graph.add_edge(source, target, label=label)
        return cls(graph, alphabet)

    @property
    def vertices(self) -> List[Hashable]:
        return list(self.graph.nodes)

    @property
    def edges(self) -> List[Tuple[Hashable, Hashable, Symbol]]:
        return [(u, v, label) for u, v, label in self.graph.edges(data="label")]

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    def __contains__(self, vertex: object) -> bool:
        return vertex in self._delta

    def successor(self, vertex: Hashable, symbol: Symbol) -> Optional[Hashable]:
        return self._delta[vertex].get(symbol)

    def transitions(self, vertex: Hashable) -> Dict[Symbol, Hashable]:
        return self._delta[vertex]

    def out_labels(self, vertex: Hashable) -> List[Symbol]:
        labels = list(self._delta[vertex])
        if self.alphabet is not None:
            labels.sort(key=self.alphabet.index)
        return labels

    def read(self, vertex: Hashable, word: Word) -> Optional[Hashable]:
        for symbol in word:
            if vertex is None:
                return None
            vertex = self._delta[vertex].get(symbol)
        return vertex

    def is_presenting(self) -> bool:
        """Every vertex has an incoming and an outgoing edge."""
        return all(
            self.graph.in_degree(v) > 0 and self.graph.out_degree(v) > 0
            for v in self.graph.nodes
        )

    def subgraph(self, vertices: Iterable[Hashable]) -> "ShannonGraph":
        keep = set(vertices)
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(v for v in self.graph.nodes if v in keep)
        for source, target, label in self.graph.edges(data="label"):
            if source in keep and target in keep:
                graph.add_edge(source, target, label=label)
        return ShannonGraph(graph, self.alphabet)

    def __repr__(self) -> str:
        return f"ShannonGraph(vertices={len(self)}, edges={self.graph.number_of_edges()})"


class PairGraph(ShannonGraph):
    """Shannon graph on subordinate (sub_vertex, super_vertex) pairs."""

    def __init__(self, graph: nx.MultiDiGraph, sub: ShannonGraph, super_graph: ShannonGraph):
        super().__init__(graph, sub.alphabet)
        self.sub = sub
        self.super = super_graph


def is_label_isomorphic(first: ShannonGraph, second: ShannonGraph) -> bool:
    """Label-preserving isomorphism test."""
    return nx.is_isomorphic(
        first.graph, second.graph,
        edge_match=categorical_multiedge_match("label", None),
    )


def tau_sigma(context, symbol: Symbol, graph: Optional[ShannonGraph] = None, oracle=None):
    """Transition rule τ_σ.

    On a set of words, drop the first symbol of every member starting with
    ``symbol``. On a set of graph vertices, follow the σ-edge of each vertex.
    With an oracle, step the follower state (may return INADMISSIBLE).
    """
    if oracle is not None:
        return oracle.step(context, symbol)
    if graph is not None:
        targets = (graph.successor(v, symbol) for v in context)
        return frozenset(t for t in targets if t is not None)
    return frozenset(w[1:] for w in context if w and w[0] == symbol)


def eventual_image(graph: ShannonGraph) -> ShannonGraph:
    """Sub-graph on the vertices with incoming paths of every length."""
    stranded = [v for v in graph.vertices if graph.graph.out_degree(v) == 0]
    if stranded:
        raise ShannonGraphError(
            f"{len(stranded)} vertices have no outgoing edge", stranded,
        )
    current = set(graph.vertices)
    rounds = 0
    while True:
        image = {t for s, t, _ in graph.graph.edges(data="label") if s in current}
        image &= current
        rounds += 1
        if image == current:
            break
        current = image
    log.debug("eventual image: %d of %d vertices after %d rounds",
              len(current), len(graph), rounds)
    return graph.subgraph(current)


def follower_partition(graph: ShannonGraph, rounds: Optional[int] = None) -> Dict[Hashable, int]:
    """Blocks of depth-``rounds`` follower equivalence (fixpoint when None)."""
    blocks = {v: 0 for v in graph.vertices}
    count = 1
    step = 0
    while rounds is None or step < rounds:
        signatures: Dict[Tuple, int] = {}
        refined = {}
        for v in graph.vertices:
            signature = (blocks[v],) + tuple(
                (symbol_name(label), blocks[graph.successor(v, label)])
                for label in graph.out_labels(v)
            )
            refined[v] = signatures.setdefault(signature, len(signatures))
        step += 1
        stable = len(signatures) == count
        blocks, count = refined, len(signatures)
        if stable:
            break
    return blocks


def is_forward_separated(graph: ShannonGraph, depth: Optional[int] = None) -> bool:
    """Distinct vertices have distinct forward contexts (to ``depth`` if given)."""
    blocks = follower_partition(graph, depth)
    return len(set(blocks.values())) == len(graph)


def follower_subset_graph(presentation: ShannonGraph) -> ShannonGraph:
    """Determinized follower-set graph of a presentation.

    Subset construction from the full vertex set, then the eventual image,
    then merging of vertices with equal forward contexts.
    """
    if not presentation.is_presenting():
        bad = [v for v in presentation.vertices
               if presentation.graph.in_degree(v) == 0 or presentation.graph.out_degree(v) == 0]
        raise ShannonGraphError("presentation has vertices without incoming or outgoing edges", bad)
    alphabet = presentation.alphabet
    start = frozenset(presentation.vertices)
    graph = nx.MultiDiGraph()
    graph.add_node(start)
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for symbol in alphabet:
            target = tau_sigma(subset, symbol, graph=presentation)
            if not target:
                continue
            if target not in graph:
                graph.add_node(target)
                queue.append(target)
            graph.add_edge(subset, target, label=symbol)
    subsets = eventual_image(ShannonGraph(graph, alphabet))
    blocks = follower_partition(subsets)
    if len(set(blocks.values())) == len(subsets):
        return subsets
    keep = {}
    for v in subsets.vertices:
        keep.setdefault(blocks[v], v)
    merged = nx.MultiDiGraph()
    merged.add_nodes_from(keep.values())
    for v in keep.values():
        for label, target in subsets.transitions(v).items():
            merged.add_edge(v, keep[blocks[target]], label=label)
    log.debug("follower subset graph merged %d subsets into %d", len(subsets), len(keep))
    return ShannonGraph(merged, alphabet)


def _simulate(oracle_y, state_y, oracle_x, state_x, n: int, symmetric: bool) -> Optional[Word]:
    """Breadth-first synchronized exploration to depth ``n``.

    Returns the first word of length ≤ n readable from ``state_y`` but not
    from ``state_x`` (or the reverse when ``symmetric``), else None.
    """
    if n <= 0:
        return None
    frontier = {(oracle_y.level_key(state_y, n), oracle_x.level_key(state_x, n)): (state_y, state_x, ())}
    for depth in range(n):
        remaining = n - depth - 1
        advanced = {}
        for sy, sx, word in frontier.values():
            for symbol in oracle_y.alphabet:
                ny = oracle_y.step(sy, symbol)
                nx_ = oracle_x.step(sx, symbol)
                if ny is INADMISSIBLE:
                    continue
                if nx_ is INADMISSIBLE:
                    return word + (symbol,)
                if remaining == 0:
                    continue
                key = (oracle_y.level_key(ny, remaining), oracle_x.level_key(nx_, remaining))
                if key not in advanced:
                    advanced[key] = (ny, nx_, word + (symbol,))
            if symmetric:
                for symbol in oracle_x.alphabet:
                    if symbol in oracle_y.alphabet and oracle_y.step(sy, symbol) is not INADMISSIBLE:
                        continue
                    if oracle_x.step(sx, symbol) is not INADMISSIBLE:
                        return word + (symbol,)
        frontier = advanced
        if not frontier:
            break
    return None


def depth_n_equivalent(oracle, first, second, n: int, other_oracle=None) -> bool:
    """Do two follower states accept the same words of length ≤ n?"""
    return _simulate(oracle, first, other_oracle or oracle, second, n, symmetric=True) is None


def subordination_witness(oracle_y, state_y, oracle_x, state_x, n: int) -> Optional[Word]:
    """A Y-word of length ≤ n readable from ``state_y`` but not ``state_x``."""
    return _simulate(oracle_y, state_y, oracle_x, state_x, n, symmetric=False)


def subordinate_to_depth(oracle_y, state_y, oracle_x, state_x, n: int) -> bool:
    return subordination_witness(oracle_y, state_y, oracle_x, state_x, n) is None


def pair_graph(sub: ShannonGraph, super_graph: ShannonGraph,
               n_check: Optional[int] = None) -> PairGraph:
    """Pair Shannon graph on subordinate vertex pairs.

    Subordination is the greatest fixpoint of the one-step simulation
    condition, refined ``n_check`` times (to the fixpoint when None).
    """
    pairs = [(v, w) for v in sub.vertices for w in super_graph.vertices]
    current = set(pairs)
    step = 0
    while n_check is None or step < n_check:
        refined = set()
        for v, w in current:
            ok = True
            for label, target in sub.transitions(v).items():
                partner = super_graph.successor(w, label)
                if partner is None or (target, partner) not in current:
                    ok = False
                    break
            if ok:
                refined.add((v, w))
        step += 1
        if refined == current:
            break
        current = refined

    partnered = {v for v, _ in current}
    for v in sub.vertices:
        if v not in partnered:
            from .oracles import GraphOracle

            depth = n_check if n_check is not None else len(pairs) + 1
            first = super_graph.vertices[0]
            witness = subordination_witness(
                GraphOracle(sub), frozenset([v]), GraphOracle(super_graph), frozenset([first]), depth,
            )
            raise SubordinationError(
                f"vertex {v!r} is subordinate to no vertex of the super graph",
                vertex=(v, first), witness=witness,
            )

    graph = nx.MultiDiGraph()
    graph.add_nodes_from(p for p in pairs if p in current)
    for v, w in graph.nodes:
        for label, target in sub.transitions(v).items():
            pair = (target, super_graph.successor(w, label))
            if pair in current:
                graph.add_edge((v, w), pair, label=label)
    log.debug("pair graph: %d subordinate pairs of %d", len(current), len(pairs))
    return PairGraph(graph, sub, super_graph)


def forward_context(source, state, n: int) -> frozenset:
    """Explicit truncated forward context Γ⁺_n of a follower state.

    ``source`` is a follower-state oracle, or a ShannonGraph whose state is a
    vertex or a collection of vertices.
    """
    if isinstance(source, ShannonGraph):
        from .oracles import GraphOracle

        oracle = GraphOracle(source)
        if isinstance(state, Hashable) and state in source:
            state = frozenset([state])
        else:
            state = frozenset(state)
        return forward_context(oracle, state, n)
    memo: Dict[Tuple[Hashable, int], frozenset] = {}

    def explore(current, depth):
        if depth == 0:
            return frozenset([()])
        key = (source.level_key(current, depth), depth)
        if key in memo:
            return memo[key]
        words = set()
        for symbol in source.alphabet:
            target = source.step(current, symbol)
            if target is INADMISSIBLE:
                continue
            words.update((symbol,) + tail for tail in explore(target, depth - 1))
        memo[key] = frozenset(words)
        return memo[key]

    return explore(state, n)
