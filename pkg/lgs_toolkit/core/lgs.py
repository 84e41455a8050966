#!/usr/bin/env python3
"""
λ-graph system toolkit - λ-graph systems and symbolic matrix systems

A λ-graph system keeps one ordered vertex list per level, the labeled edges
from level n to level n-1 and the map ι from level n onto level n-1. Symbolic
matrices carry multisets of words (``collections.Counter``) so that parallel
edges keep their multiplicity.
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx

from .models import Alphabet, LgsError, Symbol, Word, word_key
from .shannon import ShannonGraph

log = logging.getLogger(__name__)

Edge = Tuple[int, int, Symbol]


class LambdaGraphSystem:
    """Levels 0..N of vertices, labeled edges V_n → V_{n-1} and ι: V_n → V_{n-1}.

    ``vertices[n]`` holds one descriptive label per vertex; vertices are
    addressed by their position in that list. ``edges[n]`` and ``iota[n]``
    are empty for n = 0.
    """

    def __init__(self, alphabet: Alphabet, vertices: List[List[Hashable]],
                 edges: List[List[Edge]], iota: List[List[int]],
                 shannon: bool = True, name: str = ""):
        if not (len(vertices) == len(edges) == len(iota)):
            raise ValueError("vertices, edges and iota must have one entry per level")
        self.alphabet = alphabet
        self.vertices = vertices
        self.edges = edges
        self.iota = iota
        self.shannon = shannon
        self.name = name
        # filled by the builders
        self.components: Optional[List[List[Tuple[Optional[int], Hashable]]]] = None
        self.sub_system: Optional["LambdaGraphSystem"] = None
        self.representatives: Optional[List[List[Any]]] = None
        self.classifier = None
        self.class_positions: Optional[List[Dict[int, int]]] = None
        self.caveats: List[str] = []
        self._out: Optional[List[List[List[Tuple[int, Symbol]]]]] = None

    @property
    def top_level(self) -> int:
        return len(self.vertices) - 1

    def vertex_count(self, n: int) -> int:
        return len(self.vertices[n])

    def counts(self) -> List[int]:
        return [len(level) for level in self.vertices]

    def edge_count(self, n: int) -> int:
        return len(self.edges[n])

    def out_edges(self, n: int, vertex: int) -> List[Tuple[int, Symbol]]:
        """(target, label) pairs of the edges leaving a level-n vertex."""
        if self._out is None:
            out = []
            for level, (labels, edges) in enumerate(zip(self.vertices, self.edges)):
                table = [[] for _ in labels]
                for source, target, label in edges:
                    table[source].append((target, label))
                out.append(table)
            self._out = out
        return self._out[n][vertex]

    def __repr__(self) -> str:
        return f"LambdaGraphSystem(name={self.name!r}, counts={self.counts()})"


def vertex_context(system: LambdaGraphSystem, n: int, vertex: int) -> frozenset:
    """Label sequences of the paths from a level-n vertex down to level 0."""
    memo: Dict[Tuple[int, int], frozenset] = {}

    def explore(level, v):
        if level == 0:
            return frozenset([()])
        if (level, v) not in memo:
            memo[(level, v)] = frozenset(
                (label,) + tail
                for target, label in system.out_edges(level, v)
                for tail in explore(level - 1, target)
            )
        return memo[(level, v)]

    return explore(n, vertex)


class SymbolicMatrix:
    """Sparse matrix whose entries are multisets of words.

    A 0-1 matrix is the special case of entries ``Counter({(): 1})``.
    """

    def __init__(self, rows: int, columns: int,
                 entries: Optional[Dict[Tuple[int, int], Counter]] = None):
        self.rows = rows
        self.columns = columns
        self.entries: Dict[Tuple[int, int], Counter] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < columns):
                raise ValueError(f"entry ({i}, {j}) outside a {rows}x{columns} matrix")
            value = +Counter(value)
            if value:
                self.entries[(i, j)] = value

    @classmethod
    def from_function(cls, rows: int, columns: int, mapping: Sequence[int]) -> "SymbolicMatrix":
        """0-1 matrix with a single 1 per row at column ``mapping[row]``."""
        return cls(rows, columns, {(i, j): Counter({(): 1}) for i, j in enumerate(mapping)})

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.columns)

    def __getitem__(self, index: Tuple[int, int]) -> Counter:
        return self.entries.get(index, Counter())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolicMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __matmul__(self, other: "SymbolicMatrix") -> "SymbolicMatrix":
        return symbolic_matmul(self, other)

    def first_difference(self, other: "SymbolicMatrix") -> Optional[Tuple[int, int]]:
        for index in sorted(set(self.entries) | set(other.entries)):
            if self[index] != other[index]:
                return index
        return None

    def map_letters(self, substitution: Callable[[Symbol], Word]) -> "SymbolicMatrix":
        """Apply a letter-to-word substitution to every word of every entry."""
        entries = {}
        for index, value in self.entries.items():
            mapped = Counter()
            for word, multiplicity in value.items():
                mapped[tuple(s for letter in word for s in substitution(letter))] += multiplicity
            entries[index] = mapped
        return SymbolicMatrix(self.rows, self.columns, entries)

    def to_lists(self) -> List[List[List[List[str]]]]:
        """Dense rows of sorted word lists (words as symbol-name lists)."""
        dense = [[[] for _ in range(self.columns)] for _ in range(self.rows)]
        for (i, j), value in self.entries.items():
            words = sorted(value.elements(), key=word_key)
            dense[i][j] = [list(word_key(w)) for w in words]
        return dense

    def __repr__(self) -> str:
        return f"SymbolicMatrix({self.rows}x{self.columns}, nonzero={len(self.entries)})"


def symbolic_matmul(left: SymbolicMatrix, right: SymbolicMatrix) -> SymbolicMatrix:
    """Entry (i, k) is the multiset of concatenations left[i, j] · right[j, k]."""
    if left.columns != right.rows:
        raise ValueError(f"dimension mismatch: {left.shape} times {right.shape}")
    by_row: Dict[int, List[Tuple[int, Counter]]] = defaultdict(list)
    for (j, k), value in right.entries.items():
        by_row[j].append((k, value))
    result: Dict[Tuple[int, int], Counter] = defaultdict(Counter)
    for (i, j), left_value in left.entries.items():
        for k, right_value in by_row.get(j, ()):
            entry = result[(i, k)]
            for left_word, left_count in left_value.items():
                for right_word, right_count in right_value.items():
                    entry[left_word + right_word] += left_count * right_count
    return SymbolicMatrix(left.rows, right.columns, result)


@dataclass
class SymbolicMatrixSystem:
    """(M^{(n,n-1)}, I^{(n,n-1)}) for n = 1..N."""
    alphabet: Alphabet
    counts: List[int]
    M: Dict[int, SymbolicMatrix] = field(default_factory=dict)
    I: Dict[int, SymbolicMatrix] = field(default_factory=dict)

    @property
    def top_level(self) -> int:
        return len(self.counts) - 1


def extract_sms(system: LambdaGraphSystem) -> SymbolicMatrixSystem:
    counts = system.counts()
    sms = SymbolicMatrixSystem(system.alphabet, counts)
    for n in range(1, system.top_level + 1):
        entries: Dict[Tuple[int, int], Counter] = defaultdict(Counter)
        for source, target, label in system.edges[n]:
            entries[(source, target)][(label,)] += 1
        sms.M[n] = SymbolicMatrix(counts[n], counts[n - 1], entries)
        sms.I[n] = SymbolicMatrix.from_function(counts[n], counts[n - 1], system.iota[n])
    return sms


@dataclass
class CommutationResult:
    level: int
    passed: bool
    row: Optional[int] = None
    column: Optional[int] = None
    left: Counter = field(default_factory=Counter)
    right: Counter = field(default_factory=Counter)


def check_commutation(sms: SymbolicMatrixSystem) -> List[CommutationResult]:
    """M^{(n+1,n)} I^{(n,n-1)} = I^{(n+1,n)} M^{(n,n-1)} for n = 1..N-1."""
    results = []
    for n in range(1, sms.top_level):
        left = symbolic_matmul(sms.M[n + 1], sms.I[n])
        right = symbolic_matmul(sms.I[n + 1], sms.M[n])
        index = left.first_difference(right)
        if index is None:
            results.append(CommutationResult(n, True))
        else:
            log.debug("commutation fails at level %d entry %s", n, index)
            results.append(CommutationResult(n, False, index[0], index[1], left[index], right[index]))
    return results


def iota_orbit_transitions(system: LambdaGraphSystem) -> ShannonGraph:
    """Shannon graph of the ι-chains through the top level (depth-N approximation).

    A chain (V_N, ..., V_0) is named by its top vertex V_N. Its σ-edge leads
    to the chain (W_{N-1}, ..., W_0) with τ_σ(V_n) = W_{n-1} for 1 <= n <= N.
    The σ-edge out of V_N fixes W_{N-1}, and ι-compatibility of the edges
    fixes the rest, so every chain has at most one σ-successor.

    A target chain starts one level lower than its source. When W_{N-1} has
    exactly one ι-lift to level N, the target is identified with that
    top-level chain. Otherwise it stays a shorter chain, the node
    ``("partial", N-1, W_{N-1})``, whose own σ-edges are traced the same
    way. For systems whose ι is bijective near the top, such as canonical
    systems of sofic shifts past their diameter, no partial nodes remain.
    """
    top = system.top_level
    if top < 1:
        raise LgsError("ι-orbit transitions need at least one level")
    # descend[m][x] = ι-image at level m of top-level vertex x
    descend = {top: list(range(system.vertex_count(top)))}
    for m in range(top - 1, -1, -1):
        descend[m] = [system.iota[m + 1][v] for v in descend[m + 1]]
    lifts: Dict[Tuple[int, int], List[int]] = defaultdict(list)
    for m in range(top + 1):
        for x, v in enumerate(descend[m]):
            lifts[(m, v)].append(x)

    def node_for(level, vertex):
        candidates = lifts[(level, vertex)]
        if len(candidates) == 1:
            return candidates[0]
        return ("partial", level, vertex)

    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(system.vertex_count(top)))
    pending = [(top, v, v) for v in range(system.vertex_count(top))]
    seen = set()
    while pending:
        level, vertex, node = pending.pop()
        if node in seen or level == 0:
            continue
        seen.add(node)
        for target, label in system.out_edges(level, vertex):
            target_node = node_for(level - 1, target)
            if isinstance(target_node, tuple):
                pending.append((level - 1, target, target_node))
            graph.add_edge(node, target_node, label=label)
    return ShannonGraph(graph, system.alphabet)


def product_lgs(systems: Sequence[LambdaGraphSystem], name: str = "") -> LambdaGraphSystem:
    """Level-wise product of λ-graph systems with equal top level.

    Vertex (v_1, ..., v_k) is addressed by mixed-radix index over the factor
    levels, edges are tuples of factor edges and ι acts coordinatewise.
    """
    if not systems:
        raise ValueError("product needs at least one system")
    top = systems[0].top_level
    if any(s.top_level != top for s in systems):
        raise ValueError("product factors must have the same number of levels")
    alphabet = Alphabet.product([s.alphabet for s in systems])
    vertices, edges, iota = [], [], []
    for n in range(top + 1):
        sizes = [s.vertex_count(n) for s in systems]
        vertices.append(list(product(*(s.vertices[n] for s in systems))))
        if n == 0:
            edges.append([])
            iota.append([])
            continue
        lower = [s.vertex_count(n - 1) for s in systems]
        level_edges = []
        for combination in product(*(range(size) for size in sizes)):
            source = mixed_radix(combination, sizes)
            choices = [s.out_edges(n, v) for s, v in zip(systems, combination)]
            for picked in product(*choices):
                target = mixed_radix([t for t, _ in picked], lower)
                level_edges.append((source, target, tuple(label for _, label in picked)))
        edges.append(level_edges)
        iota.append([
            mixed_radix([s.iota[n][v] for s, v in zip(systems, combination)], lower)
            for combination in product(*(range(size) for size in sizes))
        ])
    log.debug("product of %d systems: counts %s", len(systems), [len(v) for v in vertices])
    return LambdaGraphSystem(alphabet, vertices, edges, iota,
                             all(s.shannon for s in systems), name)


def mixed_radix(digits: Sequence[int], sizes: Sequence[int]) -> int:
    index = 0
    for digit, size in zip(digits, sizes):
        index = index * size + digit
    return index
