#!/usr/bin/env python3
"""
λ-graph system toolkit - one-step strong shift equivalence

Specifications φ: Σ → ΔΔ̃ and φ̃: Σ̃ → Δ̃Δ, the 2-block split of a subshift,
the conjugacy codes they induce, construction of the K-matrices that
intertwine two symbolic matrix systems, and verification of the six
identities those matrices must satisfy.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Optional, Tuple

from ..filters.checks import CheckResult, ValidationReport
from .lgs import LambdaGraphSystem, SymbolicMatrix, extract_sms, symbolic_matmul, vertex_context
from .models import (
    Alphabet, LgsError, Primed, SpecError, Symbol, WitnessConstructionError, Word, word_name,
)
from .shannon import ShannonGraph, follower_partition, forward_context
from .shifts import BipartiteShift, SubshiftSpec, TwoBlockShift, iter_words, symbols_in_use

log = logging.getLogger(__name__)

SSE_MODES = ("canonical", "word", "pairword", "pair")

# Equation labels of the six identities, in the order they are checked.
EQUATIONS = {
    1: "K(n+1,n) K~(n,n-1) = phi(M(n+1,n) I(n,n-1))",
    2: "K~(n+1,n) K(n,n-1) = phi~(M~(n+1,n) I~(n,n-1))",
    3: "K(n+1,n) phi~(M~(n,n-1)) = phi(M(n+1,n)) K(n,n-1)",
    4: "K~(n+1,n) phi(M(n,n-1)) = phi~(M~(n+1,n)) K~(n,n-1)",
    5: "K(n+1,n) I~(n,n-1) = I(n+1,n) K(n,n-1)",
    6: "K~(n+1,n) I(n,n-1) = I~(n+1,n) K~(n,n-1)",
}


@dataclass(eq=False)
class Specification:
    """Pair of injections φ: Σ → Δ × Δ̃ and φ̃: Σ̃ → Δ̃ × Δ."""
    phi: Dict[Symbol, Tuple[Symbol, Symbol]]
    phi_tilde: Dict[Symbol, Tuple[Symbol, Symbol]]
    delta: Alphabet
    delta_tilde: Alphabet
    two_block: bool = False

    def __post_init__(self):
        self._phi_inverse = {image: s for s, image in self.phi.items()}
        self._phi_tilde_inverse = {image: s for s, image in self.phi_tilde.items()}

    def first_halves(self, symbols=None) -> List[Symbol]:
        """ι⁺(φ(Σ)) in Δ order, optionally restricted to some symbols."""
        used = {self.phi[s][0] for s in (self.phi if symbols is None else symbols)}
        return [d for d in self.delta if d in used]

    def phi_inverse(self, pair: Tuple[Symbol, Symbol]) -> Optional[Symbol]:
        return self._phi_inverse.get(pair)

    def phi_tilde_inverse(self, pair: Tuple[Symbol, Symbol]) -> Optional[Symbol]:
        return self._phi_tilde_inverse.get(pair)

    def swapped(self) -> "Specification":
        """The same coding seen from the tilde side."""
        return Specification(dict(self.phi_tilde), dict(self.phi), self.delta_tilde, self.delta, self.two_block)


@dataclass
class SSEWitness:
    """K^{(n,n-1)} (V_n × Ṽ_{n-1}, Δ entries) and K̃^{(n,n-1)} (Ṽ_n × V_{n-1}, Δ̃ entries)."""
    mode: str
    levels: int
    K: Dict[int, SymbolicMatrix] = field(default_factory=dict)
    K_tilde: Dict[int, SymbolicMatrix] = field(default_factory=dict)

    def swapped(self) -> "SSEWitness":
        return SSEWitness(self.mode, self.levels, dict(self.K_tilde), dict(self.K))


@dataclass
class EquationResult:
    equation: int
    level: int
    passed: bool
    row: Optional[int] = None
    column: Optional[int] = None
    left: Counter = field(default_factory=Counter)
    right: Counter = field(default_factory=Counter)


@dataclass
class SSEReport:
    results: List[EquationResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> List[EquationResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> Dict[str, object]:
        return {
            "passed": self.passed,
            "equations": EQUATIONS,
            "results": [
                {
                    "equation": r.equation, "level": r.level, "passed": r.passed,
                    "row": r.row, "column": r.column,
                    "left": sorted(word_name(w) for w in r.left.elements()),
                    "right": sorted(word_name(w) for w in r.right.elements()),
                }
                for r in self.results
            ],
        }


def two_block_split(spec: SubshiftSpec) -> Tuple[TwoBlockShift, Specification]:
    """X̃ = 2-block image of X with Δ = Σ, Δ̃ = Σ′, φ(σ) = σσ′ and φ̃(a′b) = a′b."""
    alphabet = spec.alphabet
    tilde = TwoBlockShift(spec)
    delta = Alphabet(alphabet.symbols, dict(alphabet.names))
    delta_tilde = Alphabet(
        tuple(Primed(s) for s in alphabet),
        {Primed(s): f"{alphabet.name(s)}′" for s in alphabet},
    )
    phi = {s: (s, Primed(s)) for s in alphabet}
    phi_tilde = {s: s for s in tilde.alphabet}
    log.debug("two-block split: %d symbols become %d", len(alphabet), len(tilde.alphabet))
    return tilde, Specification(phi, phi_tilde, delta, delta_tilde, two_block=True)


def tilde_subsystem(spec_y: SubshiftSpec, specification: Specification) -> TwoBlockShift:
    """2-block image Ỹ of a subsystem Y, inside the tilde side of a split."""
    if not specification.two_block:
        raise SpecError("tilde subsystems are defined for 2-block splits")
    return TwoBlockShift(spec_y)


def conjugacy_code_apply(specification: Specification, word: Word,
                         source: Optional[SubshiftSpec] = None) -> Word:
    """a_i a_{i+1} ↦ φ̃⁻¹(ι⁻ι⁺(φ(a_i a_{i+1}))); a word of length m+1 gives m symbols."""
    word = tuple(word)
    if source is not None and not source.admits(source.alphabet.check_word(word)):
        raise SpecError(f"word {word} is not admissible")
    result = []
    for first, second in zip(word, word[1:]):
        image = specification.phi_tilde_inverse((specification.phi[first][1], specification.phi[second][0]))
        if image is None:
            raise SpecError(f"2-block ({first}, {second}) has no tilde symbol")
        result.append(image)
    return tuple(result)


def conjugacy_code_decode(specification: Specification, word: Word) -> Word:
    """Inverse code ã_i ã_{i+1} ↦ φ⁻¹(ι⁻ι⁺(φ̃(ã_i ã_{i+1})))."""
    return conjugacy_code_apply(specification.swapped(), word)


def validate_specification(specification: Specification, spec: SubshiftSpec,
                           tilde: SubshiftSpec, n_check: int = 4) -> ValidationReport:
    """Injectivity, disjoint halves, the compatibility identity and its dual, mutually inverse codes."""
    results = []
    for name, mapping in (("phi_injective", specification.phi), ("phi_tilde_injective", specification.phi_tilde)):
        images = Counter(mapping.values())
        clashes = [image for image, count in images.items() if count > 1]
        results.append(CheckResult(name, not clashes, clashes))

    shared = [d for d in specification.delta if d in specification.delta_tilde]
    results.append(CheckResult("disjoint_halves", not shared, shared))

    misplaced = [s for s, (d, dt) in specification.phi.items()
                 if d not in specification.delta or dt not in specification.delta_tilde]
    misplaced += [s for s, (dt, d) in specification.phi_tilde.items()
                  if dt not in specification.delta_tilde or d not in specification.delta]
    results.append(CheckResult("halves_in_alphabets", not misplaced, misplaced))

    if misplaced or any(not r.passed for r in results):
        return ValidationReport("specification", results)

    middles = {(specification.phi[a][1], specification.phi[b][0]) for a, b in iter_words(spec, 2)}
    tilde_images = {specification.phi_tilde[s] for s in symbols_in_use(tilde)}
    difference = sorted(map(str, middles ^ tilde_images))
    results.append(CheckResult("compatibility", not difference, difference))

    dual = {(specification.phi_tilde[a][1], specification.phi_tilde[b][0]) for a, b in iter_words(tilde, 2)}
    images = {specification.phi[s] for s in symbols_in_use(spec)}
    difference = sorted(map(str, dual ^ images))
    results.append(CheckResult("dual_compatibility", not difference, difference))

    failures = []
    for m in range(1, n_check + 1):
        tilde_words = set(iter_words(tilde, m))
        coded = set()
        for word in iter_words(spec, m + 1):
            image = conjugacy_code_apply(specification, word)
            coded.add(image)
            if conjugacy_code_decode(specification, image) != word[1:-1]:
                failures.append(("decode", word))
        if coded != tilde_words:
            failures.append(("image", m))
        for word in tilde_words:
            if conjugacy_code_apply(specification, conjugacy_code_decode(specification, word)) != word[1:-1]:
                failures.append(("encode", word))
    results.append(CheckResult("codes_inverse", not failures, failures[:20]))
    return ValidationReport("specification", results)


def bipartite_join(spec: SubshiftSpec, tilde: SubshiftSpec, specification: Specification) -> BipartiteShift:
    """φ(X) ∪ φ̃(X̃) over Δ ⊎ Δ̃."""
    report = validate_specification(specification, spec, tilde)
    if not report.passed:
        raise SpecError(f"specification fails {report.failed_checks()}")
    join = BipartiteShift(spec, specification)
    halves = set(specification.delta)
    for first, second in iter_words(join, 2):
        if (first in halves) == (second in halves):
            raise LgsError(f"bipartite join admits {first}{second} inside one half")
    return join


def tilde_presentation(presentation: ShannonGraph, specification: Specification,
                       alphabet: Optional[Alphabet] = None) -> ShannonGraph:
    """Presentation of X̃ on the half-step states (V, δ).

    (V, δ) -[φ̃⁻¹(δ̃_σ δ′)]-> (V·σ, δ′) for σ readable at V with φ(σ) = δδ̃_σ and δ′
    a first half readable at V·σ; vertices with equal forward contexts are
    merged.
    """
    import networkx as nx

    def halves_at(vertex):
        return {specification.phi[s][0] for s in presentation.out_labels(vertex)}

    graph = nx.MultiDiGraph()
    for vertex in presentation.vertices:
        for delta in halves_at(vertex):
            graph.add_node((vertex, delta))
    for vertex, delta in list(graph.nodes):
        for symbol, target in presentation.transitions(vertex).items():
            first, second = specification.phi[symbol]
            if first != delta:
                continue
            for following in halves_at(target):
                label = specification.phi_tilde_inverse((second, following))
                if label is None:
                    raise SpecError(f"no tilde symbol for ({second}, {following})")
                graph.add_edge((vertex, delta), (target, following), label=label)
    if alphabet is None:
        alphabet = Alphabet(tuple(specification.phi_tilde))
    raw = ShannonGraph(graph, alphabet)
    blocks = follower_partition(raw)
    keep = {}
    for v in raw.vertices:
        keep.setdefault(blocks[v], v)
    merged = nx.MultiDiGraph()
    merged.add_nodes_from(keep.values())
    for v in keep.values():
        for label, target in raw.transitions(v).items():
            merged.add_edge(v, keep[blocks[target]], label=label)
    return ShannonGraph(merged, alphabet)


def _recode(words, delta: Symbol, specification: Specification) -> frozenset:
    """φ̃⁻¹(ι⁺(τ_δ(φ(words)))) on a set of equal-length words."""
    result = set()
    for word in words:
        if not word or specification.phi[word[0]][0] != delta:
            continue
        halves = [h for s in word for h in specification.phi[s]][1:-1]
        coded = tuple(specification.phi_tilde_inverse((halves[i], halves[i + 1]))
                      for i in range(0, len(halves), 2))
        if None in coded:
            raise WitnessConstructionError(f"recoded word {word} leaves the tilde alphabet", len(word), word)
        result.add(coded)
    return frozenset(result)


def _vertex_values(mode: str, system: LambdaGraphSystem, n: int,
                   ambient: Optional[SubshiftSpec]) -> List[Hashable]:
    """Explicit word-set value of every level-n vertex, per witness mode."""
    if mode in ("canonical", "word"):
        return [vertex_context(system, n, v) for v in range(system.vertex_count(n))]
    if mode == "pairword":
        contexts = system.sub_system
        values = []
        for word, cls in system.vertices[n]:
            position = contexts.class_positions[n][cls]
            values.append((word, vertex_context(contexts, n, position)))
        return values
    if ambient is None:
        raise ValueError("pair mode needs the ambient subshifts")
    oracle = ambient.oracle
    return [
        (vertex_context(system, n, v), forward_context(oracle, system.representatives[n][v][1], n))
        for v in range(system.vertex_count(n))
    ]


def _recoded_entries(mode: str, value, specification: Specification, symbols) -> List[Tuple[Symbol, Hashable]]:
    """(δ, recoded value) for every half-symbol δ that value admits."""
    if mode in ("canonical", "word"):
        entries = []
        for delta in specification.first_halves(symbols):
            recoded = _recode(value, delta, specification)
            if recoded:
                entries.append((delta, recoded))
        return entries
    if mode == "pairword":
        word, context = value
        delta = specification.phi[word[0]][0]
        (recoded_word,) = _recode([word], delta, specification)
        return [(delta, (recoded_word, _recode(context, delta, specification)))]
    words_y, words_x = value
    entries = []
    for delta in specification.first_halves(symbols):
        recoded = _recode(words_y, delta, specification)
        if recoded:
            entries.append((delta, (recoded, _recode(words_x, delta, specification))))
    return entries


def _k_matrices(mode: str, system: LambdaGraphSystem, tilde_system: LambdaGraphSystem,
                specification: Specification, levels: int,
                ambient: Optional[SubshiftSpec], tilde_ambient: Optional[SubshiftSpec]) -> Dict[int, SymbolicMatrix]:
    matrices = {}
    symbols = list(system.alphabet)
    lower_values = _vertex_values(mode, tilde_system, 0, tilde_ambient)
    for n in range(1, levels + 1):
        lookup = {value: i for i, value in enumerate(lower_values)}
        entries: Dict[Tuple[int, int], Counter] = {}
        for row, value in enumerate(_vertex_values(mode, system, n, ambient)):
            for delta, recoded in _recoded_entries(mode, value, specification, symbols):
                column = lookup.get(recoded)
                if column is None:
                    raise WitnessConstructionError(
                        f"recoded context of vertex {row} at level {n} under {delta} matches no tilde vertex",
                        n, (row, delta),
                    )
                entries.setdefault((row, column), Counter())[(delta,)] += 1
        matrices[n] = SymbolicMatrix(system.vertex_count(n), tilde_system.vertex_count(n - 1), entries)
        if n < levels:
            lower_values = _vertex_values(mode, tilde_system, n, tilde_ambient)
    return matrices


def build_sse_witness(mode: str, system: LambdaGraphSystem, tilde_system: LambdaGraphSystem,
                      specification: Specification, levels: Optional[int] = None,
                      ambient: Optional[Tuple[SubshiftSpec, SubshiftSpec]] = None) -> SSEWitness:
    """K-matrices between two systems related by ``specification``.

    ``mode`` selects how vertices are read as word sets: follower sets
    (canonical), single words (word), (word, context) pairs (pairword) or
    (Y context, X context) pairs (pair, with ``ambient`` = (X, X̃)).
    """
    if mode not in SSE_MODES:
        raise ValueError(f"mode must be one of {SSE_MODES}, got {mode!r}")
    if levels is None:
        levels = min(system.top_level, tilde_system.top_level)
    if levels > min(system.top_level, tilde_system.top_level):
        raise ValueError(f"systems have fewer than {levels} levels")
    ambient_x, ambient_tilde = ambient if ambient is not None else (None, None)
    witness = SSEWitness(mode, levels)
    witness.K = _k_matrices(mode, system, tilde_system, specification, levels, ambient_x, ambient_tilde)
    witness.K_tilde = _k_matrices(mode, tilde_system, system, specification.swapped(), levels,
                                  ambient_tilde, ambient_x)
    log.info("%s witness: %d levels", mode, levels)
    return witness


def _substitution(mapping: Dict[Symbol, Tuple[Symbol, Symbol]]) -> Callable[[Symbol], Word]:
    return lambda symbol: mapping[symbol]


def verify_sse(witness: SSEWitness, system: LambdaGraphSystem, tilde_system: LambdaGraphSystem,
               specification: Specification) -> SSEReport:
    """Check the six identities for n = 1..levels-1."""
    sms, tilde_sms = extract_sms(system), extract_sms(tilde_system)
    phi = _substitution(specification.phi)
    phi_tilde = _substitution(specification.phi_tilde)
    K, Kt = witness.K, witness.K_tilde
    M, I, Mt, It = sms.M, sms.I, tilde_sms.M, tilde_sms.I
    results = []
    for n in range(1, witness.levels):
        sides = {
            1: (K[n + 1] @ Kt[n], symbolic_matmul(M[n + 1], I[n]).map_letters(phi)),
            2: (Kt[n + 1] @ K[n], symbolic_matmul(Mt[n + 1], It[n]).map_letters(phi_tilde)),
            3: (K[n + 1] @ Mt[n].map_letters(phi_tilde), M[n + 1].map_letters(phi) @ K[n]),
            4: (Kt[n + 1] @ M[n].map_letters(phi), Mt[n + 1].map_letters(phi_tilde) @ Kt[n]),
            5: (K[n + 1] @ It[n], I[n + 1] @ K[n]),
            6: (Kt[n + 1] @ I[n], It[n + 1] @ Kt[n]),
        }
        for equation, (left, right) in sides.items():
            index = left.first_difference(right)
            if index is None:
                results.append(EquationResult(equation, n, True))
            else:
                results.append(EquationResult(equation, n, False, index[0], index[1], left[index], right[index]))
    report = SSEReport(results)
    if not report.passed:
        log.info("SSE verification: %d failures", len(report.failures()))
    return report
