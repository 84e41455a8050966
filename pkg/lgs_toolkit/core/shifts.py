#!/usr/bin/env python3
"""
λ-graph system toolkit - subshift specifications

Subshift descriptions with their admissibility oracles: full shifts, shifts
of finite type, sofic presentations, Dyck-type monoid shifts, products,
1-block embeddings, two-block recodings and bipartite joins.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import ClassVar, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .models import (
    INADMISSIBLE, UNIT, ZERO, ZERO_RULE, Alphabet, ContainmentError, MonoidTable, Primed,
    ReducedForm, SpecError, Symbol, Word, symbol_name,
)
from .shannon import ShannonGraph

log = logging.getLogger(__name__)


class SubshiftSpec(ABC):
    """Base class of subshift descriptions.

    Every subclass exposes ``alphabet`` and answers admissibility of words;
    the follower-state oracle is built lazily and cached per instance.
    """
    kind: ClassVar[str] = ""

    @abstractmethod
    def admits(self, word: Word) -> bool:
        """Admissibility of a word already checked against the alphabet."""

    @cached_property
    def oracle(self):
        from .oracles import follower_oracle

        return follower_oracle(self)

    def describe(self) -> str:
        return f"{self.kind}({len(self.alphabet)} symbols)"


@dataclass(frozen=True, eq=False)
class FullShift(SubshiftSpec):
    alphabet: Alphabet
    kind: ClassVar[str] = "full"

    def admits(self, word: Word) -> bool:
        return True

    def presentation(self) -> ShannonGraph:
        return ShannonGraph.from_edges(
            [(0, 0, s) for s in self.alphabet], vertices=[0], alphabet=self.alphabet,
        )


def has_forbidden_factor(word: Word, forbidden: Sequence[Word]) -> Optional[Word]:
    for bad in forbidden:
        size = len(bad)
        for start in range(len(word) - size + 1):
            if word[start:start + size] == bad:
                return bad
    return None


@dataclass(frozen=True, eq=False)
class SFT(SubshiftSpec):
    """Shift of finite type given by forbidden words."""
    alphabet: Alphabet
    forbidden: Tuple[Word, ...] = ()
    kind: ClassVar[str] = "sft"

    def __post_init__(self):
        words = tuple(tuple(w) for w in self.forbidden)
        for word in words:
            if not word:
                raise SpecError("forbidden words must be nonempty")
            self.alphabet.check_word(word)
        object.__setattr__(self, "forbidden", words)

    def admits(self, word: Word) -> bool:
        return has_forbidden_factor(word, self.forbidden) is None

    def presentation(self) -> ShannonGraph:
        """Essential higher-block presentation.

        Vertices are the allowed words of length (longest forbidden word - 1);
        vertices without incoming or outgoing edges are pruned.
        """
        memory = max((len(w) for w in self.forbidden), default=1) - 1
        graph = nx.MultiDiGraph()
        blocks = [()]
        for _ in range(memory):
            blocks = [b + (s,) for b in blocks for s in self.alphabet if self.admits(b + (s,))]
        graph.add_nodes_from(blocks)
        for block in blocks:
            for symbol in self.alphabet:
                extended = block + (symbol,)
                if self.admits(extended):
                    graph.add_edge(block, extended[1:], label=symbol)
        while True:
            stranded = [v for v in graph.nodes if graph.in_degree(v) == 0 or graph.out_degree(v) == 0]
            if not stranded:
                break
            graph.remove_nodes_from(stranded)
        if graph.number_of_nodes() == 0:
            raise SpecError("shift of finite type is empty")
        return ShannonGraph(graph, self.alphabet)


@dataclass(frozen=True, eq=False)
class SoficShift(SubshiftSpec):
    """Sofic shift presented by a right-resolving graph."""
    graph: ShannonGraph
    kind: ClassVar[str] = "sofic"

    def __post_init__(self):
        if self.graph.alphabet is None:
            raise SpecError("sofic presentation has no labeled edges")
        if not self.graph.is_presenting():
            raise SpecError("sofic presentation needs an incoming and an outgoing edge at every vertex")

    @property
    def alphabet(self) -> Alphabet:
        return self.graph.alphabet

    def admits(self, word: Word) -> bool:
        return self.oracle.read(self.oracle.root_state(), word) is not INADMISSIBLE

    def presentation(self) -> ShannonGraph:
        return self.graph


def monoid_reduce(table: MonoidTable, word: Word):
    """Reduced form of a word in a Dyck-type monoid, or ZERO."""
    closers = []
    stack = []
    for position, symbol in enumerate(word):
        if table.is_opener(symbol):
            stack.append(symbol)
        elif symbol in table.closers:
            if not stack:
                closers.append(symbol)
            elif table.rule(stack[-1], symbol) == UNIT:
                stack.pop()
            else:
                return ZERO
        else:
            raise SpecError(f"symbol {symbol!r} at position {position} is not in the monoid alphabet")
    return ReducedForm(tuple(closers), tuple(stack))


def dyck2_table() -> MonoidTable:
    """Two bracket pairs: α⁻α⁺ = β⁻β⁺ = 1, α⁻β⁺ = β⁻α⁺ = 0."""
    rules = {
        ("a-", "a+"): UNIT, ("b-", "b+"): UNIT,
        ("a-", "b+"): ZERO_RULE, ("b-", "a+"): ZERO_RULE,
    }
    names = {"a-": "α⁻", "b-": "β⁻", "a+": "α⁺", "b+": "β⁺"}
    return MonoidTable(("a-", "b-"), ("a+", "b+"), rules, names)


def gamma_table(k: int) -> MonoidTable:
    """Dyck table extended by K bracket pairs γ(k) that absorb α⁺ and β⁺."""
    if k < 1:
        raise SpecError(f"gamma extension needs K >= 1, got {k}")
    base = dyck2_table()
    gammas = list(range(1, k + 1))
    openers = base.openers + tuple(f"g{i}-" for i in gammas)
    closers = base.closers + tuple(f"g{i}+" for i in gammas)
    rules = dict(base.rules)
    names = dict(base.names)
    for i in gammas:
        names[f"g{i}-"] = f"γ⁻({i})"
        names[f"g{i}+"] = f"γ⁺({i})"
        for opener in base.openers:
            rules[(opener, f"g{i}+")] = ZERO_RULE
        for closer in base.closers:
            rules[(f"g{i}-", closer)] = UNIT
        for j in gammas:
            rules[(f"g{i}-", f"g{j}+")] = UNIT if i == j else ZERO_RULE
    return MonoidTable(openers, closers, rules, names)


@dataclass(frozen=True, eq=False)
class MonoidShift(SubshiftSpec):
    table: MonoidTable
    kind: ClassVar[str] = "monoid"

    @cached_property
    def alphabet(self) -> Alphabet:
        return self.table.alphabet

    def admits(self, word: Word) -> bool:
        return monoid_reduce(self.table, word) is not ZERO


@dataclass(frozen=True, eq=False)
class ProductShift(SubshiftSpec):
    factors: Tuple[SubshiftSpec, ...]
    kind: ClassVar[str] = "product"

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise SpecError("product needs at least one factor")

    @cached_property
    def alphabet(self) -> Alphabet:
        return Alphabet.product([f.alphabet for f in self.factors])

    def admits(self, word: Word) -> bool:
        return all(
            factor.admits(tuple(symbol[i] for symbol in word))
            for i, factor in enumerate(self.factors)
        )

    def describe(self) -> str:
        return " x ".join(f.describe() for f in self.factors)


@dataclass(frozen=True, eq=False)
class BlockEmbedding(SubshiftSpec):
    """Image of a subshift under an injective 1-block map."""
    source: SubshiftSpec
    mapping: Mapping[Symbol, Symbol]
    target_alphabet: Optional[Alphabet] = None
    kind: ClassVar[str] = "embedding"

    def __post_init__(self):
        mapping = dict(self.mapping)
        missing = [s for s in self.source.alphabet if s not in mapping]
        if missing:
            raise SpecError(f"embedding map undefined on {missing}")
        images = [mapping[s] for s in self.source.alphabet]
        if len(set(images)) != len(images):
            raise SpecError("embedding map is not injective")
        if self.target_alphabet is not None:
            outside = [t for t in images if t not in self.target_alphabet]
            if outside:
                raise SpecError(f"embedding images outside the target alphabet: {outside}")
        object.__setattr__(self, "mapping", mapping)
        object.__setattr__(self, "inverse", {t: s for s, t in mapping.items()})

    @cached_property
    def alphabet(self) -> Alphabet:
        images = tuple(self.mapping[s] for s in self.source.alphabet)
        if self.target_alphabet is not None:
            names = {t: self.target_alphabet.name(t) for t in images}
            images = tuple(t for t in self.target_alphabet if t in self.inverse)
            return Alphabet(images, names)
        return Alphabet(images)

    def preimage(self, word: Word) -> Optional[Word]:
        try:
            return tuple(self.inverse[s] for s in word)
        except KeyError:
            return None

    def admits(self, word: Word) -> bool:
        pre = self.preimage(word)
        return pre is not None and self.source.admits(pre)

    def describe(self) -> str:
        return f"embedding of {self.source.describe()}"


def two_block_symbol(first: Symbol, second: Symbol) -> Tuple[Primed, Symbol]:
    return (Primed(first), second)


@dataclass(frozen=True, eq=False)
class TwoBlockShift(SubshiftSpec):
    """Image of a subshift under the 2-block code a b ↦ a′b."""
    source: SubshiftSpec
    kind: ClassVar[str] = "two-block"

    @cached_property
    def alphabet(self) -> Alphabet:
        symbols = tuple(two_block_symbol(a, b) for a, b in iter_words(self.source, 2))
        names = {
            s: f"{self.source.alphabet.name(s[0].base)}′{self.source.alphabet.name(s[1])}"
            for s in symbols
        }
        return Alphabet(symbols, names)

    def decode(self, word: Word) -> Optional[Word]:
        """Source word of a consistent two-block word, else None."""
        if not word:
            return ()
        decoded = [word[0][0].base]
        for symbol in word:
            primed, second = symbol
            if primed.base != decoded[-1]:
                return None
            decoded.append(second)
        return tuple(decoded)

    def admits(self, word: Word) -> bool:
        decoded = self.decode(word)
        return decoded is not None and self.source.admits(decoded)


@dataclass(frozen=True, eq=False)
class BipartiteShift(SubshiftSpec):
    """Bipartite subshift φ(X) ∪ φ̃(X̃) over Δ ⊎ Δ̃.

    ``specification`` supplies ``phi`` (σ ↦ (δ, δ̃)), ``delta`` and
    ``delta_tilde``.
    """
    source: SubshiftSpec
    specification: object
    kind: ClassVar[str] = "bipartite"

    @cached_property
    def alphabet(self) -> Alphabet:
        spec = self.specification
        symbols = tuple(spec.delta) + tuple(spec.delta_tilde)
        names = dict(spec.delta.names)
        names.update(spec.delta_tilde.names)
        return Alphabet(symbols, names)

    def admits(self, word: Word) -> bool:
        oracle = self.oracle
        return oracle.read(oracle.root_state(), word) is not INADMISSIBLE


def is_admissible(spec: SubshiftSpec, word: Sequence[Symbol]) -> bool:
    """Does ``word`` appear in a point of ``spec``?"""
    word = spec.alphabet.check_word(word)
    return spec.admits(word)


def iter_words(spec: SubshiftSpec, n: int) -> Iterator[Word]:
    """Admissible words of length ``n`` in alphabet-lexicographic order."""
    oracle = spec.oracle
    layer = [((), oracle.root_state())]
    for _ in range(n):
        layer = [
            (word + (symbol,), target)
            for word, state in layer
            for symbol, target in oracle.successors(state)
        ]
    for word, _ in layer:
        yield word


def enumerate_words(spec: SubshiftSpec, n: int) -> frozenset:
    if n < 0:
        raise ValueError(f"word length must be >= 0, got {n}")
    return frozenset(iter_words(spec, n))


def product_spec(specs: Sequence[SubshiftSpec]) -> ProductShift:
    return ProductShift(tuple(specs))


def block_embedding_spec(spec: SubshiftSpec, mapping: Mapping[Symbol, Symbol],
                         target_alphabet: Optional[Alphabet] = None) -> BlockEmbedding:
    return BlockEmbedding(spec, mapping, target_alphabet)


@dataclass
class ContainmentReport:
    contained: bool
    checked_length: int
    counterexample: Optional[Word] = None

    def __bool__(self) -> bool:
        return self.contained


def check_containment(spec_y: SubshiftSpec, spec_x: SubshiftSpec, n: int) -> ContainmentReport:
    """Is every admissible Y-word of length ≤ n admissible in X?"""
    if not spec_y.alphabet.is_subset_of(spec_x.alphabet):
        foreign = [s for s in spec_y.alphabet if s not in spec_x.alphabet]
        raise SpecError(f"alphabet mismatch: {[symbol_name(s) for s in foreign[:5]]} not in ambient alphabet")
    from .shannon import subordination_witness

    oy, ox = spec_y.oracle, spec_x.oracle
    witness = subordination_witness(oy, oy.root_state(), ox, ox.root_state(), n)
    if witness is not None:
        log.debug("containment fails at %s", witness)
    return ContainmentReport(witness is None, n, witness)


def require_containment(spec_y: SubshiftSpec, spec_x: SubshiftSpec, n: int) -> None:
    report = check_containment(spec_y, spec_x, n)
    if not report:
        raise ContainmentError(
            f"subshift is not contained in its ambient shift (word {report.counterexample})",
            report.counterexample,
        )


def factorize(spec: SubshiftSpec) -> Optional[List[SubshiftSpec]]:
    """Coordinate factors of a product or of a coordinatewise embedding."""
    if isinstance(spec, ProductShift):
        return list(spec.factors)
    if not (isinstance(spec, BlockEmbedding) and isinstance(spec.source, ProductShift)):
        return None
    arity = len(spec.source.factors)
    coordinate_maps: List[Dict[Symbol, Symbol]] = [{} for _ in range(arity)]
    for symbol, image in spec.mapping.items():
        if not isinstance(image, tuple) or len(image) != arity:
            return None
        for i in range(arity):
            known = coordinate_maps[i].setdefault(symbol[i], image[i])
            if known != image[i]:
                return None
    factors = []
    for factor, mapping in zip(spec.source.factors, coordinate_maps):
        if all(s == t for s, t in mapping.items()):
            factors.append(factor)
        else:
            factors.append(BlockEmbedding(factor, mapping))
    return factors


def symbols_in_use(spec: SubshiftSpec) -> List[Symbol]:
    """Symbols that occur in some admissible word."""
    return [w[0] for w in iter_words(spec, 1)]
