#!/usr/bin/env python3
"""
λ-graph system toolkit - follower-state oracles

A follower-state oracle walks the left context of a point one symbol at a
time. Its state determines the forward context; ``level_key`` compresses a
state to a key that still determines the depth-n forward context, and
``enumerate_level_keys`` lists the keys realized by left-infinite points.
"""

import logging
from abc import ABC, abstractmethod
from functools import singledispatch
from itertools import product
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .models import (
    INADMISSIBLE, UNIT, Alphabet, ContextExhaustedError, LgsError, MonoidTable, Symbol, Word,
)
from .shannon import ShannonGraph, follower_subset_graph
from .shifts import (
    SFT, BipartiteShift, BlockEmbedding, FullShift, MonoidShift, ProductShift, SoficShift,
    SubshiftSpec, TwoBlockShift,
)

log = logging.getLogger(__name__)


class FollowerStateOracle(ABC):
    """Deterministic left-to-right reader of a subshift."""

    alphabet: Alphabet
    # True when the state space is finite and level keys do not depend on n
    finite: bool = False

    @abstractmethod
    def root_state(self) -> Hashable:
        """State of the empty left context."""

    @abstractmethod
    def step(self, state: Hashable, symbol: Symbol):
        """Next state, or INADMISSIBLE."""

    def level_key(self, state: Hashable, n: int) -> Hashable:
        return state

    def state_for_key(self, key: Hashable, n: int) -> Hashable:
        return key

    def enumerate_level_keys(self, n: int) -> Optional[List[Hashable]]:
        """Depth-n keys of all left-infinite points, or None if unsupported."""
        return None

    def estimate_level_keys(self, n: int) -> Optional[int]:
        keys = self.enumerate_level_keys(n) if self.finite else None
        return len(keys) if keys is not None else None

    def successors(self, state: Hashable) -> List[Tuple[Symbol, Hashable]]:
        result = []
        for symbol in self.alphabet:
            target = self.step(state, symbol)
            if target is not INADMISSIBLE:
                result.append((symbol, target))
        return result

    def read(self, state: Hashable, word: Word):
        for symbol in word:
            state = self.step(state, symbol)
            if state is INADMISSIBLE:
                return INADMISSIBLE
        return state


class GraphOracle(FollowerStateOracle):
    """Subset semantics on a right-resolving presentation."""

    finite = True

    def __init__(self, graph: ShannonGraph):
        self.graph = graph
        self.alphabet = graph.alphabet
        self._keys: Optional[List[frozenset]] = None

    def root_state(self) -> frozenset:
        return frozenset(self.graph.vertices)

    def step(self, state: frozenset, symbol: Symbol):
        targets = []
        for vertex in state:
            target = self.graph.successor(vertex, symbol)
            if target is not None:
                targets.append(target)
        return frozenset(targets) if targets else INADMISSIBLE

    def enumerate_level_keys(self, n: int) -> List[frozenset]:
        if self._keys is None:
            self._keys = follower_subset_graph(self.graph).vertices
        return list(self._keys)


class MonoidOracle(FollowerStateOracle):
    """Opener stack of a Dyck-type monoid shift.

    A state is ``(stack, deep)``: the unmatched openers from bottom to top,
    with ``deep`` set when the stack is a truncation of a longer one.
    """

    def __init__(self, table: MonoidTable):
        self.table = table
        self.alphabet = table.alphabet
        self._closers = frozenset(table.closers)

    def root_state(self) -> Tuple[Tuple[str, ...], bool]:
        return ((), False)

    def step(self, state, symbol):
        stack, deep = state
        if self.table.is_opener(symbol):
            return (stack + (symbol,), deep)
        if symbol not in self._closers:
            return INADMISSIBLE
        if not stack:
            if deep:
                raise ContextExhaustedError("closer read past the end of a truncated stack")
            return state
        if self.table.rule(stack[-1], symbol) == UNIT:
            return (stack[:-1], deep)
        return INADMISSIBLE

    def level_key(self, state, n):
        stack, deep = state
        if len(stack) >= n:
            return (stack[len(stack) - n:], True)
        if deep:
            raise ContextExhaustedError(f"stack of depth {len(stack)} cannot key level {n}")
        return state

    def enumerate_level_keys(self, n):
        keys = []
        for length in range(n):
            keys.extend((stack, False) for stack in product(self.table.openers, repeat=length))
        keys.extend((stack, True) for stack in product(self.table.openers, repeat=n))
        return keys

    def estimate_level_keys(self, n):
        openers = len(self.table.openers)
        return sum(openers ** k for k in range(n)) + openers ** n


class ProductOracle(FollowerStateOracle):
    def __init__(self, factors: Sequence[FollowerStateOracle], alphabet: Alphabet):
        self.factors = list(factors)
        self.alphabet = alphabet
        self.finite = all(f.finite for f in self.factors)

    def root_state(self):
        return tuple(f.root_state() for f in self.factors)

    def step(self, state, symbol):
        targets = []
        for factor, s, c in zip(self.factors, state, symbol):
            target = factor.step(s, c)
            if target is INADMISSIBLE:
                return INADMISSIBLE
            targets.append(target)
        return tuple(targets)

    def level_key(self, state, n):
        return tuple(f.level_key(s, n) for f, s in zip(self.factors, state))

    def state_for_key(self, key, n):
        return tuple(f.state_for_key(k, n) for f, k in zip(self.factors, key))

    def enumerate_level_keys(self, n):
        coordinates = [f.enumerate_level_keys(n) for f in self.factors]
        if any(c is None for c in coordinates):
            return None
        return list(product(*coordinates))

    def estimate_level_keys(self, n):
        total = 1
        for factor in self.factors:
            estimate = factor.estimate_level_keys(n)
            if estimate is None:
                return None
            total *= estimate
        return total


class EmbeddingOracle(FollowerStateOracle):
    """Reads through the inverse of an injective 1-block map."""

    def __init__(self, source: FollowerStateOracle, inverse: Dict[Symbol, Symbol], alphabet: Alphabet):
        self.source = source
        self.inverse = inverse
        self.alphabet = alphabet
        self.finite = source.finite

    def root_state(self):
        return self.source.root_state()

    def step(self, state, symbol):
        preimage = self.inverse.get(symbol)
        if preimage is None:
            return INADMISSIBLE
        return self.source.step(state, preimage)

    def level_key(self, state, n):
        return self.source.level_key(state, n)

    def state_for_key(self, key, n):
        return self.source.state_for_key(key, n)

    def enumerate_level_keys(self, n):
        return self.source.enumerate_level_keys(n)

    def estimate_level_keys(self, n):
        return self.source.estimate_level_keys(n)


class TwoBlockOracle(FollowerStateOracle):
    """Reader of the two-block recoding a b ↦ a′b.

    A state is ``(source_state, last)`` where ``last`` is the last decoded
    source symbol (None for the empty context).
    """

    def __init__(self, source: FollowerStateOracle, alphabet: Alphabet):
        self.source = source
        self.alphabet = alphabet
        self.finite = source.finite

    def root_state(self):
        return (self.source.root_state(), None)

    def step(self, state, symbol):
        current, last = state
        primed, second = symbol
        if last is None:
            current = self.source.step(current, primed.base)
            if current is INADMISSIBLE:
                return INADMISSIBLE
        elif primed.base != last:
            return INADMISSIBLE
        target = self.source.step(current, second)
        if target is INADMISSIBLE:
            return INADMISSIBLE
        return (target, second)

    def level_key(self, state, n):
        current, last = state
        return (self.source.level_key(current, n), last)

    def state_for_key(self, key, n):
        inner, last = key
        return (self.source.state_for_key(inner, n), last)

    def enumerate_level_keys(self, n):
        deeper = self.source.enumerate_level_keys(n + 1)
        if deeper is None:
            return None
        keys = {}
        for key in deeper:
            state = self.source.state_for_key(key, n + 1)
            for symbol, target in self.source.successors(state):
                keys.setdefault((self.source.level_key(target, n), symbol), None)
        return list(keys)

    def estimate_level_keys(self, n):
        estimate = self.source.estimate_level_keys(n + 1)
        return None if estimate is None else estimate * len(self.source.alphabet)


class BipartiteOracle(FollowerStateOracle):
    """Reader of a bipartite join φ(X) ∪ φ̃(X̃) over Δ ⊎ Δ̃.

    A state is a set of (source_state, pending δ) pairs and the half the
    next symbol must come from.
    """

    finite = False

    def __init__(self, source: FollowerStateOracle, specification, alphabet: Alphabet):
        self.source = source
        self.phi = dict(specification.phi)
        self.delta = frozenset(specification.delta)
        self.delta_tilde = frozenset(specification.delta_tilde)
        self.alphabet = alphabet

    def root_state(self):
        return (frozenset([(self.source.root_state(), None)]), "any")

    def step(self, state, symbol):
        entries, phase = state
        found = set()
        if symbol in self.delta and phase in ("any", "delta"):
            for current, _ in entries:
                for source_symbol, (first, _) in self.phi.items():
                    if first == symbol and self.source.step(current, source_symbol) is not INADMISSIBLE:
                        found.add((current, symbol))
                        break
            phase = "tilde"
        elif symbol in self.delta_tilde and phase in ("any", "tilde"):
            for current, pending in entries:
                for source_symbol, (first, second) in self.phi.items():
                    if second != symbol or (pending is not None and first != pending):
                        continue
                    target = self.source.step(current, source_symbol)
                    if target is not INADMISSIBLE:
                        found.add((target, None))
            phase = "delta"
        if not found:
            return INADMISSIBLE
        return (frozenset(found), phase)


@singledispatch
def follower_oracle(spec: SubshiftSpec) -> FollowerStateOracle:
    raise LgsError(f"no follower-state oracle for {type(spec).__name__}")


@follower_oracle.register
def _(spec: FullShift):
    return GraphOracle(spec.presentation())


@follower_oracle.register
def _(spec: SFT):
    return GraphOracle(spec.presentation())


@follower_oracle.register
def _(spec: SoficShift):
    return GraphOracle(spec.graph)


@follower_oracle.register
def _(spec: MonoidShift):
    return MonoidOracle(spec.table)


@follower_oracle.register
def _(spec: ProductShift):
    return ProductOracle([f.oracle for f in spec.factors], spec.alphabet)


@follower_oracle.register
def _(spec: BlockEmbedding):
    return EmbeddingOracle(spec.source.oracle, spec.inverse, spec.alphabet)


@follower_oracle.register
def _(spec: TwoBlockShift):
    return TwoBlockOracle(spec.source.oracle, spec.alphabet)


@follower_oracle.register
def _(spec: BipartiteShift):
    return BipartiteOracle(spec.source.oracle, spec.specification, spec.alphabet)


class FollowerClassifier:
    """Depth-n follower classes of oracle states.

    Two states share a depth-n class iff they accept the same words of
    length n. Classes are found by signature refinement: the depth-n
    signature of a state is its admissible symbols paired with the depth-(n-1)
    classes they lead to. Class ids are assigned in discovery order, and one
    representative state is kept per class.
    """

    def __init__(self, oracle: FollowerStateOracle):
        self.oracle = oracle
        self._by_key: Dict[int, Dict[Hashable, int]] = {}
        self._by_signature: Dict[int, Dict[tuple, int]] = {}
        self.representatives: Dict[int, List[Hashable]] = {}
        self.signatures: Dict[int, List[tuple]] = {}

    def class_of(self, state: Hashable, n: int) -> int:
        key = self.oracle.level_key(state, n)
        known = self._by_key.setdefault(n, {})
        if key in known:
            return known[key]
        if n == 0:
            signature = ()
        else:
            signature = tuple(
                (symbol, self.class_of(target, n - 1))
                for symbol, target in self.oracle.successors(state)
            )
        classes = self._by_signature.setdefault(n, {})
        cls = classes.get(signature)
        if cls is None:
            cls = len(classes)
            classes[signature] = cls
            self.representatives.setdefault(n, []).append(state)
            self.signatures.setdefault(n, []).append(signature)
        known[key] = cls
        return cls

    def iota(self, n: int, cls: int) -> int:
        return self.class_of(self.representatives[n][cls], n - 1)

    def class_count(self, n: int) -> int:
        return len(self._by_signature.get(n, ()))

    def classes_of(self, states: Iterable[Hashable], n: int) -> List[int]:
        """Distinct classes of ``states`` at depth n, in first-seen order."""
        seen = {}
        for state in states:
            seen.setdefault(self.class_of(state, n), None)
        return list(seen)
