#!/usr/bin/env python3
"""
λ-graph system toolkit - system builders

Builders for the word system, the canonical system, the presentation and
pair-word systems and the pair system of a subshift inside an ambient
subshift, plus an independent brute-force reference built from explicit
word sets.
"""

import logging
from abc import ABC, abstractmethod
from collections import defaultdict, deque
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from ..core.lgs import LambdaGraphSystem, mixed_radix, product_lgs
from ..core.models import (
    INADMISSIBLE, Alphabet, BuilderConfig, ContainmentError, LgsError, NotForwardSeparatedError,
    ResourceLimitError, Symbol, sorted_words,
)
from ..core.oracles import FollowerClassifier, FollowerStateOracle, GraphOracle
from ..core.shannon import (
    ShannonGraph, eventual_image, forward_context, is_forward_separated, pair_graph,
    subordinate_to_depth,
)
from ..core.shifts import SubshiftSpec, factorize, require_containment

log = logging.getLogger(__name__)

EdgeList = List[Tuple[Symbol, Hashable]]


class SystemBuilder(ABC):
    """λ-graph system builder base class."""

    @abstractmethod
    def build(self) -> LambdaGraphSystem:
        """Construct the system."""
        pass


def _assemble(alphabet: Alphabet, keys: List[List[Hashable]],
              edges_of: Callable[[int, Hashable], EdgeList],
              iota_of: Callable[[int, Hashable], Hashable],
              prune: bool = False, shannon: bool = True,
              name: str = "") -> Tuple[LambdaGraphSystem, List[List[Hashable]]]:
    """Index candidate vertices into a λ-graph system.

    With ``prune`` the candidates are cut down to the greatest sub-family in
    which every vertex keeps all of its edges and its ι-image, and every
    vertex below the top level has an incoming edge and an ι-preimage.
    """
    top = len(keys) - 1
    edges = [dict() for _ in keys]
    iota = [dict() for _ in keys]
    for n in range(1, top + 1):
        for key in keys[n]:
            edges[n][key] = edges_of(n, key)
            iota[n][key] = iota_of(n, key)

    alive = [set(level) for level in keys]
    if prune:
        rounds = 0
        while True:
            removed = 0
            for n in range(top, -1, -1):
                if n < top:
                    targets = {t for k in alive[n + 1] for _, t in edges[n + 1][k]}
                    images = {iota[n + 1][k] for k in alive[n + 1]}
                for key in list(alive[n]):
                    ok = True
                    if n >= 1:
                        out = edges[n][key]
                        ok = (bool(out) and iota[n][key] in alive[n - 1]
                              and all(t in alive[n - 1] for _, t in out))
                    if ok and n < top:
                        ok = key in targets and key in images
                    if not ok:
                        alive[n].discard(key)
                        removed += 1
            rounds += 1
            if not removed:
                break
        log.debug("pruning: %d rounds, counts %s", rounds, [len(a) for a in alive])

    kept = [[k for k in level if k in alive[n]] for n, level in enumerate(keys)]
    position = [{k: i for i, k in enumerate(level)} for level in kept]
    system_edges: List[List[Tuple[int, int, Symbol]]] = [[]]
    system_iota: List[List[int]] = [[]]
    for n in range(1, top + 1):
        lower = position[n - 1]
        level_edges = []
        for i, key in enumerate(kept[n]):
            for label, target in edges[n][key]:
                if target not in lower:
                    raise LgsError(f"edge from level {n} leaves the candidate set")
                level_edges.append((i, lower[target], label))
        system_edges.append(level_edges)
        system_iota.append([lower[iota[n][key]] for key in kept[n]])
    system = LambdaGraphSystem(alphabet, [list(level) for level in kept],
                               system_edges, system_iota, shannon, name)
    return system, kept


def _ordered_unique(items) -> List[Hashable]:
    return list(dict.fromkeys(items))


class WordBuilder(SystemBuilder):
    """Word system: V_n = admissible words of length n."""

    def __init__(self, spec: SubshiftSpec, levels: int, max_candidates: int = 10_000_000):
        self.spec = spec
        self.levels = levels
        self.max_candidates = max_candidates

    def build(self) -> LambdaGraphSystem:
        oracle = self.spec.oracle
        layer = [((), oracle.root_state())]
        words = [[()]]
        for n in range(1, self.levels + 1):
            layer = [(w + (symbol,), target) for w, state in layer
                     for symbol, target in oracle.successors(state)]
            if len(layer) > self.max_candidates:
                raise ResourceLimitError(
                    f"{len(layer)} words of length {n} exceed the ceiling",
                    len(layer), self.max_candidates,
                )
            words.append([w for w, _ in layer])
        system, _ = _assemble(
            self.spec.alphabet, words,
            lambda n, w: [(w[0], w[1:])],
            lambda n, w: w[:-1],
            name=f"word({self.spec.kind})",
        )
        log.info("word system: counts %s", system.counts())
        return system


def build_word_lgs(spec: SubshiftSpec, levels: int, max_candidates: int = 10_000_000) -> LambdaGraphSystem:
    return WordBuilder(spec, levels, max_candidates).build()


def state_graph(oracle: FollowerStateOracle) -> ShannonGraph:
    """Finite graph of the realized states of a finite-state oracle."""
    start = oracle.enumerate_level_keys(0)
    graph = nx.MultiDiGraph()
    queue = deque()
    for key in start:
        state = oracle.state_for_key(key, 0)
        if state not in graph:
            graph.add_node(state)
            queue.append(state)
    while queue:
        state = queue.popleft()
        for symbol, target in oracle.successors(state):
            if target not in graph:
                graph.add_node(target)
                queue.append(target)
            graph.add_edge(state, target, label=symbol)
    return ShannonGraph(graph, oracle.alphabet)


def approximate_states(oracle: FollowerStateOracle, config: BuilderConfig) -> List[Hashable]:
    """States of long left contexts.

    States reached by words of length ≤ context_bound, deduplicated by their
    key at the horizon depth, restricted to the keys with incoming paths of
    every length in the finite key graph.
    """
    depth = config.horizon
    reps: Dict[Hashable, Hashable] = {}
    frontier = [oracle.root_state()]
    reps[oracle.level_key(frontier[0], depth)] = frontier[0]
    for _ in range(config.context_bound):
        advanced = []
        for state in frontier:
            for _, target in oracle.successors(state):
                key = oracle.level_key(target, depth)
                if key not in reps:
                    reps[key] = target
                    advanced.append(target)
        if len(reps) > config.max_candidates:
            raise ResourceLimitError(
                f"{len(reps)} left-context keys exceed the ceiling", len(reps), config.max_candidates,
            )
        frontier = advanced
        if not frontier:
            break
    successors = {
        key: {oracle.level_key(t, depth) for _, t in oracle.successors(state)} & reps.keys()
        for key, state in reps.items()
    }
    current = set(reps)
    while True:
        image = {t for k in current for t in successors[k]} & current
        if image == current:
            break
        current = image
    log.debug("approximate states: %d of %d keys survive", len(current), len(reps))
    return [state for key, state in reps.items() if key in current]


class CanonicalBuilder(SystemBuilder):
    """Canonical system: V_n = depth-n follower classes of left-infinite points."""

    def __init__(self, spec: SubshiftSpec, config: BuilderConfig, decompose: bool = True):
        self.spec = spec
        self.config = config
        self.decompose = decompose

    def build(self) -> LambdaGraphSystem:
        config = self.config
        factors = factorize(self.spec) if self.decompose else None
        if factors is not None and len(factors) > 1:
            systems = [CanonicalBuilder(f, config).build() for f in factors]
            system = product_lgs(systems, name=f"canonical({self.spec.describe()})")
            for part in systems:
                system.caveats.extend(c for c in part.caveats if c not in system.caveats)
            log.info("canonical product system: counts %s", system.counts())
            return system

        oracle = self.spec.oracle
        N = config.levels
        estimate = oracle.estimate_level_keys(N)
        if estimate is not None and estimate > config.max_candidates:
            raise ResourceLimitError(
                f"predicted {estimate} level-{N} keys exceed the ceiling", estimate, config.max_candidates,
            )
        keys = oracle.enumerate_level_keys(N) if config.mode == "exact" else None
        caveats = []
        if keys is not None:
            seeds = [oracle.state_for_key(k, N) for k in keys]
        else:
            seeds = approximate_states(oracle, config)
            caveats.append(f"approximate: left contexts up to length {config.context_bound}")
        classifier = FollowerClassifier(oracle)
        classes = [classifier.classes_of(seeds, n) for n in range(N + 1)]
        system, kept = _assemble(
            self.spec.alphabet, classes,
            lambda n, c: classifier.signatures[n][c],
            classifier.iota,
            prune=bool(caveats),
            name=f"canonical({self.spec.describe()})",
        )
        system.caveats = caveats
        system.representatives = [[classifier.representatives[n][c] for c in level]
                                  for n, level in enumerate(kept)]
        system.classifier = classifier
        system.class_positions = [{c: i for i, c in enumerate(level)} for level in kept]
        log.info("canonical system: counts %s", system.counts())
        return system


def build_canonical_lgs(spec: SubshiftSpec, config: BuilderConfig) -> LambdaGraphSystem:
    return CanonicalBuilder(spec, config).build()


def build_presentation_lgs(presentation: ShannonGraph, levels: int) -> LambdaGraphSystem:
    """System of the truncated forward contexts of the presentation's vertices."""
    oracle = GraphOracle(presentation)
    classifier = FollowerClassifier(oracle)
    seeds = [frozenset([v]) for v in presentation.vertices]
    classes = [classifier.classes_of(seeds, n) for n in range(levels + 1)]
    system, kept = _assemble(
        presentation.alphabet, classes,
        lambda n, c: classifier.signatures[n][c],
        classifier.iota,
        name="presentation",
    )
    system.representatives = [[classifier.representatives[n][c] for c in level]
                              for n, level in enumerate(kept)]
    system.classifier = classifier
    system.class_positions = [{c: i for i, c in enumerate(level)} for level in kept]
    return system


class PairWordBuilder(SystemBuilder):
    """V̂_n = {(a, C): a a word of length n in the context C}."""

    def __init__(self, spec: SubshiftSpec, presentation: ShannonGraph, levels: int):
        self.spec = spec
        self.presentation = presentation
        self.levels = levels

    def build(self) -> LambdaGraphSystem:
        if not is_forward_separated(self.presentation):
            raise NotForwardSeparatedError("presentation has two vertices with equal forward contexts")
        oracle = GraphOracle(self.presentation)
        root = oracle.root_state()
        spec_root = self.spec.oracle.root_state()
        if not (subordinate_to_depth(oracle, root, self.spec.oracle, spec_root, self.levels)
                and subordinate_to_depth(self.spec.oracle, spec_root, oracle, root, self.levels)):
            raise ContainmentError("presentation and subshift disagree on short words")

        contexts = build_presentation_lgs(self.presentation, self.levels)
        classifier = contexts.classifier
        keys = [[((), 0)]]
        for n in range(1, self.levels + 1):
            level = []
            for cls in contexts.class_positions[n]:
                state = classifier.representatives[n][cls]
                words = sorted_words(forward_context(oracle, state, n))
                level.extend((word, cls) for word in words)
            keys.append(level)

        def edges_of(n, key):
            word, cls = key
            state = classifier.representatives[n][cls]
            return [(word[0], (word[1:], classifier.class_of(oracle.step(state, word[0]), n - 1)))]

        def iota_of(n, key):
            word, cls = key
            return (word[:-1], classifier.iota(n, cls))

        system, _ = _assemble(self.presentation.alphabet, keys, edges_of, iota_of, name="pair-word")
        system.sub_system = contexts
        log.info("pair-word system: counts %s", system.counts())
        return system


def build_pair_word_lgs(spec: SubshiftSpec, presentation: ShannonGraph, levels: int) -> LambdaGraphSystem:
    return PairWordBuilder(spec, presentation, levels).build()


class PairBuilder(SystemBuilder):
    """System ⋃V_n(Y, X) of follower-class pairs of Y inside X.

    Vertices are pairs (C_Y, C_X) of depth-n classes of subordinate state
    pairs with arbitrarily long synchronized histories. Finite-state inputs
    are solved exactly on the pair graph; otherwise subordinate key pairs are
    grown to the horizon depth N + M, pulled back down level by level through
    the transition image, and pruned to the λ-graph axioms.
    """

    def __init__(self, spec_y: SubshiftSpec, spec_x: SubshiftSpec, config: BuilderConfig):
        self.spec_y = spec_y
        self.spec_x = spec_x
        self.config = config

    def build(self) -> LambdaGraphSystem:
        require_containment(self.spec_y, self.spec_x, self.config.levels)
        system = self._build_decomposed()
        if system is None:
            system = self._build_direct()
        log.info("pair system: counts %s", system.counts())
        return system

    def _build_decomposed(self) -> Optional[LambdaGraphSystem]:
        factors_y = factorize(self.spec_y)
        factors_x = factorize(self.spec_x)
        if not factors_y or not factors_x or len(factors_y) != len(factors_x) or len(factors_y) < 2:
            return None
        if not all(fy.alphabet.is_subset_of(fx.alphabet) for fy, fx in zip(factors_y, factors_x)):
            return None
        parts = [PairBuilder(fy, fx, self.config).build() for fy, fx in zip(factors_y, factors_x)]
        system = product_lgs(parts, name="pair")
        system.sub_system = product_lgs([p.sub_system for p in parts], name="canonical")
        components, representatives = [], []
        for n in range(system.top_level + 1):
            sub_sizes = [p.sub_system.vertex_count(n) for p in parts]
            level_components, level_reps = [], []
            for combination in _index_product([p.vertex_count(n) for p in parts]):
                pieces = [p.components[n][v] for p, v in zip(parts, combination)]
                ys = [y for y, _ in pieces]
                y_part = None if any(y is None for y in ys) else mixed_radix(ys, sub_sizes)
                level_components.append((y_part, tuple(x for _, x in pieces)))
                reps = [p.representatives[n][v] for p, v in zip(parts, combination)]
                level_reps.append((tuple(r[0] for r in reps), tuple(r[1] for r in reps)))
            components.append(level_components)
            representatives.append(level_reps)
        system.components = components
        system.representatives = representatives
        for part in parts:
            system.caveats.extend(c for c in part.caveats if c not in system.caveats)
        return system

    def _build_direct(self) -> LambdaGraphSystem:
        config = self.config
        oy, ox = self.spec_y.oracle, self.spec_x.oracle
        N = config.levels
        sub_system = CanonicalBuilder(self.spec_y, config, decompose=False).build()
        cy = sub_system.classifier
        cx = FollowerClassifier(ox)
        caveats = []
        if config.mode == "exact" and oy.finite and ox.finite:
            pairs = self._exact_pairs(oy, ox)
            pairs_by_level = [pairs] * (N + 1)
        else:
            pairs_by_level = self._horizon_pairs(oy, ox)
            caveats.append(f"approximate: horizon depth {config.horizon}")

        keys, reps = [], []
        for n, pairs in enumerate(pairs_by_level):
            level = {}
            for sy, sx in pairs:
                level.setdefault((cy.class_of(sy, n), cx.class_of(sx, n)), (sy, sx))
            keys.append(list(level))
            reps.append(level)

        def edges_of(n, key):
            sy, sx = reps[n][key]
            out = []
            for symbol, ty in oy.successors(sy):
                tx = ox.step(sx, symbol)
                target = None if tx is INADMISSIBLE else (cy.class_of(ty, n - 1), cx.class_of(tx, n - 1))
                out.append((symbol, target))
            return out

        def iota_of(n, key):
            sy, sx = reps[n][key]
            return (cy.class_of(sy, n - 1), cx.class_of(sx, n - 1))

        system, kept = _assemble(self.spec_y.alphabet, keys, edges_of, iota_of, prune=True, name="pair")
        system.caveats = caveats + [c for c in sub_system.caveats if c not in caveats]
        system.sub_system = sub_system
        system.components = [
            [(sub_system.class_positions[n].get(y), x) for y, x in level]
            for n, level in enumerate(kept)
        ]
        system.representatives = [[reps[n][key] for key in level] for n, level in enumerate(kept)]
        return system

    def _exact_pairs(self, oy, ox) -> List[Tuple[Hashable, Hashable]]:
        """Fully subordinate state pairs in the eventual image of the pair graph."""
        graph_y = eventual_image(state_graph(oy))
        graph_x = eventual_image(state_graph(ox))
        pairs = eventual_image(pair_graph(graph_y, graph_x))
        log.debug("exact pair graph: %d pairs", len(pairs))
        return pairs.vertices

    def _horizon_pairs(self, oy, ox) -> List[List[Tuple[Hashable, Hashable]]]:
        config = self.config
        depth = config.horizon
        keys_y = _KeyTable(oy, config)
        keys_x = _KeyTable(ox, config)

        subordinate = {(a, b) for a in keys_y.keys(0) for b in keys_x.keys(0)}
        for j in range(1, depth + 1):
            children_y = keys_y.children(j)
            children_x = keys_x.children(j)
            found = set()
            for parent_y, parent_x in subordinate:
                for a in children_y.get(parent_y, ()):
                    state_a = oy.state_for_key(a, j)
                    for b in children_x.get(parent_x, ()):
                        if self._locally_subordinate(oy, state_a, ox, ox.state_for_key(b, j), j, subordinate):
                            found.add((a, b))
                if len(found) > config.max_candidates:
                    raise ResourceLimitError(
                        f"more than {config.max_candidates} subordinate pairs at depth {j}",
                        len(found), config.max_candidates,
                    )
            subordinate = found
            log.debug("depth %d: %d subordinate key pairs", j, len(subordinate))

        chain = {depth: subordinate}
        for j in range(depth, 0, -1):
            image = set()
            for a, b in chain[j]:
                state_a, state_b = oy.state_for_key(a, j), ox.state_for_key(b, j)
                for symbol, ta in oy.successors(state_a):
                    tb = ox.step(state_b, symbol)
                    if tb is not INADMISSIBLE:
                        image.add((oy.level_key(ta, j - 1), ox.level_key(tb, j - 1)))
            chain[j - 1] = image
        return [
            [(oy.state_for_key(a, n), ox.state_for_key(b, n))
             for a, b in sorted(chain[n], key=_pair_sort_key)]
            for n in range(config.levels + 1)
        ]

    @staticmethod
    def _locally_subordinate(oy, state_a, ox, state_b, depth, previous) -> bool:
        for symbol, ta in oy.successors(state_a):
            tb = ox.step(state_b, symbol)
            if tb is INADMISSIBLE:
                return False
            if (oy.level_key(ta, depth - 1), ox.level_key(tb, depth - 1)) not in previous:
                return False
        return True


def _pair_sort_key(pair) -> str:
    return repr(pair)


def _index_product(sizes: Sequence[int]):
    from itertools import product

    return product(*(range(size) for size in sizes))


class _KeyTable:
    """Realized level keys of an oracle and their truncation index."""

    def __init__(self, oracle: FollowerStateOracle, config: BuilderConfig):
        self.oracle = oracle
        self.config = config
        self._keys: Dict[int, List[Hashable]] = {}
        self._fallback: Optional[List[Hashable]] = None
        self._closure: Optional[List[Hashable]] = None

    def keys(self, depth: int) -> List[Hashable]:
        if depth not in self._keys:
            oracle = self.oracle
            if oracle.finite:
                if self._closure is None:
                    self._closure = state_graph(oracle).vertices
                keys = self._closure
            else:
                keys = oracle.enumerate_level_keys(depth)
                if keys is None:
                    if self._fallback is None:
                        self._fallback = approximate_states(oracle, self.config)
                    keys = _ordered_unique(oracle.level_key(s, depth) for s in self._fallback)
            self._keys[depth] = keys
        return self._keys[depth]

    def children(self, depth: int) -> Dict[Hashable, List[Hashable]]:
        index: Dict[Hashable, List[Hashable]] = defaultdict(list)
        for key in self.keys(depth):
            state = self.oracle.state_for_key(key, depth)
            index[self.oracle.level_key(state, depth - 1)].append(key)
        return index


def build_pair_lgs(spec_y: SubshiftSpec, spec_x: SubshiftSpec, config: BuilderConfig) -> LambdaGraphSystem:
    return PairBuilder(spec_y, spec_x, config).build()


def estimate_candidates(spec_y: SubshiftSpec, config: BuilderConfig,
                        spec_x: Optional[SubshiftSpec] = None) -> Optional[int]:
    """Predicted peak vertex count used by the CLI resource guard.

    Canonical: product of the factor key counts at depth N (at the horizon in
    approx mode). Pair: the larger of the final product size
    Π max(e_Y(N), e_X(N))·(N+1) and the per-factor work at the horizon
    H = N + M, max(e_Y(H), e_X(H))·(H+1), where factors built separately are
    combined only at the end.
    """
    N = config.levels
    if spec_x is None:
        depth = N if config.mode == "exact" else config.horizon
        total = 1
        for factor in factorize(spec_y) or [spec_y]:
            estimate = factor.oracle.estimate_level_keys(depth)
            if estimate is None:
                return None
            total *= estimate
        return total
    factors_y = factorize(spec_y) or [spec_y]
    factors_x = factorize(spec_x) or [spec_x]
    if len(factors_y) != len(factors_x):
        factors_y, factors_x = [spec_y], [spec_x]
    H = config.horizon
    final, work = 1, 0
    for fy, fx in zip(factors_y, factors_x):
        oy, ox = fy.oracle, fx.oracle
        estimates = [oy.estimate_level_keys(N), ox.estimate_level_keys(N),
                     oy.estimate_level_keys(H), ox.estimate_level_keys(H)]
        if None in estimates:
            return None
        final *= max(estimates[0], estimates[1]) * (N + 1)
        if not (oy.finite and ox.finite and config.mode == "exact"):
            work = max(work, max(estimates[2], estimates[3]) * (H + 1))
    return max(final, work)


def brute_force_reference(spec: SubshiftSpec, levels: int, context_bound: int,
                          spec_x: Optional[SubshiftSpec] = None) -> List[Set]:
    """Explicit vertex sets per level from explicit word sets.

    Single shift: the truncated follower sets Γ⁺_m of the states of left
    contexts of length ≤ ``context_bound`` that survive the eventual image of
    the finite state graph. Pair: values (Γ⁺_{Y,m}(b), Γ⁺_{X,m}(a)) where the
    contexts b and a end in a common word of length
    ``context_bound - context_bound // 2`` and stay subordinate along it.
    """
    if spec_x is None:
        return _brute_force_single(spec, levels, context_bound)
    return _brute_force_pair(spec, spec_x, levels, context_bound)


def _explicit_context(oracle, state, n, cache) -> frozenset:
    key = (oracle.level_key(state, n), n)
    if key not in cache:
        words = set()
        layer = [((), state)]
        for _ in range(n):
            layer = [(w + (s,), t) for w, st in layer for s, t in oracle.successors(st)]
        words.update(w for w, _ in layer)
        cache[key] = frozenset(words)
    return cache[key]


def _truncate(words: frozenset, m: int) -> frozenset:
    return frozenset(w[:m] for w in words)


def _brute_force_single(spec, levels, context_bound) -> List[Set]:
    oracle = spec.oracle
    graph = nx.MultiDiGraph()
    root = oracle.root_state()
    graph.add_node(root)
    frontier = [root]
    for _ in range(context_bound):
        advanced = []
        for state in frontier:
            for symbol, target in oracle.successors(state):
                if target not in graph:
                    graph.add_node(target)
                    advanced.append(target)
                graph.add_edge(state, target, label=symbol)
        frontier = advanced
    current = set(graph.nodes)
    while True:
        image = {t for s, t in graph.edges() if s in current}
        if image == current:
            break
        current = image
    cache = {}
    top = {_explicit_context(oracle, state, levels, cache) for state in current}
    return [{_truncate(value, m) for value in top} for m in range(levels + 1)]


def _brute_force_pair(spec_y, spec_x, levels, context_bound) -> List[Set]:
    oy, ox = spec_y.oracle, spec_x.oracle
    head = context_bound // 2
    common = context_bound - head

    def reachable(oracle):
        states = {oracle.root_state()}
        frontier = list(states)
        for _ in range(head):
            advanced = []
            for state in frontier:
                for _, target in oracle.successors(state):
                    if target not in states:
                        states.add(target)
                        advanced.append(target)
            frontier = advanced
        return list(states)

    layer = {}
    for sy in reachable(oy):
        for sx in reachable(ox):
            layer.setdefault((oy.level_key(sy, levels + common), ox.level_key(sx, levels + common)), (sy, sx))
    for step in range(common):
        remaining = common - step - 1
        advanced = {}
        for sy, sx in layer.values():
            for symbol, ty in oy.successors(sy):
                tx = ox.step(sx, symbol)
                if tx is INADMISSIBLE:
                    continue
                if not subordinate_to_depth(oy, ty, ox, tx, levels):
                    continue
                key = (oy.level_key(ty, levels + remaining), ox.level_key(tx, levels + remaining))
                advanced.setdefault(key, (ty, tx))
        layer = advanced
    cache_y, cache_x = {}, {}
    top = set()
    for sy, sx in layer.values():
        words_y = _explicit_context(oy, sy, levels, cache_y)
        words_x = _explicit_context(ox, sx, levels, cache_x)
        if words_y <= words_x:
            top.add((words_y, words_x))
    return [{(_truncate(y, m), _truncate(x, m)) for y, x in top} for m in range(levels + 1)]


def explicit_levels(system: LambdaGraphSystem, oracle_x: Optional[FollowerStateOracle] = None) -> List[Set]:
    """Vertex sets of a built system as explicit word-set values.

    Single systems give the path-label sets of their vertices; pair systems
    (with ``oracle_x``) give (Y path labels, X context of the representative).
    """
    from ..core.lgs import vertex_context

    levels = []
    cache = {}
    for n in range(system.top_level + 1):
        values = set()
        for v in range(system.vertex_count(n)):
            words = vertex_context(system, n, v)
            if oracle_x is None:
                values.add(words)
            else:
                _, sx = system.representatives[n][v]
                values.add((words, _explicit_context(oracle_x, sx, n, cache)))
        levels.append(values)
    return levels


