#!/usr/bin/env python3
"""
λ-graph system toolkit - data model definitions

Alphabets, words, monoid tables and reduced forms, builder configuration and
the exception hierarchy shared by every module of the package.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple


# A word is a tuple of symbol identifiers. Symbols are strings for atomic
# alphabets, tuples for product alphabets and ``Primed`` for the primed half
# of a bipartite coding.
Symbol = Hashable
Word = Tuple[Symbol, ...]

EMPTY_WORD: Word = ()


class LgsError(Exception):
    """Base class of all toolkit errors."""


class SpecError(LgsError):
    """Malformed subshift description or alphabet mismatch."""


class SpecFormatError(SpecError):
    """Shift-definition document violates the schema."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class ContainmentError(LgsError):
    """A subshift is not contained in its ambient subshift."""

    def __init__(self, message: str, counterexample: Optional[Word] = None):
        super().__init__(message)
        self.counterexample = counterexample


class ShannonGraphError(LgsError):
    """A labeled graph violates a precondition."""

    def __init__(self, message: str, vertices: Sequence[Any] = ()):
        super().__init__(message)
        self.vertices = list(vertices)


class SubordinationError(LgsError):
    """A vertex of the subordinate graph has no partner."""

    def __init__(self, message: str, vertex: Any = None, witness: Optional[Word] = None):
        super().__init__(message)
        self.vertex = vertex
        self.witness = witness


class NotForwardSeparatedError(LgsError):
    """Two presentation vertices share every tested forward context."""


class InsufficientLevelsError(LgsError):
    """An estimate needs more levels than the system has."""


class WitnessConstructionError(LgsError):
    """A recoded context matches no vertex of the tilde system."""

    def __init__(self, message: str, level: int = 0, witness: Any = None):
        super().__init__(message)
        self.level = level
        self.witness = witness


class ContextExhaustedError(LgsError):
    """A truncated follower state was read deeper than its key length."""


class ResourceLimitError(LgsError):
    """Predicted or observed candidate count exceeds the configured ceiling."""

    def __init__(self, message: str, predicted: int = 0, ceiling: int = 0):
        super().__init__(message)
        self.predicted = predicted
        self.ceiling = ceiling


@dataclass(frozen=True)
class Primed:
    """Primed copy of a symbol (the Δ̃ half of a two-block split)."""
    base: Symbol

    def __str__(self) -> str:
        return f"{symbol_name(self.base)}'"


def symbol_name(symbol: Symbol) -> str:
    """Stable ASCII identifier of a symbol, used for sorting and export."""
    if isinstance(symbol, str):
        return symbol
    if isinstance(symbol, tuple):
        return "(" + ",".join(symbol_name(s) for s in symbol) + ")"
    return str(symbol)


def word_key(word: Word) -> Tuple[str, ...]:
    """Sort key for words over heterogeneous symbol types."""
    return tuple(symbol_name(s) for s in word)


def word_name(word: Word, separator: str = " ") -> str:
    return separator.join(symbol_name(s) for s in word)


def iota_minus(word: Word) -> Word:
    """Drop the first symbol."""
    return word[1:]


def iota_plus(word: Word) -> Word:
    """Drop the last symbol."""
    return word[:-1]


def sorted_words(words: Iterable[Word]) -> List[Word]:
    return sorted(words, key=word_key)


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of symbols with optional display names."""
    symbols: Tuple[Symbol, ...]
    names: Dict[Symbol, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise SpecError("alphabet must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            seen = set()
            duplicates = [s for s in self.symbols if s in seen or seen.add(s)]
            raise SpecError(f"duplicate symbols in alphabet: {duplicates}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._index

    def index(self, symbol: Symbol) -> int:
        return self._index[symbol]

    def name(self, symbol: Symbol) -> str:
        if symbol in self.names:
            return self.names[symbol]
        if isinstance(symbol, tuple):
            return "(" + ",".join(str(s) for s in symbol) + ")"
        return str(symbol)

    def display(self, word: Word) -> str:
        return " ".join(self.name(s) for s in word)

    def check_word(self, word: Word) -> Word:
        """Return ``word`` as a tuple, raising SpecError on foreign symbols."""
        word = tuple(word)
        for position, symbol in enumerate(word):
            if symbol not in self._index:
                raise SpecError(f"symbol {symbol!r} at position {position} is not in the alphabet")
        return word

    def is_subset_of(self, other: "Alphabet") -> bool:
        return all(s in other for s in self.symbols)

    @classmethod
    def product(cls, alphabets: Sequence["Alphabet"]) -> "Alphabet":
        """Cartesian product, ordered lexicographically by factor order."""
        from itertools import product

        symbols = tuple(product(*(a.symbols for a in alphabets)))
        names = {
            s: "(" + ",".join(a.name(c) for a, c in zip(alphabets, s)) + ")"
            for s in symbols
        }
        return cls(symbols, names)


class _Zero:
    """The zero of a monoid table; a word reducing to it is inadmissible."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO"

    def __bool__(self) -> bool:
        return False


ZERO = _Zero()

UNIT = "unit"
ZERO_RULE = "zero"


@dataclass(frozen=True)
class MonoidTable:
    """Opener/closer table of a Dyck-type monoid.

    ``rules`` maps every (opener, closer) pair to ``"unit"`` or ``"zero"``.
    Openers always push; a closer on an empty stack is kept as an unmatched
    closer.
    """
    openers: Tuple[str, ...]
    closers: Tuple[str, ...]
    rules: Dict[Tuple[str, str], str] = field(compare=False, hash=False)
    names: Dict[str, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "openers", tuple(self.openers))
        object.__setattr__(self, "closers", tuple(self.closers))
        if not self.openers or not self.closers:
            raise SpecError("monoid table needs at least one opener and one closer")
        overlap = set(self.openers) & set(self.closers)
        if overlap:
            raise SpecError(f"symbols are both opener and closer: {sorted(overlap)}")
        for opener in self.openers:
            for closer in self.closers:
                rule = self.rules.get((opener, closer))
                if rule not in (UNIT, ZERO_RULE):
                    raise SpecError(f"rule for ({opener}, {closer}) must be 'unit' or 'zero', got {rule!r}")
        object.__setattr__(self, "_opener_set", frozenset(self.openers))

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.openers + self.closers, dict(self.names))

    def is_opener(self, symbol: str) -> bool:
        return symbol in self._opener_set

    def rule(self, opener: str, closer: str) -> str:
        return self.rules[(opener, closer)]


@dataclass(frozen=True)
class ReducedForm:
    """Canonical reduced form: unmatched closers followed by the opener stack."""
    unmatched_closers: Word = ()
    unmatched_openers: Word = ()

    @property
    def is_unit(self) -> bool:
        return not self.unmatched_closers and not self.unmatched_openers

    @property
    def symbols(self) -> Word:
        return self.unmatched_closers + self.unmatched_openers


MODES = ("exact", "approx")


@dataclass
class BuilderConfig:
    """Finite truncation policy for the builders."""
    levels: int
    buffer: Optional[int] = None
    context_bound: Optional[int] = None
    mode: str = "exact"
    max_candidates: int = 10_000_000

    def __post_init__(self):
        if self.buffer is None:
            self.buffer = self.levels
        if self.context_bound is None:
            self.context_bound = 2 * self.levels + 2
        if self.levels < 1:
            raise ValueError(f"levels must be >= 1, got {self.levels}")
        if self.buffer < 0:
            raise ValueError(f"buffer must be >= 0, got {self.buffer}")
        if self.context_bound < self.levels:
            raise ValueError(
                f"context bound {self.context_bound} must be >= levels {self.levels}"
            )
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")

    @property
    def horizon(self) -> int:
        """Deepest level explored by the pair builder."""
        return self.levels + self.buffer


@dataclass
class RunManifest:
    """One CLI invocation."""
    command: str
    inputs: List[str] = field(default_factory=list)
    example: Optional[str] = None
    config: Optional[BuilderConfig] = None
    output_dir: str = "lgs_output"
    report: str = "text"
    exports: List[str] = field(default_factory=list)
    max_candidates: int = 10_000_000
    sse_mode: str = "canonical"


class _Inadmissible:
    """Result of reading a symbol that no admissible continuation starts with."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INADMISSIBLE"

    def __bool__(self) -> bool:
        return False


INADMISSIBLE = _Inadmissible()
