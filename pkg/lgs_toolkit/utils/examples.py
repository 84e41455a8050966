#!/usr/bin/env python3
"""
λ-graph system toolkit - builtin examples

Golden mean and even shifts, the full 2-shift, the Dyck shift D₂ with its
cartesian powers and D₂ × S₂, the embeddings Y⁻, Y⁺ and Y of D₂ × S₂ (× S₂) into powers
of D₂, and the γ-extended Dyck shift with D₂ as a subsystem. Each example
carries the growth rates published for it.
"""

import math
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..core.models import Alphabet, SpecError
from ..core.shannon import ShannonGraph
from ..core.shifts import (
    SFT, FullShift, MonoidShift, SoficShift, SubshiftSpec, block_embedding_spec, dyck2_table,
    gamma_table, product_spec,
)

# Φ is the identity on D₂; Φ⁻ and Φ⁺ send S₂ onto the openers and closers.
PHI_MINUS = {"0": "a-", "1": "b-"}
PHI_PLUS = {"0": "a+", "1": "b+"}

DEFAULT_LEVELS: Dict[str, int] = {
    "gm": 8, "even": 8, "full2": 8, "dyck2": 8, "dyck2xs2": 8,
    "dyck2x2": 6, "yminus": 6, "yplus": 6, "gamma": 6,
    "dyck2x3": 4, "ytriple": 4,
}

EXAMPLE_NAMES = (
    "gm", "even", "full2", "dyck2", "dyck2xs2", "dyck2x2", "dyck2x3", "yminus", "yplus", "ytriple", "gammaK=<k>",
)

# the γ-shift has 2 + K openers, so its keys at the horizon N + M grow like (2 + K)^(N + M)
GAMMA_BUFFER = 2


@dataclass
class Reference:
    """A published growth rate.

    ``system`` is ``"primary"`` for the example's own system and
    ``"ambient"`` for the canonical system of its ambient shift.
    """
    quantity: str
    expression: str
    value: float
    system: str = "primary"
    disputed: bool = False


@dataclass
class BuiltinExample:
    name: str
    description: str
    spec: SubshiftSpec
    ambient: Optional[SubshiftSpec] = None
    levels: int = 8
    # None keeps the builder default (buffer = levels)
    buffer: Optional[int] = None
    references: List[Reference] = field(default_factory=list)

    @property
    def is_pair(self) -> bool:
        return self.ambient is not None


def golden_mean() -> SFT:
    return SFT(Alphabet(("0", "1")), (("1", "1"),))


def even_shift() -> SoficShift:
    graph = ShannonGraph.from_edges(
        [("A", "A", "0"), ("A", "B", "1"), ("B", "A", "1")],
        alphabet=Alphabet(("0", "1")),
    )
    return SoficShift(graph)


def full_shift(size: int = 2) -> FullShift:
    return FullShift(Alphabet(tuple(str(i) for i in range(size))))


def dyck2() -> MonoidShift:
    return MonoidShift(dyck2_table())


def dyck_power(k: int) -> SubshiftSpec:
    return product_spec([dyck2() for _ in range(k)])


def dyck_embedding(maps: List[Optional[Dict[str, str]]]) -> SubshiftSpec:
    """Image of D₂ × S₂^{k-1} in D₂^k under Φ × maps[1] × ... .

    ``maps[0]`` is None (Φ, the identity on D₂); the other entries send the
    S₂ symbols 0 and 1 into the D₂ alphabet.
    """
    factors = [dyck2() if m is None else full_shift(2) for m in maps]
    source = product_spec(factors)
    mapping = {
        symbol: tuple(s if m is None else m[s] for s, m in zip(symbol, maps))
        for symbol in source.alphabet
    }
    return block_embedding_spec(source, mapping, dyck_power(len(maps)).alphabet)


def gamma_shift(k: int) -> MonoidShift:
    return MonoidShift(gamma_table(k))


def _gamma_example(k: int) -> BuiltinExample:
    return BuiltinExample(
        f"gammaK={k}",
        f"D₂ inside the Dyck shift extended by {k} absorbing bracket pair(s)",
        dyck2(), gamma_shift(k), DEFAULT_LEVELS["gamma"], GAMMA_BUFFER,
        [
            Reference("separation entropy of D₂ in X", f"log 2 + log {k}", math.log(2) + math.log(k), disputed=True),
            Reference("λ-entropy of X", f"log {2 + k}", math.log(2 + k), system="ambient"),
        ],
    )


def create_example(name: str) -> BuiltinExample:
    """Builtin example by name; ``gammaK=<k>`` selects the γ-extension with K = k."""
    log4, log2 = math.log(4), math.log(2)
    if name == "gm":
        return BuiltinExample(name, "golden mean shift (no 11)", golden_mean(), levels=DEFAULT_LEVELS[name])
    if name == "even":
        return BuiltinExample(name, "even shift (even runs of 1 between 0s)", even_shift(),
                              levels=DEFAULT_LEVELS[name])
    if name == "full2":
        return BuiltinExample(name, "full 2-shift", full_shift(2), levels=DEFAULT_LEVELS[name])
    if name == "dyck2":
        return BuiltinExample(name, "Dyck shift D₂", dyck2(), levels=DEFAULT_LEVELS[name],
                              references=[Reference("λ-entropy of D₂", "log 2", log2)])
    if name == "dyck2xs2":
        return BuiltinExample(name, "D₂ × S₂", product_spec([dyck2(), full_shift(2)]),
                              levels=DEFAULT_LEVELS[name],
                              references=[Reference("λ-entropy of D₂ × S₂", "log 2", log2)])
    if name == "dyck2x2":
        return BuiltinExample(name, "D₂ × D₂", dyck_power(2), levels=DEFAULT_LEVELS[name],
                              references=[Reference("λ-entropy of D₂ × D₂", "log 4", log4)])
    if name == "dyck2x3":
        return BuiltinExample(name, "D₂ × D₂ × D₂", dyck_power(3), levels=DEFAULT_LEVELS[name],
                              references=[Reference("λ-entropy of D₂ × D₂ × D₂", "log 6", math.log(6),
                                                    disputed=True)])
    if name == "yminus":
        return BuiltinExample(
            name, "Y⁻ = (Φ × Φ⁻)(D₂ × S₂) inside D₂ × D₂",
            dyck_embedding([None, PHI_MINUS]), dyck_power(2), DEFAULT_LEVELS[name],
            references=[Reference("separation entropy of Y⁻ in D₂ × D₂", "log 4", log4),
                        Reference("λ-entropy of D₂ × D₂", "log 4", log4, system="ambient")],
        )
    if name == "yplus":
        return BuiltinExample(
            name, "Y⁺ = (Φ × Φ⁺)(D₂ × S₂) inside D₂ × D₂",
            dyck_embedding([None, PHI_PLUS]), dyck_power(2), DEFAULT_LEVELS[name],
            references=[Reference("separation entropy of Y⁺ in D₂ × D₂", "log 2", log2)],
        )
    if name == "ytriple":
        return BuiltinExample(
            name, "Y = (Φ × Φ⁻ × Φ⁺)(D₂ × S₂ × S₂) inside D₂ × D₂ × D₂",
            dyck_embedding([None, PHI_MINUS, PHI_PLUS]), dyck_power(3), DEFAULT_LEVELS[name],
            references=[Reference("separation entropy of Y in D₂ × D₂ × D₂", "log 4", log4)],
        )
    match = re.fullmatch(r"gammaK?=?(\d+)", name)
    if match:
        k = int(match.group(1))
        if k < 1:
            raise SpecError(f"gamma example needs K >= 1, got {k}")
        return _gamma_example(k)
    raise SpecError(f"unknown example {name!r}, expected one of {', '.join(EXAMPLE_NAMES)}")
