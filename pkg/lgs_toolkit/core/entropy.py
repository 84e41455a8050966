#!/usr/bin/env python3
"""
λ-graph system toolkit - growth rates

λ-entropy (vertex growth), volume entropy (path growth) and separation
entropy (vertex growth of a pair system), with the level-wise identities that
tie them together.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from .lgs import LambdaGraphSystem
from .models import BuilderConfig, InsufficientLevelsError

log = logging.getLogger(__name__)

# spread of the last three increments below which a rate is quoted without caveat
STABILITY_SPREAD = 0.05


@dataclass
class EntropyReport:
    """Level counts of a system and the growth-rate estimates derived from them."""
    name: str
    counts: List[int]
    kind: str = "lambda"
    per_vertex_max: Optional[List[int]] = None
    caveats: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.stabilized and len(self.counts) >= 4:
            self.caveats.append("not stabilized")

    @property
    def levels(self) -> int:
        return len(self.counts) - 1

    @property
    def normalized(self) -> List[Optional[float]]:
        """(1/n)·log count_n for n ≥ 1."""
        logs = np.log(np.asarray(self.counts, dtype=float))
        return [None] + [float(logs[n] / n) for n in range(1, len(self.counts))]

    @property
    def increments(self) -> List[Optional[float]]:
        """log(count_n / count_{n-1}) for n ≥ 1."""
        logs = np.log(np.asarray(self.counts, dtype=float))
        return [None] + [float(d) for d in np.diff(logs)]

    @property
    def quoted_rate(self) -> Optional[float]:
        increments = self.increments
        return increments[-1] if len(increments) > 1 else None

    @property
    def stabilized(self) -> bool:
        tail = [x for x in self.increments[-3:] if x is not None]
        if len(tail) < 3:
            return False
        return float(np.ptp(tail)) < STABILITY_SPREAD

    @property
    def corrected_rate(self) -> Optional[float]:
        """h from the exact fit log c_n = a + k·log n + n·h on the last three levels."""
        top = self.levels
        if top < 3:
            return None
        levels = np.arange(top - 2, top + 1, dtype=float)
        design = np.column_stack([np.ones(3), np.log(levels), levels])
        values = np.log(np.asarray(self.counts[top - 2:], dtype=float))
        _, _, rate = np.linalg.solve(design, values)
        return float(rate)

    def rows(self) -> List[Dict[str, object]]:
        """One row per level for tabular export."""
        normalized, increments = self.normalized, self.increments
        rows = []
        for n, count in enumerate(self.counts):
            row = {
                "level": n,
                "count": count,
                "normalized": normalized[n],
                "increment": increments[n],
                "increment_log2": None if increments[n] is None else increments[n] / np.log(2),
            }
            if self.per_vertex_max is not None:
                row["per_vertex_max"] = self.per_vertex_max[n]
            rows.append(row)
        return rows

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "kind": self.kind,
            "counts": list(self.counts),
            "quoted_rate": self.quoted_rate,
            "corrected_rate": self.corrected_rate,
            "stabilized": self.stabilized,
            "caveats": list(self.caveats),
            "levels": self.rows(),
        }


def lambda_entropy(system: LambdaGraphSystem) -> EntropyReport:
    if system.top_level < 2:
        raise InsufficientLevelsError(f"λ-entropy needs at least 2 levels, system has {system.top_level}")
    report = EntropyReport(system.name, system.counts(), "lambda", caveats=list(system.caveats))
    log.debug("λ-entropy of %s: %s", system.name, report.quoted_rate)
    return report


def path_counts(system: LambdaGraphSystem) -> List[List[int]]:
    """p(v) = number of paths from v down to level 0."""
    counts = [[1] * system.vertex_count(0)]
    for n in range(1, system.top_level + 1):
        below = counts[-1]
        level = [0] * system.vertex_count(n)
        for source, target, _ in system.edges[n]:
            level[source] += below[target]
        counts.append(level)
    return counts


def volume_entropy(system: LambdaGraphSystem) -> EntropyReport:
    paths = path_counts(system)
    return EntropyReport(
        system.name,
        [sum(level) for level in paths],
        "volume",
        per_vertex_max=[max(level, default=0) for level in paths],
        caveats=list(system.caveats),
    )


def separation_entropy(spec_y, spec_x, config: BuilderConfig) -> EntropyReport:
    from ..processors.builders import build_pair_lgs

    pair = build_pair_lgs(spec_y, spec_x, config)
    report = lambda_entropy(pair)
    report.kind = "separation"
    return report


def check_projection_inequality(pair: LambdaGraphSystem,
                                canonical_y: Optional[LambdaGraphSystem] = None) -> List[bool]:
    """Per level: (C_Y, C_X) ↦ C_Y maps V_n(Y,X) onto V_n(Y), so |V_n(Y)| ≤ |V_n(Y,X)|."""
    if pair.components is None or pair.sub_system is None:
        raise ValueError("projection check needs a pair system")
    reference = canonical_y or pair.sub_system
    result = []
    for n in range(pair.top_level + 1):
        target = reference.vertex_count(n)
        covered = {y for y, _ in pair.components[n]}
        onto = (None not in covered and covered == set(range(pair.sub_system.vertex_count(n)))
                and pair.sub_system.vertex_count(n) == target)
        result.append(onto and target <= pair.vertex_count(n))
    return result


def check_pairword_path_bijection(spec, presentation, levels: int) -> List[bool]:
    """Per level: |V̂_n| equals the level-n path total of the presentation's context system."""
    from ..processors.builders import build_pair_word_lgs

    hat = build_pair_word_lgs(spec, presentation, levels)
    paths = volume_entropy(hat.sub_system).counts
    result = [count == total for count, total in zip(hat.counts(), paths)]
    if not all(result):
        log.info("pair-word counts %s differ from path totals %s", hat.counts(), paths)
    return result
