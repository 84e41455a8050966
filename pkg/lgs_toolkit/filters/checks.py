#!/usr/bin/env python3
"""
λ-graph system toolkit - validation checks

One strategy class per axiom of a λ-graph system; ``validate_lgs`` runs them
all and collects an itemized report.
"""

import logging
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence

import numpy as np

from ..core.lgs import LambdaGraphSystem, check_commutation, extract_sms

log = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    failures: List[Any] = field(default_factory=list)
    detail: str = ""


@dataclass
class ValidationReport:
    system: str
    results: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed_checks(self) -> List[str]:
        return [r.name for r in self.results if not r.passed]

    def result(self, name: str) -> Optional[CheckResult]:
        for r in self.results:
            if r.name == name:
                return r
        return None


class ValidationCheck(ABC):
    """Validation strategy base class."""

    name = ""

    @abstractmethod
    def apply(self, system: LambdaGraphSystem) -> CheckResult:
        """Run the check."""
        pass


class IncomingEdgeCheck(ValidationCheck):
    """Every vertex below the top level is the target of an edge."""

    name = "incoming_edges"

    def apply(self, system):
        failures = []
        for n in range(system.top_level):
            hit = np.zeros(system.vertex_count(n), dtype=bool)
            for _, target, _ in system.edges[n + 1]:
                hit[target] = True
            failures.extend((n, int(v)) for v in np.flatnonzero(~hit))
        return CheckResult(self.name, not failures, failures)


class OutgoingEdgeCheck(ValidationCheck):
    """Every vertex above level 0 has an outgoing edge."""

    name = "outgoing_edges"

    def apply(self, system):
        failures = []
        for n in range(1, system.top_level + 1):
            has_edge = np.zeros(system.vertex_count(n), dtype=bool)
            for source, _, _ in system.edges[n]:
                has_edge[source] = True
            failures.extend((n, int(v)) for v in np.flatnonzero(~has_edge))
        return CheckResult(self.name, not failures, failures)


class IotaSurjectivityCheck(ValidationCheck):
    """ι is a function V_n → V_{n-1} onto V_{n-1}.

    Row sums of the ι-matrix are 1 by construction once every image index is
    in range; column sums must be at least 1.
    """

    name = "iota_surjective"

    def apply(self, system):
        failures = []
        for n in range(1, system.top_level + 1):
            images = np.asarray(system.iota[n], dtype=np.int64)
            lower = system.vertex_count(n - 1)
            if images.size != system.vertex_count(n):
                failures.append((n, "iota is not defined on every vertex"))
                continue
            if images.size and (images.min() < 0 or images.max() >= lower):
                failures.append((n, "iota image out of range"))
                continue
            column_sums = np.bincount(images, minlength=lower)
            failures.extend((n - 1, int(v)) for v in np.flatnonzero(column_sums == 0))
        return CheckResult(self.name, not failures, failures)


class RightResolvingCheck(ValidationCheck):
    """At most one edge per (vertex, label) at each level."""

    name = "right_resolving"

    def apply(self, system):
        failures = []
        for n in range(1, system.top_level + 1):
            seen = Counter((source, label) for source, _, label in system.edges[n])
            failures.extend((n, v, label) for (v, label), c in seen.items() if c > 1)
        return CheckResult(self.name, not failures, failures)


class CommutationCheck(ValidationCheck):
    """M^{(n+1,n)} I^{(n,n-1)} = I^{(n+1,n)} M^{(n,n-1)} at every level."""

    name = "commutation"

    def apply(self, system):
        results = check_commutation(extract_sms(system))
        failures = [(r.level, r.row, r.column) for r in results if not r.passed]
        return CheckResult(self.name, not failures, failures)


DEFAULT_CHECKS = (
    IncomingEdgeCheck, OutgoingEdgeCheck, IotaSurjectivityCheck, RightResolvingCheck, CommutationCheck,
)


def validate_lgs(system: LambdaGraphSystem,
                 checks: Optional[Sequence[ValidationCheck]] = None) -> ValidationReport:
    """Itemized axiom report; the right-resolving check runs only on Shannon systems."""
    if checks is None:
        checks = [
            check() for check in DEFAULT_CHECKS
            if check is not RightResolvingCheck or system.shannon
        ]
    results = [check.apply(system) for check in checks]
    report = ValidationReport(system.name, results)
    if report.passed:
        log.debug("%s: all %d checks pass", system.name or "system", len(results))
    else:
        log.info("%s: failed %s", system.name or "system", report.failed_checks())
    return report
