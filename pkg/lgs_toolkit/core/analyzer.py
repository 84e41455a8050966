#!/usr/bin/env python3
"""
λ-graph system toolkit - run orchestration

``ShiftAnalyzer`` carries out one manifest: it builds the requested systems,
validates them, computes growth rates or SSE certificates and writes the
artifacts into the output directory.
"""

import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..filters.checks import ValidationReport, validate_lgs
from ..processors.builders import (
    build_canonical_lgs, build_pair_lgs, build_pair_word_lgs, build_word_lgs, estimate_candidates,
)
from ..utils.examples import BuiltinExample, create_example
from ..utils.exporters import (
    sse_to_dict, validation_to_dict, write_csv, write_dot, write_entropy_report, write_json,
    write_system_json,
)
from ..utils.loader import load_spec
from ..visualization.visualizer import Visualizer
from .entropy import (
    EntropyReport, check_pairword_path_bijection, check_projection_inequality, lambda_entropy,
    volume_entropy,
)
from .lgs import LambdaGraphSystem
from .models import BuilderConfig, ResourceLimitError, RunManifest, SpecError
from .shifts import SubshiftSpec
from .sse import (
    Specification, build_sse_witness, tilde_presentation, tilde_subsystem, two_block_split,
    validate_specification, verify_sse,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_VERIFICATION = 3

COMPARISON_COLUMNS = [
    "example", "quantity", "published", "published_value", "measured", "quoted_rate",
    "corrected_rate", "difference", "disputed", "levels",
]


@dataclass
class RunOutcome:
    """Exit status, written artifacts and a printable summary of one run."""
    status: int = EXIT_OK
    artifacts: List[str] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    reports: List[EntropyReport] = field(default_factory=list)
    messages: List[str] = field(default_factory=list)

    def fail(self, status: int, message: str):
        # a verification failure outranks a validation failure
        self.status = max(self.status, status)
        self.messages.append(message)


def measured_rate(report: EntropyReport) -> Optional[float]:
    """Rate compared against published values: polynomial-corrected for pair systems."""
    if report.kind == "separation" and report.corrected_rate is not None:
        return report.corrected_rate
    return report.quoted_rate


def published_comparison(example: BuiltinExample, measurements: Dict[str, EntropyReport]) -> List[Dict[str, Any]]:
    """One row per published value of an example next to the measured rate."""
    rows = []
    for reference in example.references:
        report = measurements.get(reference.system)
        if report is None:
            continue
        measured = measured_rate(report)
        rows.append({
            "example": example.name,
            "quantity": reference.quantity,
            "published": reference.expression,
            "published_value": reference.value,
            "measured": measured,
            "quoted_rate": report.quoted_rate,
            "corrected_rate": report.corrected_rate,
            "difference": None if measured is None else measured - reference.value,
            "disputed": reference.disputed,
            "levels": report.levels,
        })
    return rows


class ShiftAnalyzer:
    """Runs manifests against an output directory."""

    def __init__(self, manifest: RunManifest):
        self.manifest = manifest
        self.config = manifest.config or BuilderConfig(8)
        self.output_dir = manifest.output_dir
        os.makedirs(self.output_dir, exist_ok=True)
        self.visualizer = Visualizer(self.output_dir) if "png" in manifest.exports else None

    # ---- inputs -------------------------------------------------------------

    def _inputs(self, count: int) -> List[SubshiftSpec]:
        paths = self.manifest.inputs
        if len(paths) != count:
            raise SpecError(f"{self.manifest.command} needs {count} shift document(s), got {len(paths)}")
        return [load_spec(p) for p in paths]

    def _guard(self, spec_y: SubshiftSpec, spec_x: Optional[SubshiftSpec] = None):
        predicted = estimate_candidates(spec_y, self.config, spec_x)
        ceiling = self.manifest.max_candidates
        if predicted is not None and predicted > ceiling:
            raise ResourceLimitError(
                f"predicted {predicted} candidates at {self.config.levels} levels exceed the ceiling {ceiling}",
                predicted, ceiling,
            )
        log.debug("resource guard: predicted %s, ceiling %d", predicted, ceiling)

    # ---- artifacts ------------------------------------------------------------

    def _path(self, name: str) -> str:
        return os.path.join(self.output_dir, name)

    def _export(self, system: LambdaGraphSystem, stem: str, outcome: RunOutcome):
        exports = self.manifest.exports
        if "json" in exports:
            outcome.artifacts.append(write_system_json(system, self._path(f"{stem}.json")))
        if "dot" in exports:
            outcome.artifacts.append(write_dot(system, self._path(f"{stem}.dot")))
        if "png" in exports and self.visualizer is not None:
            outcome.artifacts.append(self.visualizer.visualize_system(system, f"{stem}.png"))

    def _validate(self, system: LambdaGraphSystem, stem: str, outcome: RunOutcome) -> ValidationReport:
        report = validate_lgs(system)
        outcome.artifacts.append(write_json(validation_to_dict(report), self._path(f"{stem}_validation.json")))
        outcome.summary[f"{stem}_valid"] = report.passed
        if not report.passed:
            outcome.fail(EXIT_VALIDATION, f"{stem}: failed checks {report.failed_checks()}")
        return report

    def _report(self, report: EntropyReport, stem: str, outcome: RunOutcome):
        outcome.reports.append(report)
        outcome.artifacts.append(write_entropy_report(report, self.output_dir, self.manifest.report, stem))
        outcome.summary[f"{stem}_rate"] = report.quoted_rate

    def _system(self, system: LambdaGraphSystem, stem: str, outcome: RunOutcome):
        outcome.summary[f"{stem}_counts"] = system.counts()
        if system.caveats:
            outcome.summary[f"{stem}_caveats"] = list(system.caveats)
        self._validate(system, stem, outcome)
        self._export(system, stem, outcome)

    # ---- commands -------------------------------------------------------------

    def run(self) -> RunOutcome:
        command = self.manifest.command.replace("-", "_")
        handler = getattr(self, f"run_{command}", None)
        if handler is None:
            raise ValueError(f"unknown command {self.manifest.command!r}")
        outcome = handler()
        write_json({"status": outcome.status, "summary": outcome.summary, "messages": outcome.messages},
                   self._path("summary.json"))
        return outcome

    def run_canonical(self) -> RunOutcome:
        (spec,) = self._inputs(1)
        return self.canonical(spec)

    def canonical(self, spec: SubshiftSpec, outcome: Optional[RunOutcome] = None) -> RunOutcome:
        outcome = outcome or RunOutcome()
        self._guard(spec)
        system = build_canonical_lgs(spec, self.config)
        self._system(system, "canonical", outcome)
        if system.top_level >= 2:
            self._report(lambda_entropy(system), "canonical_entropy", outcome)
        return outcome

    def run_word(self) -> RunOutcome:
        (spec,) = self._inputs(1)
        outcome = RunOutcome()
        system = build_word_lgs(spec, self.config.levels, self.manifest.max_candidates)
        self._system(system, "word", outcome)
        return outcome

    def run_pair(self) -> RunOutcome:
        spec_y, spec_x = self._inputs(2)
        return self.pair(spec_y, spec_x)

    def pair(self, spec_y: SubshiftSpec, spec_x: SubshiftSpec,
             outcome: Optional[RunOutcome] = None) -> RunOutcome:
        outcome = outcome or RunOutcome()
        self._guard(spec_y, spec_x)
        system = build_pair_lgs(spec_y, spec_x, self.config)
        self._system(system, "pair", outcome)
        projection = check_projection_inequality(system)
        outcome.summary["projection_inequality"] = projection
        if not all(projection):
            outcome.fail(EXIT_VERIFICATION, f"projection onto the subsystem fails at levels "
                                            f"{[n for n, ok in enumerate(projection) if not ok]}")
        if system.top_level >= 2:
            report = lambda_entropy(system)
            report.kind = "separation"
            self._report(report, "separation_entropy", outcome)
        return outcome

    def run_pairword(self) -> RunOutcome:
        (spec,) = self._inputs(1)
        outcome = RunOutcome()
        presentation = _presentation(spec)
        levels = self.config.levels
        system = build_pair_word_lgs(spec, presentation, levels)
        self._system(system, "pairword", outcome)
        bijection = check_pairword_path_bijection(spec, presentation, levels)
        outcome.summary["path_bijection"] = bijection
        if not all(bijection):
            outcome.fail(EXIT_VERIFICATION, "pair-word vertex counts differ from presentation path counts")
        if levels >= 2:
            self._report(lambda_entropy(system), "pairword_entropy", outcome)
        return outcome

    def run_entropy(self) -> RunOutcome:
        return self.run_canonical()

    def run_volume(self) -> RunOutcome:
        (spec,) = self._inputs(1)
        outcome = RunOutcome()
        self._guard(spec)
        system = build_canonical_lgs(spec, self.config)
        self._system(system, "canonical", outcome)
        self._report(volume_entropy(system), "volume_entropy", outcome)
        return outcome

    def run_separation(self) -> RunOutcome:
        return self.run_pair()

    def run_sse_split(self) -> RunOutcome:
        paths = self.manifest.inputs
        if self.manifest.sse_mode == "pair":
            spec_y, spec_x = self._inputs(2)
            return self.sse_split(spec_x, "pair", subsystem=spec_y)
        if len(paths) != 1:
            raise SpecError(f"sse-split in {self.manifest.sse_mode} mode needs 1 shift document, got {len(paths)}")
        return self.sse_split(load_spec(paths[0]), self.manifest.sse_mode)

    def sse_split(self, spec: SubshiftSpec, mode: str = "canonical",
                  subsystem: Optional[SubshiftSpec] = None) -> RunOutcome:
        """2-block split of ``spec``, witness in ``mode`` and six-equation verification."""
        outcome = RunOutcome()
        tilde, specification = two_block_split(spec)
        check = validate_specification(specification, spec, tilde)
        outcome.artifacts.append(write_json(validation_to_dict(check), self._path("specification_validation.json")))
        if not check.passed:
            outcome.fail(EXIT_VERIFICATION, f"specification fails {check.failed_checks()}")
            return outcome

        system, tilde_system, ambient = self._sse_systems(spec, tilde, specification, mode, subsystem)
        self._system(system, "sse_system", outcome)
        self._system(tilde_system, "sse_tilde_system", outcome)
        if outcome.status:
            return outcome
        witness = build_sse_witness(mode, system, tilde_system, specification, ambient=ambient)
        verification = verify_sse(witness, system, tilde_system, specification)
        outcome.artifacts.append(write_json(sse_to_dict(witness, verification, specification),
                                            self._path("sse_certificate.json")))
        outcome.summary["sse_mode"] = mode
        outcome.summary["sse_levels"] = witness.levels
        outcome.summary["sse_passed"] = verification.passed
        if not verification.passed:
            first = verification.failures()[0]
            outcome.fail(EXIT_VERIFICATION, f"equation {first.equation} fails at level {first.level}")
        return outcome

    def _sse_systems(self, spec, tilde, specification: Specification, mode: str,
                     subsystem: Optional[SubshiftSpec]):
        config = self.config
        if mode == "canonical":
            self._guard(spec)
            return build_canonical_lgs(spec, config), build_canonical_lgs(tilde, config), None
        if mode == "word":
            return (build_word_lgs(spec, config.levels, self.manifest.max_candidates),
                    build_word_lgs(tilde, config.levels, self.manifest.max_candidates), None)
        if mode == "pairword":
            presentation = _presentation(spec)
            tilde_graph = tilde_presentation(presentation, specification, tilde.alphabet)
            return (build_pair_word_lgs(spec, presentation, config.levels),
                    build_pair_word_lgs(tilde, tilde_graph, config.levels), None)
        if mode == "pair":
            if subsystem is None:
                raise SpecError("pair-mode witnesses need a subsystem")
            self._guard(subsystem, spec)
            tilde_y = tilde_subsystem(subsystem, specification)
            return (build_pair_lgs(subsystem, spec, config), build_pair_lgs(tilde_y, tilde, config),
                    (spec, tilde))
        raise ValueError(f"unknown SSE mode {mode!r}")

    def run_example(self) -> RunOutcome:
        return self.example(create_example(self.manifest.example))

    def example(self, example: BuiltinExample) -> RunOutcome:
        outcome = RunOutcome()
        outcome.summary["example"] = example.name
        if example.is_pair:
            self.pair(example.spec, example.ambient, outcome)
        else:
            self.canonical(example.spec, outcome)
        measurements = {"primary": outcome.reports[-1]} if outcome.reports else {}
        if any(r.system == "ambient" for r in example.references):
            self._guard(example.ambient)
            ambient = build_canonical_lgs(example.ambient, self.config)
            self._validate(ambient, "ambient_canonical", outcome)
            if ambient.top_level >= 2:
                report = lambda_entropy(ambient)
                self._report(report, "ambient_entropy", outcome)
                measurements["ambient"] = report
        rows = published_comparison(example, measurements)
        if rows:
            outcome.summary["comparison"] = rows
            if self.manifest.report == "csv":
                outcome.artifacts.append(write_csv(rows, self._path("comparison.csv"), COMPARISON_COLUMNS))
            else:
                outcome.artifacts.append(write_json(rows, self._path("comparison.json")))
        return outcome


def _presentation(spec: SubshiftSpec):
    presentation = getattr(spec, "presentation", None)
    if presentation is None:
        raise SpecError(f"{spec.describe()} has no finite presentation")
    return presentation()


def rate_in_units(rate: Optional[float]) -> str:
    """'0.6931 (= log 2.000)' style rendering for progress lines."""
    if rate is None:
        return "n/a"
    return f"{rate:.4f} (= log {math.exp(rate):.3f})"
