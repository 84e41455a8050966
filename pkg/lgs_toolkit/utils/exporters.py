#!/usr/bin/env python3
"""
λ-graph system toolkit - artifact writers

JSON, DOT and CSV renderings of systems, entropy reports, validation reports
and SSE witnesses. Output is deterministic: identical inputs give
byte-identical files.
"""

import csv
import json
import logging
import os
from typing import Any, Dict, Iterable, List

from ..core.entropy import EntropyReport
from ..core.lgs import LambdaGraphSystem
from ..core.models import Primed, symbol_name
from ..core.sse import SSEReport, SSEWitness
from ..filters.checks import ValidationReport

log = logging.getLogger(__name__)


def describe(value: Any) -> str:
    """Stable text rendering of a vertex label."""
    if isinstance(value, (str, Primed)):
        return str(value)
    if isinstance(value, (frozenset, set)):
        return "{" + ", ".join(sorted(describe(v) for v in value)) + "}"
    if isinstance(value, tuple):
        return "(" + ",".join(describe(v) for v in value) + ")"
    return str(value)


def system_to_dict(system: LambdaGraphSystem) -> Dict[str, Any]:
    levels = []
    for n in range(system.top_level + 1):
        level: Dict[str, Any] = {
            "level": n,
            "vertices": [describe(v) for v in system.vertices[n]],
        }
        if n > 0:
            level["edges"] = [[s, t, symbol_name(label)] for s, t, label in sorted(system.edges[n], key=_edge_key)]
            level["iota"] = list(system.iota[n])
        levels.append(level)
    return {
        "name": system.name,
        "alphabet": [system.alphabet.name(s) for s in system.alphabet],
        "shannon": system.shannon,
        "counts": system.counts(),
        "edge_counts": [system.edge_count(n) for n in range(system.top_level + 1)],
        "caveats": list(system.caveats),
        "levels": levels,
    }


def _edge_key(edge):
    source, target, label = edge
    return (source, target, symbol_name(label))


def validation_to_dict(report: ValidationReport) -> Dict[str, Any]:
    return {
        "system": report.system,
        "passed": report.passed,
        "checks": [
            {"name": r.name, "passed": r.passed, "failures": [describe(f) for f in r.failures[:50]],
             "detail": r.detail}
            for r in report.results
        ],
    }


def witness_to_dict(witness: SSEWitness) -> Dict[str, Any]:
    return {
        "mode": witness.mode,
        "levels": witness.levels,
        "K": {str(n): witness.K[n].to_lists() for n in sorted(witness.K)},
        "K_tilde": {str(n): witness.K_tilde[n].to_lists() for n in sorted(witness.K_tilde)},
    }


def write_json(data: Any, path: str) -> str:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write("\n")
    log.debug("wrote %s", path)
    return path


def write_system_json(system: LambdaGraphSystem, path: str) -> str:
    return write_json(system_to_dict(system), path)


def system_to_dot(system: LambdaGraphSystem) -> str:
    """Graphviz source: one rank per level, solid labeled edges, dashed ι-arrows."""
    lines = [f'digraph "{system.name or "lgs"}" {{', "  rankdir=TB;", "  node [shape=circle, fontsize=10];"]
    for n in range(system.top_level, -1, -1):
        names = " ".join(f'"{n}:{v}"' for v in range(system.vertex_count(n)))
        lines.append(f"  {{ rank=same; {names} }}")
    for n in range(1, system.top_level + 1):
        for source, target, label in sorted(system.edges[n], key=_edge_key):
            text = system.alphabet.name(label).replace('"', '\\"')
            lines.append(f'  "{n}:{source}" -> "{n - 1}:{target}" [label="{text}"];')
        for v, image in enumerate(system.iota[n]):
            lines.append(f'  "{n}:{v}" -> "{n - 1}:{image}" [style=dashed, arrowhead=none, color=gray];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(system: LambdaGraphSystem, path: str) -> str:
    with open(path, "w", encoding="utf-8") as f:
        f.write(system_to_dot(system))
    log.debug("wrote %s", path)
    return path


def write_csv(rows: Iterable[Dict[str, Any]], path: str, columns: List[str]) -> str:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row.get(k)) for k in columns})
    log.debug("wrote %s", path)
    return path


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


ENTROPY_COLUMNS = ["level", "count", "normalized", "increment", "increment_log2", "per_vertex_max"]


def write_entropy_csv(report: EntropyReport, path: str) -> str:
    columns = ENTROPY_COLUMNS if report.per_vertex_max is not None else ENTROPY_COLUMNS[:-1]
    return write_csv(report.rows(), path, columns)


def entropy_text(report: EntropyReport) -> str:
    lines = [f"{report.kind} entropy of {report.name}"]
    lines.append(f"{'n':>3} {'count':>12} {'(1/n)log':>10} {'increment':>10}")
    for row in report.rows():
        normalized = "" if row["normalized"] is None else f"{row['normalized']:.4f}"
        increment = "" if row["increment"] is None else f"{row['increment']:.4f}"
        lines.append(f"{row['level']:>3} {row['count']:>12} {normalized:>10} {increment:>10}")
    if report.quoted_rate is not None:
        lines.append(f"quoted rate: {report.quoted_rate:.4f}")
    if report.corrected_rate is not None:
        lines.append(f"corrected rate: {report.corrected_rate:.4f}")
    for caveat in report.caveats:
        lines.append(f"caveat: {caveat}")
    return "\n".join(lines) + "\n"


def write_entropy_report(report: EntropyReport, output_dir: str, fmt: str, stem: str = "entropy") -> str:
    """Write an entropy report as csv, json or text; returns the path."""
    if fmt == "csv":
        return write_entropy_csv(report, os.path.join(output_dir, f"{stem}.csv"))
    if fmt == "json":
        return write_json(report.to_dict(), os.path.join(output_dir, f"{stem}.json"))
    if fmt == "text":
        path = os.path.join(output_dir, f"{stem}.txt")
        with open(path, "w", encoding="utf-8") as f:
            f.write(entropy_text(report))
        return path
    raise ValueError(f"unknown report format {fmt!r}")


def sse_to_dict(witness: SSEWitness, report: SSEReport, specification) -> Dict[str, Any]:
    return {
        "specification": {
            "phi": {symbol_name(s): [symbol_name(h) for h in image] for s, image in specification.phi.items()},
            "phi_tilde": {symbol_name(s): [symbol_name(h) for h in image]
                          for s, image in specification.phi_tilde.items()},
        },
        "witness": witness_to_dict(witness),
        "verification": report.to_dict(),
    }
