#!/usr/bin/env python3
"""
λ-graph system toolkit - command line
Builds λ-graph systems for shift documents or builtin examples, reports
growth rates and verifies SSE certificates.
"""

import argparse
import json
import logging
import os
import sys
import traceback
from typing import Any, Dict, List, Optional

from ..utils.examples import EXAMPLE_NAMES, create_example
from ..utils.exporters import describe
from .analyzer import RunOutcome, ShiftAnalyzer, rate_in_units
from .models import (
    MODES, BuilderConfig, ContainmentError, LgsError, ResourceLimitError, RunManifest, SpecFormatError,
    WitnessConstructionError,
)
from .sse import SSE_MODES

EXIT_USAGE = 1
EXIT_VERIFICATION = 3
EXIT_RESOURCE = 4

DEFAULT_OUTPUT = "lgs_output"
DEFAULT_LEVELS = 8

# subcommand -> number of shift documents (None: example name instead)
COMMANDS = {
    "canonical": (1, "build, validate and export the canonical system"),
    "word": (1, "build, validate and export the word system"),
    "pair": (2, "pair system of a subshift Y inside X (documents: Y X)"),
    "pairword": (1, "pair-word system of a presented shift, with the path bijection check"),
    "entropy": (1, "λ-entropy of the canonical system"),
    "volume": (1, "volume entropy (path growth) of the canonical system"),
    "separation": (2, "separation entropy of Y inside X (documents: Y X)"),
    "sse-split": (None, "2-block split, SSE witness and six-equation verification"),
    "example": (None, "run a builtin example"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse reports usage errors with exit status 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--levels", "-N", type=int, help=f"top level N (default: {DEFAULT_LEVELS}, examples: their own)")
    common.add_argument("--buffer", "-M", type=int, help="extra depth M explored by the pair builder (default: N)")
    common.add_argument("--context-bound", "-L", type=int, help="longest left context in approx mode (default: 2N+2)")
    common.add_argument("--mode", choices=MODES, default="exact", help="exact or approx truncation (default: exact)")
    common.add_argument("--out", "--output", "-o", dest="out", default=DEFAULT_OUTPUT,
                        help=f"output directory (default: {DEFAULT_OUTPUT})")
    common.add_argument("--report", choices=("csv", "json", "text"), default="text",
                        help="entropy report format (default: text)")
    common.add_argument("--export", nargs="+", choices=("dot", "json", "png"), default=[],
                        help="export built systems")
    common.add_argument("--max-candidates", type=int, default=10_000_000,
                        help="resource guard ceiling on predicted candidates (default: 10000000)")
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging and tracebacks")

    parser = _Parser(
        prog="lgs-toolkit",
        description="λ-graph system toolkit - canonical, word and pair systems, entropies and SSE witnesses",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  lgs-toolkit canonical data/gm.json --levels 8 --export json dot
  lgs-toolkit pair y.json x.json --levels 5 --buffer 5
  lgs-toolkit sse-split data/gm.json --levels 5
  lgs-toolkit sse-split y.json x.json --sse-mode pair --levels 4
  lgs-toolkit example dyck2 --levels 10 --report csv
  lgs-toolkit example yminus --levels 6
  lgs-toolkit example gammaK=3
        """,
    )
    commands = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    commands.required = True
    for name, (documents, help_text) in COMMANDS.items():
        sub = commands.add_parser(name, parents=[common], help=help_text)
        if name == "example":
            sub.add_argument("name", help=f"one of {', '.join(EXAMPLE_NAMES)}")
        elif name == "sse-split":
            sub.add_argument("inputs", nargs="+", metavar="document",
                             help="shift document X (pair mode: Y X)")
            sub.add_argument("--sse-mode", choices=SSE_MODES, default="canonical",
                             help="systems the witness relates (default: canonical)")
        else:
            sub.add_argument("inputs", nargs=documents, metavar="document", help="shift definition (JSON)")
    return parser


def manifest_from_args(args: argparse.Namespace) -> RunManifest:
    levels, buffer = args.levels, args.buffer
    if args.command == "example":
        example = create_example(args.name)
        levels = example.levels if levels is None else levels
        buffer = example.buffer if buffer is None else buffer
    config = BuilderConfig(
        levels if levels is not None else DEFAULT_LEVELS,
        buffer, args.context_bound, args.mode, args.max_candidates,
    )
    return RunManifest(
        command=args.command,
        inputs=list(getattr(args, "inputs", []) or []),
        example=getattr(args, "name", None),
        config=config,
        output_dir=args.out,
        report=args.report,
        exports=list(args.export),
        max_candidates=args.max_candidates,
        sse_mode=getattr(args, "sse_mode", "canonical"),
    )


def error_document(error: BaseException) -> Dict[str, Any]:
    details: Dict[str, Any] = {}
    if isinstance(error, SpecFormatError):
        details["path"] = error.path
    if isinstance(error, ResourceLimitError):
        details.update(predicted=error.predicted, ceiling=error.ceiling)
    if isinstance(error, ContainmentError) and error.counterexample is not None:
        details["counterexample"] = describe(error.counterexample)
    if isinstance(error, WitnessConstructionError):
        details["level"] = error.level
    return {"error": type(error).__name__, "message": str(error), "details": details}


def exit_status(error: BaseException) -> int:
    if isinstance(error, ResourceLimitError):
        return EXIT_RESOURCE
    if isinstance(error, WitnessConstructionError):
        return EXIT_VERIFICATION
    return EXIT_USAGE


def write_error(output_dir: str, document: Dict[str, Any]) -> Optional[str]:
    try:
        os.makedirs(output_dir, exist_ok=True)
        path = os.path.join(output_dir, "error.json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump(document, f, indent=2, sort_keys=True, ensure_ascii=False)
            f.write("\n")
        return path
    except OSError:
        return None


def _print_outcome(outcome: RunOutcome, verbose: bool):
    print(f"\n📊 Results:")
    for key, value in sorted(outcome.summary.items()):
        if key == "comparison":
            continue
        if key.endswith("_rate"):
            print(f"  {key}: {rate_in_units(value)}")
        elif key.endswith("_counts") and not verbose and len(value) > 12:
            print(f"  {key}: {value[:6]} ... {value[-3:]}")
        else:
            print(f"  {key}: {value}")
    for report in outcome.reports:
        if report.corrected_rate is not None and report.kind == "separation":
            print(f"  {report.name} corrected rate: {rate_in_units(report.corrected_rate)}")
        for caveat in report.caveats:
            print(f"  ⚠️  {report.name}: {caveat}")
    for row in outcome.summary.get("comparison", []):
        marker = " (disputed)" if row["disputed"] else ""
        print(f"  📈 {row['quantity']}: published {row['published']}{marker}, measured {rate_in_units(row['measured'])}")
    if verbose:
        for path in outcome.artifacts:
            print(f"  📁 {path}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    verbose = False
    output_dir = DEFAULT_OUTPUT
    try:
        args = parser.parse_args(argv)
        verbose = args.verbose
        output_dir = args.out
        logging.basicConfig(
            level=logging.DEBUG if verbose else logging.WARNING,
            format="%(asctime)s %(name)s %(levelname)s %(message)s",
        )
        manifest = manifest_from_args(args)

        print("🔍 λ-graph system toolkit")
        print("=" * 60)
        target = manifest.example or " ".join(manifest.inputs)
        print(f"📄 {manifest.command}: {target}")
        print(f"📂 Output directory: {manifest.output_dir}")
        config = manifest.config
        print(f"🎯 Levels N={config.levels}, buffer M={config.buffer}, "
              f"context bound L={config.context_bound}, mode={config.mode}")

        outcome = ShiftAnalyzer(manifest).run()
        _print_outcome(outcome, verbose)
        if outcome.status:
            for message in outcome.messages:
                print(f"❌ {message}")
            document = {"error": "ValidationFailure" if outcome.status == 2 else "VerificationFailure",
                        "message": "; ".join(outcome.messages), "details": outcome.summary}
            path = write_error(manifest.output_dir, document)
            if path:
                print(f"📁 Error report: {path}")
            return outcome.status
        print(f"\n🎉 Done! {len(outcome.artifacts)} artifact(s) in {manifest.output_dir}")
        return 0
    except (UsageError, LgsError, ValueError) as e:
        status = exit_status(e)
        document = error_document(e)
        print(f"❌ {document['error']}: {document['message']}")
        if verbose:
            traceback.print_exc()
        path = write_error(output_dir, document)
        if path:
            print(json.dumps(document, ensure_ascii=False, sort_keys=True))
        return status


if __name__ == "__main__":
    sys.exit(main())
