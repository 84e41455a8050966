#!/usr/bin/env python3
"""
λ-graph system toolkit - shift definition documents

JSON documents describing subshifts. Every document carries a ``kind``:

    full       {"alphabet": [...]}
    sft        {"alphabet": [...], "forbid": [[...], ...]}
    sofic      {"alphabet": [...], "edges": [[source, target, label], ...]}
    monoid     {"openers": [...], "closers": [...], "rules": [[...], ...]}
               rules[i][j] is "unit" or "zero" for opener i and closer j
    gamma      {"k": K}
    product    {"factors": [document, ...]}
    embedding  {"source": document, "map": [[symbol, image], ...],
                "target": document (optional)}

Symbols are strings; JSON lists stand for tuple symbols of product
alphabets. Errors carry the JSON path of the offending value.
"""

import json
import logging
from typing import Any, Callable, Dict, List

from ..core.models import UNIT, ZERO_RULE, Alphabet, LgsError, MonoidTable, SpecError, SpecFormatError, Symbol
from ..core.shannon import ShannonGraph
from ..core.shifts import (
    SFT, FullShift, MonoidShift, SoficShift, SubshiftSpec, block_embedding_spec, gamma_table,
    product_spec,
)

log = logging.getLogger(__name__)


def _require(doc: Dict[str, Any], key: str, path: str) -> Any:
    if key not in doc:
        raise SpecFormatError(f"{path}.{key}", "missing")
    return doc[key]


def _list(value: Any, path: str, nonempty: bool = True) -> List[Any]:
    if not isinstance(value, list):
        raise SpecFormatError(path, f"expected a list, got {type(value).__name__}")
    if nonempty and not value:
        raise SpecFormatError(path, "must not be empty")
    return value


def _symbol(value: Any, path: str) -> Symbol:
    if isinstance(value, str):
        return value
    if isinstance(value, list) and value:
        return tuple(_symbol(v, f"{path}[{i}]") for i, v in enumerate(value))
    raise SpecFormatError(path, f"expected a symbol (string or list), got {value!r}")


def _alphabet(value: Any, path: str, names: Any = None) -> Alphabet:
    symbols = [_symbol(v, f"{path}[{i}]") for i, v in enumerate(_list(value, path))]
    seen = set()
    for i, symbol in enumerate(symbols):
        if symbol in seen:
            raise SpecFormatError(f"{path}[{i}]", f"duplicate symbol {symbol!r}")
        seen.add(symbol)
    return Alphabet(tuple(symbols), dict(names or {}))


def _word(value: Any, path: str, alphabet: Alphabet) -> tuple:
    word = tuple(_symbol(v, f"{path}[{i}]") for i, v in enumerate(_list(value, path)))
    for i, symbol in enumerate(word):
        if symbol not in alphabet:
            raise SpecFormatError(f"{path}[{i}]", f"symbol {symbol!r} is not in the alphabet")
    return word


def _full(doc, path):
    return FullShift(_alphabet(_require(doc, "alphabet", path), f"{path}.alphabet", doc.get("names")))


def _sft(doc, path):
    alphabet = _alphabet(_require(doc, "alphabet", path), f"{path}.alphabet", doc.get("names"))
    forbidden = _list(doc.get("forbid", []), f"{path}.forbid", nonempty=False)
    words = tuple(_word(w, f"{path}.forbid[{i}]", alphabet) for i, w in enumerate(forbidden))
    return SFT(alphabet, words)


def _sofic(doc, path):
    alphabet = _alphabet(_require(doc, "alphabet", path), f"{path}.alphabet", doc.get("names"))
    edges = []
    for i, edge in enumerate(_list(_require(doc, "edges", path), f"{path}.edges")):
        where = f"{path}.edges[{i}]"
        if not isinstance(edge, list) or len(edge) != 3:
            raise SpecFormatError(where, "an edge is [source, target, label]")
        source, target, label = edge
        for i_end, vertex in enumerate((source, target)):
            if not isinstance(vertex, (str, int)) or isinstance(vertex, bool):
                raise SpecFormatError(f"{where}[{i_end}]", f"vertex names are strings or integers, got {vertex!r}")
        label = _symbol(label, f"{where}[2]")
        if label not in alphabet:
            raise SpecFormatError(f"{where}[2]", f"label {label!r} is not in the alphabet")
        edges.append((source, target, label))
    graph = ShannonGraph.from_edges(edges, alphabet=alphabet)
    return SoficShift(graph)


def _monoid(doc, path):
    openers = _alphabet(_require(doc, "openers", path), f"{path}.openers").symbols
    closers = _alphabet(_require(doc, "closers", path), f"{path}.closers").symbols
    rows = _list(_require(doc, "rules", path), f"{path}.rules")
    if len(rows) != len(openers):
        raise SpecFormatError(f"{path}.rules", f"expected {len(openers)} rows (one per opener), got {len(rows)}")
    rules = {}
    for i, row in enumerate(rows):
        row = _list(row, f"{path}.rules[{i}]")
        if len(row) != len(closers):
            raise SpecFormatError(f"{path}.rules[{i}]", f"expected {len(closers)} cells (one per closer), got {len(row)}")
        for j, cell in enumerate(row):
            if cell not in (UNIT, ZERO_RULE):
                raise SpecFormatError(f"{path}.rules[{i}][{j}]", f"expected 'unit' or 'zero', got {cell!r}")
            rules[(openers[i], closers[j])] = cell
    return MonoidShift(MonoidTable(openers, closers, rules, dict(doc.get("names") or {})))


def _gamma(doc, path):
    k = _require(doc, "k", path)
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise SpecFormatError(f"{path}.k", f"expected a positive integer, got {k!r}")
    return MonoidShift(gamma_table(k))


def _product(doc, path):
    factors = _list(_require(doc, "factors", path), f"{path}.factors")
    return product_spec([_parse(f, f"{path}.factors[{i}]") for i, f in enumerate(factors)])


def _embedding(doc, path):
    source = _parse(_require(doc, "source", path), f"{path}.source")
    target = None
    if "target" in doc:
        target = _parse(doc["target"], f"{path}.target").alphabet
    mapping = {}
    for i, pair in enumerate(_list(_require(doc, "map", path), f"{path}.map")):
        where = f"{path}.map[{i}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise SpecFormatError(where, "a map entry is [symbol, image]")
        symbol = _symbol(pair[0], f"{where}[0]")
        if symbol not in source.alphabet:
            raise SpecFormatError(f"{where}[0]", f"symbol {symbol!r} is not in the source alphabet")
        if symbol in mapping:
            raise SpecFormatError(f"{where}[0]", f"symbol {symbol!r} is mapped twice")
        mapping[symbol] = _symbol(pair[1], f"{where}[1]")
    return block_embedding_spec(source, mapping, target)


PARSERS: Dict[str, Callable[[Dict[str, Any], str], SubshiftSpec]] = {
    "full": _full,
    "sft": _sft,
    "sofic": _sofic,
    "monoid": _monoid,
    "gamma": _gamma,
    "product": _product,
    "embedding": _embedding,
}


def _parse(doc: Any, path: str) -> SubshiftSpec:
    if not isinstance(doc, dict):
        raise SpecFormatError(path, f"expected an object, got {type(doc).__name__}")
    kind = _require(doc, "kind", path)
    parser = PARSERS.get(kind)
    if parser is None:
        raise SpecFormatError(f"{path}.kind", f"unknown kind {kind!r}, expected one of {sorted(PARSERS)}")
    try:
        return parser(doc, path)
    except SpecFormatError:
        raise
    except LgsError as e:
        raise SpecFormatError(path, str(e)) from e


def spec_from_document(doc: Any) -> SubshiftSpec:
    """Parse an already-decoded shift document."""
    return _parse(doc, "$")


def load_spec(path: str) -> SubshiftSpec:
    """Read a JSON shift document from disk."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise SpecFormatError("$", f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e}") from e
    spec = spec_from_document(doc)
    log.info("loaded %s from %s", spec.describe(), path)
    return spec
