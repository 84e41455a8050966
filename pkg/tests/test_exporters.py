import json
import os

import pytest
from PIL import Image

from lgs_toolkit.core.entropy import EntropyReport, volume_entropy
from lgs_toolkit.core.models import BuilderConfig, Primed
from lgs_toolkit.core.sse import build_sse_witness, two_block_split, verify_sse
from lgs_toolkit.filters.checks import validate_lgs
from lgs_toolkit.processors.builders import build_canonical_lgs
from lgs_toolkit.utils.exporters import (
    describe, entropy_text, sse_to_dict, system_to_dict, system_to_dot, validation_to_dict,
    write_dot, write_entropy_report,
)
from lgs_toolkit.visualization.visualizer import Visualizer


def test_describe_is_order_independent():
    assert describe(frozenset({("0", "1"), ("0",)})) == "{(0), (0,1)}"
    assert describe((Primed("0"), "1")) == "(0',1)"
    assert describe(3) == "3"


def test_system_dict(gm):
    data = system_to_dict(build_canonical_lgs(gm, BuilderConfig(2)))
    assert data["counts"] == [1, 2, 2]
    assert data["edge_counts"] == [0, 3, 3]
    assert "edges" not in data["levels"][0]
    assert data["levels"][1]["iota"] == [0, 0]
    assert data["alphabet"] == ["0", "1"]


def test_dot_has_ranks_and_iota_arrows(gm):
    text = system_to_dot(build_canonical_lgs(gm, BuilderConfig(2)))
    assert text.count("rank=same") == 3
    assert text.count("style=dashed") == 4
    assert '[label="1"]' in text
    assert text.startswith("digraph")


def test_dot_output_is_deterministic(gm, tmp_path):
    first = write_dot(build_canonical_lgs(gm, BuilderConfig(3)), str(tmp_path / "a.dot"))
    second = write_dot(build_canonical_lgs(gm, BuilderConfig(3)), str(tmp_path / "b.dot"))
    with open(first, "rb") as a, open(second, "rb") as b:
        assert a.read() == b.read()


def test_entropy_csv_formats_floats(tmp_path):
    path = write_entropy_report(EntropyReport("doubling", [1, 2, 4]), str(tmp_path), "csv")
    with open(path, encoding="utf-8") as f:
        lines = f.read().splitlines()
    assert lines[0] == "level,count,normalized,increment,increment_log2"
    assert lines[1] == "0,1,,,"
    assert lines[2] == "1,2,0.693147,0.693147,1.000000"


def test_volume_csv_has_per_vertex_column(gm, tmp_path):
    report = volume_entropy(build_canonical_lgs(gm, BuilderConfig(3)))
    path = write_entropy_report(report, str(tmp_path), "csv", "volume")
    with open(path, encoding="utf-8") as f:
        header = f.readline().strip()
    assert header.endswith("per_vertex_max")
    assert os.path.basename(path) == "volume.csv"


def test_entropy_json_and_text(tmp_path):
    report = EntropyReport("doubling", [1, 2, 4, 8])
    path = write_entropy_report(report, str(tmp_path), "json")
    with open(path, encoding="utf-8") as f:
        assert json.load(f)["counts"] == [1, 2, 4, 8]
    text = entropy_text(report)
    assert "quoted rate: 0.6931" in text
    assert write_entropy_report(report, str(tmp_path), "text").endswith("entropy.txt")


def test_unknown_report_format(tmp_path):
    with pytest.raises(ValueError):
        write_entropy_report(EntropyReport("x", [1, 2, 4]), str(tmp_path), "xml")


def test_validation_dict(gm):
    report = validate_lgs(build_canonical_lgs(gm, BuilderConfig(2)))
    data = validation_to_dict(report)
    assert data["passed"] is True
    assert [c["name"] for c in data["checks"]][0] == "incoming_edges"


def test_certificate_dict(gm):
    tilde, specification = two_block_split(gm)
    config = BuilderConfig(3)
    system, tilde_system = build_canonical_lgs(gm, config), build_canonical_lgs(tilde, config)
    witness = build_sse_witness("canonical", system, tilde_system, specification)
    data = sse_to_dict(witness, verify_sse(witness, system, tilde_system, specification), specification)
    assert data["specification"]["phi"]["1"] == ["1", "1'"]
    assert data["witness"]["mode"] == "canonical"
    assert sorted(data["witness"]["K"]) == ["1", "2", "3"]
    assert data["verification"]["passed"] is True
    json.dumps(data)


def test_level_diagram(gm, tmp_path):
    system = build_canonical_lgs(gm, BuilderConfig(3))
    path = Visualizer(str(tmp_path)).visualize_system(system, "gm.png")
    with Image.open(path) as image:
        assert image.format == "PNG"
        assert image.size[0] >= 480


def test_wide_levels_are_summarized(d2, tmp_path):
    system = build_canonical_lgs(d2, BuilderConfig(4))
    image = Visualizer(str(tmp_path), max_vertices=8).render(system)
    assert image.size[1] == 4 * 90 + 80
