import math

import pytest

from lgs_toolkit.core.entropy import (
    EntropyReport, check_pairword_path_bijection, check_projection_inequality, lambda_entropy,
    path_counts, separation_entropy, volume_entropy,
)
from lgs_toolkit.core.models import BuilderConfig, InsufficientLevelsError
from lgs_toolkit.core.shifts import block_embedding_spec
from lgs_toolkit.processors.builders import build_canonical_lgs, build_pair_lgs
from lgs_toolkit.utils.examples import (
    GAMMA_BUFFER, PHI_MINUS, PHI_PLUS, dyck2, even_shift, full_shift, gamma_shift, golden_mean,
)
from lgs_toolkit.utils.loader import load_spec

DYCK_IN_DYCK = [1, 5, 17, 49, 129, 321, 769]


def test_doubling_counts_give_log_two():
    report = EntropyReport("doubling", [1, 2, 4, 8, 16])
    assert report.stabilized
    assert not report.caveats
    assert report.quoted_rate == pytest.approx(math.log(2))
    assert report.corrected_rate == pytest.approx(math.log(2))
    assert report.normalized[4] == pytest.approx(math.log(2))


def test_polynomial_factor_is_corrected():
    report = EntropyReport("pair", DYCK_IN_DYCK)
    assert report.corrected_rate == pytest.approx(0.7043, abs=1e-3)
    assert abs(report.corrected_rate - math.log(2)) < 0.05
    assert report.quoted_rate == pytest.approx(math.log(769 / 321))
    assert not report.stabilized
    assert "not stabilized" in report.caveats


def test_short_count_lists():
    report = EntropyReport("short", [1, 2, 3])
    assert report.corrected_rate is None
    assert not report.stabilized
    assert report.caveats == []
    assert report.increments[0] is None


def test_rows_and_dict():
    report = EntropyReport("doubling", [1, 2, 4])
    rows = report.rows()
    assert rows[0]["normalized"] is None and rows[0]["increment"] is None
    assert rows[2]["increment_log2"] == pytest.approx(1.0)
    assert "per_vertex_max" not in rows[0]
    data = report.to_dict()
    assert data["counts"] == [1, 2, 4]
    assert data["kind"] == "lambda"
    assert len(data["levels"]) == 3


def test_lambda_entropy_of_dyck(d2):
    report = lambda_entropy(build_canonical_lgs(d2, BuilderConfig(6)))
    assert report.counts == [2 ** (n + 1) - 1 for n in range(7)]
    assert report.quoted_rate == pytest.approx(math.log(127 / 63))


def test_lambda_entropy_needs_two_levels(gm):
    with pytest.raises(InsufficientLevelsError):
        lambda_entropy(build_canonical_lgs(gm, BuilderConfig(1)))


def test_volume_of_golden_mean(gm):
    system = build_canonical_lgs(gm, BuilderConfig(3))
    assert path_counts(system)[1] in ([2, 1], [1, 2])
    report = volume_entropy(system)
    assert report.kind == "volume"
    assert report.counts == [1, 3, 5, 8]
    assert report.per_vertex_max == [1, 2, 3, 5]
    assert report.rows()[3]["per_vertex_max"] == 5


def test_separation_entropy_of_openers(d2):
    spec_y = block_embedding_spec(full_shift(2), PHI_MINUS, d2.alphabet)
    report = separation_entropy(spec_y, d2, BuilderConfig(4))
    assert report.kind == "separation"
    assert report.counts == [1, 2, 4, 8, 16]
    assert report.quoted_rate == pytest.approx(math.log(2))


def phi_image(mapping):
    return block_embedding_spec(full_shift(2), mapping, dyck2().alphabet)


PROJECTION_CASES = {
    "dyck_in_dyck": lambda data: (dyck2(), dyck2(), BuilderConfig(6)),
    "openers_in_dyck": lambda data: (phi_image(PHI_MINUS), dyck2(), BuilderConfig(6)),
    "closers_in_dyck": lambda data: (phi_image(PHI_PLUS), dyck2(), BuilderConfig(6)),
    "zero_point_in_golden_mean": lambda data: (load_spec(data("gm_zero.json")), golden_mean(), BuilderConfig(6)),
    "golden_mean_diagonal": lambda data: (golden_mean(), golden_mean(), BuilderConfig(6)),
    "even_diagonal": lambda data: (even_shift(), even_shift(), BuilderConfig(6)),
}


@pytest.mark.parametrize("case", sorted(PROJECTION_CASES))
def test_projection_inequality(case, data):
    spec_y, spec_x, config = PROJECTION_CASES[case](data)
    pair = build_pair_lgs(spec_y, spec_x, config)
    assert check_projection_inequality(pair) == [True] * 7
    canonical = build_canonical_lgs(spec_y, config)
    assert check_projection_inequality(pair, canonical) == [True] * 7


@pytest.mark.slow
def test_projection_inequality_inside_gamma_shift():
    config = BuilderConfig(6, buffer=GAMMA_BUFFER)
    pair = build_pair_lgs(dyck2(), gamma_shift(1), config)
    assert check_projection_inequality(pair, build_canonical_lgs(dyck2(), config)) == [True] * 7


def test_projection_needs_a_pair_system(gm):
    with pytest.raises(ValueError):
        check_projection_inequality(build_canonical_lgs(gm, BuilderConfig(2)))


@pytest.mark.parametrize("name", ["gm", "even"])
def test_pairword_counts_equal_path_totals(request, name):
    spec = request.getfixturevalue(name)
    assert check_pairword_path_bijection(spec, spec.presentation(), 10) == [True] * 11
