import math

import pytest

from lgs_toolkit.core.analyzer import RunOutcome, measured_rate, published_comparison
from lgs_toolkit.core.entropy import EntropyReport, lambda_entropy
from lgs_toolkit.core.models import BuilderConfig, SpecError
from lgs_toolkit.core.shifts import enumerate_words
from lgs_toolkit.processors.builders import build_canonical_lgs
from lgs_toolkit.utils.examples import GAMMA_BUFFER, create_example


def test_single_shift_examples():
    for name in ("gm", "even", "full2", "dyck2", "dyck2xs2", "dyck2x2", "dyck2x3"):
        example = create_example(name)
        assert not example.is_pair
        assert example.name == name


def test_pair_examples_sit_inside_their_ambient_shift():
    for name in ("yminus", "yplus", "ytriple"):
        example = create_example(name)
        assert example.is_pair
        assert example.spec.alphabet.is_subset_of(example.ambient.alphabet)
        for word in enumerate_words(example.spec, 2):
            assert example.ambient.admits(word)


def test_gamma_examples():
    example = create_example("gammaK=3")
    assert example.name == "gammaK=3"
    assert example.buffer == GAMMA_BUFFER
    assert len(example.ambient.alphabet) == 10
    assert create_example("gamma2").name == "gammaK=2"
    ambient = [r for r in example.references if r.system == "ambient"]
    assert ambient[0].value == pytest.approx(math.log(5))


@pytest.mark.parametrize("name", ["gammaK=0", "dyck3", ""])
def test_unknown_examples(name):
    with pytest.raises(SpecError):
        create_example(name)


def test_disputed_reference_is_flagged():
    (reference,) = create_example("dyck2x3").references
    assert reference.disputed
    assert reference.value == pytest.approx(math.log(6))


def test_dyck_times_full_shift_grows_like_dyck():
    example = create_example("dyck2xs2")
    (reference,) = example.references
    assert not reference.disputed
    system = build_canonical_lgs(example.spec, BuilderConfig(example.levels))
    assert system.counts() == [2 ** (n + 1) - 1 for n in range(9)]
    report = lambda_entropy(system)
    assert abs(report.corrected_rate - reference.value) < 0.02
    assert abs(report.quoted_rate - math.log(2)) < 0.02


def test_comparison_rows():
    example = create_example("dyck2")
    report = EntropyReport("d2", [2 ** (n + 1) - 1 for n in range(7)])
    (row,) = published_comparison(example, {"primary": report})
    assert row["published"] == "log 2"
    assert row["measured"] == pytest.approx(math.log(127 / 63))
    assert row["difference"] == pytest.approx(math.log(127 / 63) - math.log(2))
    assert row["levels"] == 6
    assert published_comparison(example, {}) == []


def test_measured_rate_prefers_correction_for_pairs():
    counts = [1, 5, 17, 49, 129, 321, 769]
    lam = EntropyReport("x", counts)
    sep = EntropyReport("x", counts, kind="separation")
    assert measured_rate(lam) == lam.quoted_rate
    assert measured_rate(sep) == sep.corrected_rate


def test_outcome_keeps_worst_status():
    outcome = RunOutcome()
    outcome.fail(3, "equation fails")
    outcome.fail(2, "check fails")
    assert outcome.status == 3
    assert len(outcome.messages) == 2
