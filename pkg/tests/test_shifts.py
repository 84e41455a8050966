import pytest

from lgs_toolkit.core.models import (
    ZERO, Alphabet, BuilderConfig, ContainmentError, MonoidTable, ReducedForm, SpecError, iota_minus,
    iota_plus,
)
from lgs_toolkit.core.shifts import (
    SFT, BlockEmbedding, MonoidShift, check_containment, dyck2_table, enumerate_words, factorize,
    gamma_table, is_admissible, iter_words, monoid_reduce, product_spec, block_embedding_spec,
    require_containment, symbols_in_use,
)
from lgs_toolkit.utils.examples import PHI_MINUS, dyck_embedding, dyck_power, full_shift


# ---- monoid tables ----------------------------------------------------------

def test_dyck_relations():
    table = dyck2_table()
    assert monoid_reduce(table, ("a-", "a+")).is_unit
    assert monoid_reduce(table, ("b-", "b+")).is_unit
    assert monoid_reduce(table, ("a-", "b+")) is ZERO
    assert monoid_reduce(table, ("b-", "a+")) is ZERO


def test_unmatched_closers_come_first():
    form = monoid_reduce(dyck2_table(), ("a+", "b-"))
    assert form == ReducedForm(("a+",), ("b-",))
    assert form.symbols == ("a+", "b-")


def test_gamma_absorbs_dyck_closers():
    table = gamma_table(2)
    assert monoid_reduce(table, ("g1-", "b+")).is_unit
    assert monoid_reduce(table, ("g1-", "a+")).is_unit
    assert monoid_reduce(table, ("g1-", "g2+")) is ZERO
    assert monoid_reduce(table, ("a-", "g1+")) is ZERO
    assert monoid_reduce(table, ("g2-", "g2+")).is_unit


def test_gamma_needs_positive_k():
    with pytest.raises(SpecError):
        gamma_table(0)


def test_reduce_rejects_foreign_symbols():
    with pytest.raises(SpecError):
        monoid_reduce(dyck2_table(), ("a-", "x"))


def test_monoid_table_must_be_total():
    with pytest.raises(SpecError):
        MonoidTable(("o",), ("c",), {})
    with pytest.raises(SpecError):
        MonoidTable(("o",), ("o",), {("o", "o"): "unit"})


# ---- admissibility -------------------------------------------------------------

def test_golden_mean_forbids_11(gm):
    assert not is_admissible(gm, ("0", "1", "1", "0"))
    assert is_admissible(gm, ("0", "1", "0", "1"))


def test_dyck_mismatch_is_inadmissible(d2):
    assert not is_admissible(d2, ("a-", "a-", "b+"))
    assert is_admissible(d2, ("a+", "b+", "a-", "a+"))


def test_alphabet_mismatch_raises(gm):
    with pytest.raises(SpecError):
        is_admissible(gm, ("0", "2"))


def test_embedded_word_is_admissible():
    y_minus = dyck_embedding([None, PHI_MINUS])
    assert is_admissible(y_minus, (("a-", "a-"),))
    assert len(y_minus.alphabet) == 8


def test_product_is_coordinatewise(d2):
    spec = product_spec([d2, full_shift(2)])
    assert is_admissible(spec, (("a-", "0"), ("a+", "1")))
    assert not is_admissible(spec, (("a-", "0"), ("b+", "1")))


def test_identity_embedding_keeps_words(gm):
    identity = block_embedding_spec(gm, {"0": "0", "1": "1"})
    for n in range(5):
        assert enumerate_words(identity, n) == enumerate_words(gm, n)


def test_embedding_must_be_injective(gm):
    with pytest.raises(SpecError):
        BlockEmbedding(gm, {"0": "a", "1": "a"})
    with pytest.raises(SpecError):
        BlockEmbedding(gm, {"0": "a"})


# ---- words ------------------------------------------------------------------------

def test_enumerate_words(gm, d2, full2):
    assert len(enumerate_words(full2, 2)) == 4
    assert enumerate_words(gm, 2) == {("0", "0"), ("0", "1"), ("1", "0")}
    assert len(enumerate_words(d2, 1)) == 4
    assert enumerate_words(gm, 0) == {()}
    with pytest.raises(ValueError):
        enumerate_words(gm, -1)


def test_words_are_listed_in_alphabet_order(gm):
    assert list(iter_words(gm, 2)) == [("0", "0"), ("0", "1"), ("1", "0")]


def test_word_counts_of_golden_mean_are_fibonacci(gm):
    assert [len(enumerate_words(gm, n)) for n in range(1, 8)] == [2, 3, 5, 8, 13, 21, 34]


def test_iota_maps_stay_inside_the_language(even):
    for n in range(1, 6):
        shorter = enumerate_words(even, n - 1)
        for word in enumerate_words(even, n):
            assert iota_minus(word) in shorter
            assert iota_plus(word) in shorter


def test_monoid_words_always_extend_by_openers(d2):
    for word in enumerate_words(d2, 3):
        assert is_admissible(d2, word + ("a-",))
        assert is_admissible(d2, word + ("b-",))


# ---- containment ---------------------------------------------------------------

def test_zero_shift_inside_golden_mean(gm):
    zeros = SFT(Alphabet(("0", "1")), (("1",),))
    report = check_containment(zeros, gm, 5)
    assert report
    assert report.counterexample is None


def test_y_minus_inside_dyck_square():
    assert check_containment(dyck_embedding([None, PHI_MINUS]), dyck_power(2), 3)


def test_full_shift_not_inside_golden_mean(gm, full2):
    report = check_containment(full2, gm, 2)
    assert not report
    assert report.counterexample == ("1", "1")
    with pytest.raises(ContainmentError) as info:
        require_containment(full2, gm, 2)
    assert info.value.counterexample == ("1", "1")


def test_containment_needs_shared_alphabet(gm, d2):
    with pytest.raises(SpecError):
        check_containment(gm, d2, 2)


# ---- factors and helpers --------------------------------------------------------

def test_factorize_coordinatewise_embedding():
    factors = factorize(dyck_embedding([None, PHI_MINUS]))
    assert len(factors) == 2
    assert isinstance(factors[0], MonoidShift)
    assert isinstance(factors[1], BlockEmbedding)
    assert set(factors[1].alphabet) == {"a-", "b-"}


def test_factorize_plain_shift_is_none(gm):
    assert factorize(gm) is None
    assert len(factorize(dyck_power(3))) == 3


def test_symbols_in_use_skip_dead_symbols():
    spec = SFT(Alphabet(("0", "1")), (("1",),))
    assert symbols_in_use(spec) == ["0"]


def test_product_alphabet_order(d2):
    alphabet = product_spec([d2, full_shift(2)]).alphabet
    assert alphabet.symbols[:3] == (("a-", "0"), ("a-", "1"), ("b-", "0"))
    assert alphabet.name(("a-", "0")) == "(α⁻,0)"


def test_alphabet_rejects_duplicates():
    with pytest.raises(SpecError):
        Alphabet(("0", "0"))
    with pytest.raises(SpecError):
        Alphabet(())


def test_builder_config_defaults_and_checks():
    config = BuilderConfig(5)
    assert config.buffer == 5
    assert config.context_bound == 12
    assert config.horizon == 10
    with pytest.raises(ValueError):
        BuilderConfig(0)
    with pytest.raises(ValueError):
        BuilderConfig(4, context_bound=3)
    with pytest.raises(ValueError):
        BuilderConfig(4, mode="lazy")
