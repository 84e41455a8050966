import pytest

from lgs_toolkit.core.models import INADMISSIBLE, ContextExhaustedError, LgsError, Primed
from lgs_toolkit.core.oracles import FollowerClassifier, MonoidOracle, follower_oracle
from lgs_toolkit.core.shifts import SubshiftSpec, TwoBlockShift, dyck2_table, enumerate_words
from lgs_toolkit.utils.examples import PHI_PLUS, dyck_embedding, dyck_power, gamma_shift


def test_monoid_oracle_steps():
    oracle = MonoidOracle(dyck2_table())
    root = oracle.root_state()
    pushed = oracle.step(root, "a-")
    assert pushed == (("a-",), False)
    assert oracle.step(pushed, "a+") == root
    assert oracle.step(pushed, "b+") is INADMISSIBLE
    assert oracle.step(root, "b+") == root


def test_monoid_level_key_truncates_stack():
    oracle = MonoidOracle(dyck2_table())
    state = (("a-", "b-", "a-"), False)
    assert oracle.level_key(state, 2) == (("b-", "a-"), True)
    assert oracle.level_key(state, 4) == state


def test_truncated_stack_cannot_key_deeper_level():
    oracle = MonoidOracle(dyck2_table())
    with pytest.raises(ContextExhaustedError):
        oracle.level_key((("a-",), True), 2)
    with pytest.raises(ContextExhaustedError):
        oracle.step(((), True), "a+")


def test_monoid_keys_and_estimate_agree():
    oracle = MonoidOracle(dyck2_table())
    for n in range(5):
        keys = oracle.enumerate_level_keys(n)
        assert len(keys) == 2 ** (n + 1) - 1
        assert oracle.estimate_level_keys(n) == len(keys)


def test_gamma_estimate():
    oracle = gamma_shift(3).oracle
    assert oracle.estimate_level_keys(2) == 1 + 5 + 25


def test_product_estimate_is_multiplicative():
    oracle = dyck_power(2).oracle
    assert oracle.estimate_level_keys(3) == 15 * 15
    assert not oracle.finite


def test_embedding_oracle_reads_through_inverse():
    y_plus = dyck_embedding([None, PHI_PLUS])
    oracle = y_plus.oracle
    root = oracle.root_state()
    assert oracle.step(root, ("a-", "a+")) is not INADMISSIBLE
    assert oracle.step(root, ("a-", "a-")) is INADMISSIBLE


def test_two_block_oracle_matches_decoded_words(gm):
    tilde = TwoBlockShift(gm)
    assert len(tilde.alphabet) == 3
    for n in range(1, 5):
        words = enumerate_words(tilde, n)
        assert {tilde.decode(w) for w in words} == enumerate_words(gm, n + 1)
    oracle = tilde.oracle
    state = oracle.step(oracle.root_state(), (Primed("0"), "1"))
    assert oracle.step(state, (Primed("0"), "0")) is INADMISSIBLE
    assert oracle.step(state, (Primed("1"), "0")) is not INADMISSIBLE


def test_two_block_keys_cover_both_last_symbols(gm):
    keys = TwoBlockShift(gm).oracle.enumerate_level_keys(2)
    assert {last for _, last in keys} == {"0", "1"}


def test_unknown_spec_has_no_oracle():
    class Opaque(SubshiftSpec):
        alphabet = None

        def admits(self, word):
            return True

    with pytest.raises(LgsError):
        follower_oracle(Opaque())


def test_classifier_on_golden_mean(gm):
    oracle = gm.oracle
    classifier = FollowerClassifier(oracle)
    states = [oracle.state_for_key(k, 3) for k in oracle.enumerate_level_keys(3)]
    assert len(classifier.classes_of(states, 0)) == 1
    assert len(classifier.classes_of(states, 3)) == 2
    assert classifier.class_count(3) == 2
    for cls in range(2):
        assert classifier.iota(3, cls) in (0, 1)


def test_classifier_ids_follow_discovery_order(d2):
    oracle = d2.oracle
    classifier = FollowerClassifier(oracle)
    root = oracle.root_state()
    assert classifier.class_of(root, 2) == 0
    assert classifier.class_of(oracle.step(root, "a-"), 2) == 1
    assert classifier.class_of(root, 2) == 0
    assert len(classifier.representatives[2]) == 2
