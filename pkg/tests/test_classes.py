import json
import random

import pytest

from littlelab.classes import (ClassFileError, EnumerableClass, FiniteClass,
                               Hypothesis, Tristate, constrain, empirical_loss,
                               from_file, hd_prime, hd_prime_extra_instances,
                               is_realizable, restrict, singletons, thresholds,
                               to_file)
from littlelab.core import Sample
from conftest import seeded_classes


# ---------------------------------------------------------------------------
# Hypotheses

def test_hypothesis_support_and_fn():
    h = Hypothesis.from_support({1, 3})
    assert [h(x) for x in range(4)] == [0, 1, 0, 1]
    g = Hypothesis(fn=lambda x: x % 2)
    assert g(3) == 1 and g(4) == 0


def test_hypothesis_requires_evaluator():
    with pytest.raises(ValueError):
        Hypothesis()


# ---------------------------------------------------------------------------
# FiniteClass

def test_finite_class_validation():
    with pytest.raises(ValueError):
        FiniteClass(2, frozenset({4}))  # bit 2 outside domain {0,1}
    with pytest.raises(ValueError):
        FiniteClass(-1, frozenset())


def test_row_strings_round_trip():
    H = FiniteClass.from_strings(["101", "010"])
    assert H.domain_size == 3
    assert sorted(H.row_string(r) for r in H.rows) == ["010", "101"]
    assert FiniteClass.from_strings([]) == FiniteClass(0, frozenset())


def test_from_strings_rejects_ragged_or_nonbinary():
    with pytest.raises(ClassFileError):
        FiniteClass.from_strings(["10", "1"])
    with pytest.raises(ClassFileError):
        FiniteClass.from_strings(["1x"])


def test_from_hypotheses_deduplicates():
    H = FiniteClass.from_hypotheses(
        3, [Hypothesis.from_support({0}), Hypothesis.from_support({0, 5})])
    assert len(H) == 1  # instance 5 is outside the domain


# ---------------------------------------------------------------------------
# Restriction

def test_constrain_partitions_the_class():
    rng = random.Random(11)
    for H in seeded_classes(3, 20):
        for x in H.domain():
            ones = constrain(H, x, 1)
            zeros = constrain(H, x, 0)
            assert len(ones) + len(zeros) == len(H)
            assert ones.rows | zeros.rows == H.rows
            # Idempotence
            assert constrain(ones, x, 1) == ones


def test_constrain_validates_arguments():
    H = thresholds(2)
    with pytest.raises(ValueError):
        constrain(H, 4, 1)
    with pytest.raises(ValueError):
        constrain(H, 0, 2)


def test_restrict_is_iterated_constrain():
    H = thresholds(2)
    s = Sample.of((0, 1), (2, 0))
    assert restrict(H, s) == constrain(constrain(H, 0, 1), 2, 0)


def test_empirical_loss_and_realizability():
    H = thresholds(2)
    s = Sample.of((0, 1), (3, 0))
    assert is_realizable(H, s)
    assert not is_realizable(H, Sample.of((1, 1), (0, 0)))
    row = (1 << 1) - 1  # labels only instance 0 with 1
    assert empirical_loss(row, s) == 0
    assert empirical_loss(Hypothesis.from_support({3}), s) == 2


# ---------------------------------------------------------------------------
# Builders

def test_thresholds_shape():
    H = thresholds(3)
    assert H.domain_size == 8 and len(H) == 8
    assert all(bin(r).count("1") == len(bin(r)) - 2 for r in H.rows)  # prefixes


def test_singletons_shape():
    H = singletons(4)
    assert H.domain_size == 4 and len(H) == 4
    assert H.rows == frozenset({1, 2, 4, 8})


def test_hd_prime_shape():
    H = hd_prime(3)
    assert H.domain_size == 10 and len(H) == 9
    extras = hd_prime_extra_instances(3)
    assert extras == [8, 9]
    extra_row = sum(1 << x for x in extras)
    assert extra_row in H.rows
    assert thresholds(3).rows <= H.rows


def test_builder_validation():
    for builder in (thresholds, singletons, hd_prime):
        with pytest.raises(ValueError):
            builder(0)


# ---------------------------------------------------------------------------
# Files

def test_class_file_round_trip(tmp_path):
    H = hd_prime(2)
    path = tmp_path / "class.json"
    to_file(H, str(path))
    assert from_file(str(path)) == H


def test_class_file_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ClassFileError):
        from_file(str(path))
    path.write_text(json.dumps({"domain_size": 2, "hypotheses": ["10", "10"]}))
    with pytest.raises(ClassFileError, match="entry 2"):
        from_file(str(path))
    path.write_text(json.dumps({"domain_size": 2, "hypotheses": ["102"]}))
    with pytest.raises(ClassFileError, match="entry 1"):
        from_file(str(path))
    path.write_text(json.dumps({"wrong": 1}))
    with pytest.raises(ClassFileError):
        from_file(str(path))


# ---------------------------------------------------------------------------
# Enumerable classes

def test_embed_finite_truncation_recovers_class():
    H = hd_prime(2)
    E = EnumerableClass.embed_finite(H)
    assert E.truncation(H.domain_size) == H
    assert E.absent_slots() == []


def test_enumerable_absent_slots_and_constrained():
    def gen(i):
        if i % 2:
            return None
        return Hypothesis.from_support({i})

    E = EnumerableClass(gen, 6)
    assert E.absent_slots() == [1, 3, 5]
    constrained = E.constrained(((0, 0),))  # kills the support-{0} hypothesis
    present = [i for i, _ in constrained.hypotheses()]
    assert present == [2, 4]


def test_enumerable_realizability_is_tristate():
    E = EnumerableClass.embed_finite(singletons(3))
    assert E.is_realizable(Sample.of((0, 1))) == Tristate.YES
    # No enumerated hypothesis labels two instances 1; the stream cannot
    # certify absence, only fail to certify presence.
    assert E.is_realizable(Sample.of((0, 1), (1, 1))) == Tristate.UNKNOWN
