import pytest

from littlelab.budget import FuelExhaustedError
from littlelab.classes import (EnumerableClass, FiniteClass, constrain,
                               hd_prime, singletons, thresholds)
from littlelab.core import Sample
from littlelab.game import Horizon, mistake_bound, mistakes_on_sample
from littlelab.learners import (b_extended_blocks, b_triple_blocks,
                                b_two_tier_blocks, conservative_learner,
                                constant_learner, factor_block_instance,
                                relabeled, sig_predictor, sol,
                                threshold_fallback_learner, toy_learner)
from littlelab.littlestone import ldim
from littlelab.machine import (CONST0_INDEX, CONST1_INDEX, DECJZ, TableOracle,
                               ToyProgram, index_of)
from littlelab.significance import is_opt_significant


# ---------------------------------------------------------------------------
# sol

def test_sol_tie_breaks_to_one():
    H = FiniteClass.from_rows(2, [0b01, 0b11])  # supports {0} and {0,1}
    assert sol(H).predict(Sample.of((0, 1)), 1) == 1


def test_sol_on_extra_instance_of_hd_prime():
    H = hd_prime(3)
    for x in (8, 9):
        assert sol(H).predict(Sample(), x) == 0


def test_sol_prefers_the_larger_restriction():
    H = thresholds(2)
    prediction = sol(H).predict(Sample(), 1)
    assert prediction == 1
    assert ldim(constrain(H, 1, 1)) > ldim(constrain(H, 1, 0))


def test_sol_determinism():
    H = thresholds(2)
    s = Sample.of((0, 1), (3, 0))
    assert all(sol(H).predict(s, x) == sol(H).predict(s, x) for x in H.domain())


# ---------------------------------------------------------------------------
# Simple learners

def test_constant_learner():
    assert constant_learner(1).predict(Sample.of((0, 0)), 5) == 1
    with pytest.raises(ValueError):
        constant_learner(2)


def test_conservative_learner():
    learner = conservative_learner()
    assert learner.predict(Sample(), 7) == 0
    assert learner.predict(Sample.of((5, 1)), 5) == 1
    assert learner.predict(Sample.of((5, 0)), 5) == 0


# ---------------------------------------------------------------------------
# Fallback deviation learner

def test_fallback_learner_gap_values():
    H = hd_prime(3)
    learner = threshold_fallback_learner(H, thresholds(3).rows)
    gap = Sample.of((8, 1), (9, 1))
    assert mistakes_on_sample(learner, gap) == 2
    assert mistakes_on_sample(sol(H), gap) == 1
    assert mistake_bound(learner, H, Horizon(8)).value == 3
    # After leaving the all-extras regime it coincides with sol.
    s = Sample.of((0, 0))
    assert all(learner.predict(s, x) == sol(H).predict(s, x)
               for x in H.domain())
    # Repeats of a seen extra instance are not milkable.
    assert learner.predict(Sample.of((8, 1)), 8) == 1


# ---------------------------------------------------------------------------
# Budgeted significant-input predictor

def test_sig_predictor_agrees_with_sol_on_significant_inputs():
    H = hd_prime(2)
    enumerable = EnumerableClass.embed_finite(H)
    predictor = sig_predictor(enumerable, ldim(H))
    reference = sol(H)
    from littlelab.game import _realizable_samples
    for sample in _realizable_samples(H, 1, H.domain_size):
        for x in H.domain():
            if is_opt_significant(H, sample, x).significant:
                assert predictor.predict(sample, x) == reference.predict(sample, x)


def test_sig_predictor_fuel_exhaustion():
    enumerable = EnumerableClass.embed_finite(thresholds(2))
    with pytest.raises(FuelExhaustedError):
        sig_predictor(enumerable, 2, fuel=1).predict(Sample(), 0)
    with pytest.raises(ValueError):
        sig_predictor(enumerable, -1)


def test_sig_predictor_negative_depth_exhausts():
    # Dimension 0 class: any recorded mistake drives the race depth below 0.
    H = FiniteClass.from_rows(2, [0b01])
    enumerable = EnumerableClass.embed_finite(H)
    predictor = sig_predictor(enumerable, 0)
    with pytest.raises(FuelExhaustedError):
        predictor.predict(Sample.of((1, 1)), 0)  # unrealizable history


# ---------------------------------------------------------------------------
# Toy-machine learner

def test_toy_learner_constants():
    s = Sample.of((3, 1))
    assert toy_learner(CONST0_INDEX).predict(s, 9) == 0
    assert toy_learner(CONST1_INDEX).predict(s, 9) == 1


def test_toy_learner_fuel_exhaustion():
    looping = index_of(ToyProgram(((DECJZ, 1, 0),)))
    with pytest.raises(FuelExhaustedError):
        toy_learner(looping, step_budget=50).predict(Sample(), 0)


# ---------------------------------------------------------------------------
# Block instance factoring

def test_factor_block_instance():
    assert factor_block_instance(8) == (3, None, 0)
    assert factor_block_instance(2 * 9) == (1, 3, 2)
    assert factor_block_instance(4 * 125) == (2, 5, 3)
    assert factor_block_instance(6 * 5) is None  # mixed odd primes
    assert factor_block_instance(0) is None


# ---------------------------------------------------------------------------
# Hand-built two-mistake learners

def test_b_triple_blocks_case_analysis():
    learner = b_triple_blocks()
    assert learner.predict(Sample(), 7) == 0
    e = 2
    after_top = Sample.of((3 * e + 2, 1))
    assert learner.predict(after_top, 3 * e) == 1
    assert learner.predict(after_top, 3 * e + 1) == 1
    assert learner.predict(after_top, 3 * e + 2) == 1
    assert learner.predict(after_top, 3 * (e + 1)) == 0
    after_down = Sample.of((3 * e, 1), (3 * e + 1, 0))
    assert learner.predict(after_down, 3 * e) == 1
    assert learner.predict(after_down, 3 * e + 1) == 0
    assert learner.predict(after_down, 3 * e + 2) == 0


def _oracle(bit: int) -> TableOracle:
    # Program 1 halts on input 0; on itself it halts with the given value.
    return TableOracle({(1, 0): 0, (1, 1): bit})


def test_b_extended_blocks_first_mistake_cases():
    e = 1
    c0 = (e % 3) + 1  # default certificate position convention
    learner = b_extended_blocks(_oracle(1))
    after_power = Sample.of((2 ** e * 3 ** 2, 1))
    assert learner.predict(after_power, 2 ** e) == 1
    assert learner.predict(after_power, 2 ** e * 3 ** 2) == 1
    assert learner.predict(after_power, 2 ** e * 3) == 0
    after_base = Sample.of((2 ** e, 1))
    assert learner.predict(after_base, 2 ** e * 5 ** c0) == 1
    assert learner.predict(after_base, 2 ** e * 3 ** c0) == 0
    learner0 = b_extended_blocks(_oracle(0))
    assert learner0.predict(after_base, 2 ** e * 3 ** c0) == 1
    assert learner0.predict(after_base, 2 ** e * 5 ** c0) == 0


def test_b_two_tier_blocks_first_mistake_cases():
    e = 1
    c0 = (e % 3) + 1
    learner = b_two_tier_blocks(_oracle(1))
    after_base = Sample.of((2 ** e, 1))
    assert learner.predict(after_base, 2 ** e * 5 ** c0) == 1
    assert learner.predict(after_base, 2 ** e * 3 ** c0) == 0
    after_seven = Sample.of((2 ** e * 7 ** 3, 1))
    assert learner.predict(after_seven, 2 ** e * 5 ** c0) == 1
    assert learner.predict(after_seven, 2 ** e * 7 ** 3) == 1


# ---------------------------------------------------------------------------
# Domain adaptation

def test_relabeled_translates_instances():
    H = singletons(3)
    naturals = (10, 20, 30)
    learner = relabeled(sol(FiniteClass(31, frozenset(
        1 << n for n in naturals))), lambda i: naturals[i])
    direct = sol(singletons(3))
    sample = Sample.of((1, 1))
    translated = Sample.of((20, 1))
    assert learner.predict(sample, 1) == learner.predict(sample, 1)
    # Conservative check: seen-positive instance predicted as by the base
    # learner on the translated history.
    base = sol(FiniteClass(31, frozenset(1 << n for n in naturals)))
    assert learner.predict(sample, 1) == base.predict(translated, 20)
