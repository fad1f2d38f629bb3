"""Online-to-batch conversion and distributional evaluation.

All probabilities and losses are exact rationals: a converted predictor's
value at x is the average of the online learner's T predictions, and errors
against finite distributions are computed term by term, so every comparison
in the tests is exact rather than floating-point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Mapping

from .classes import FiniteClass, empirical_loss
from .core import LabeledInstance, Sample


@dataclass(frozen=True)
class ProbabilisticHypothesis:
    """A [0,1]-valued predictor: the probability of emitting label 1."""

    fn: Callable[[int], Fraction]
    tag: str = ""

    def __call__(self, x: int) -> Fraction:
        value = Fraction(self.fn(x))
        if not 0 <= value <= 1:
            raise ValueError(f"prediction {value} outside [0, 1]")
        return value


def point_loss(h, item: tuple[int, int]) -> Fraction:
    """|h(x) - y|: the probability a Bernoulli(h(x)) draw mislabels (x, y)."""
    x, y = item
    if y not in (0, 1):
        raise ValueError("labels are 0 or 1")
    return abs(Fraction(h(x)) - y)


def online_to_batch(learner, sample: Sample) -> ProbabilisticHypothesis:
    """Average the learner's predictions over all prefixes of the sample.

    The empty sample converts to the learner's prior prediction (T = 0 is
    treated as averaging the single prediction on the empty history).
    """

    def fn(x: int) -> Fraction:
        if len(sample) == 0:
            return Fraction(learner.predict(sample, x))
        total = sum(Fraction(learner.predict(sample.prefix(t), x))
                    for t in range(len(sample)))
        return total / len(sample)

    return ProbabilisticHypothesis(fn, tag=f"avg[{learner.name}]")


# ---------------------------------------------------------------------------
# Worst-case regret over bounded samples

def expected_regret(learner, H: FiniteClass, T: int, *,
                    domain_cap: int | None = None,
                    enumeration_guard: int = 10 ** 6) -> Fraction:
    """Exact sup over all (not just realizable) length-T samples with
    instances below the cap of learner loss minus best-in-class loss."""
    cap = H.domain_size if domain_cap is None else min(domain_cap, H.domain_size)
    total = (2 * cap) ** T
    if total > enumeration_guard:
        raise ValueError(
            f"{total} samples exceed the enumeration guard {enumeration_guard}")
    items = [(x, y) for x in range(cap) for y in (0, 1)]
    best = Fraction(0)
    for choice in product(items, repeat=T):
        sample = Sample.of(*choice)
        learner_loss = sum(
            (point_loss(lambda _x, t=t: learner.predict(sample.prefix(t), _x),
                        sample.items[t]) for t in range(T)),
            Fraction(0))
        class_loss = min(Fraction(empirical_loss(row, sample)) for row in H.rows)
        best = max(best, learner_loss - class_loss)
    return best


# ---------------------------------------------------------------------------
# Finite distributions

@dataclass(frozen=True)
class FiniteDistribution:
    weights: tuple[tuple[LabeledInstance, Fraction], ...]

    def __post_init__(self) -> None:
        total = sum((w for _, w in self.weights), Fraction(0))
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1")
        if any(w < 0 for _, w in self.weights):
            raise ValueError("weights must be nonnegative")

    @staticmethod
    def of(weights: Mapping[tuple[int, int], Fraction | int]) -> "FiniteDistribution":
        return FiniteDistribution(tuple(
            (LabeledInstance(x, y), Fraction(w))
            for (x, y), w in sorted(weights.items())))

    @staticmethod
    def uniform_over(items: Iterable[tuple[int, int]]) -> "FiniteDistribution":
        items = list(items)
        weight = Fraction(1, len(items))
        return FiniteDistribution.of({item: weight for item in items})

    def draw(self, rng: random.Random, m: int) -> Sample:
        population = [item for item, _ in self.weights]
        cumulative = []
        acc = Fraction(0)
        for _, w in self.weights:
            acc += w
            cumulative.append(acc)
        picks = []
        for _ in range(m):
            u = Fraction(rng.randrange(10 ** 9), 10 ** 9)
            index = 0
            while index < len(cumulative) - 1 and u >= cumulative[index]:
                index += 1
            picks.append(population[index])
        return Sample.of(*picks)


def distribution_error(h, D: FiniteDistribution) -> Fraction:
    """Exact expected point loss of a (possibly probabilistic) predictor."""
    return sum((w * point_loss(h, item) for item, w in D.weights), Fraction(0))


def class_distribution_error(H: FiniteClass, D: FiniteDistribution) -> Fraction:
    return min(
        distribution_error(lambda x, row=row: (row >> x) & 1, D) for row in H.rows)


def pac_evaluate(learner, D: FiniteDistribution, m: int, trials: int,
                 seed: int) -> list[Fraction]:
    """Per-trial exact error of the online-to-batch converted learner on m
    i.i.d. draws; deterministic in the seed."""
    rng = random.Random(seed)
    errors = []
    for _ in range(trials):
        sample = D.draw(rng, m)
        errors.append(distribution_error(online_to_batch(learner, sample), D))
    return errors


def find_unrealizable_labeling(H: FiniteClass) -> Sample | None:
    """The lexicographically first full-domain labeling outside the class,
    as a sample ((0, y_0), ..., (n-1, y_{n-1})); None if the class is all of
    the cube."""
    for mask_bits in product((0, 1), repeat=H.domain_size):
        mask = sum(bit << x for x, bit in enumerate(mask_bits))
        if mask not in H.rows:
            return Sample.of(*enumerate(mask_bits))
    return None
