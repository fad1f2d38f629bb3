"""Hypothesis families built on the toy machine substrate.

These families tie online-learning structure to halting behavior:

* triple_block_family: supports {3e} always, plus {3e, 3e+1} and
  {3e, 3e+1, 3e+2} exactly when program e self-halts.
* pair_block_family: support {2e, 2e+1} when program e self-halts, {2e}
  otherwise.
* extended_block_supports / two_tier_block_supports: supports inside the
  block 2**e * {3,5,7,11,13}**i whose exponents are halting-certificate
  positions, together with total deciders for exactly the member supports.
* adversarial_family: the diagonal family whose labels flip the prediction
  of the machine-coded learner assigned to each block row, forcing any such
  learner above any finite mistake bound.
* initial-segment family: h_s(x) = 1 iff program x self-halts within s
  steps; it contains arbitrarily many thresholds.

True natural-number instances can be huge, so `IndexedClass` re-indexes a
finite set of supports onto a compact domain for the exact game analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .classes import EnumerableClass, FiniteClass, Hypothesis
from .core import Sample, decode_canonical, encode_sample
from .learners import (_block_members_ext, _block_members_halt,
                       factor_block_instance)
from .littlestone import ShatteredTree, find_shattered_tree, verify_shattered_tree
from .machine import (HaltsAnswer, Halted, apply2, enumerate_programs,
                      halting_steps, run)


# ---------------------------------------------------------------------------
# Compact re-indexing

@dataclass(frozen=True)
class IndexedClass:
    """A finite family of supports re-indexed onto {0, ..., n-1}."""

    finite: FiniteClass
    naturals: tuple[int, ...]

    @property
    def domain_size(self) -> int:
        return self.finite.domain_size

    def to_natural(self, i: int) -> int:
        return self.naturals[i]

    def of_natural(self, n: int) -> int:
        return self.naturals.index(n)

    def reindex_sample(self, sample_over_naturals: Sample) -> Sample:
        return Sample.of(*((self.of_natural(x), y) for x, y in sample_over_naturals))

    @staticmethod
    def from_supports(supports: Iterable[frozenset[int]]) -> "IndexedClass":
        supports = list(supports)
        naturals = tuple(sorted(set().union(*supports))) if supports else ()
        position = {n: i for i, n in enumerate(naturals)}
        rows = frozenset(sum(1 << position[n] for n in support)
                         for support in supports)
        return IndexedClass(FiniteClass(len(naturals), rows), naturals)


# ---------------------------------------------------------------------------
# Triple and pair block families (self-halting supports)

def triple_block_family(oracle, e_max: int) -> EnumerableClass:
    """Three enumeration slots per block e; the upper two are present exactly
    when the oracle certifies that program e self-halts."""

    def gen(i: int) -> Hypothesis | None:
        e, k = divmod(i, 3)
        if k == 0:
            return Hypothesis.from_support({3 * e}, tag=f"base{e}")
        if oracle.halts(e, e).status != HaltsAnswer.YES:
            return None
        if k == 1:
            return Hypothesis.from_support({3 * e, 3 * e + 1}, tag=f"mid{e}")
        return Hypothesis.from_support({3 * e, 3 * e + 1, 3 * e + 2}, tag=f"top{e}")

    return EnumerableClass(gen, 3 * e_max, domain_hint=3 * e_max)


def pair_block_family(oracle, e_max: int) -> FiniteClass:
    """One hypothesis per block e: {2e, 2e+1} on self-halting, else {2e}."""
    rows = set()
    for e in range(e_max):
        if oracle.halts(e, e).status == HaltsAnswer.YES:
            rows.add((1 << (2 * e)) | (1 << (2 * e + 1)))
        else:
            rows.add(1 << (2 * e))
    return FiniteClass(2 * e_max, frozenset(rows))


# ---------------------------------------------------------------------------
# Certificate-exponent block families

def extended_block_supports(oracle, e_list: Sequence[int]) -> list[frozenset[int]]:
    supports: list[frozenset[int]] = []
    for e in e_list:
        supports.extend(_block_members_ext(oracle, e))
    return supports


def two_tier_block_supports(oracle, e_list: Sequence[int]) -> list[frozenset[int]]:
    supports: list[frozenset[int]] = []
    for e in e_list:
        supports.extend(_block_members_halt(oracle, e))
    return supports


def _decompose_support(members: frozenset[int]) -> dict[int | None, tuple[int, int]] | None:
    """Map odd block prime -> (e, exponent) for a candidate support.

    Requires one pure power of two, every member sharing the same e, and
    strictly positive exponents; None when the shape is wrong.
    """
    shape: dict[int | None, tuple[int, int]] = {}
    for member in members:
        fac = factor_block_instance(member)
        if fac is None:
            return None
        e, y, i = fac
        if y is not None and i < 1:
            return None
        if y in shape:
            return None
        shape[y] = (e, i)
    if None not in shape:
        return None
    if len({e for e, _ in shape.values()}) != 1:
        return None
    return shape


def extended_family_decider(oracle) -> Callable[[int], int]:
    """Total decider for membership of a canonically-coded finite set in the
    extended block family."""

    def decide(y_code: int) -> int:
        members = decode_canonical(y_code)
        shape = _decompose_support(members)
        if shape is None:
            return 0
        e = shape[None][0]
        primes = set(shape) - {None}
        if primes == {3} and len(members) == 2:
            return int(oracle.cert_matches(e, shape[3][1], 0))
        if len(members) != 3:
            return 0
        if primes in ({5, 7}, {5, 11}, {5, 13}):
            i = shape[5][1]
            j = shape[7][1] if 7 in shape else shape[11][1] if 11 in shape else shape[13][1]
        elif primes == {3, 13}:
            i, j = shape[3][1], shape[13][1]
        else:
            return 0
        if not (oracle.cert_matches(e, i, 0) and oracle.cert_matches(e, j, e)):
            return 0
        reply = oracle.halts(e, e)
        if reply.status != HaltsAnswer.YES or reply.value not in (0, 1):
            return 0
        has_13 = 13 in primes
        return int((reply.value == 0) == has_13)

    return decide


def two_tier_family_decider(oracle) -> Callable[[int], int]:
    """Total decider for membership in the two-tier block family."""

    def decide(y_code: int) -> int:
        members = decode_canonical(y_code)
        shape = _decompose_support(members)
        if shape is None:
            return 0
        e = shape[None][0]
        primes = set(shape) - {None}
        if primes == {3} and len(members) == 2:
            return int(oracle.cert_matches(e, shape[3][1], 0))
        if len(members) == 3 and primes in ({5, 7}, {5, 11}):
            i = shape[5][1]
            j = shape[7][1] if 7 in shape else shape[11][1]
            return int(oracle.cert_matches(e, i, 0) and oracle.cert_matches(e, j, e))
        return 0

    return decide


# ---------------------------------------------------------------------------
# Diagonal adversarial family

def s1(n: int) -> int:
    return n * (n + 1) // 2


def s2(n: int) -> int:
    return n * (n + 1) * (n + 2) // 6


@dataclass(frozen=True)
class BlockPosition:
    i: int
    j: int

    @property
    def start(self) -> int:
        return s2(self.i) + s1(self.j)

    @property
    def end(self) -> int:
        """One past the last member; the block row holds j + 1 instances."""
        return s2(self.i) + s1(self.j + 1)

    @property
    def learner_index(self) -> int:
        return self.i - self.j


def block_position(n: int) -> BlockPosition:
    if n < 0:
        raise ValueError("instances are naturals")
    i = 0
    while s2(i + 1) <= n:
        i += 1
    offset = n - s2(i)
    j = 0
    while s1(j + 1) <= offset:
        j += 1
    return BlockPosition(i, j)


@lru_cache(maxsize=None)
def _diagonal_label_cached(n: int, step_budget: int) -> tuple[int, bool]:
    position = block_position(n)
    history = Sample.of(*((m, _diagonal_label_cached(m, step_budget)[0])
                          for m in range(position.start, n)))
    result = apply2(position.learner_index, encode_sample(history), n, step_budget)
    if isinstance(result, Halted):
        return int(result.output == 0), True
    # Not halted within budget: the convergence indicator is taken as false,
    # flagged uncertain since more steps could flip it.
    return 0, False


def diagonal_label(n: int, step_budget: int = 10_000) -> tuple[int, bool]:
    """Label L(n) = [machine-coded learner of this block row predicts 0 on
    the row's own history], with a certainty flag for the step budget."""
    return _diagonal_label_cached(n, step_budget)


def adversarial_family(i_max: int, step_budget: int = 10_000) -> EnumerableClass:
    """Family {h_i}: h_i carries the diagonal labels on the rows of block i
    and is 0 elsewhere.  Dimension 1: each instance is labeled 1 by at most
    one hypothesis."""

    def gen(i: int) -> Hypothesis | None:
        def evaluate(n: int) -> int:
            if block_position(n).i != i:
                return 0
            return diagonal_label(n, step_budget)[0]

        return Hypothesis(fn=evaluate, tag=f"block{i}")

    return EnumerableClass(gen, i_max)


def diagonal_forcing_sample(e: int, M: int, step_budget: int = 10_000) -> Sample:
    """The length-(M+1) realizable sample on which the machine-coded learner
    e errs every step: block row (i, j) = (M + e, M)."""
    position = BlockPosition(M + e, M)
    return Sample.of(*((n, diagonal_label(n, step_budget)[0])
                       for n in range(position.start, position.end)))


# ---------------------------------------------------------------------------
# Initial-segment family (stage-counting thresholds)

def stage_hypothesis(s: int) -> Hypothesis:
    """h_s(x) = 1 iff program x self-halts within s steps."""

    def evaluate(x: int) -> int:
        return int(halting_steps(enumerate_programs(x), x, s) is not None)

    return Hypothesis(fn=evaluate, tag=f"stage{s}")


@dataclass(frozen=True)
class ThresholdWitness:
    """Instances and stages with h_{s_i}(x_j) = [i >= j]."""

    instances: tuple[int, ...]
    stages: tuple[int, ...]

    def as_indexed_class(self) -> IndexedClass:
        supports = []
        for s in self.stages:
            h = stage_hypothesis(s)
            supports.append(frozenset(x for x in self.instances if h(x)))
        return IndexedClass.from_supports(supports)

    def verify(self) -> bool:
        for i, s in enumerate(self.stages):
            h = stage_hypothesis(s)
            if any(h(x) != int(i >= j) for j, x in enumerate(self.instances)):
                return False
        return True


def find_thresholds(k: int, step_cap: int = 10_000, x_cap: int = 5_000) -> ThresholdWitness:
    """k instances with strictly increasing self-halting times; the matching
    stage hypotheses form k thresholds."""
    if k < 1:
        raise ValueError("k must be >= 1")
    timed: dict[int, int] = {}
    for x in range(x_cap):
        steps = halting_steps(enumerate_programs(x), x, step_cap)
        if steps is not None and steps not in timed:
            timed[steps] = x
        if len(timed) >= k:
            break
    if len(timed) < k:
        raise RuntimeError(
            f"only {len(timed)} distinct self-halting times within caps")
    chosen = sorted(timed)[:k]
    return ThresholdWitness(tuple(timed[s] for s in chosen), tuple(chosen))


def dimension_witness_from_thresholds(witness: ThresholdWitness,
                                      depth: int) -> tuple[IndexedClass, ShatteredTree]:
    """An explicit verified depth-`depth` witness inside the threshold block."""
    indexed = witness.as_indexed_class()
    tree = find_shattered_tree(indexed.finite, depth)
    if tree is None or not verify_shattered_tree(indexed.finite, tree, depth):
        raise AssertionError(f"no verified depth-{depth} witness found")
    return indexed, tree
