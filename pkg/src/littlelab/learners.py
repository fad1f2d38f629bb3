"""Online learners.

A Learner wraps a prediction function over (history sample, queried instance).
Optional metadata feeds the game-analysis memoizer: `vs_measurable` declares
that predictions depend on the history only through the version space, and
`history_key` supplies a coarser-than-full-history abstraction otherwise.

Learners over the machine-backed classes (the halting-support families) work
on the true natural-number instances; `relabeled` adapts them to the compact
re-indexed domains used by the exact game analysis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

from .budget import FuelExhaustedError, FuelTank
from .classes import EnumerableClass, FiniteClass, constrain, restrict
from .core import Sample, encode_sample
from .littlestone import ShatteredTree, ldim, tree_enumerator
from .machine import HaltsAnswer, apply2, Halted


@dataclass(frozen=True)
class Learner:
    name: str
    fn: Callable[[Sample, int], int]
    vs_measurable: bool = False
    history_key: Callable[[Sample], Hashable] | None = None

    def predict(self, sample: Sample, x: int) -> int:
        return self.fn(sample, x)

    def __call__(self, sample: Sample, x: int) -> int:
        return self.fn(sample, x)


# ---------------------------------------------------------------------------
# Standard optimal algorithm

def sol(H: FiniteClass) -> Learner:
    """Predict the label whose version-space restriction has the larger
    Littlestone dimension, ties going to 1."""

    def predict(sample: Sample, x: int) -> int:
        version_space = restrict(H, sample)
        one = ldim(constrain(version_space, x, 1))
        zero = ldim(constrain(version_space, x, 0))
        return int(one >= zero)

    return Learner(f"sol[{H.domain_size}]", predict, vs_measurable=True)


def constant_learner(bit: int) -> Learner:
    if bit not in (0, 1):
        raise ValueError("constant learners predict 0 or 1")
    return Learner(f"const{bit}", lambda sample, x: bit, vs_measurable=True)


def conservative_learner() -> Learner:
    """Predict 1 exactly on instances already seen labeled 1."""

    def predict(sample: Sample, x: int) -> int:
        return int(any(xt == x and yt == 1 for xt, yt in sample))

    def key(sample: Sample) -> Hashable:
        return frozenset(xt for xt, yt in sample if yt == 1)

    return Learner("conservative", predict, history_key=key)


def threshold_fallback_learner(H: FiniteClass, fallback_rows: frozenset[int]) -> Learner:
    """Sol on H, except: predict 0 on a never-seen "extra" instance while the
    history consists solely of positively-labeled extra instances.

    Extra instances are those labeled 0 by every hypothesis in
    `fallback_rows` (the designated sub-family).  With H the threshold family
    plus one extra hypothesis supported on the extra instances, this learner
    is optimal (bound max(d, |extras|) = d) yet not anytime optimal: after
    seeing one extra instance labeled 1 the version space pins the extra
    hypothesis, so zero further mistakes are optimal, but this learner still
    errs once on each remaining fresh extra instance.  Any history containing
    a non-extra step (or a 0 label) drops it back to plain sol, which handles
    every such prefix optimally.
    """
    inner = sol(H)
    domain_mask = (1 << H.domain_size) - 1
    fallback_union = 0
    for row in fallback_rows:
        fallback_union |= row
    extras = frozenset(
        x for x in range(H.domain_size)
        if not (fallback_union >> x) & 1 and (domain_mask >> x) & 1)

    def _all_extra_positives(sample: Sample) -> bool:
        return all(xt in extras and yt == 1 for xt, yt in sample)

    def predict(sample: Sample, x: int) -> int:
        if (_all_extra_positives(sample) and x in extras
                and all(xt != x for xt, _ in sample)):
            return 0
        return inner.predict(sample, x)

    def key(sample: Sample) -> Hashable:
        # Sufficient statistic: each component updates pointwise per step.
        return (
            _all_extra_positives(sample),
            frozenset(xt for xt, _ in sample if xt in extras),
            restrict(H, sample).rows,
        )

    return Learner("threshold-fallback", predict, history_key=key)


# ---------------------------------------------------------------------------
# Budgeted significant-input predictor for enumerable classes

def _race(H: EnumerableClass, pairs: tuple[tuple[int, int], ...], x: int,
          depth: int, tank: FuelTank) -> int:
    """Race depth-`depth` witness enumerators for the (x,1)- and (x,0)-
    constrained version spaces; the first to certify wins."""
    if depth < 0:
        raise FuelExhaustedError("no label can be certified at negative depth")
    racers = [
        (1, tree_enumerator(H.constrained(pairs + ((x, 1),)), depth)),
        (0, tree_enumerator(H.constrained(pairs + ((x, 0),)), depth)),
    ]
    while True:
        for label, enumerator in racers:
            tank.spend()
            item = next(enumerator, None)
            if isinstance(item, ShatteredTree):
                return label


def sig_predictor(H: EnumerableClass, d: int, fuel: int = 100_000) -> Learner:
    """Budgeted predictor that is exact on significant inputs of optimal
    online learning, for a class of known dimension d.

    Each prediction replays the history, racing witness enumerators at depth
    d - (mistakes so far); running out of fuel is the desk-scale analogue of
    the prediction diverging.
    """
    if d < 0:
        raise ValueError("class dimension must be a natural")

    def predict(sample: Sample, x: int) -> int:
        tank = FuelTank(fuel)
        mistakes = 0
        pairs: tuple[tuple[int, int], ...] = ()
        for xt, yt in sample:
            p = _race(H, pairs, xt, d - mistakes, tank)
            if p != yt:
                mistakes += 1
            pairs = pairs + ((xt, yt),)
        return _race(H, pairs, x, d - mistakes, tank)

    return Learner(f"sig[d={d}]", predict)


# ---------------------------------------------------------------------------
# Toy-machine-backed learner

def toy_learner(program_index: int, step_budget: int = 100_000) -> Learner:
    """Program `program_index` run as a two-place function on
    (sample code, instance); not halting within budget exhausts fuel.

    Predictions are the raw outputs: a run converging outside {0,1} counts
    as a mistake against either label.
    """

    def predict(sample: Sample, x: int) -> int:
        result = apply2(program_index, encode_sample(sample), x, step_budget)
        if not isinstance(result, Halted):
            raise FuelExhaustedError(
                f"program {program_index} not halted within {step_budget} steps")
        return result.output

    return Learner(f"toy:{program_index}", predict)


# ---------------------------------------------------------------------------
# Hand-rolled optimal learners for the halting-support families.
# These predict over true natural instances; they are adapted to compact
# domains with `relabeled`.

def _match(support: frozenset[int] | None, x: int) -> int:
    return 0 if support is None else int(x in support)


def b_triple_blocks() -> Learner:
    """Optimal 2-mistake learner for the family with supports
    {3e} always and {3e,3e+1}, {3e,3e+1,3e+2} on self-halting e.

    Predicts 0 until a mistake on x1 in the block of e, then matches
    {3e, 3e+1, x1}; a second mistake pins the target down.
    """

    def state(sample: Sample) -> tuple[int | None, frozenset[int] | None]:
        e: int | None = None
        support: frozenset[int] | None = None
        for xt, yt in sample:
            if _match(support, xt) == yt:
                continue
            if support is None:
                e = xt // 3
                support = frozenset({3 * e, 3 * e + 1, xt})
            elif xt == 3 * e + 2 and yt == 1:
                support = frozenset({3 * e, 3 * e + 1, 3 * e + 2})
            elif xt == 3 * e + 1 and yt == 0:
                support = frozenset({3 * e})
            # Any other disagreement is unrealizable; keep the hypothesis.
        return e, support

    def predict(sample: Sample, x: int) -> int:
        return _match(state(sample)[1], x)

    return Learner("b-triple-blocks", predict, history_key=state)


_DR_PRIMES = (3, 5, 7, 11, 13)


def factor_block_instance(x: int) -> tuple[int, int | None, int] | None:
    """Decompose x = 2**e * y**i with y an odd block prime (or x = 2**e).

    Returns (e, y, i) with y=None, i=0 for pure powers of two; None when x is
    not of this shape.
    """
    if x < 1:
        return None
    e = 0
    while x % 2 == 0:
        x //= 2
        e += 1
    if x == 1:
        return (e, None, 0)
    for y in _DR_PRIMES:
        i = 0
        while x % y == 0:
            x //= y
            i += 1
        if i:
            return (e, y, i) if x == 1 else None
    return None


def _c_value(oracle, e: int, x: int) -> int:
    index = oracle.certificate_index(e, x)
    if index is None:
        raise FuelExhaustedError(
            f"certificate position for program {e} on input {x} unknown within budget")
    return index


def _block_members_ext(oracle, e: int) -> list[frozenset[int]]:
    """All supports the extended halting-support family places in block e."""
    if oracle.halts(e, 0).status != HaltsAnswer.YES:
        return []
    c0 = _c_value(oracle, e, 0)
    members = [frozenset({2 ** e, 2 ** e * 3 ** c0})]
    reply = oracle.halts(e, e)
    if reply.status == HaltsAnswer.YES and reply.value in (0, 1):
        ce = _c_value(oracle, e, e)
        if reply.value == 1:
            members.append(frozenset({2 ** e, 2 ** e * 5 ** c0, 2 ** e * 7 ** ce}))
            members.append(frozenset({2 ** e, 2 ** e * 5 ** c0, 2 ** e * 11 ** ce}))
        else:
            members.append(frozenset({2 ** e, 2 ** e * 5 ** c0, 2 ** e * 13 ** ce}))
            members.append(frozenset({2 ** e, 2 ** e * 3 ** c0, 2 ** e * 13 ** ce}))
    return members


def _block_members_halt(oracle, e: int) -> list[frozenset[int]]:
    """All supports the two-tier halting-support family places in block e."""
    if oracle.halts(e, 0).status != HaltsAnswer.YES:
        return []
    c0 = _c_value(oracle, e, 0)
    members = [frozenset({2 ** e, 2 ** e * 3 ** c0})]
    if oracle.halts(e, e).status == HaltsAnswer.YES:
        ce = _c_value(oracle, e, e)
        members.append(frozenset({2 ** e, 2 ** e * 5 ** c0, 2 ** e * 7 ** ce}))
        members.append(frozenset({2 ** e, 2 ** e * 5 ** c0, 2 ** e * 11 ** ce}))
    return members


def _resolve_target(candidates: Iterable[frozenset[int]],
                    seen: list[tuple[int, int]],
                    current: frozenset[int]) -> frozenset[int]:
    """The canonically first candidate consistent with the whole history."""
    for support in sorted(candidates, key=sorted):
        if all(int(xt in support) == yt for xt, yt in seen):
            return support
    return current


def b_extended_blocks(oracle) -> Learner:
    """Optimal 2-mistake learner for the extended halting-support family.

    After a first mistake on x1 = 2**e * y**i it matches {2**e, x1} (then the
    target after a second mistake).  After a first mistake on x1 = 2**e it
    consults the halting oracle on (e, e): output 1 gives {2**e, 2**e*5**c0},
    output 0 gives {2**e, 2**e*3**c0, 2**e*13**ce}, anything else gives
    {2**e, 2**e*3**c0}.
    """

    def state(sample: Sample) -> tuple[int | None, frozenset[int] | None]:
        e: int | None = None
        support: frozenset[int] | None = None
        seen: list[tuple[int, int]] = []
        for xt, yt in sample:
            if _match(support, xt) != yt:
                if support is None:
                    fac = factor_block_instance(xt)
                    if fac is not None and yt == 1:
                        e, y, i = fac
                        if y is not None:
                            support = frozenset({2 ** e, xt})
                        else:
                            reply = oracle.halts(e, e)
                            if reply.status == HaltsAnswer.YES and reply.value == 1:
                                support = frozenset(
                                    {2 ** e, 2 ** e * 5 ** _c_value(oracle, e, 0)})
                            elif reply.status == HaltsAnswer.YES and reply.value == 0:
                                # Matching the two-element {2^e, 2^e 13^ce}
                                # admits a third mistake (after erring on
                                # (2^e 3^c0, 1) two candidates remain); the
                                # member below keeps every second mistake
                                # target-determining.
                                support = frozenset(
                                    {2 ** e, 2 ** e * 3 ** _c_value(oracle, e, 0),
                                     2 ** e * 13 ** _c_value(oracle, e, e)})
                            else:
                                support = frozenset(
                                    {2 ** e, 2 ** e * 3 ** _c_value(oracle, e, 0)})
                elif e is not None:
                    support = _resolve_target(
                        _block_members_ext(oracle, e), seen + [(xt, yt)], support)
            seen.append((xt, yt))
        return e, support

    def predict(sample: Sample, x: int) -> int:
        return _match(state(sample)[1], x)

    return Learner("b-extended-blocks", predict, history_key=state)


def b_two_tier_blocks(oracle) -> Learner:
    """Optimal 2-mistake learner for the two-tier halting-support family.

    First mistake on x1 = 2**e * y**i with y in {5,7,11} matches
    {2**e, 2**e*5**c0, x1}; on x1 = 2**e * 3**i matches {2**e, x1}; on
    x1 = 2**e matches {2**e, 2**e*5**c0}.
    """

    def state(sample: Sample) -> tuple[int | None, frozenset[int] | None]:
        e: int | None = None
        support: frozenset[int] | None = None
        seen: list[tuple[int, int]] = []
        for xt, yt in sample:
            if _match(support, xt) != yt:
                if support is None:
                    fac = factor_block_instance(xt)
                    if fac is not None and yt == 1:
                        e, y, i = fac
                        if y == 3:
                            support = frozenset({2 ** e, xt})
                        elif y in (5, 7, 11):
                            support = frozenset(
                                {2 ** e, 2 ** e * 5 ** _c_value(oracle, e, 0), xt})
                        elif y is None:
                            support = frozenset(
                                {2 ** e, 2 ** e * 5 ** _c_value(oracle, e, 0)})
                elif e is not None:
                    support = _resolve_target(
                        _block_members_halt(oracle, e), seen + [(xt, yt)], support)
            seen.append((xt, yt))
        return e, support

    def predict(sample: Sample, x: int) -> int:
        return _match(state(sample)[1], x)

    return Learner("b-two-tier-blocks", predict, history_key=state)


# ---------------------------------------------------------------------------
# Domain adaptation

def relabeled(learner: Learner, to_natural: Callable[[int], int],
              name: str | None = None) -> Learner:
    """Adapt a learner over true naturals to a compact re-indexed domain."""

    def translate(sample: Sample) -> Sample:
        return Sample.of(*((to_natural(xt), yt) for xt, yt in sample))

    def predict(sample: Sample, x: int) -> int:
        return learner.predict(translate(sample), to_natural(x))

    if learner.history_key is not None:
        key = lambda sample: learner.history_key(translate(sample))
    else:
        key = lambda sample: sample.items

    return Learner(name or f"{learner.name}@reindexed", predict,
                   history_key=key)
