"""Hypothesis and hypothesis-class representations.

A FiniteClass is a deduplicated set of 0/1 rows over the domain prefix
{0, ..., n-1}; rows are stored as bitmask integers (bit x set iff the
hypothesis labels x with 1).  An EnumerableClass is a budgeted stream of
hypotheses indexed by naturals, where a slot may be absent (a diverging
enumeration step); queries against it are tri-state rather than hanging.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .core import Sample


class ClassFileError(ValueError):
    """Raised on a malformed class file, with the offending entry number."""


@dataclass(frozen=True)
class Hypothesis:
    """A total 0/1 map over the naturals, optionally with explicit finite support."""

    fn: Callable[[int], int] | None = None
    support: frozenset[int] | None = None
    tag: str = ""

    def __post_init__(self) -> None:
        if self.fn is None and self.support is None:
            raise ValueError("hypothesis needs an evaluator or a support set")

    def __call__(self, x: int) -> int:
        if self.support is not None:
            return int(x in self.support)
        assert self.fn is not None
        return int(self.fn(x))

    @staticmethod
    def from_support(instances: Iterable[int], tag: str = "") -> "Hypothesis":
        return Hypothesis(support=frozenset(instances), tag=tag)


class Tristate:
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class FiniteClass:
    domain_size: int
    rows: frozenset[int]

    def __post_init__(self) -> None:
        if self.domain_size < 0:
            raise ValueError("domain size must be a natural")
        mask = (1 << self.domain_size) - 1
        for row in self.rows:
            if row < 0 or row & ~mask:
                raise ValueError(f"row {row:b} exceeds domain size {self.domain_size}")

    def __len__(self) -> int:
        return len(self.rows)

    def __bool__(self) -> bool:
        return bool(self.rows)

    @property
    def sorted_rows(self) -> tuple[int, ...]:
        return tuple(sorted(self.rows))

    def domain(self) -> range:
        return range(self.domain_size)

    def evaluate(self, row: int, x: int) -> int:
        return (row >> x) & 1

    def row_string(self, row: int) -> str:
        return "".join(str((row >> x) & 1) for x in range(self.domain_size))

    @staticmethod
    def from_rows(domain_size: int, rows: Iterable[int]) -> "FiniteClass":
        return FiniteClass(domain_size, frozenset(rows))

    @staticmethod
    def from_strings(rows: Sequence[str]) -> "FiniteClass":
        if not rows:
            return FiniteClass(0, frozenset())
        n = len(rows[0])
        masks = []
        for line in rows:
            if len(line) != n or set(line) - {"0", "1"}:
                raise ClassFileError(f"bad row {line!r}")
            masks.append(sum(1 << x for x, c in enumerate(line) if c == "1"))
        return FiniteClass(n, frozenset(masks))

    @staticmethod
    def from_hypotheses(domain_size: int, hypotheses: Iterable[Hypothesis]) -> "FiniteClass":
        rows = set()
        for h in hypotheses:
            rows.add(sum(1 << x for x in range(domain_size) if h(x)))
        return FiniteClass(domain_size, frozenset(rows))


# ---------------------------------------------------------------------------
# Restriction, loss, realizability

def constrain(H: FiniteClass, x: int, y: int) -> FiniteClass:
    """Sub-class of exactly the hypotheses with h(x) = y."""
    if not 0 <= x < H.domain_size:
        raise ValueError(f"instance {x} outside domain of size {H.domain_size}")
    if y not in (0, 1):
        raise ValueError(f"label must be 0 or 1, got {y}")
    return FiniteClass(H.domain_size, frozenset(r for r in H.rows if (r >> x) & 1 == y))


def restrict(H: FiniteClass, sample: Sample) -> FiniteClass:
    for x, y in sample:
        H = constrain(H, x, y)
    return H


def empirical_loss(h: Hypothesis | int, sample: Sample) -> int:
    """Number of disagreements between a hypothesis (or row mask) and the sample."""
    if isinstance(h, int):
        return sum(1 for x, y in sample if (h >> x) & 1 != y)
    return sum(1 for x, y in sample if h(x) != y)


def is_realizable(H: FiniteClass, sample: Sample) -> bool:
    return bool(restrict(H, sample))


# ---------------------------------------------------------------------------
# Enumerable classes

@dataclass(frozen=True)
class EnumerableClass:
    """Budgeted enumerable stream of hypotheses.

    generator(i) returns the i-th hypothesis or None for an absent (diverging)
    slot.  The generator must be a pure function of its index.  enumeration
    budget caps the indices consulted; evaluation budget is advisory for
    hypotheses whose evaluator is itself fuel-limited.
    """

    generator: Callable[[int], Hypothesis | None]
    enumeration_budget: int
    evaluation_budget: int = 10_000
    domain_hint: int | None = None

    def hypotheses(self) -> Iterator[tuple[int, Hypothesis]]:
        for i in range(self.enumeration_budget):
            h = self.generator(i)
            if h is not None:
                yield i, h

    def absent_slots(self) -> list[int]:
        return [i for i in range(self.enumeration_budget)
                if self.generator(i) is None]

    def constrained(self, pairs: Sequence[tuple[int, int]]) -> "EnumerableClass":
        """Filter the stream to hypotheses consistent with the given pairs."""
        base = self.generator
        pinned = tuple(pairs)

        def gen(i: int) -> Hypothesis | None:
            h = base(i)
            if h is None or any(h(x) != y for x, y in pinned):
                return None
            return h

        return EnumerableClass(gen, self.enumeration_budget,
                               self.evaluation_budget, self.domain_hint)

    def is_realizable(self, sample: Sample) -> str:
        """Tri-state: YES if some enumerated hypothesis is consistent, else UNKNOWN."""
        for _, h in self.hypotheses():
            if empirical_loss(h, sample) == 0:
                return Tristate.YES
        return Tristate.UNKNOWN

    def truncation(self, domain_size: int) -> FiniteClass:
        return FiniteClass.from_hypotheses(domain_size, (h for _, h in self.hypotheses()))

    @staticmethod
    def embed_finite(H: FiniteClass, enumeration_budget: int | None = None) -> "EnumerableClass":
        rows = H.sorted_rows
        support_of = {i: frozenset(x for x in range(H.domain_size) if (row >> x) & 1)
                      for i, row in enumerate(rows)}

        def gen(i: int) -> Hypothesis | None:
            if i < len(rows):
                return Hypothesis.from_support(support_of[i], tag=f"row{i}")
            return None

        budget = enumeration_budget if enumeration_budget is not None else max(len(rows), 1)
        return EnumerableClass(gen, budget, domain_hint=H.domain_size)


# ---------------------------------------------------------------------------
# Builders

def thresholds(d: int) -> FiniteClass:
    """2**d threshold hypotheses over domain size 2**d.

    Instance k of the 1-based presentation is stored as k-1, so row n labels
    exactly {0, ..., n-1} with 1, for n in 1..2**d.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    size = 1 << d
    return FiniteClass(size, frozenset((1 << n) - 1 for n in range(1, size + 1)))


def singletons(n: int) -> FiniteClass:
    if n < 1:
        raise ValueError("n must be >= 1")
    return FiniteClass(n, frozenset(1 << x for x in range(n)))


def hd_prime_extra_instances(d: int) -> list[int]:
    """The d-1 instances labeled 1 only by the extra hypothesis (offset applied)."""
    return [(1 << d) + i - 1 for i in range(1, d)]


def hd_prime(d: int) -> FiniteClass:
    """Thresholds plus one disjointly-supported hypothesis over d-1 extra instances."""
    if d < 1:
        raise ValueError("d must be >= 1")
    size = (1 << d) + d - 1
    rows = set((1 << n) - 1 for n in range(1, (1 << d) + 1))
    extra = sum(1 << x for x in hd_prime_extra_instances(d))
    rows.add(extra)
    return FiniteClass(size, frozenset(rows))


def to_file(H: FiniteClass, path: str) -> None:
    payload = {"domain_size": H.domain_size,
               "hypotheses": [H.row_string(r) for r in H.sorted_rows]}
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def from_file(path: str) -> FiniteClass:
    with open(path) as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ClassFileError(f"{path}: invalid JSON at line {exc.lineno}") from exc
    if not isinstance(payload, dict) or set(payload) != {"domain_size", "hypotheses"}:
        raise ClassFileError(f"{path}: expected keys domain_size and hypotheses")
    n = payload["domain_size"]
    rows = payload["hypotheses"]
    masks = set()
    for entry_no, line in enumerate(rows, start=1):
        if not isinstance(line, str) or len(line) != n or set(line) - {"0", "1"}:
            raise ClassFileError(f"{path}: entry {entry_no}: bad row {line!r}")
        mask = sum(1 << x for x, c in enumerate(line) if c == "1")
        if mask in masks:
            raise ClassFileError(f"{path}: entry {entry_no}: duplicate row {line!r}")
        masks.add(mask)
    return FiniteClass(n, frozenset(masks))
