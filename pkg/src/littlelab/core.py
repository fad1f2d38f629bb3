"""Exact integer encodings and sample primitives.

Sequences of naturals are encoded as prime-power products (the i-th entry z_i
contributes p_i**(z_i + 1)), samples are encoded by flattening to
(x_1, y_1, ..., x_T, y_T), and finite sets of naturals are encoded as bitmask
integers.  All codes are arbitrary-precision: the prime-power encoding
overflows 64 bits already for tiny inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

try:
    from gmpy2 import mpz  # GMP-backed bignums: much faster giant powers
except ImportError:  # pragma: no cover - optional speedup
    def mpz(value):
        return value


class NotInRangeError(ValueError):
    """Raised when an integer is not a valid sequence code."""


class LabeledInstance(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class Sample:
    """A finite sequence of labeled domain instances with prefix access."""

    items: tuple[LabeledInstance, ...] = ()

    def __post_init__(self) -> None:
        coerced = tuple(LabeledInstance(int(x), int(y)) for x, y in self.items)
        for item in coerced:
            if item.y not in (0, 1):
                raise ValueError(f"label must be 0 or 1, got {item.y}")
            if item.x < 0:
                raise ValueError(f"instance must be a natural, got {item.x}")
        object.__setattr__(self, "items", coerced)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[LabeledInstance]:
        return iter(self.items)

    def prefix(self, n: int) -> "Sample":
        if not 0 <= n <= len(self.items):
            raise ValueError(f"prefix length {n} out of range for |S|={len(self.items)}")
        return Sample(self.items[:n])

    def concat(self, other: "Sample") -> "Sample":
        return Sample(self.items + other.items)

    def append(self, x: int, y: int) -> "Sample":
        return Sample(self.items + (LabeledInstance(x, y),))

    @staticmethod
    def of(*pairs: tuple[int, int]) -> "Sample":
        return Sample(tuple(LabeledInstance(x, y) for x, y in pairs))


EMPTY_SAMPLE = Sample()


def _primes(count: int) -> list[int]:
    """First `count` primes by trial division (codes only involve small primes)."""
    found: list[int] = []
    candidate = 2
    while len(found) < count:
        if all(candidate % p for p in found):
            found.append(candidate)
        candidate += 1
    return found


def encode_sequence(z: Sequence[int] | Iterable[int]) -> int:
    """Product of p_i**(z_i + 1); the empty sequence encodes to 1."""
    entries = [int(v) for v in z]
    if any(v < 0 for v in entries):
        raise ValueError("sequence entries must be naturals")
    code = mpz(1)
    for p, v in zip(_primes(len(entries)), entries):
        code *= mpz(p) ** (v + 1)
    return int(code)


def decode_sequence(code: int) -> tuple[int, ...]:
    """Inverse of encode_sequence on its range; rejects malformed codes."""
    if code < 1:
        raise NotInRangeError(f"codes are positive integers, got {code}")
    entries: list[int] = []
    rest = code
    p = 2
    primes_seen: list[int] = []
    while rest > 1:
        exponent = 0
        while rest % p == 0:
            rest //= p
            exponent += 1
        if exponent == 0:
            # A later prime divides the code while this one does not: prime gap.
            raise NotInRangeError(f"{code} skips prime {p}; not a sequence code")
        entries.append(exponent - 1)
        primes_seen.append(p)
        p += 1
        while any(p % q == 0 for q in primes_seen):
            p += 1
    return tuple(entries)


@lru_cache(maxsize=64)
def _encode_sample_cached(items: tuple[LabeledInstance, ...]) -> int:
    flat: list[int] = []
    for x, y in items:
        flat.extend((x, y))
    return encode_sequence(flat)


def encode_sample(sample: Sample) -> int:
    # Cached: replaying a learner re-encodes the same prefixes, and codes of
    # samples with large instances are expensive multi-megabit integers.
    return _encode_sample_cached(sample.items)


def decode_sample(code: int) -> Sample:
    flat = decode_sequence(code)
    if len(flat) % 2:
        raise NotInRangeError(f"{code} decodes to an odd-length sequence; not a sample code")
    return Sample.of(*zip(flat[0::2], flat[1::2]))


def canonical_index(instances: Iterable[int]) -> int:
    """Bitmask code of a finite set: sum of 2**x over members."""
    members = set(instances)
    if any(x < 0 for x in members):
        raise ValueError("set members must be naturals")
    return sum(1 << x for x in members)


def decode_canonical(y: int) -> frozenset[int]:
    if y < 0:
        raise ValueError("canonical indices are naturals")
    return frozenset(i for i in range(y.bit_length()) if (y >> i) & 1)
