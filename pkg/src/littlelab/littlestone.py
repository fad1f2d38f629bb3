"""Littlestone dimension: memoized recursion, direct tree search, and the
dovetailing witness enumerator for budgeted enumerable classes.

Shattered trees are stored in heap layout: nodes (x_1, ..., x_{2^d - 1}) with
the root at position 1, and the two children of position i at 2i and 2i + 1.
A label path (y_1, ..., y_d) therefore visits i_{j+1} = 2 i_j + y_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from . import kernels
from .budget import FuelExhaustedError, FuelTank
from .classes import EnumerableClass, FiniteClass


@dataclass(frozen=True)
class ShatteredTree:
    nodes: tuple[int, ...]
    depth: int

    def __post_init__(self) -> None:
        if len(self.nodes) != (1 << self.depth) - 1:
            raise ValueError(
                f"depth-{self.depth} tree needs {(1 << self.depth) - 1} nodes, "
                f"got {len(self.nodes)}")

    def paths(self) -> Iterator[tuple[tuple[int, int], ...]]:
        """All 2^depth root-to-leaf (instance, label) constraint lists."""
        for bits in range(1 << self.depth):
            position = 1
            constraints = []
            for j in range(self.depth):
                y = (bits >> (self.depth - 1 - j)) & 1
                constraints.append((self.nodes[position - 1], y))
                position = 2 * position + y
            yield tuple(constraints)


@lru_cache(maxsize=None)
def _ldim_cached(masks: tuple[int, ...], domain_size: int) -> int:
    return kernels.ldim_masks(masks, domain_size)


def ldim(H: FiniteClass) -> int:
    """Exact Littlestone dimension; -1 for the empty class."""
    return _ldim_cached(H.sorted_rows, H.domain_size)


def _log2_upper_bound(row_count: int) -> int:
    # Ldim(H) <= log2 |H|: each tree path needs its own hypothesis.
    return row_count.bit_length() - 1 if row_count else -1


def _search(masks: tuple[int, ...], domain_size: int, depth: int):
    """Nested (x, left, right) witness structure, or None."""
    if depth == 0:
        return () if masks else None
    if _log2_upper_bound(len(masks)) < depth:
        return None
    for x in range(domain_size):
        zeros = tuple(r for r in masks if not (r >> x) & 1)
        if not zeros or len(zeros) == len(masks):
            continue
        ones = tuple(r for r in masks if (r >> x) & 1)
        left = _search(zeros, domain_size, depth - 1)
        if left is None:
            continue
        right = _search(ones, domain_size, depth - 1)
        if right is not None:
            return (x, left, right)
    return None


def _flatten(structure, depth: int) -> tuple[int, ...]:
    nodes = [0] * ((1 << depth) - 1)

    def fill(node, position: int) -> None:
        if node == ():
            return
        x, left, right = node
        nodes[position - 1] = x
        fill(left, 2 * position)
        fill(right, 2 * position + 1)

    fill(structure, 1)
    return tuple(nodes)


def find_shattered_tree(H: FiniteClass, d: int) -> ShatteredTree | None:
    """Exhaustive search for a depth-d witness; None certifies there is none."""
    if d < 1:
        raise ValueError("witness search needs depth >= 1")
    structure = _search(H.sorted_rows, H.domain_size, d)
    if structure is None:
        return None
    return ShatteredTree(_flatten(structure, d), d)


def verify_shattered_tree(H: FiniteClass, tree: ShatteredTree, d: int) -> bool:
    """Check every label path has a consistent hypothesis."""
    if tree.depth != d or len(tree.nodes) != (1 << d) - 1:
        raise ValueError(f"tree has wrong shape for depth {d}")
    for constraints in tree.paths():
        if not any(all((row >> x) & 1 == y for x, y in constraints) for row in H.rows):
            return False
    return True


def max_witness_depth(H: FiniteClass) -> int:
    """Dimension via the tree-search engine alone (cross-check for ldim)."""
    if not H.rows:
        return -1
    depth = 0
    while find_shattered_tree(H, depth + 1) is not None:
        depth += 1
    return depth


# ---------------------------------------------------------------------------
# Dovetailing enumerator for enumerable classes

class FuelExhausted:
    """Sentinel outcome: the dovetailer ran out of fuel (not a certification)."""

    def __repr__(self) -> str:  # pragma: no cover
        return "FuelExhausted"


FUEL_EXHAUSTED = FuelExhausted()


def tree_enumerator(H: EnumerableClass, d: int) -> Iterator[ShatteredTree | None]:
    """Dovetailer over (hypothesis indices, instances, stages).

    Yields None as a progress tick after each unit of work; yields a verified
    witness once one exists within the current stage.  Stage k consults
    hypothesis indices < k and instances < k, so every witness over finitely
    many hypotheses and instances is eventually found.
    """
    if d < 0:
        return
    stage = 1
    while True:
        rows: set[int] = set()
        budget = min(stage, H.enumeration_budget)
        for i in range(budget):
            h = H.generator(i)
            yield None
            if h is None:
                continue
            mask = 0
            for x in range(stage):
                if h(x):
                    mask |= 1 << x
                yield None
            rows.add(mask)
        if d == 0:
            if rows:
                yield ShatteredTree((), 0)
                return
        else:
            approximation = FiniteClass(stage, frozenset(rows))
            yield None
            witness = find_shattered_tree(approximation, d)
            if witness is not None and verify_shattered_tree(approximation, witness, d):
                yield witness
                return
        stage += 1


def enumerate_shattered_trees(H: EnumerableClass, d: int, fuel: int) -> ShatteredTree | FuelExhausted:
    """First verified witness within fuel, else the fuel-exhausted outcome.

    Only finite classes can certify absence; this operation never does.
    """
    if fuel <= 0:
        return FUEL_EXHAUSTED
    tank = FuelTank(fuel)
    try:
        for item in tree_enumerator(H, d):
            if isinstance(item, ShatteredTree):
                return item
            tank.spend()
    except FuelExhaustedError:
        pass
    return FUEL_EXHAUSTED
