"""Pure-Python twin of the hot recursions over bitmask row sets.

Both functions take the class as a sorted tuple of row masks plus the domain
size.  Memo tables are confined to one top-level call.
"""

from __future__ import annotations

BACKEND = "python"


def ldim_masks(rows: tuple[int, ...], domain_size: int) -> int:
    """Depth of the deepest shattered tree, by the splitting recursion."""
    memo: dict[tuple[int, ...], int] = {}

    def rec(masks: tuple[int, ...]) -> int:
        if not masks:
            return -1
        if len(masks) == 1:
            return 0
        cached = memo.get(masks)
        if cached is not None:
            return cached
        best = 0
        for x in range(domain_size):
            zeros = tuple(r for r in masks if not (r >> x) & 1)
            if not zeros or len(zeros) == len(masks):
                continue
            ones = tuple(r for r in masks if (r >> x) & 1)
            cand = 1 + min(rec(zeros), rec(ones))
            if cand > best:
                best = cand
        memo[masks] = best
        return best

    return rec(tuple(sorted(rows)))


def game_value_masks(rows: tuple[int, ...], domain_size: int) -> int:
    """Minimax mistake count: adversary picks instances and feasible labels,
    the learner picks predictions; independent of the ldim recursion."""
    memo: dict[tuple[int, ...], int] = {}

    def rec(masks: tuple[int, ...]) -> int:
        if len(masks) <= 1:
            return 0
        cached = memo.get(masks)
        if cached is not None:
            return cached
        best = 0
        for x in range(domain_size):
            zeros = tuple(r for r in masks if not (r >> x) & 1)
            if not zeros or len(zeros) == len(masks):
                continue
            ones = tuple(r for r in masks if (r >> x) & 1)
            v0 = rec(zeros)
            v1 = rec(ones)
            # Prediction 1: pay on label 0; prediction 0: pay on label 1.
            predict1 = max(1 + v0, v1)
            predict0 = max(v0, 1 + v1)
            cand = min(predict1, predict0)
            if cand > best:
                best = cand
        memo[masks] = best
        return best

    return rec(tuple(sorted(rows)))
