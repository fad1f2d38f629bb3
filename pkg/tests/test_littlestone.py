import pytest
from hypothesis import given, settings, strategies as st

from littlelab.budget import FuelExhaustedError
from littlelab.classes import (EnumerableClass, FiniteClass, Hypothesis,
                               hd_prime, singletons, thresholds)
from littlelab.littlestone import (FUEL_EXHAUSTED, ShatteredTree,
                                   enumerate_shattered_trees,
                                   find_shattered_tree, ldim,
                                   max_witness_depth, tree_enumerator,
                                   verify_shattered_tree)
from conftest import seeded_classes


# ---------------------------------------------------------------------------
# Dimension engine

def test_ldim_base_cases():
    assert ldim(FiniteClass(3, frozenset())) == -1
    assert ldim(FiniteClass(3, frozenset({5}))) == 0


def test_ldim_known_families():
    for d in (1, 2, 3):
        assert ldim(thresholds(d)) == d
        assert ldim(hd_prime(d)) == d
    for n in (2, 3, 6):
        assert ldim(singletons(n)) == 1
    assert ldim(singletons(1)) == 0  # one hypothesis cannot split anything


def test_ldim_full_cube():
    H = FiniteClass(3, frozenset(range(8)))
    assert ldim(H) == 3


@st.composite
def finite_classes(draw):
    domain = draw(st.integers(min_value=1, max_value=4))
    rows = draw(st.frozensets(st.integers(min_value=0, max_value=(1 << domain) - 1),
                              min_size=0, max_size=8))
    return FiniteClass(domain, rows)


@settings(max_examples=60, deadline=None)
@given(finite_classes())
def test_engines_agree(H):
    assert ldim(H) == max_witness_depth(H)


@settings(max_examples=40, deadline=None)
@given(finite_classes())
def test_ldim_log_bound_and_monotonicity(H):
    if H.rows:
        assert 0 <= ldim(H) <= max(len(H.rows).bit_length() - 1, 0)
    sub = FiniteClass(H.domain_size, frozenset(list(H.rows)[: len(H.rows) // 2]))
    assert ldim(sub) <= ldim(H)


# ---------------------------------------------------------------------------
# Witness trees

def test_tree_shape_validation():
    with pytest.raises(ValueError):
        ShatteredTree((1, 2), 2)


def test_tree_paths_enumeration():
    tree = ShatteredTree((1, 0, 2), 2)
    paths = list(tree.paths())
    assert len(paths) == 4
    assert paths[0] == ((1, 0), (0, 0))
    assert paths[3] == ((1, 1), (2, 1))


def test_find_and_verify_witnesses_on_seeded_classes():
    for H in seeded_classes(7, 25):
        d = ldim(H)
        if d >= 1:
            tree = find_shattered_tree(H, d)
            assert tree is not None
            assert verify_shattered_tree(H, tree, d)
        assert find_shattered_tree(H, d + 1) is None


def test_verify_rejects_a_non_witness():
    H = singletons(4)  # dimension 1: no depth-2 tree exists
    bogus = ShatteredTree((0, 1, 2), 2)
    assert not verify_shattered_tree(H, bogus, 2)
    with pytest.raises(ValueError):
        verify_shattered_tree(H, bogus, 3)


def test_find_shattered_tree_requires_positive_depth():
    with pytest.raises(ValueError):
        find_shattered_tree(thresholds(1), 0)


# ---------------------------------------------------------------------------
# Dovetailing enumerator

def test_enumerator_finds_embedded_witness():
    E = EnumerableClass.embed_finite(thresholds(2))
    result = enumerate_shattered_trees(E, 2, fuel=10_000)
    assert isinstance(result, ShatteredTree)
    assert verify_shattered_tree(thresholds(2), result, 2)


def test_enumerator_depth_zero_needs_one_hypothesis():
    E = EnumerableClass.embed_finite(singletons(2))
    result = enumerate_shattered_trees(E, 0, fuel=1_000)
    assert isinstance(result, ShatteredTree) and result.depth == 0


def test_enumerator_fuel_exhaustion_is_an_outcome():
    E = EnumerableClass.embed_finite(thresholds(2))
    assert enumerate_shattered_trees(E, 2, fuel=3) is FUEL_EXHAUSTED
    assert enumerate_shattered_trees(E, 2, fuel=0) is FUEL_EXHAUSTED
    # Depth above the true dimension never certifies, only exhausts.
    assert enumerate_shattered_trees(E, 3, fuel=2_000) is FUEL_EXHAUSTED


def test_enumerator_skips_absent_slots():
    def gen(i):
        if i == 0:
            return None
        if i <= 2:
            return Hypothesis.from_support({i - 1})
        return None

    E = EnumerableClass(gen, 4)
    result = enumerate_shattered_trees(E, 1, fuel=10_000)
    assert isinstance(result, ShatteredTree) and result.depth == 1


def test_tree_enumerator_yields_progress_ticks():
    E = EnumerableClass.embed_finite(thresholds(1))
    stream = tree_enumerator(E, 1)
    first = next(stream)
    assert first is None
