from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagcent.config import CapExceeded, override_caps
from diagcent.partitions import (
    OrbitClosureError,
    Permutation,
    SetPartition,
    bell,
    coarsenings,
    conjugate,
    conjugate_by,
    conjugation_orbits,
    enumerate_brauer,
    enumerate_partitions,
    is_refinement,
    moebius,
    num_blocks,
)

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147]


def P(*blocks, size=None):
    size = size or sum(len(b) for b in blocks)
    return SetPartition(blocks, size)


@st.composite
def partitions(draw, max_d=3):
    d = draw(st.integers(1, max_d))
    labels = []
    for i in range(2 * d):
        labels.append(draw(st.integers(0, max(labels, default=-1) + 1)))
    return SetPartition.from_labels(labels)


@st.composite
def permutations(draw, d):
    return Permutation(draw(st.permutations(range(1, d + 1))))


def brute_partitions(m):
    # every labelling of [1, m] gives a partition; dedupe through canonical form
    return {SetPartition.from_labels(lab) for lab in product(range(m), repeat=m)}


# construction --------------------------------------------------------------------


def test_canonical_order():
    p = SetPartition([[4, 2], [3, 1]], 4)
    assert p.blocks == ((1, 3), (2, 4))
    assert str(p) == "1 3|2 4"
    assert SetPartition.parse("2 4|1 3") == p


@pytest.mark.parametrize(
    "blocks, size",
    [([[1, 2], [2, 3]], 4), ([[1], [2]], 4), ([[1, 5]], 4), ([[], [1, 2]], 2)],
)
def test_invalid_partitions(blocks, size):
    with pytest.raises(ValueError):
        SetPartition(blocks, size)


def test_permutation_basics():
    s = Permutation([2, 3, 1])
    assert s(1) == 2
    assert s * s.inverse() == Permutation.identity(3)
    assert (s * Permutation.transposition(3, 1, 2))(1) == s(2)
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])


# enumeration -----------------------------------------------------------------------


def test_enumerate_small():
    assert enumerate_partitions(1) == [P([1])]
    assert enumerate_partitions(2) == [P([1, 2]), P([1], [2])]


@pytest.mark.parametrize("m", range(1, 9))
def test_enumerate_counts_bell(m):
    parts = enumerate_partitions(m)
    assert len(parts) == bell(m) == BELL[m]
    assert len(set(parts)) == len(parts)


@pytest.mark.parametrize("m", range(1, 7))
def test_enumerate_matches_brute_force(m):
    assert set(enumerate_partitions(m)) == brute_partitions(m)


def test_enumerate_cap():
    with pytest.raises(CapExceeded):
        enumerate_partitions(13)
    with override_caps(max_partition_size=4):
        with pytest.raises(CapExceeded):
            enumerate_partitions(5)


@pytest.mark.parametrize("d, count", [(1, 1), (2, 3), (3, 15), (4, 105), (5, 945)])
def test_enumerate_brauer(d, count):
    got = enumerate_brauer(d)
    assert len(got) == count
    assert set(got) == {p for p in enumerate_partitions(2 * d) if all(len(b) == 2 for b in p.blocks)}


# lattice ---------------------------------------------------------------------------


def test_num_blocks():
    assert num_blocks(P([1, 2])) == 1
    assert num_blocks(P([1], [2], [3], [4])) == 4
    assert num_blocks(P([1, 3], [2, 4])) == 2


def test_is_refinement_examples():
    assert is_refinement(P([1], [2]), P([1, 2]))
    assert not is_refinement(P([1, 2]), P([1], [2]))
    p = P([1, 3], [2, 4])
    assert is_refinement(p, p)


def test_coarsenings_examples():
    assert coarsenings(P([1, 2])) == [P([1, 2])]
    assert set(coarsenings(P([1], [2]))) == {P([1], [2]), P([1, 2])}


@given(partitions())
def test_coarsenings_match_filter(p):
    got = coarsenings(p)
    assert len(got) == bell(num_blocks(p))
    assert set(got) == {r for r in enumerate_partitions(p.size) if is_refinement(p, r)}


def test_moebius_examples():
    assert moebius(P([1], [2]), P([1, 2])) == -1
    assert moebius(P([1], [2], [3]), P([1, 2, 3])) == 2
    p = P([1, 4], [2], [3])
    assert moebius(p, p) == 1


@pytest.mark.parametrize("m", [2, 3, 4])
def test_moebius_inverts_zeta(m):
    # sum over the interval [p, q] of mu(p, r) is [p == q]
    parts = enumerate_partitions(m)
    for p in parts:
        for q in coarsenings(p):
            total = sum(moebius(p, r) for r in coarsenings(p) if is_refinement(r, q))
            assert total == (1 if p == q else 0)


# symmetric group action ----------------------------------------------------------------


def test_conjugate_examples():
    p = P([1, 3], [2, 4])
    e = Permutation.identity(2)
    s = Permutation([2, 1])
    assert conjugate(e, p, e) == p
    # one-sided: D_s D_id is the crossing; two-sided conjugation fixes the identity
    assert conjugate(s, p, e) == P([1, 4], [2, 3])
    assert conjugate(e, p, s) == P([1, 4], [2, 3])
    assert conjugate_by(s, p) == p
    assert conjugate_by(s, P([1, 3], [2], [4])) == P([1], [2, 4], [3])
    top = P([1, 2, 3, 4])
    assert conjugate_by(s, top) == top


@settings(max_examples=60)
@given(st.data())
def test_conjugate_is_an_action(data):
    p = data.draw(partitions())
    d = p.d
    s1, s2, t1, t2 = (data.draw(permutations(d)) for _ in range(4))
    lhs = conjugate(s1, conjugate(s2, p, t2), t1)
    assert lhs == conjugate(s1 * s2, p, t2 * t1)


@given(st.data())
def test_conjugate_preserves_block_count(data):
    p = data.draw(partitions())
    s = data.draw(permutations(p.d))
    assert num_blocks(conjugate_by(s, p)) == num_blocks(p)


@pytest.mark.parametrize(
    "d, brauer, count", [(1, False, 2), (2, False, 11), (3, False, 52), (2, True, 3), (3, True, 5), (4, True, 12)]
)
def test_conjugation_orbits(d, brauer, count):
    universe = enumerate_brauer(d) if brauer else enumerate_partitions(2 * d)
    orbits = conjugation_orbits(d, universe)
    assert len(orbits) == count
    assert sum(len(o) for o in orbits) == len(universe)


def test_conjugation_orbits_burnside_d2():
    # (15 + #fixed points of (1 2)) / 2
    s = Permutation([2, 1])
    fixed = sum(conjugate_by(s, p) == p for p in enumerate_partitions(4))
    assert fixed == 7
    assert len(conjugation_orbits(2, enumerate_partitions(4))) == (15 + fixed) // 2


def test_conjugation_orbits_needs_closed_universe():
    with pytest.raises(OrbitClosureError):
        conjugation_orbits(2, [P([1], [2, 3], [4])])
