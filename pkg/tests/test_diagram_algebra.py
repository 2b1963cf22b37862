import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagcent.diagram_algebra import (
    ORBIT,
    AlgebraElement,
    BasisMismatch,
    DeltaPoly,
    centralizer_basis,
    centralizer_basis_orbit,
    compose_partitions,
    embed_permutation,
    from_orbit_basis,
    generator_e,
    generator_s,
    identity_partition,
    is_brauer,
    multiply,
    to_orbit_basis,
)
from diagcent.partitions import Permutation, SetPartition, conjugate, enumerate_partitions

delta = DeltaPoly.monomial(1)


def D(text):
    return AlgebraElement.basis_element(SetPartition.parse(text))


@st.composite
def elements(draw, d):
    parts = enumerate_partitions(2 * d)
    k = draw(st.integers(1, 3))
    terms = {}
    for _ in range(k):
        p = parts[draw(st.integers(0, len(parts) - 1))]
        terms[p] = DeltaPoly({draw(st.integers(0, 2)): draw(st.integers(-3, 3))})
    return AlgebraElement(d, terms)


@st.composite
def perms(draw, d):
    return Permutation(draw(st.permutations(range(1, d + 1))))


# DeltaPoly ---------------------------------------------------------------------


def test_delta_poly_arithmetic():
    a = DeltaPoly({0: 1, 1: 2})
    b = DeltaPoly({1: -2})
    assert a + b == 1
    assert (a * a).items() == [(0, 1), (1, 4), (2, 4)]
    assert a.shift(2).items() == [(2, 1), (3, 2)]
    assert a.evaluate(3) == 7
    assert str(DeltaPoly({2: 1, 0: -1})) == "delta^2 - 1"


# product -----------------------------------------------------------------------


def test_compose_identity():
    i2 = identity_partition(2)
    assert compose_partitions(i2, i2) == (i2, 0)


def test_compose_removes_middle_components():
    p = SetPartition.parse("1|2")
    assert compose_partitions(p, p) == (p, 1)
    e = SetPartition.parse("1 2|3 4")
    assert compose_partitions(e, e) == (e, 1)


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose_partitions(identity_partition(1), identity_partition(2))


def test_multiply_examples():
    p = D("1|2")
    assert multiply(p, p) == p.scale(delta)
    ident = AlgebraElement.basis_element(identity_partition(3))
    b = D("1 4|2|3 5 6")
    assert multiply(ident, b) == b == multiply(b, ident)
    # every middle component reaches an outer dot, so no factor of delta
    assert multiply(D("1 3|2|4"), D("1|2 4|3")) == D("1|2|3|4")
    assert multiply(D("1|2 4|3"), D("1 3|2|4")) == D("1|2|3|4")
    # bottom 1 of the upper diagram and top 1' of the lower one close up in the middle
    assert multiply(D("1|2 4|3"), D("1 4|2|3")) == D("1 4|2|3").scale(delta)


def test_multiply_orientation():
    # D_{1|2 4|3}: bottom 1 alone, bottom 2 joined to top 2', top 1' alone
    # stacking D_{1 3|2 4} (identity) on either side is neutral; the crossing permutes
    s = generator_s(2, 1)
    x = D("1|2 4|3")
    assert multiply(s, x) == D("1|2 3|4")
    assert multiply(x, s) == D("1 4|2|3")


@pytest.mark.parametrize("d", [2, 3, 4])
def test_generator_relations(d):
    ident = AlgebraElement.basis_element(identity_partition(d))
    for j in range(1, d):
        s, e = generator_s(d, j), generator_e(d, j)
        assert s * s == ident
        assert e * e == e.scale(delta)
        assert s * e == e == e * s
    for j in range(1, d - 1):
        s1, s2 = generator_s(d, j), generator_s(d, j + 1)
        e1, e2 = generator_e(d, j), generator_e(d, j + 1)
        assert s1 * s2 * s1 == s2 * s1 * s2
        assert e1 * e2 * e1 == e1
        assert e2 * e1 * e2 == e2


def test_generator_index_range():
    with pytest.raises(ValueError):
        generator_s(2, 2)
    with pytest.raises(ValueError):
        generator_e(3, 0)


def test_embed_permutation():
    assert embed_permutation(Permutation.identity(2)) == AlgebraElement.basis_element(identity_partition(2))
    s = embed_permutation(Permutation([2, 1]))
    assert s == D("1 4|2 3") == generator_s(2, 1)
    assert s * s == embed_permutation(Permutation.identity(2))


@given(st.data())
def test_embed_is_homomorphism(data):
    d = data.draw(st.integers(1, 4))
    a, b = data.draw(perms(d)), data.draw(perms(d))
    assert embed_permutation(a) * embed_permutation(b) == embed_permutation(a * b)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_permutation_stacking_matches_conjugate(data):
    d = data.draw(st.integers(1, 3))
    parts = enumerate_partitions(2 * d)
    p = parts[data.draw(st.integers(0, len(parts) - 1))]
    s, t = data.draw(perms(d)), data.draw(perms(d))
    lhs = multiply(embed_permutation(s), AlgebraElement.basis_element(p), embed_permutation(t))
    assert lhs == AlgebraElement.basis_element(conjugate(s, p, t))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_associativity(data):
    d = data.draw(st.integers(1, 3))
    a, b, c = (data.draw(elements(d)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_bilinearity(data):
    d = data.draw(st.integers(1, 2))
    a, b, c = (data.draw(elements(d)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a - b) * c == a * c - b * c


# orbit basis -------------------------------------------------------------------


def test_orbit_basis_example():
    x = from_orbit_basis(AlgebraElement.basis_element(SetPartition.parse("1|2"), ORBIT))
    assert x == D("1|2") - D("1 2")


@pytest.mark.parametrize("d", [1, 2, 3])
def test_top_element_is_fixed(d):
    top = SetPartition([list(range(1, 2 * d + 1))], 2 * d)
    assert to_orbit_basis(AlgebraElement.basis_element(top)).terms == {top: DeltaPoly.const(1)}


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_orbit_roundtrip(data):
    d = data.draw(st.integers(1, 3))
    a = data.draw(elements(d))
    o = to_orbit_basis(a)
    assert o.basis == ORBIT
    assert from_orbit_basis(o) == a


def test_orbit_multiply_rejected():
    x = to_orbit_basis(D("1|2"))
    with pytest.raises(BasisMismatch):
        multiply(x, x)
    with pytest.raises(BasisMismatch):
        x + D("1|2")
    with pytest.raises(BasisMismatch):
        to_orbit_basis(x)


def test_json_roundtrip():
    a = D("1 3|2|4").scale(DeltaPoly({0: 2, 3: -1})) + D("1 2 3 4")
    blob = json.loads(json.dumps(a.to_json()))
    assert AlgebraElement.from_json(blob) == a
    o = to_orbit_basis(a)
    assert AlgebraElement.from_json(o.to_json()) == o


# Brauer and centralizers ---------------------------------------------------------


def test_is_brauer():
    assert is_brauer(SetPartition.parse("1 2|3 4"))
    assert not is_brauer(SetPartition.parse("1 2 3 4"))
    assert sum(map(is_brauer, enumerate_partitions(6))) == 15


@pytest.mark.parametrize("d, algebra, count", [(1, "partition", 2), (2, "partition", 11),
                                               (3, "partition", 52), (2, "brauer", 3), (3, "brauer", 5)])
def test_centralizer_basis_counts(d, algebra, count):
    assert len(centralizer_basis(d, algebra)) == count


@pytest.mark.parametrize("d, count", [(1, 2), (2, 11), (3, 52)])
def test_centralizer_orbit_counts(d, count):
    assert len(centralizer_basis_orbit(d)) == count


@pytest.mark.parametrize("d", [2, 3])
def test_centralizer_elements_commute_with_permutations(d):
    rng = random.Random(d)
    gens = [embed_permutation(Permutation.transposition(d, j, j + 1)) for j in range(1, d)]
    for gamma in centralizer_basis(d, "partition"):
        for g in gens:
            assert g * gamma == gamma * g
    for x in centralizer_basis_orbit(d):
        xd = from_orbit_basis(x)
        g = rng.choice(gens)
        assert g * xd == xd * g
