"""Acceptance checks; each test carries a ``criterion`` marker and the run ends
with one PASS/FAIL line per criterion.  All comparisons are exact."""

import random

import pytest

from diagcent.config import override_caps
from diagcent.diagram_algebra import (
    AlgebraElement,
    DeltaPoly,
    compose_partitions,
    from_orbit_basis,
    generator_e,
    generator_s,
    identity_partition,
    to_orbit_basis,
)
from diagcent.gct import Gct, enumerate_gct, gct_of_brauer, nu, rho
from diagcent.graphs import census, generate_cycle_unions, phi, psi, psi_inverse, relabel_edges
from diagcent.invariants import hilbert_table, molien_dim_sym
from diagcent.partitions import (
    Permutation,
    SetPartition,
    coarsenings,
    conjugate_by,
    conjugation_orbits,
    enumerate_brauer,
    enumerate_partitions,
    is_refinement,
    moebius,
)
from diagcent.schur_weyl import (
    ExactMatrix,
    GaussianRational,
    brauer_generator_matrices,
    centralizer_dimension_in_commutant,
    invert_matrix,
    partition_image_report,
    phi_o_matrix,
    psi_orth_prime_matrix,
    psi_partition_matrix,
)

criterion = pytest.mark.criterion
DELTA = DeltaPoly.monomial(1)


def _tensor_range(max_d=3, limit=4096):
    for d in range(1, max_d + 1):
        n = 1
        while n**d <= limit:
            yield n, d
            n += 1


# 1 -----------------------------------------------------------------------------------


@criterion(1, "Molien dimension equals #ULG_{d,<=n} for n <= 6, d <= 4")
def test_molien_equals_graph_census():
    for d in range(1, 5):
        full = census(d)
        for n in range(1, 7):
            graphs = sum(1 for g in full if g.num_vertices <= n)
            assert molien_dim_sym(n, d) == graphs, (n, d)


# 2 and 3 ---------------------------------------------------------------------------------


@criterion(2, "centralizer in commutant = Molien = #ULG_{d,<=n} for n^d <= 4096, d <= 3")
@pytest.mark.parametrize("d", [1, 2, 3])
def test_centralizer_molien_graphs(d):
    full = census(d)
    with override_caps(molien_max_n=4096):
        for n, dd in _tensor_range():
            if dd != d:
                continue
            cent = centralizer_dimension_in_commutant("sym", n, d)
            mol = molien_dim_sym(n, d)
            graphs = sum(1 for g in full if g.num_vertices <= n)
            assert cent == mol == graphs, (n, d, cent, mol, graphs)


@criterion(3, "orbit basis image vanishes exactly for |p| > n, survivors independent, rank = #{|p| <= n}")
@pytest.mark.parametrize("d", [1, 2, 3])
def test_orbit_basis_image(d):
    parts = enumerate_partitions(2 * d)
    for n, dd in _tensor_range():
        if dd != d:
            continue
        rep = partition_image_report(n, d)
        expected = frozenset(p for p in parts if len(p.blocks) > n)
        assert rep.vanishing == expected, (n, d)
        assert rep.survivors_independent, (n, d)
        assert rep.rank == len(parts) - len(expected), (n, d)
    # the small cases also through the explicit matrices
    for n in range(1, 4):
        if n ** (2 * d) <= 4096:
            rep = partition_image_report(n, d, method="matrix")
            assert rep.ok()


# 4 ------------------------------------------------------------------------------------


@criterion(4, "Hilbert table columns constant for n >= 2d; d=2 column is 11 for n in 4..6")
def test_stability():
    table = hilbert_table("sym", range(1, 7), range(1, 4))
    for d in table.d_values:
        col = {table.entries[(n, d)] for n in table.n_values if n >= 2 * d}
        assert len(col) == 1, d
        assert table.stable(d)
    orbits = len(conjugation_orbits(2, enumerate_partitions(4)))
    assert orbits == 11
    assert [table.entries[(n, 2)] for n in (4, 5, 6)] == [orbits] * 3


# 5 ------------------------------------------------------------------------------------


@criterion(5, "Brauer conjugation orbits = #ULG^O_d = #GCT_d for d <= 6")
@pytest.mark.parametrize("d", range(1, 7))
def test_brauer_cycle_identity(d):
    orbits = conjugation_orbits(d, enumerate_brauer(d))
    graphs = census(d, cycles_only=True)
    assert len(orbits) == len(graphs) == len(enumerate_gct(d)) == len(generate_cycle_unions(d))


# 6 ------------------------------------------------------------------------------------


@criterion(6, "nu and rho are mutually inverse for d <= 6")
@pytest.mark.parametrize("d", range(1, 7))
def test_rho_nu_inverse(d):
    for g in census(d, cycles_only=True):
        assert nu(rho(g)) == g
    for c in enumerate_gct(d):
        assert rho(nu(c)) == c


# 7 ------------------------------------------------------------------------------------


@criterion(7, "traced cycle type equals rho(phi(p)) for Brauer diagrams, d <= 5; worked example gives {ULT, T}")
def test_commuting_triangle():
    for d in range(1, 6):
        for p in enumerate_brauer(d):
            assert gct_of_brauer(p) == rho(phi(p)), p
    d1 = SetPartition([[1, 8], [2, 6], [5, 7], [3, 4]], 8)
    assert gct_of_brauer(d1) == Gct(["ULT", "T"])


# 8 ------------------------------------------------------------------------------------


@criterion(8, "orthogonal and symplectic centralizers have dimension #ULG^O_2 = 3")
@pytest.mark.parametrize("flavor, n", [("orthq", 2), ("orthq2", 2), ("orthq", 3), ("orthq2", 3),
                                       ("orthq", 4), ("orthq2", 4), ("symp", 4)])
def test_orth_symp_centralizers(flavor, n):
    cycles = len(census(2, cycles_only=True))
    assert cycles == 3
    assert centralizer_dimension_in_commutant(flavor, n, 2) == cycles


# 9 ------------------------------------------------------------------------------------


@criterion(9, "diagram product, Psi, relabeling, Moebius and orbit-basis property suites")
def test_associativity():
    for d in (1, 2):
        parts = enumerate_partitions(2 * d)
        els = [AlgebraElement.basis_element(p) for p in parts]
        for a in els:
            for b in els:
                ab = a * b
                for c in els:
                    assert ab * c == a * (b * c)
    rng = random.Random(9)
    els = [AlgebraElement.basis_element(p) for p in enumerate_partitions(6)]
    for _ in range(500):
        a, b, c = rng.choice(els), rng.choice(els), rng.choice(els)
        assert (a * b) * c == a * (b * c)


@criterion(9, "diagram product, Psi, relabeling, Moebius and orbit-basis property suites")
def test_opposite_homomorphism():
    for n in (1, 2, 3):
        for d in (1, 2):
            parts = enumerate_partitions(2 * d)
            mats = {p: psi_partition_matrix(n, d, p) for p in parts}
            for a in parts:
                for b in parts:
                    q, k = compose_partitions(b, a)
                    assert mats[a] @ mats[b] == mats[q].scale(n**k)


@criterion(9, "diagram product, Psi, relabeling, Moebius and orbit-basis property suites")
def test_relabeling_action():
    rng = random.Random(5)
    for d in range(1, 6):
        parts = enumerate_partitions(2 * d)
        for _ in range(200):
            p = rng.choice(parts)
            sigma = Permutation(rng.sample(range(1, d + 1), d))
            assert psi_inverse(relabel_edges(psi(p), sigma)) == conjugate_by(sigma, p)


@criterion(9, "diagram product, Psi, relabeling, Moebius and orbit-basis property suites")
def test_moebius_inversion_and_orbit_roundtrip():
    for d in (1, 2, 3):
        parts = enumerate_partitions(2 * d)
        for p in parts:
            for q in coarsenings(p):
                total = sum(moebius(p, r) for r in coarsenings(p) if is_refinement(r, q))
                assert total == (1 if p == q else 0)
            x = AlgebraElement.basis_element(p)
            assert from_orbit_basis(to_orbit_basis(x)) == x


@criterion(9, "diagram product, Psi, relabeling, Moebius and orbit-basis property suites")
def test_generator_relations():
    for d in (2, 3, 4):
        ident = AlgebraElement.basis_element(identity_partition(d))
        for j in range(1, d):
            s, e = generator_s(d, j), generator_e(d, j)
            assert s * s == ident
            assert e * e == e.scale(DELTA)
            assert s * e == e
            assert e * s == e


# 10 -----------------------------------------------------------------------------------


@criterion(10, "phi_O conjugates the antidiagonal-form action onto the standard-form action over Q(i)")
@pytest.mark.parametrize("n", [2, 3])
def test_phi_o_conjugation(n):
    F = phi_o_matrix(n)
    Finv = invert_matrix(F)
    for d in (1, 2):
        Fd, Fid = F.tensor_power(d), Finv.tensor_power(d)
        prime = brauer_generator_matrices("Oq'", n, d)
        std = brauer_generator_matrices("Oq", n, d)
        for key in prime:
            assert Fid @ prime[key].map(GaussianRational) @ Fd == std[key].map(GaussianRational)
        for p in enumerate_brauer(d):
            lhs = Fid @ psi_orth_prime_matrix(n, d, p).map(GaussianRational) @ Fd
            assert lhs == psi_partition_matrix(n, d, p).map(GaussianRational)
        # identity diagram sanity check
        assert Fid @ Fd == ExactMatrix.identity(n**d).map(GaussianRational)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
