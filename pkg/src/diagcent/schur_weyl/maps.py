"""Matrices of diagram algebras acting on V^{(x)d}, dim V = n.

Basis tensors v_{w_1} (x) ... (x) v_{w_d} are indexed by the mixed-radix
integer of (w_1 - 1, ..., w_d - 1) with w_1 the most significant digit.  A
matrix M represents the map v_c -> sum_r M[r, c] v_r.

For a diagram D_p the entry of Psi(D_p) in row r (the bottom-row tuple) and
column r' (the top-row tuple) is 1 exactly when the concatenation (r, r') is
constant on every block of p.  With this convention Psi(a) Psi(b) equals
Psi(b a) at delta = n, i.e. Psi is a homomorphism from the opposite algebra.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from diagcent.config import CapExceeded, caps
from diagcent.diagram_algebra import is_brauer
from diagcent.partitions import Permutation, SetPartition
from diagcent.schur_weyl.exact import ExactMatrix, GaussianRational

__all__ = [
    "TensorIndex",
    "check_tensor_cap",
    "psi_partition_matrix",
    "psi_orth_prime_matrix",
    "place_permutation_matrix",
    "diagonal_action_matrix",
    "brauer_generator_matrices",
    "phi_o_matrix",
    "invert_matrix",
    "FLAVORS",
]

FLAVORS = ("Oq'", "Oq", "Sp")


class TensorIndex:
    """Bijection between tuples in [1, n]^d and integers in [0, n^d)."""

    __slots__ = ("n", "d")

    def __init__(self, n: int, d: int):
        self.n, self.d = n, d

    def encode(self, digits: Sequence[int]) -> int:
        if len(digits) != self.d:
            raise ValueError("wrong tuple length")
        x = 0
        for w in digits:
            if not 1 <= w <= self.n:
                raise ValueError(f"digit {w} outside [1, {self.n}]")
            x = x * self.n + (w - 1)
        return x

    def decode(self, x: int) -> tuple[int, ...]:
        if not 0 <= x < self.n**self.d:
            raise ValueError("index out of range")
        out = []
        for _ in range(self.d):
            x, r = divmod(x, self.n)
            out.append(r + 1)
        return tuple(reversed(out))

    def __len__(self):
        return self.n**self.d


def check_tensor_cap(n: int, d: int) -> None:
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    if n**d > caps.max_tensor_dim:
        raise CapExceeded(f"n^d = {n ** d} exceeds the cap {caps.max_tensor_dim}")


def _encode0(values: Sequence[int], n: int) -> int:
    # 0-based digits
    x = 0
    for w in values:
        x = x * n + w
    return x


def psi_partition_matrix(n: int, d: int, p: SetPartition) -> ExactMatrix:
    if p.size != 2 * d:
        raise ValueError("partition size does not match d")
    check_tensor_cap(n, d)
    idx = p.block_index()
    ent = {}
    for vals in product(range(n), repeat=len(p.blocks)):
        u = [vals[idx[i]] for i in range(1, 2 * d + 1)]
        ent[(_encode0(u[:d], n), _encode0(u[d:], n))] = 1
    return ExactMatrix._raw(n**d, n**d, ent)


def psi_orth_prime_matrix(n: int, d: int, p: SetPartition) -> ExactMatrix:
    """Brauer diagram acting through the form (v_i, v_j) = [i = n + 1 - j].

    Top-row pairs {i', j'} require r'_i = bar(r'_j), bottom-row pairs {i, j}
    require r_i = bar(r_j) and through strands {i, j'} require r_i = r'_j,
    where bar(k) = n + 1 - k.
    """
    if not is_brauer(p):
        raise ValueError(f"{p} is not a Brauer diagram")
    if p.size != 2 * d:
        raise ValueError("partition size does not match d")
    check_tensor_cap(n, d)
    # each block is (x, y) with x < y; x is free, y is determined by x
    ent = {}
    for vals in product(range(n), repeat=d):
        u = [0] * (2 * d + 1)
        for (x, y), v in zip(p.blocks, vals):
            u[x] = v
            same_row = (x <= d) == (y <= d)
            u[y] = n - 1 - v if same_row else v
        ent[(_encode0(u[1 : d + 1], n), _encode0(u[d + 1 :], n))] = 1
    return ExactMatrix._raw(n**d, n**d, ent)


def place_permutation_matrix(n: int, d: int, sigma: Permutation) -> ExactMatrix:
    """v_{w_1..w_d} -> v_{w_sigma(1)..w_sigma(d)}."""
    if sigma.degree != d:
        raise ValueError("degree mismatch")
    check_tensor_cap(n, d)
    images = [0] * n**d
    for w in product(range(n), repeat=d):
        images[_encode0(w, n)] = _encode0([w[sigma(i) - 1] for i in range(1, d + 1)], n)
    return ExactMatrix.from_permutation(images)


def diagonal_action_matrix(n: int, d: int, g: Permutation) -> ExactMatrix:
    """v_{w_1..w_d} -> v_{g(w_1)..g(w_d)} for g a permutation of [1, n]."""
    if g.degree != n:
        raise ValueError("degree mismatch")
    check_tensor_cap(n, d)
    images = [0] * n**d
    for w in product(range(n), repeat=d):
        images[_encode0(w, n)] = _encode0([g(x + 1) - 1 for x in w], n)
    return ExactMatrix.from_permutation(images)


def _pair_operator(n: int, d: int, j: int, pair_in, pair_out) -> ExactMatrix:
    # acts on tensor slots j, j+1 by the rank-one map v_a (x) v_b -> pair_in(a, b) * sum pair_out
    ent = {}
    outs = [(a, b, c) for a in range(n) for b in range(n) if (c := pair_out(a, b))]
    for w in product(range(n), repeat=d):
        coef = pair_in(w[j - 1], w[j])
        if not coef:
            continue
        col = _encode0(w, n)
        u = list(w)
        for a, b, c in outs:
            u[j - 1], u[j] = a, b
            key = (_encode0(u, n), col)
            ent[key] = ent.get(key, 0) + coef * c
    return ExactMatrix(n**d, n**d, ent)


def brauer_generator_matrices(flavor: str, n: int, d: int) -> dict[tuple[str, int], ExactMatrix]:
    """Matrices of s_j and e_j, keyed ("s", j) and ("e", j).

    Oq' and Oq: s_j swaps slots j, j+1.  e_j kills v_a (x) v_b unless
    b = bar(a) (Oq') or b = a (Oq) and then outputs sum_k v_k (x) v_bar(k)
    (resp. sum_k v_k (x) v_k).  Sp (n = 2m): s_j is minus the swap and e_j
    sends v_a (x) v_b to (v_a, v_b)_s * sum_{k<=m} (v_{m+k} (x) v_k - v_k (x) v_{m+k}).
    """
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    check_tensor_cap(n, d)
    if flavor == "Sp" and n % 2:
        raise ValueError("the symplectic flavor needs even n")
    out = {}
    for j in range(1, d):
        swap = place_permutation_matrix(n, d, Permutation.transposition(d, j, j + 1))
        if flavor == "Oq'":
            e = _pair_operator(n, d, j, lambda a, b: int(b == n - 1 - a),
                               lambda a, b: int(b == n - 1 - a))
        elif flavor == "Oq":
            e = _pair_operator(n, d, j, lambda a, b: int(a == b), lambda a, b: int(a == b))
        else:
            m = n // 2

            def form(a, b, m=m):
                if a < m and b == a + m:
                    return 1
                if a >= m and b == a - m:
                    return -1
                return 0

            # sum_k v_{m+k} (x) v_k - v_k (x) v_{m+k} has coefficient form(b, a) on v_a (x) v_b
            e = _pair_operator(n, d, j, form, lambda a, b: form(b, a))
            swap = -swap
        out[("s", j)] = swap
        out[("e", j)] = e
    return out


def phi_o_matrix(n: int) -> ExactMatrix:
    """The isometry from the standard form to the antidiagonal form, over Q(i).

    Row i lists the coefficients of the image of v_i: v_i + i v_bar(i) for
    i <= n/2, -(i/2) v_i + (1/2) v_bar(i) for i > (n+1)/2, and v_i for the
    middle index when n is odd.  The matrix F satisfies F^T I' F = I.
    """
    half = Fraction(1, 2)
    ent = {}
    for i in range(1, n + 1):
        bi = n + 1 - i
        if 2 * i <= n:
            ent[(i - 1, i - 1)] = GaussianRational(1)
            ent[(i - 1, bi - 1)] = GaussianRational(0, 1)
        elif 2 * i > n + 1:
            ent[(i - 1, i - 1)] = GaussianRational(0, -half)
            ent[(i - 1, bi - 1)] = GaussianRational(half)
        else:
            ent[(i - 1, i - 1)] = GaussianRational(1)
    return ExactMatrix(n, n, ent)


def invert_matrix(m: ExactMatrix) -> ExactMatrix:
    """Gauss-Jordan inverse over any exact field (rationals or Q(i))."""
    n = m.rows
    if m.cols != n:
        raise ValueError("matrix is not square")
    def lift(x):
        return x if isinstance(x, GaussianRational) else Fraction(x)

    a = [[lift(m[(r, c)]) for c in range(n)] + [Fraction(int(r == c)) for c in range(n)]
         for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv if x else x for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return ExactMatrix(n, n, {(r, c): a[r][n + c] for r in range(n) for c in range(n)})
