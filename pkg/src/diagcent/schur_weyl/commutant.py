"""Commutants, algebra spans, images and centralizer dimensions inside End(V^{(x)d}).

Two routes are available for commutants.  The generic route solves
X A = A X exactly by fraction-free elimination over the n^{2d} unknown
entries of X.  When every action matrix is a permutation matrix the commutant
is spanned by the indicator matrices of the orbits of the generated group on
index pairs (a, b), and only those orbits need to be counted; this is the
route used for the symmetric groups at larger n.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from diagcent.partitions import (
    Permutation,
    SetPartition,
    coarsenings,
    enumerate_partitions,
    is_refinement,
    moebius,
)
from diagcent.schur_weyl.exact import (
    EchelonBuilder,
    ExactMatrix,
    SubspaceBasis,
    nullspace,
)
from diagcent.schur_weyl.maps import (
    check_tensor_cap,
    diagonal_action_matrix,
    place_permutation_matrix,
    psi_partition_matrix,
)

__all__ = [
    "OrbitCommutant",
    "algebra_span",
    "commutant",
    "lie_algebra_basis",
    "orientation_reversing_element",
    "lie_commutant",
    "ImageReport",
    "partition_image_report",
    "image_rank_partition",
    "centralizer_dimension_in_commutant",
    "place_images",
    "diagonal_images",
    "normalize_flavor",
    "VerificationError",
]

log = logging.getLogger(__name__)


class VerificationError(AssertionError):
    pass


# permutation actions ------------------------------------------------------------


def place_images(n: int, d: int, sigma: Permutation) -> np.ndarray:
    """Images of the place permutation of sigma on basis indices (0-based)."""
    N = n**d
    idx = np.arange(N, dtype=np.int64)
    digits = [(idx // n ** (d - 1 - k)) % n for k in range(d)]
    out = np.zeros(N, dtype=np.int64)
    for k in range(d):
        out = out * n + digits[sigma(k + 1) - 1]
    return out


def diagonal_images(n: int, d: int, g: Sequence[int]) -> np.ndarray:
    """Images of v_w -> v_{g(w_1)..g(w_d)}; g is a 0-based image list on [0, n)."""
    N = n**d
    g = np.asarray(g, dtype=np.int64)
    idx = np.arange(N, dtype=np.int64)
    out = np.zeros(N, dtype=np.int64)
    for k in range(d):
        out = out * n + g[(idx // n ** (d - 1 - k)) % n]
    return out


class OrbitCommutant:
    """Commutant of a group of permutation matrices, held as orbits on index pairs.

    The orbits of one generator g are described implicitly: a pair (a, b)
    whose entries lie on g-cycles C, C' of lengths l, l' belongs to the orbit
    numbered offset(C, C') + (pos(b) - pos(a)) mod gcd(l, l').  The remaining
    generators glue these orbits together through a sparse graph.
    """

    def __init__(self, size: int, generators: Sequence[np.ndarray]):
        self.size = N = size
        gens = []
        ident = np.arange(N, dtype=np.int64)
        for h in generators:
            h = np.asarray(h, dtype=np.int64)
            if h.shape != (N,) or not np.array_equal(np.sort(h), ident):
                raise ValueError("generator is not a permutation of the index set")
            if not np.array_equal(h, ident):
                gens.append(h)
        self.generators = gens
        base = min(gens, key=self._cycle_count) if gens else ident
        self._setup_cycles(base)
        src, dst = [], []
        for h in gens:
            if h is base:
                continue
            if np.array_equal(base[h], h[base]):
                a, b = self._representatives()
                src.append(self.label(a, b))
                dst.append(self.label(h[a], h[b]))
            else:
                for s, t in self._moved_edges(h):
                    src.append(s)
                    dst.append(t)
        K = self.num_classes
        if src:
            s = np.concatenate(src)
            t = np.concatenate(dst)
            graph = coo_matrix((np.ones(len(s), dtype=np.int8), (s, t)), shape=(K, K))
            self.dim, self.component = connected_components(graph, directed=False)
        else:
            self.dim, self.component = K, np.arange(K)

    @staticmethod
    def _cycle_count(h: np.ndarray) -> int:
        N = len(h)
        graph = coo_matrix((np.ones(N, dtype=np.int8), (np.arange(N), h)), shape=(N, N))
        return connected_components(graph, directed=False)[0]

    def _setup_cycles(self, g: np.ndarray) -> None:
        N = self.size
        cyc = np.full(N, -1, dtype=np.int64)
        pos = np.zeros(N, dtype=np.int64)
        members = []
        starts = []
        lengths = []
        for s in range(N):
            if cyc[s] >= 0:
                continue
            c = len(lengths)
            starts.append(len(members))
            x, k = s, 0
            while cyc[x] < 0:
                cyc[x], pos[x] = c, k
                members.append(x)
                x, k = g[x], k + 1
            lengths.append(k)
        L = np.array(lengths, dtype=np.int64)
        G = np.gcd.outer(L, L)
        self.cyc, self.pos, self.lengths, self.G = cyc, pos, L, G
        self.members = np.array(members, dtype=np.int64)
        self.starts = np.array(starts, dtype=np.int64)
        flat = G.ravel()
        self.offset = (np.cumsum(flat) - flat).reshape(G.shape)
        self.num_classes = int(flat.sum())

    def label(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ca, cb = self.cyc[a], self.cyc[b]
        g = self.G[ca, cb]
        return self.offset[ca, cb] + (self.pos[b] - self.pos[a]) % g

    def _representatives(self):
        nc = len(self.lengths)
        flat = self.G.ravel()
        pair = np.repeat(np.arange(nc * nc), flat)
        r = np.arange(self.num_classes) - np.repeat(self.offset.ravel(), flat)
        c1, c2 = pair // nc, pair % nc
        return self.members[self.starts[c1]], self.members[self.starts[c2] + r]

    def _moved_edges(self, h: np.ndarray, chunk: int = 1 << 22):
        N = self.size
        moved = np.nonzero(h != np.arange(N))[0]
        everything = np.arange(N, dtype=np.int64)
        step = max(1, chunk // N)
        for i in range(0, len(moved), step):
            m = moved[i : i + step]
            a = np.repeat(m, N)
            b = np.tile(everything, len(m))
            for x, y in ((a, b), (b, a)):
                s, t = self.label(x, y), self.label(h[x], h[y])
                keep = s != t
                key = np.unique(s[keep] * self.num_classes + t[keep])
                yield key // self.num_classes, key % self.num_classes

    def pair_labels(self) -> np.ndarray:
        """Orbit index of every pair (a, b), as an N x N array (small N only)."""
        N = self.size
        a = np.repeat(np.arange(N), N)
        b = np.tile(np.arange(N), N)
        return self.component[self.label(a, b)].reshape(N, N)

    def matrices(self) -> list[ExactMatrix]:
        """Orbit indicator matrices, ordered by orbit number."""
        lab = self.pair_labels()
        out = [dict() for _ in range(self.dim)]
        for (a, b), k in np.ndenumerate(lab):
            out[k][(a, b)] = 1
        return [ExactMatrix(self.size, self.size, e) for e in out]

    def to_subspace(self) -> SubspaceBasis:
        return SubspaceBasis.from_matrices(self.matrices(), (self.size, self.size))

    def __repr__(self):
        return f"OrbitCommutant(dim={self.dim}, size={self.size})"


# generic linear algebra -----------------------------------------------------------


def algebra_span(generators: Sequence[ExactMatrix], include_identity: bool = True) -> SubspaceBasis:
    """The (unital, by default) algebra generated by square matrices."""
    if not generators:
        raise ValueError("no generators")
    N = generators[0].rows
    if any(g.shape != (N, N) for g in generators):
        raise ValueError("generators must be square of equal size")
    eb = EchelonBuilder()
    found: list[ExactMatrix] = []
    queue = [ExactMatrix.identity(N)] if include_identity else list(generators)
    for x in queue:
        if eb.insert(x.flatten()):
            found.append(x)
    i = 0
    while i < len(found):
        x = found[i]
        i += 1
        for g in generators:
            y = x @ g
            if eb.insert(y.flatten()):
                found.append(y)
    return SubspaceBasis.from_matrices(found, (N, N))


def _commutator_equations(A: ExactMatrix, eb: EchelonBuilder) -> None:
    # rows of X A - A X = 0, unknown X[i, j] at coordinate i * N + j
    N = A.rows
    rows: dict[tuple[int, int], dict[int, object]] = {}
    for (j, k), v in A.entries.items():
        for i in range(N):
            r = rows.setdefault((i, k), {})
            r[i * N + j] = r.get(i * N + j, 0) + v
    for (i, j), v in A.entries.items():
        for k in range(N):
            r = rows.setdefault((i, k), {})
            r[j * N + k] = r.get(j * N + k, 0) - v
    for key in sorted(rows):
        r = {c: v for c, v in rows[key].items() if v}
        if r:
            eb.insert(r)


def commutant(action_matrices: Sequence[ExactMatrix], within: SubspaceBasis | None = None,
              method: str = "auto"):
    """Basis of {X : X A = A X for every A}, optionally intersected with ``within``.

    Returns an ``OrbitCommutant`` when every A is a permutation matrix, no
    ``within`` is given and ``method`` is "auto" or "orbit"; otherwise an exact
    ``SubspaceBasis``.
    """
    if method not in ("auto", "orbit", "generic"):
        raise ValueError(f"unknown method {method!r}")
    if not action_matrices and within is None:
        raise ValueError("need action matrices or a subspace")
    N = action_matrices[0].rows if action_matrices else within.shape[0]
    for A in action_matrices:
        if A.shape != (N, N):
            raise ValueError("dimension mismatch")
    if within is not None and within.ambient != N * N:
        raise ValueError("subspace does not live in End(V) of the same size")
    if within is None and method != "generic":
        images = [A.permutation_images() for A in action_matrices]
        if all(im is not None for im in images):
            return OrbitCommutant(N, [np.array(im) for im in images])
        if method == "orbit":
            raise ValueError("the orbit method needs permutation matrices")
    if within is None:
        eb = EchelonBuilder()
        for A in action_matrices:
            _commutator_equations(A, eb)
        return SubspaceBasis(N * N, nullspace(eb, N * N), (N, N))
    basis = within.matrices()
    eb = EchelonBuilder()
    for A in action_matrices:
        comms = [(B @ A - A @ B).flatten() for B in basis]
        coords: dict[int, dict[int, object]] = {}
        for t, vec in enumerate(comms):
            for k, v in vec.items():
                coords.setdefault(k, {})[t] = v
        for k in sorted(coords):
            eb.insert(coords[k])
    out = []
    for c in nullspace(eb, len(basis)):
        vec: dict[int, object] = {}
        for t, ct in c.items():
            for k, v in within.rows[t].items():
                vec[k] = vec.get(k, 0) + ct * v
        out.append(vec)
    return SubspaceBasis(N * N, out, (N, N))


# Lie algebras ----------------------------------------------------------------------

_FLAVOR_ALIASES = {
    "orthq": "OrthQ",
    "oq": "OrthQ",
    "orthq'": "OrthQ'",
    "orthq2": "OrthQ'",
    "oq'": "OrthQ'",
    "symp": "Symp",
    "sp": "Symp",
    "sym": "Sym",
}


def normalize_flavor(flavor: str) -> str:
    try:
        return _FLAVOR_ALIASES[flavor.lower()]
    except KeyError:
        raise ValueError(f"unknown flavor {flavor!r}") from None


def _elementary(n, i, j, v=1) -> ExactMatrix:
    return ExactMatrix(n, n, {(i, j): v})


def _antidiag(n) -> ExactMatrix:
    return ExactMatrix(n, n, {(i, n - 1 - i): 1 for i in range(n)})


def _symplectic_form(n) -> ExactMatrix:
    m = n // 2
    ent = {}
    for k in range(m):
        ent[(k, m + k)] = 1
        ent[(m + k, k)] = -1
    return ExactMatrix(n, n, ent)


def lie_algebra_basis(flavor: str, n: int) -> list[ExactMatrix]:
    """so(n) for the standard form, so(n) for the antidiagonal form, or sp(n)."""
    flavor = normalize_flavor(flavor)
    if flavor == "OrthQ":
        return [_elementary(n, i, j) - _elementary(n, j, i) for i in range(n) for j in range(i + 1, n)]
    if flavor == "OrthQ'":
        Ip = _antidiag(n)
        return [Ip @ (_elementary(n, i, j) - _elementary(n, j, i))
                for i in range(n) for j in range(i + 1, n)]
    if flavor == "Symp":
        if n % 2:
            raise ValueError("the symplectic flavor needs even n")
        J = _symplectic_form(n)
        out = []
        for i in range(n):
            for j in range(i, n):
                S = _elementary(n, i, j) + _elementary(n, j, i) if i != j else _elementary(n, i, i)
                out.append(J @ S)
        return out
    raise ValueError(f"no Lie algebra for flavor {flavor!r}")


def orientation_reversing_element(flavor: str, n: int) -> ExactMatrix | None:
    """A determinant -1 element of the orthogonal group; None for Sp."""
    flavor = normalize_flavor(flavor)
    if flavor == "OrthQ":
        ent = {(i, i): 1 for i in range(n)}
        ent[(0, 0)] = -1
        return ExactMatrix(n, n, ent)
    if flavor == "OrthQ'":
        if n == 1:
            return ExactMatrix(1, 1, {(0, 0): -1})
        images = list(range(n))
        images[0], images[-1] = n - 1, 0
        return ExactMatrix.from_permutation(images)
    return None


def _lie_action(a: ExactMatrix, d: int) -> ExactMatrix:
    n = a.rows
    total = ExactMatrix.zeros(n**d, n**d)
    for k in range(d):
        term = ExactMatrix.identity(n**k).kron(a).kron(ExactMatrix.identity(n ** (d - 1 - k)))
        total = total + term
    return total


def lie_commutant(flavor: str, n: int, d: int) -> SubspaceBasis:
    """End_G(V^{(x)d}) for G = O(n) (either form) or Sp(n), via the Lie algebra.

    For the orthogonal groups the tensor action of one determinant -1 element
    is added, since the Lie algebra only sees the identity component.
    """
    flavor = normalize_flavor(flavor)
    check_tensor_cap(n, d)
    mats = [_lie_action(a, d) for a in lie_algebra_basis(flavor, n)]
    h = orientation_reversing_element(flavor, n)
    if h is not None:
        mats.append(h.tensor_power(d))
    N = n**d
    if not mats:
        return SubspaceBasis.full(N * N, (N, N))
    eb = EchelonBuilder()
    for A in mats:
        _commutator_equations(A, eb)
    return SubspaceBasis(N * N, nullspace(eb, N * N), (N, N))


# the partition algebra image --------------------------------------------------------


@dataclass
class ImageReport:
    n: int
    d: int
    rank: int
    kernel_dim: int
    vanishing: frozenset  # partitions p with Psi(x_p) = 0
    survivors_independent: bool
    method: str

    def expected_vanishing(self) -> frozenset:
        return frozenset(p for p in enumerate_partitions(2 * self.d) if len(p.blocks) > self.n)

    def ok(self) -> bool:
        survivors = sum(1 for p in enumerate_partitions(2 * self.d) if len(p.blocks) <= self.n)
        return (
            self.vanishing == self.expected_vanishing()
            and self.survivors_independent
            and self.rank == survivors
        )


def _image_vectors(n: int, d: int, parts: list[SetPartition], method: str):
    if method == "matrix":
        return [psi_partition_matrix(n, d, p).flatten() for p in parts]
    # coordinates u in [n]^{2d} with the same pattern of equal entries give equal
    # columns in every Psi(D_p); values in [1, min(n, 2d)] already realise every pattern
    m = min(n, 2 * d)
    kernels = sorted({SetPartition.from_labels(u) for u in product(range(m), repeat=2 * d)})
    return [{k: 1 for k, ker in enumerate(kernels) if is_refinement(p, ker)} for p in parts]


def partition_image_report(n: int, d: int, method: str = "auto") -> ImageReport:
    """Rank of the image of Par_d(n) and the vanishing pattern of the orbit basis."""
    if method == "auto":
        method = "matrix" if n ** (2 * d) <= 4096 else "pattern"
    if method not in ("matrix", "pattern"):
        raise ValueError(f"unknown method {method!r}")
    if method == "matrix":
        check_tensor_cap(n, d)
    parts = enumerate_partitions(2 * d)
    vecs = _image_vectors(n, d, parts, method)
    pos = {p: i for i, p in enumerate(parts)}
    eb = EchelonBuilder()
    for v in vecs:
        eb.insert(v)
    vanishing = []
    survivors = EchelonBuilder()
    independent = True
    for p in parts:
        x: dict[int, int] = {}
        for r in coarsenings(p):
            mu = moebius(p, r)
            for k, v in vecs[pos[r]].items():
                x[k] = x.get(k, 0) + mu * v
        x = {k: v for k, v in x.items() if v}
        if not x:
            vanishing.append(p)
        elif not survivors.insert(x):
            independent = False
    return ImageReport(n, d, eb.rank, len(parts) - eb.rank, frozenset(vanishing), independent, method)


def image_rank_partition(n: int, d: int, method: str = "auto") -> tuple[int, int]:
    """(rank, kernel dimension) of Psi on Par_d(n), after checking the orbit-basis pattern."""
    rep = partition_image_report(n, d, method)
    if not rep.ok():
        raise VerificationError(f"image of Par_{d}({n}) does not split along block counts")
    return rep.rank, rep.kernel_dim


# centralizer dimensions ----------------------------------------------------------------


def _sym_generators(n: int) -> list[list[int]]:
    if n < 2:
        return []
    transposition = [1, 0] + list(range(2, n))
    cycle = [(i + 1) % n for i in range(n)]
    return [transposition] if n == 2 else [transposition, cycle]


def centralizer_dimension_in_commutant(flavor: str, n: int, d: int, method: str = "auto") -> int:
    """dim of the S_d place-permutation commutant inside End_G(V^{(x)d}).

    ``flavor`` is sym (G = Sigma_n permuting the basis), orthq, orthq2 or symp.
    For sym the "auto"/"orbit" method counts orbits of Sigma_n x S_d on index
    pairs; "generic" solves the linear equations exactly.
    """
    flavor = normalize_flavor(flavor)
    check_tensor_cap(n, d)
    if d == 0:
        return 1
    places = [Permutation.transposition(d, j, j + 1) for j in range(1, d)]
    if flavor == "Sym":
        if method in ("auto", "orbit"):
            gens = [place_images(n, d, s) for s in places]
            gens += [diagonal_images(n, d, g) for g in _sym_generators(n)]
            return OrbitCommutant(n**d, gens).dim
        sym = [diagonal_action_matrix(n, d, Permutation([x + 1 for x in g])) for g in _sym_generators(n)]
        inner = commutant(sym, method="generic") if sym else SubspaceBasis.full(n ** (2 * d), (n**d, n**d))
        if not places:
            return inner.dim
        return commutant([place_permutation_matrix(n, d, s) for s in places], within=inner).dim
    inner = lie_commutant(flavor, n, d)
    if not places:
        return inner.dim
    return commutant([place_permutation_matrix(n, d, s) for s in places], within=inner).dim
