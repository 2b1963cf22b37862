"""Exact arithmetic in the partition algebra Par_d(delta) and its Brauer subalgebra.

Coefficients live in Z[delta] so a single computation is valid for every value
of the parameter.  The product D_{p1} D_{p2} stacks p1 on top of p2; every
component left entirely in the middle row is deleted and contributes a factor
delta.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from diagcent.partitions import (
    Permutation,
    SetPartition,
    coarsenings,
    conjugation_orbits,
    enumerate_brauer,
    enumerate_partitions,
    moebius,
)

__all__ = [
    "DeltaPoly",
    "AlgebraElement",
    "DIAGRAM",
    "ORBIT",
    "compose_partitions",
    "multiply",
    "embed_permutation",
    "identity_partition",
    "generator_s",
    "generator_e",
    "to_orbit_basis",
    "from_orbit_basis",
    "centralizer_basis",
    "centralizer_basis_orbit",
    "is_brauer",
    "BasisMismatch",
]

DIAGRAM = "diagram"
ORBIT = "orbit"


class BasisMismatch(ValueError):
    pass


class DeltaPoly:
    """Polynomial in delta with integer coefficients, stored sparsely."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "DeltaPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "DeltaPoly":
        return cls({e: c})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = DeltaPoly.const(other)
        if not isinstance(other, DeltaPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "DeltaPoly") -> "DeltaPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return DeltaPoly(out)

    def __neg__(self) -> "DeltaPoly":
        return DeltaPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "DeltaPoly") -> "DeltaPoly":
        return self + (-other)

    def __mul__(self, other) -> "DeltaPoly":
        if isinstance(other, int):
            return DeltaPoly({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return DeltaPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "DeltaPoly":
        """Multiply by delta**k."""
        return DeltaPoly({e + k: c for e, c in self.coeffs.items()})

    def evaluate(self, delta) -> Fraction:
        delta = Fraction(delta)
        return sum((c * delta**e for e, c in self.coeffs.items()), Fraction(0))

    def items(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs.items())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            if e == 0:
                parts.append(str(c))
            else:
                mono = "delta" if e == 1 else f"delta^{e}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"DeltaPoly({self})"


class AlgebraElement:
    """A finite linear combination of diagrams D_p (or orbit elements x_p)."""

    __slots__ = ("d", "basis", "terms")

    def __init__(self, d: int, terms: Mapping[SetPartition, DeltaPoly] | None = None,
                 basis: str = DIAGRAM):
        if basis not in (DIAGRAM, ORBIT):
            raise ValueError(f"unknown basis {basis!r}")
        self.d = d
        self.basis = basis
        clean = {}
        for p, c in (terms or {}).items():
            if p.size != 2 * d:
                raise ValueError(f"{p} is not a partition of [1, {2 * d}]")
            if isinstance(c, int):
                c = DeltaPoly.const(c)
            if c:
                clean[p] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def basis_element(cls, p: SetPartition, basis: str = DIAGRAM) -> "AlgebraElement":
        return cls(p.d, {p: DeltaPoly.const(1)}, basis)

    def _check(self, other: "AlgebraElement") -> None:
        if self.d != other.d:
            raise ValueError("size mismatch")
        if self.basis != other.basis:
            raise BasisMismatch("cannot combine diagram and orbit coordinates")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out[p] + c if p in out else c
        return AlgebraElement(self.d, out, self.basis)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.d, {p: -c for p, c in self.terms.items()}, self.basis)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        if isinstance(c, int):
            c = DeltaPoly.const(c)
        return AlgebraElement(self.d, {p: v * c for p, v in self.terms.items()}, self.basis)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.d == other.d and self.basis == other.basis and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, self.basis, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, delta) -> dict[SetPartition, Fraction]:
        """Coordinates with delta specialised to a rational number (zeros dropped)."""
        out = {}
        for p, c in self.terms.items():
            v = c.evaluate(delta)
            if v:
                out[p] = v
        return out

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "basis": self.basis,
            "terms": [
                {"partition": str(p), "coeff": [[e, str(c)] for e, c in v.items()]}
                for p, v in self.terms.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AlgebraElement":
        terms = {}
        for t in obj["terms"]:
            p = SetPartition.parse(t["partition"])
            terms[p] = DeltaPoly({int(e): int(c) for e, c in t["coeff"]})
        return cls(obj["d"], terms, obj["basis"])

    def __repr__(self) -> str:
        sym = "D" if self.basis == DIAGRAM else "x"
        body = " + ".join(f"({c})*{sym}[{p}]" for p, c in self.terms.items()) or "0"
        return f"<d={self.d} {body}>"


@lru_cache(maxsize=1 << 18)
def compose_partitions(p1: SetPartition, p2: SetPartition) -> tuple[SetPartition, int]:
    """Stack p1 over p2; return the resulting partition and the number of deleted middle components."""
    if p1.size != p2.size or p1.size % 2:
        raise ValueError("size mismatch")
    d = p1.size // 2
    # nodes 1..d bottom of p2, d+1..2d middle, 2d+1..3d top of p1
    parent = list(range(3 * d + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union_block(nodes):
        r = find(nodes[0])
        for x in nodes[1:]:
            s = find(x)
            if s != r:
                parent[s] = r

    for b in p2.blocks:
        union_block([x for x in b])  # p2 bottom k -> k, top k' -> d + k
    for b in p1.blocks:
        union_block([x + d for x in b])  # p1 bottom k -> d + k, top k' -> 2d + k

    comps: dict[int, list[int]] = {}
    for x in range(1, 3 * d + 1):
        comps.setdefault(find(x), []).append(x)
    removed = 0
    blocks = []
    for nodes in comps.values():
        outer = [x if x <= d else x - d for x in nodes if x <= d or x > 2 * d]
        if outer:
            blocks.append(outer)
        else:
            removed += 1
    return SetPartition._canon(blocks, 2 * d), removed


def multiply(*elements: AlgebraElement) -> AlgebraElement:
    """Product of diagram-basis elements, left to right."""
    if not elements:
        raise ValueError("nothing to multiply")
    acc = elements[0]
    for b in elements[1:]:
        acc = _mul2(acc, b)
    if len(elements) == 1 and acc.basis != DIAGRAM:
        raise BasisMismatch("convert orbit-basis elements with from_orbit_basis first")
    return acc


def _mul2(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.basis != DIAGRAM or b.basis != DIAGRAM:
        raise BasisMismatch("convert orbit-basis elements with from_orbit_basis first")
    if a.d != b.d:
        raise ValueError("size mismatch")
    out: dict[SetPartition, DeltaPoly] = {}
    for p1, c1 in a.terms.items():
        for p2, c2 in b.terms.items():
            q, k = compose_partitions(p1, p2)
            c = (c1 * c2).shift(k)
            out[q] = out[q] + c if q in out else c
    return AlgebraElement(a.d, out)


def identity_partition(d: int) -> SetPartition:
    return SetPartition._trusted(tuple((i, i + d) for i in range(1, d + 1)), 2 * d)


def embed_permutation(sigma: Permutation) -> AlgebraElement:
    """D_sigma, with blocks {i, sigma(i)'}."""
    d = sigma.degree
    p = SetPartition._canon([(i, sigma(i) + d) for i in range(1, d + 1)], 2 * d)
    return AlgebraElement.basis_element(p)


def _check_index(d: int, j: int) -> None:
    if not 1 <= j <= d - 1:
        raise ValueError(f"generator index {j} out of range for d={d}")


def generator_s(d: int, j: int) -> AlgebraElement:
    _check_index(d, j)
    return embed_permutation(Permutation.transposition(d, j, j + 1))


def generator_e(d: int, j: int) -> AlgebraElement:
    _check_index(d, j)
    blocks = [(i, i + d) for i in range(1, d + 1) if i not in (j, j + 1)]
    blocks += [(j, j + 1), (j + d, j + 1 + d)]
    return AlgebraElement.basis_element(SetPartition._canon(blocks, 2 * d))


def to_orbit_basis(a: AlgebraElement) -> AlgebraElement:
    """Rewrite in the x basis using D_p = sum of x_r over coarsenings r of p."""
    if a.basis != DIAGRAM:
        raise BasisMismatch("element is already in the orbit basis")
    out: dict[SetPartition, DeltaPoly] = {}
    for p, c in a.terms.items():
        for r in coarsenings(p):
            out[r] = out[r] + c if r in out else c
    return AlgebraElement(a.d, out, ORBIT)


def from_orbit_basis(a: AlgebraElement) -> AlgebraElement:
    """Rewrite in the D basis using x_p = sum of mu(p, r) D_r over coarsenings r of p."""
    if a.basis != ORBIT:
        raise BasisMismatch("element is not in the orbit basis")
    out: dict[SetPartition, DeltaPoly] = {}
    for p, c in a.terms.items():
        for r in coarsenings(p):
            v = c * moebius(p, r)
            out[r] = out[r] + v if r in out else v
    return AlgebraElement(a.d, out, DIAGRAM)


def is_brauer(p: SetPartition) -> bool:
    return all(len(b) == 2 for b in p.blocks)


def _universe(d: int, algebra: str) -> list[SetPartition]:
    algebra = algebra.lower()
    if algebra == "partition":
        return enumerate_partitions(2 * d)
    if algebra == "brauer":
        return enumerate_brauer(d)
    raise ValueError(f"unknown algebra {algebra!r}")


def _orbit_sums(d: int, universe: Iterable[SetPartition], basis: str) -> list[AlgebraElement]:
    one = DeltaPoly.const(1)
    return [
        AlgebraElement(d, {p: one for p in orbit}, basis)
        for orbit in conjugation_orbits(d, list(universe))
    ]


def centralizer_basis(d: int, algebra: str = "partition") -> list[AlgebraElement]:
    """Orbit sums of diagrams, a basis of the centralizer of S_d in Par_d or Br_d."""
    return _orbit_sums(d, _universe(d, algebra), DIAGRAM)


def centralizer_basis_orbit(d: int) -> list[AlgebraElement]:
    """Orbit sums of the x_p, another basis of the centralizer of S_d in Par_d."""
    return _orbit_sums(d, enumerate_partitions(2 * d), ORBIT)
