"""Dimensions of degree-d invariants of Sigma_n acting on n x n matrices by conjugation.

``molien_dim_sym`` averages the Molien series over conjugacy classes.  A
permutation with cycles c_1, c_2, ... permutes the n^2 matrix coordinates; the
block of coordinates (i, j) with i in cycle c_a and j in cycle c_b splits into
gcd(c_a, c_b) cycles of length lcm(c_a, c_b).  Only cycles of length <= d
affect the coefficient of t^d.

For large n the class sum is replaced by an exact expectation over the short
cycle counts m_1, ..., m_d of a uniform random permutation, using
E[prod (m_k)_{j_k}] = prod k^{-j_k} whenever sum k j_k <= n (and 0 otherwise).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Iterable

from diagcent.config import CapExceeded, caps

__all__ = [
    "CycleType",
    "cycle_types",
    "molien_dim_sym",
    "HilbertTable",
    "hilbert_table",
    "graph_count_dim",
    "OUT_OF_RANGE",
    "OutOfRange",
]


class OutOfRange:
    """Tag for requests outside the range where a dimension formula is predicted."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "OUT_OF_RANGE"

    __str__ = __repr__


OUT_OF_RANGE = OutOfRange()


@dataclass(frozen=True)
class CycleType:
    parts: tuple[int, ...]  # descending

    @property
    def n(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for k in self.parts:
            out[k] = out.get(k, 0) + 1
        return out

    @property
    def class_size(self) -> int:
        denom = 1
        for k, m in self.multiplicities().items():
            denom *= factorial(m) * k**m
        return factorial(self.n) // denom


def _partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def cycle_types(n: int) -> list[CycleType]:
    return [CycleType(p) for p in _partitions(n, n)]


def _series_coefficient(cycle_counts: dict[int, int], d: int) -> int:
    # [t^d] prod_l (1 - t^l)^(-count_l), computed by repeated prefix sums
    coef = [1] + [0] * d
    for length, count in cycle_counts.items():
        for _ in range(count):
            for i in range(length, d + 1):
                coef[i] += coef[i - length]
    return coef[d]


def _coordinate_cycles(ct: CycleType, d: int) -> dict[int, int]:
    short = {k: m for k, m in ct.multiplicities().items() if k <= d}
    out: dict[int, int] = {}
    for a, ma in short.items():
        for b, mb in short.items():
            g = gcd(a, b)
            ell = a * b // g
            if ell <= d:
                out[ell] = out.get(ell, 0) + g * ma * mb
    return out


def _molien_classwise(n: int, d: int) -> int:
    total = 0
    for ct in cycle_types(n):
        total += ct.class_size * _series_coefficient(_coordinate_cycles(ct, d), d)
    q, r = divmod(total, factorial(n))
    if r:
        raise ArithmeticError(f"Molien average for n={n}, d={d} is not an integer: {total}/{factorial(n)}")
    return q


# polynomials in the cycle counts m_1..m_d, as dicts exponent-tuple -> Fraction


def _padd(p, q):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _pmul(p, q):
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _multichoose(poly, k: int, d: int):
    # C(N + k - 1, k) with N a polynomial
    out = {(0,) * d: Fraction(1)}
    for i in range(k):
        shifted = _padd(poly, {(0,) * d: Fraction(i)})
        out = _pmul(out, shifted)
    return {e: c / factorial(k) for e, c in out.items()}


def _compositions_by_weight(d: int):
    # all (k_1..k_d) with sum l * k_l = d
    def rec(ell, rest):
        if ell > d:
            if rest == 0:
                yield ()
            return
        for k in range(rest // ell + 1):
            for tail in rec(ell + 1, rest - ell * k):
                yield (k,) + tail

    return list(rec(1, d))


@lru_cache(maxsize=None)
def _stirling2(e: int, j: int) -> int:
    if e == j:
        return 1
    if j == 0 or j > e:
        return 0
    return j * _stirling2(e - 1, j) + _stirling2(e - 1, j - 1)


@lru_cache(maxsize=None)
def _moment_terms(d: int) -> tuple[tuple[int, Fraction], ...]:
    """(weight, value) pairs; the expectation for Sigma_n sums values with weight <= n."""
    zero = (0,) * d

    def var(k):
        e = [0] * d
        e[k - 1] = 1
        return tuple(e)

    counts = {}
    for ell in range(1, d + 1):
        poly: dict = {}
        for a in range(1, d + 1):
            for b in range(1, d + 1):
                g = gcd(a, b)
                if a * b // g == ell:
                    mono = tuple(x + y for x, y in zip(var(a), var(b)))
                    poly[mono] = poly.get(mono, 0) + Fraction(g)
        counts[ell] = poly
    total: dict = {}
    for ks in _compositions_by_weight(d):
        term = {zero: Fraction(1)}
        for ell, k in enumerate(ks, start=1):
            if k:
                term = _pmul(term, _multichoose(counts[ell], k, d))
        total = _padd(total, term)
    # rewrite powers as falling factorials and take expectations
    by_weight: dict[int, Fraction] = {}
    for e, c in total.items():
        choices = [range(x + 1) for x in e]
        stack = [((), 1, 0, Fraction(1))]
        for k, rng in enumerate(choices, start=1):
            new = []
            for js, s, w, val in stack:
                for j in rng:
                    st = _stirling2(e[k - 1], j)
                    if st:
                        new.append((js + (j,), s * st, w + k * j, val / Fraction(k) ** j))
            stack = new
        for _, s, w, val in stack:
            by_weight[w] = by_weight.get(w, 0) + c * s * val
    return tuple(sorted((w, v) for w, v in by_weight.items() if v))


def _molien_moments(n: int, d: int) -> int:
    val = sum((v for w, v in _moment_terms(d) if w <= n), Fraction(0))
    if val.denominator != 1:
        raise ArithmeticError(f"moment evaluation for n={n}, d={d} is not an integer: {val}")
    return int(val)


def molien_dim_sym(n: int, d: int, method: str = "auto") -> int:
    """dim of degree-d polynomials on M_n invariant under simultaneous row/column permutation.

    ``method`` is "classwise" (sum over cycle types), "moments" (expectation
    over short cycle counts) or "auto" (classwise for n <= 12).
    """
    if n < 0 or d < 0:
        raise ValueError("n and d must be nonnegative")
    if d == 0:
        return 1
    if n == 0:
        return 0  # no coordinates, only constants
    if n > caps.molien_max_n or d > caps.molien_max_d:
        raise CapExceeded(
            f"(n, d) = ({n}, {d}) exceeds the Molien caps ({caps.molien_max_n}, {caps.molien_max_d})"
        )
    if method == "auto":
        method = "classwise" if n <= 12 else "moments"
    if method == "classwise":
        return _molien_classwise(n, d)
    if method == "moments":
        return _molien_moments(n, d)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class HilbertTable:
    group: str
    n_values: list[int]
    d_values: list[int]
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def column(self, d: int) -> list[int]:
        return [self.entries[(n, d)] for n in self.n_values]

    def stable(self, d: int) -> bool:
        """Column d is constant over all n >= 2d in range (and some such n exists)."""
        vals = {self.entries[(n, d)] for n in self.n_values if n >= 2 * d}
        return len(vals) == 1

    def stable_from(self, d: int) -> int | None:
        """Smallest n from which column d is constant, if the column is stable."""
        if not self.stable(d):
            return None
        col = self.column(d)
        i = len(col) - 1
        while i > 0 and col[i - 1] == col[-1]:
            i -= 1
        return self.n_values[i]

    def to_csv(self) -> str:
        lines = ["n," + ",".join(f"d={d}" for d in self.d_values)]
        for n in self.n_values:
            lines.append(f"{n}," + ",".join(str(self.entries[(n, d)]) for d in self.d_values))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "group": self.group,
                "n_values": self.n_values,
                "d_values": self.d_values,
                "entries": {str(n): {str(d): self.entries[(n, d)] for d in self.d_values}
                            for n in self.n_values},
                "stable_from": {str(d): self.stable_from(d) for d in self.d_values},
            },
            sort_keys=False,
        )


def hilbert_table(group: str, n_range: Iterable[int], d_range: Iterable[int]) -> HilbertTable:
    if group.lower() != "sym":
        raise ValueError("only the symmetric group is supported")
    ns, ds = sorted(set(n_range)), sorted(set(d_range))
    table = HilbertTable("Sym", ns, ds)
    for n in ns:
        for d in ds:
            table.entries[(n, d)] = molien_dim_sym(n, d)
    return table


def graph_count_dim(group: str, n: int, d: int, cache_dir=None):
    """Dimension predicted by graph counts, or ``OUT_OF_RANGE``.

    Sym: multidigraphs with d arrows and at most n vertices.  Orth (n >= d)
    and Symp (n even, n >= 2d): unions of cycles with d arrows.
    """
    from diagcent.graphs import census

    g = group.lower()
    if g not in ("sym", "orth", "symp"):
        raise ValueError(f"unknown group {group!r}")
    if d == 0:
        return 1
    if g == "sym":
        return len(census(d, max_vertices=n, cache_dir=cache_dir)) if n > 0 else 0
    if g == "orth" and n < d:
        return OUT_OF_RANGE
    if g == "symp" and (n < 2 * d or n % 2):
        return OUT_OF_RANGE
    return len(census(d, cycles_only=True, cache_dir=cache_dir))
