"""Set partitions of [1, m], the refinement lattice and the S_d x S_d relabeling action.

A set partition of [1, 2d] is read as a two-row diagram: labels 1..d are the
bottom row and d+1..2d the top row, with the top vertex over bottom vertex i
carrying label i' = i + d.
"""

from __future__ import annotations

from math import factorial
from typing import Iterable, Iterator, Sequence

from diagcent.config import CapExceeded, caps

__all__ = [
    "SetPartition",
    "Permutation",
    "enumerate_partitions",
    "enumerate_brauer",
    "bell",
    "num_blocks",
    "is_refinement",
    "coarsenings",
    "moebius",
    "conjugate",
    "conjugate_by",
    "conjugation_orbits",
    "OrbitClosureError",
]


class OrbitClosureError(ValueError):
    pass


class SetPartition:
    """A set partition of [1, size] in canonical form.

    Blocks are sorted tuples, ordered by their minima.  Equality, hashing and
    ordering all go through the canonical block tuple.
    """

    __slots__ = ("size", "blocks", "_hash")

    def __init__(self, blocks: Iterable[Iterable[int]], size: int | None = None):
        bl = [tuple(sorted(b)) for b in blocks]
        if any(len(b) == 0 for b in bl):
            raise ValueError("empty block")
        bl.sort()
        flat = [x for b in bl for x in b]
        if size is None:
            size = len(flat)
        if sorted(flat) != list(range(1, size + 1)):
            raise ValueError(f"blocks {bl} do not partition [1, {size}]")
        self.size = size
        self.blocks = tuple(bl)
        self._hash = hash((size, self.blocks))

    @classmethod
    def _trusted(cls, blocks: tuple, size: int) -> "SetPartition":
        # blocks already canonical
        self = object.__new__(cls)
        self.size = size
        self.blocks = blocks
        self._hash = hash((size, blocks))
        return self

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "SetPartition":
        """Partition of [1, len(labels)] where i, j share a block iff labels agree."""
        groups: dict = {}
        for i, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(i)
        blocks = sorted(tuple(g) for g in groups.values())
        return cls._trusted(tuple(blocks), len(labels))

    @classmethod
    def parse(cls, text: str) -> "SetPartition":
        """Inverse of ``str``: ``"1 3|2 4"``."""
        blocks = [[int(x) for x in part.split()] for part in text.strip().split("|")]
        return cls(blocks)

    @property
    def d(self) -> int:
        if self.size % 2:
            raise ValueError("odd-sized partition has no diagram degree")
        return self.size // 2

    def block_index(self) -> list[int]:
        """``idx[i]`` is the index of the block containing i (index 0 unused)."""
        idx = [0] * (self.size + 1)
        for k, b in enumerate(self.blocks):
            for x in b:
                idx[x] = k
        return idx

    def relabel(self, mapping: Sequence[int]) -> "SetPartition":
        """Image under the bijection i -> mapping[i] of [1, size] (mapping[0] ignored)."""
        return SetPartition._canon(
            [tuple(mapping[x] for x in b) for b in self.blocks], self.size
        )

    @classmethod
    def _canon(cls, blocks: list, size: int) -> "SetPartition":
        bl = sorted(tuple(sorted(b)) for b in blocks)
        return cls._trusted(tuple(bl), size)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.size == other.size and self.blocks == other.blocks

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "SetPartition") -> bool:
        return (self.size, self.blocks) < (other.size, other.blocks)

    def __str__(self) -> str:
        return "|".join(" ".join(str(x) for x in b) for b in self.blocks)

    def __repr__(self) -> str:
        return f"SetPartition({str(self)!r})"


class Permutation:
    """A bijection of [1, degree]; ``self(i)`` is the image of i."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation")
        self.images = images

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(range(1, d + 1))

    @classmethod
    def transposition(cls, d: int, i: int, j: int) -> "Permutation":
        im = list(range(1, d + 1))
        im[i - 1], im[j - 1] = im[j - 1], im[i - 1]
        return cls(im)

    @classmethod
    def cycle(cls, d: int) -> "Permutation":
        return cls([i % d + 1 for i in range(1, d + 1)])

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: ``(s * t)(i) == s(t(i))``."""
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation([self.images[t - 1] for t in other.images])

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(inv)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def bell(m: int) -> int:
    """Bell number via the Bell triangle."""
    row = [1]
    for _ in range(m):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def _check_cap(m: int) -> None:
    if m > caps.max_partition_size:
        raise CapExceeded(
            f"set partitions of [1, {m}] exceed the cap {caps.max_partition_size}"
        )


def _rgs(m: int) -> Iterator[list[int]]:
    # restricted growth strings in lexicographic order
    a = [0] * m
    if m == 0:
        return
    mx = [0] * m  # mx[i] = max(a[0..i])

    def rec(i: int):
        if i == m:
            yield a
            return
        top = mx[i - 1] + 1
        for v in range(top + 1):
            a[i] = v
            mx[i] = max(mx[i - 1], v)
            yield from rec(i + 1)

    a[0] = 0
    mx[0] = 0
    yield from rec(1)


def enumerate_partitions(m: int) -> list[SetPartition]:
    """All set partitions of [1, m], ordered by restricted growth string."""
    if m < 1:
        raise ValueError("m must be positive")
    _check_cap(m)
    out = []
    for a in _rgs(m):
        blocks: list[list[int]] = []
        for i, v in enumerate(a, start=1):
            if v == len(blocks):
                blocks.append([i])
            else:
                blocks[v].append(i)
        out.append(SetPartition._trusted(tuple(tuple(b) for b in blocks), m))
    return out


def enumerate_brauer(d: int) -> list[SetPartition]:
    """Perfect matchings of [1, 2d], in the same order as filtering ``enumerate_partitions``."""
    if d < 1:
        raise ValueError("d must be positive")
    m = 2 * d
    out = []

    def rec(remaining: list[int], acc: list[tuple[int, int]]):
        if not remaining:
            out.append(SetPartition._trusted(tuple(sorted(acc)), m))
            return
        a = remaining[0]
        for k in range(1, len(remaining)):
            b = remaining[k]
            rec(remaining[1:k] + remaining[k + 1 :], acc + [(a, b)])

    rec(list(range(1, m + 1)), [])
    out.sort(key=_rgs_key)
    return out


def _rgs_key(p: SetPartition) -> tuple:
    idx = p.block_index()
    return tuple(idx[1:])


def num_blocks(p: SetPartition) -> int:
    return len(p.blocks)


def is_refinement(p: SetPartition, r: SetPartition) -> bool:
    """True iff every block of p lies inside a block of r."""
    if p.size != r.size:
        raise ValueError("size mismatch")
    ridx = r.block_index()
    return all(len({ridx[x] for x in b}) == 1 for b in p.blocks)


def coarsenings(p: SetPartition) -> list[SetPartition]:
    """All r with p <= r: set partitions of the blocks of p, pushed down to [1, size]."""
    k = len(p.blocks)
    out = []
    for a in _rgs(k):
        merged: list[list[int]] = []
        for bi, v in enumerate(a):
            if v == len(merged):
                merged.append(list(p.blocks[bi]))
            else:
                merged[v].extend(p.blocks[bi])
        out.append(SetPartition._canon(merged, p.size))
    return out


def moebius(p: SetPartition, r: SetPartition) -> int:
    """Moebius function of the interval [p, r] of the partition lattice."""
    if not is_refinement(p, r):
        raise ValueError(f"{p} is not a refinement of {r}")
    ridx = r.block_index()
    counts: dict[int, int] = {}
    for b in p.blocks:
        counts[ridx[b[0]]] = counts.get(ridx[b[0]], 0) + 1
    mu = 1
    for c in counts.values():
        mu *= (-1) ** (c - 1) * factorial(c - 1)
    return mu


def conjugate(sigma: Permutation, p: SetPartition, tau: Permutation) -> SetPartition:
    """The partition of the diagram product D_sigma D_p D_tau.

    Stacking D_sigma on top relabels the top row i' -> sigma(i)'; stacking
    D_tau underneath relabels the bottom row i -> tau^{-1}(i).
    """
    d = p.d
    if sigma.degree != d or tau.degree != d:
        raise ValueError("size mismatch")
    tinv = tau.inverse()
    mapping = [0] * (2 * d + 1)
    for i in range(1, d + 1):
        mapping[i] = tinv(i)
        mapping[i + d] = sigma(i) + d
    return p.relabel(mapping)


def conjugate_by(sigma: Permutation, p: SetPartition) -> SetPartition:
    """sigma . p = sigma * p * sigma^{-1}."""
    return conjugate(sigma, p, sigma.inverse())


def _adjacent_transpositions(d: int) -> list[Permutation]:
    return [Permutation.transposition(d, j, j + 1) for j in range(1, d)]


def conjugation_orbits(
    d: int, universe: Sequence[SetPartition]
) -> list[frozenset[SetPartition]]:
    """Orbits of S_d acting on ``universe`` by conjugation, ordered by their minimal element."""
    index = {p: k for k, p in enumerate(universe)}
    parent = list(range(len(universe)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in _adjacent_transpositions(d):
        for k, p in enumerate(universe):
            if p.size != 2 * d:
                raise ValueError("partition size does not match d")
            q = conjugate_by(g, p)
            j = index.get(q)
            if j is None:
                raise OrbitClosureError(f"{q} (conjugate of {p}) is not in the universe")
            a, b = find(k), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[SetPartition]] = {}
    for k, p in enumerate(universe):
        groups.setdefault(find(k), []).append(p)
    orbits = [frozenset(g) for g in groups.values()]
    orbits.sort(key=min)
    return orbits
