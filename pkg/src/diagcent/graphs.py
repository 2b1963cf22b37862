"""Multidigraphs attached to set partitions.

``psi`` turns a partition of [1, 2d] into an edge-labeled multidigraph (one
vertex per block, arrow k from the block of k to the block of k' = k + d).
``phi`` forgets the labels by passing to a canonical form, so two partitions
have equal ``phi`` exactly when they are conjugate under S_d.
"""

from __future__ import annotations

import logging
import os
from functools import lru_cache
from itertools import combinations_with_replacement, product
from pathlib import Path
from typing import Iterable, Sequence

from diagcent.config import CapExceeded, caps
from diagcent.partitions import (
    Permutation,
    SetPartition,
    enumerate_brauer,
    enumerate_partitions,
)

__all__ = [
    "LabeledMultidigraph",
    "Multidigraph",
    "psi",
    "psi_inverse",
    "canonicalize",
    "phi",
    "relabel_edges",
    "census",
    "is_cycle_union",
    "generate_multidigraphs",
    "generate_cycle_unions",
    "census_cache_path",
    "IsolatedVertexError",
]

log = logging.getLogger(__name__)

CACHE_VERSION = 1


class IsolatedVertexError(ValueError):
    pass


def _check_arrows(num_vertices: int, arrows: Sequence[tuple[int, int]]) -> tuple:
    arrows = tuple((int(s), int(t)) for s, t in arrows)
    used = set()
    for s, t in arrows:
        if not (1 <= s <= num_vertices and 1 <= t <= num_vertices):
            raise ValueError(f"arrow {s}->{t} leaves [1, {num_vertices}]")
        used.update((s, t))
    if len(used) != num_vertices:
        raise IsolatedVertexError(
            f"vertices {sorted(set(range(1, num_vertices + 1)) - used)} are isolated"
        )
    return arrows


class LabeledMultidigraph:
    """Arrow k (1-based position) carries edge label k."""

    __slots__ = ("num_vertices", "arrows")

    def __init__(self, num_vertices: int, arrows: Sequence[tuple[int, int]]):
        self.arrows = _check_arrows(num_vertices, arrows)
        self.num_vertices = num_vertices

    @property
    def d(self) -> int:
        return len(self.arrows)

    def __eq__(self, other):
        if not isinstance(other, LabeledMultidigraph):
            return NotImplemented
        return self.num_vertices == other.num_vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.num_vertices, self.arrows))

    def __repr__(self) -> str:
        body = ",".join(f"{s}->{t}" for s, t in self.arrows)
        return f"LabeledMultidigraph(n={self.num_vertices}; {body})"


class Multidigraph:
    """An unlabeled multidigraph, always held in canonical form.

    Build values with ``canonicalize``; equality of values is isomorphism.
    """

    __slots__ = ("num_vertices", "arrows")

    def __init__(self, num_vertices: int, arrows: tuple):
        # callers are trusted to pass a canonical arrow list
        self.num_vertices = num_vertices
        self.arrows = arrows

    @property
    def d(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (self.num_vertices, self.arrows)

    def __eq__(self, other):
        if not isinstance(other, Multidigraph):
            return NotImplemented
        return self.sort_key() == other.sort_key()

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return hash(self.sort_key())

    def __str__(self) -> str:
        body = ",".join(f"{s}->{t}" for s, t in self.arrows)
        return f"n={self.num_vertices}; {body}"

    def __repr__(self) -> str:
        return f"Multidigraph({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Multidigraph":
        """Read the ``"n=2; 1->2,2->1"`` form (any vertex names) and canonicalize."""
        head, _, body = text.partition(";")
        n = int(head.strip().removeprefix("n="))
        arrows = []
        for tok in body.split(","):
            tok = tok.strip()
            if tok:
                s, t = tok.split("->")
                arrows.append((int(s), int(t)))
        return canonicalize((n, arrows))

    def to_json(self) -> dict:
        return {"num_vertices": self.num_vertices, "arrows": [list(a) for a in self.arrows]}


def psi(p: SetPartition) -> LabeledMultidigraph:
    d = p.d
    idx = p.block_index()
    arrows = [(idx[k] + 1, idx[k + d] + 1) for k in range(1, d + 1)]
    return LabeledMultidigraph(len(p.blocks), arrows)


def psi_inverse(g: LabeledMultidigraph) -> SetPartition:
    d = len(g.arrows)
    blocks: dict[int, list[int]] = {}
    for k, (s, t) in enumerate(g.arrows, start=1):
        blocks.setdefault(s, []).append(k)
        blocks.setdefault(t, []).append(k + d)
    if len(blocks) != g.num_vertices:
        raise IsolatedVertexError("graph has isolated vertices")
    return SetPartition(blocks.values(), 2 * d)


def relabel_edges(g: LabeledMultidigraph, sigma: Permutation) -> LabeledMultidigraph:
    """Move the arrow labeled k to label sigma(k)."""
    if sigma.degree != g.d:
        raise ValueError("size mismatch")
    out = [None] * g.d
    for k, a in enumerate(g.arrows, start=1):
        out[sigma(k) - 1] = a
    return LabeledMultidigraph(g.num_vertices, out)


# canonical form -------------------------------------------------------------


class _Adj:
    __slots__ = ("out", "inn")

    def __init__(self, n: int, arrows):
        self.out = [{} for _ in range(n)]
        self.inn = [{} for _ in range(n)]
        for s, t in arrows:
            self.out[s][t] = self.out[s].get(t, 0) + 1
            self.inn[t][s] = self.inn[t].get(s, 0) + 1


def _refine(n: int, adj: _Adj, colors: list[int]) -> list[int]:
    # colour refinement; new colours are ranks of signatures that start with the old colour,
    # so the result refines the input and does not depend on vertex names
    k = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            out = sorted((colors[w], m) for w, m in adj.out[v].items() if w != v)
            inn = sorted((colors[w], m) for w, m in adj.inn[v].items() if w != v)
            sigs.append((colors[v], adj.out[v].get(v, 0), tuple(out), tuple(inn)))
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == k:
            return new
        colors, k = new, len(rank)


def _twins(adj: _Adj, u: int, v: int, n: int) -> bool:
    # swapping u and v is an automorphism
    o, i = adj.out, adj.inn
    if o[u].get(u, 0) != o[v].get(v, 0) or o[u].get(v, 0) != o[v].get(u, 0):
        return False
    for w in range(n):
        if w in (u, v):
            continue
        if o[u].get(w, 0) != o[v].get(w, 0) or i[u].get(w, 0) != i[v].get(w, 0):
            return False
    return True


def _canon_connected(n: int, arrows) -> tuple:
    adj = _Adj(n, arrows)
    best = None

    def leaf(colors):
        return tuple(sorted((colors[s] + 1, colors[t] + 1) for s, t in arrows))

    def search(colors):
        nonlocal best
        colors = _refine(n, adj, colors)
        sizes: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            sizes.setdefault(c, []).append(v)
        cell = next((sizes[c] for c in sorted(sizes) if len(sizes[c]) > 1), None)
        if cell is None:
            cand = leaf(colors)
            if best is None or cand < best:
                best = cand
            return
        tried: list[int] = []
        for v in cell:
            if any(_twins(adj, u, v, n) for u in tried):
                continue
            tried.append(v)
            c = colors[v]
            search([2 * x + (1 if (x == c and w != v) else 0) for w, x in enumerate(colors)])

    search([0] * n)
    return best


def _components(n: int, arrows) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in arrows:
        a, b = find(s), find(t)
        if a != b:
            parent[a] = b
    comps: dict[int, list[int]] = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


def canonicalize(g) -> Multidigraph:
    """Canonical form of a multidigraph.

    Accepts a ``LabeledMultidigraph``, a ``Multidigraph`` or a raw
    ``(num_vertices, arrows)`` pair with 1-based vertices.  Each connected
    component is canonicalized by individualization-refinement (minimum sorted
    arrow list over the leaves of the search tree) and the components are laid
    out in increasing (size, arrow list) order.
    """
    if isinstance(g, (LabeledMultidigraph, Multidigraph)):
        n, arrows = g.num_vertices, g.arrows
    else:
        n, arrows = g
        arrows = _check_arrows(n, arrows)
    if n > caps.max_graph_vertices:
        raise CapExceeded(f"{n} vertices exceed the cap {caps.max_graph_vertices}")
    return _canonicalize(n, tuple(sorted(arrows)))


@lru_cache(maxsize=1 << 16)
def _canonicalize(n: int, arrows: tuple) -> Multidigraph:
    zero = [(s - 1, t - 1) for s, t in arrows]
    parts = []
    for comp in _components(n, zero):
        local = {v: i for i, v in enumerate(comp)}
        sub = [(local[s], local[t]) for s, t in zero if s in local]
        parts.append((len(comp), _canon_connected(len(comp), sub)))
    parts.sort()
    out = []
    offset = 0
    for size, arr in parts:
        out.extend((s + offset, t + offset) for s, t in arr)
        offset += size
    return Multidigraph(n, tuple(sorted(out)))


def phi(p: SetPartition) -> Multidigraph:
    return canonicalize(psi(p))


def is_cycle_union(g) -> bool:
    """True iff every component's underlying undirected multigraph is a cycle (loops count twice)."""
    deg = [0] * (g.num_vertices + 1)
    for s, t in g.arrows:
        deg[s] += 1
        deg[t] += 1
    # degree 2 everywhere forces edges == vertices in each component
    return all(x == 2 for x in deg[1:])


# census ---------------------------------------------------------------------


def census_cache_path(cache_dir, d: int, max_vertices: int | None, cycles_only: bool) -> Path:
    mv = "all" if max_vertices is None else str(max_vertices)
    name = f"census-v{CACHE_VERSION}-d{d}-mv{mv}-{'cycles' if cycles_only else 'all'}.txt"
    return Path(cache_dir) / name


def _read_cache(path: Path) -> list[Multidigraph] | None:
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return None
    return [Multidigraph.parse(line) for line in lines if line.strip()]


def _write_cache(path: Path, graphs: Iterable[Multidigraph]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    tmp.write_text("".join(f"{g}\n" for g in graphs))
    tmp.replace(path)


def _phi_chunk(parts: list[SetPartition]) -> set[Multidigraph]:
    return {phi(p) for p in parts}


def census(
    d: int,
    max_vertices: int | None = None,
    cycles_only: bool = False,
    cache_dir=None,
    threads: int = 1,
) -> list[Multidigraph]:
    """Distinct images phi(p), sorted by (vertex count, arrow list).

    With ``cycles_only`` the images of Brauer diagrams are used; these are
    exactly the graphs in the full census whose components are cycles.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if cache_dir is not None:
        path = census_cache_path(cache_dir, d, max_vertices, cycles_only)
        hit = _read_cache(path)
        if hit is not None:
            log.info("census cache hit %s", path)
            return hit
    universe = enumerate_brauer(d) if cycles_only else enumerate_partitions(2 * d)
    log.info("census d=%d over %d partitions", d, len(universe))
    if threads > 1 and len(universe) > 5000:
        from concurrent.futures import ProcessPoolExecutor

        step = -(-len(universe) // (4 * threads))
        chunks = [universe[i : i + step] for i in range(0, len(universe), step)]
        seen: set[Multidigraph] = set()
        with ProcessPoolExecutor(threads) as ex:
            for part in ex.map(_phi_chunk, chunks):
                seen |= part
    else:
        seen = _phi_chunk(universe)
    out = sorted(
        g
        for g in seen
        if (max_vertices is None or g.num_vertices <= max_vertices)
        and (not cycles_only or is_cycle_union(g))
    )
    if cache_dir is not None:
        _write_cache(path, out)
    return out


# independent oracles ----------------------------------------------------------


def generate_multidigraphs(d: int) -> list[Multidigraph]:
    """All multidigraphs with d arrows and no isolated vertices, by direct generation."""
    m = 2 * d
    pairs = [(s, t) for s in range(1, m + 1) for t in range(1, m + 1)]
    seen = set()
    for arrows in combinations_with_replacement(pairs, d):
        used = sorted({v for a in arrows for v in a})
        ren = {v: i for i, v in enumerate(used, start=1)}
        seen.add(canonicalize((len(used), [(ren[s], ren[t]) for s, t in arrows])))
    return sorted(seen)


def _cycle_orientations(length: int) -> list[list[tuple[int, int]]]:
    if length == 1:
        return [[(1, 1)]]
    out = []
    for bits in product((0, 1), repeat=length):
        arrows = []
        for i, b in enumerate(bits):
            u, v = i + 1, (i + 1) % length + 1
            arrows.append((u, v) if b else (v, u))
        out.append(arrows)
    return out


def _integer_partitions(d: int, largest: int | None = None):
    largest = d if largest is None else largest
    if d == 0:
        yield []
        return
    for k in range(min(d, largest), 0, -1):
        for rest in _integer_partitions(d - k, k):
            yield [k] + rest


def generate_cycle_unions(d: int) -> list[Multidigraph]:
    """Disjoint unions of arbitrarily oriented cycles with d arrows in total."""
    comps = {
        k: sorted({canonicalize((k, arr)) for arr in _cycle_orientations(k)})
        for k in range(1, d + 1)
    }
    seen = set()
    for shape in _integer_partitions(d):
        counts: dict[int, int] = {}
        for k in shape:
            counts[k] = counts.get(k, 0) + 1
        choices = [list(combinations_with_replacement(comps[k], c)) for k, c in counts.items()]
        for pick in product(*choices):
            arrows = []
            offset = 0
            for group in pick:
                for g in group:
                    arrows.extend((s + offset, t + offset) for s, t in g.arrows)
                    offset += g.num_vertices
            seen.add(canonicalize((offset, arrows)))
    return sorted(seen)
