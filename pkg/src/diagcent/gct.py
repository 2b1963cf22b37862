"""Generalized cycle types of Brauer diagrams.

A Brauer diagram is traced into cyclic words over {U, L, T}; a word is only
meaningful up to rotation and reversal, so every word is stored as its least
representative under the letter order U < L < T.  The multiset of these
classes is the generalized cycle type; it classifies Brauer diagrams up to
S_d conjugation, and ``rho`` / ``nu`` translate between it and unions of
cycles.
"""

from __future__ import annotations

import random
from itertools import combinations_with_replacement, product

from diagcent.config import CapExceeded, caps
from diagcent.diagram_algebra import is_brauer
from diagcent.graphs import Multidigraph, canonicalize, is_cycle_union
from diagcent.partitions import SetPartition

__all__ = [
    "Gct",
    "canonicalize_string",
    "is_gct_string",
    "gct_of_brauer",
    "rho",
    "nu",
    "enumerate_gct",
    "InvalidGct",
]

_ORDER = str.maketrans("ULT", "012")


class InvalidGct(ValueError):
    pass


def _key(s: str) -> str:
    return s.translate(_ORDER)


def canonicalize_string(c: str) -> str:
    """Least rotation or reversed rotation of c under U < L < T."""
    if not c or set(c) - set("ULT"):
        raise ValueError(f"not a U/L/T string: {c!r}")
    rev = c[::-1]
    cands = [c[i:] + c[:i] for i in range(len(c))] + [rev[i:] + rev[:i] for i in range(len(c))]
    return min(cands, key=_key)


def is_gct_string(c: str) -> bool:
    """No U T^i U or L T^i L read cyclically, and as many U as L."""
    if not c or set(c) - set("ULT"):
        return False
    if c.count("U") != c.count("L"):
        return False
    core = c.replace("T", "")
    return all(core[i] != core[(i + 1) % len(core)] for i in range(len(core)))


class Gct:
    """A multiset of canonical U/L/T classes, kept sorted as plain strings."""

    __slots__ = ("strings",)

    def __init__(self, strings):
        self.strings = tuple(sorted(canonicalize_string(s) for s in strings))

    @property
    def d(self) -> int:
        return sum(len(s) for s in self.strings)

    def is_valid(self) -> bool:
        return all(is_gct_string(s) for s in self.strings)

    def __eq__(self, other):
        if not isinstance(other, Gct):
            return NotImplemented
        return self.strings == other.strings

    def __lt__(self, other):
        return self.strings < other.strings

    def __hash__(self):
        return hash(self.strings)

    def __str__(self):
        return ",".join(self.strings)

    def __repr__(self):
        return f"Gct({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Gct":
        return cls(t.strip() for t in text.split(",") if t.strip())


def _trace(p: SetPartition, starts: list[int]) -> list[str]:
    d = p.d
    partner = [0] * (2 * d + 1)
    for a, b in p.blocks:
        partner[a], partner[b] = b, a

    def col(x):
        return x - d if x > d else x + d

    def top(x):
        return x > d

    seen = [False] * (2 * d + 1)
    words = []
    for start in starts:
        if seen[start]:
            continue
        x = start
        word = []
        while True:
            y = partner[x]
            if top(x) != top(y):
                word.append("T")
            else:
                word.append("U" if top(x) else "L")
            seen[x] = seen[y] = True
            x = col(y)
            if x == start:
                break
        words.append("".join(word))
    return words


def gct_of_brauer(p: SetPartition, rng: random.Random | None = None) -> Gct:
    """Trace a Brauer diagram into its generalized cycle type.

    Walk along an edge (same-row edges give U on the top row and L on the
    bottom row, cross edges give T), then jump to the other dot of the
    column; a word closes when the jump returns to the starting dot.  With
    ``rng`` the starting dots are visited in random order.
    """
    if not is_brauer(p):
        raise ValueError(f"{p} is not a Brauer diagram")
    d = p.d
    # top row first, matching the reading of the first row as primed labels
    starts = list(range(d + 1, 2 * d + 1)) + list(range(1, d + 1))
    if rng is not None:
        rng.shuffle(starts)
    return Gct(_trace(p, starts))


def rho(g) -> Gct:
    """Read each cycle of g as a word: sink vertices are U, source vertices L, others T."""
    if not is_cycle_union(g):
        raise ValueError("graph is not a union of cycles")
    n = g.num_vertices
    indeg = [0] * (n + 1)
    outdeg = [0] * (n + 1)
    incident: list[list[int]] = [[] for _ in range(n + 1)]
    for e, (s, t) in enumerate(g.arrows):
        outdeg[s] += 1
        indeg[t] += 1
        incident[s].append(e)
        if t != s:
            incident[t].append(e)

    def letter(v):
        if indeg[v] == 2:
            return "U"
        if outdeg[v] == 2:
            return "L"
        return "T"

    seen = [False] * (n + 1)
    words = []
    for v0 in range(1, n + 1):
        if seen[v0]:
            continue
        word = []
        v, e = v0, incident[v0][0]
        while True:
            seen[v] = True
            word.append(letter(v))
            s, t = g.arrows[e]
            w = t if s == v else s
            if w == v0:
                break
            e = next(f for f in incident[w] if f != e)
            v = w
        words.append("".join(word))
    return Gct(words)


def _cycle_of(word: str) -> tuple[int, list[tuple[int, int]]]:
    n = len(word)
    if set(word) == {"T"}:
        return n, [(i, i % n + 1) for i in range(1, n + 1)]
    k = word.index("U")
    w = word[k:] + word[:k]
    arrows = [(2, 1)]
    forward = False  # direction of the last arrow, True for i -> i+1
    for i in range(2, n):
        c = w[i - 1]
        if c == "U":
            forward = False
        elif c == "L":
            forward = True
        arrows.append((i, i + 1) if forward else (i + 1, i))
    arrows.append((n, 1))
    return n, arrows


def nu(c: Gct) -> Multidigraph:
    """Union of cycles whose vertex letters spell the words of c."""
    if not c.is_valid():
        raise InvalidGct(f"{c} is not a generalized cycle type")
    arrows = []
    offset = 0
    for word in c.strings:
        k, arr = _cycle_of(word)
        arrows.extend((s + offset, t + offset) for s, t in arr)
        offset += k
    return canonicalize((offset, arrows))


def _valid_classes(length: int) -> list[str]:
    out = set()
    for letters in product("ULT", repeat=length):
        s = "".join(letters)
        if is_gct_string(s):
            out.add(canonicalize_string(s))
    return sorted(out, key=_key)


def _integer_partitions(d: int, largest: int):
    if d == 0:
        yield []
        return
    for k in range(min(d, largest), 0, -1):
        for rest in _integer_partitions(d - k, k):
            yield [k] + rest


def enumerate_gct(d: int) -> list[Gct]:
    """All generalized cycle types of total length d, sorted by their text form."""
    if d < 1:
        raise ValueError("d must be positive")
    if d > caps.max_gct_d:
        raise CapExceeded(f"d={d} exceeds the cap {caps.max_gct_d}")
    classes = {k: _valid_classes(k) for k in range(1, d + 1)}
    out = set()
    for shape in _integer_partitions(d, d):
        counts: dict[int, int] = {}
        for k in shape:
            counts[k] = counts.get(k, 0) + 1
        choices = [list(combinations_with_replacement(classes[k], m)) for k, m in counts.items()]
        for pick in product(*choices):
            out.add(Gct([s for group in pick for s in group]))
    return sorted(out)
