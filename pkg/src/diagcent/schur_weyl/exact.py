"""Exact sparse matrices and fraction-free elimination.

Entries are ints, Fractions or ``GaussianRational`` values; zeros are never
stored.  Row reduction keeps every row as a primitive integer vector, which
avoids the growth of rational entries on the 0/1-heavy matrices used here.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

__all__ = [
    "GaussianRational",
    "ExactMatrix",
    "EchelonBuilder",
    "SubspaceBasis",
    "nullspace",
    "rank",
    "to_integer_row",
]


class GaussianRational:
    """a + b*i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x) -> "GaussianRational":
        return x if isinstance(x, GaussianRational) else GaussianRational(x)

    def __add__(self, other):
        o = self._lift(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, other):
        o = self._lift(other)
        norm = o.re * o.re + o.im * o.im
        if not norm:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


I = GaussianRational(0, 1)


class ExactMatrix:
    """Sparse matrix with exact entries, stored as a dict (row, col) -> value."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        self.rows = rows
        self.cols = cols
        ent = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            if v:
                ent[(r, c)] = v
        self.entries = ent

    @classmethod
    def _raw(cls, rows, cols, entries) -> "ExactMatrix":
        m = object.__new__(cls)
        m.rows, m.cols, m.entries = rows, cols, entries
        return m

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._raw(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls._raw(rows, cols, {})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        return cls(nr, nc, {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)})

    @classmethod
    def from_permutation(cls, images: Sequence[int]) -> "ExactMatrix":
        """Matrix sending basis vector c to basis vector images[c] (0-based)."""
        n = len(images)
        return cls._raw(n, n, {(images[c], c): 1 for c in range(n)})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, rc):
        return self.entries.get(rc, 0)

    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def by_row(self) -> dict[int, list[tuple[int, object]]]:
        out: dict[int, list] = {}
        for (r, c), v in self.entries.items():
            out.setdefault(r, []).append((c, v))
        return out

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orow = other.by_row()
        out: dict[tuple[int, int], object] = {}
        for (r, k), v in self.entries.items():
            for c, w in orow.get(k, ()):
                key = (r, c)
                out[key] = out.get(key, 0) + v * w
        return ExactMatrix._raw(self.rows, other.cols, {k: v for k, v in out.items() if v})

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return ExactMatrix._raw(self.rows, self.cols, {k: v for k, v in out.items() if v})

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._raw(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        if not c:
            return ExactMatrix.zeros(self.rows, self.cols)
        return ExactMatrix._raw(self.rows, self.cols, {k: v * c for k, v in self.entries.items()})

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._raw(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        out = {}
        for (r1, c1), v1 in self.entries.items():
            for (r2, c2), v2 in other.entries.items():
                out[(r1 * other.rows + r2, c1 * other.cols + c2)] = v1 * v2
        return ExactMatrix._raw(self.rows * other.rows, self.cols * other.cols, out)

    def tensor_power(self, d: int) -> "ExactMatrix":
        out = ExactMatrix.identity(1)
        for _ in range(d):
            out = out.kron(self)
        return out

    def map(self, f) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, {k: f(v) for k, v in self.entries.items()})

    def permutation_images(self) -> list[int] | None:
        """If this is a permutation matrix, the images of the basis vectors."""
        if self.rows != self.cols or len(self.entries) != self.rows:
            return None
        images = [-1] * self.cols
        for (r, c), v in self.entries.items():
            if v != 1 or images[c] != -1:
                return None
            images[c] = r
        if sorted(images) != list(range(self.rows)):
            return None
        return images

    def flatten(self) -> dict[int, object]:
        """Row-major coordinates r * cols + c."""
        return {r * self.cols + c: v for (r, c), v in self.entries.items()}

    @classmethod
    def unflatten(cls, vec: Mapping[int, object], rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, {divmod(k, cols): v for k, v in vec.items()})

    def to_dense(self) -> list[list]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    # export ---------------------------------------------------------------

    def to_coo_text(self) -> str:
        """Header line ``rows cols nnz`` then one ``row col num/den`` line per entry."""
        lines = [f"{self.rows} {self.cols} {len(self.entries)}"]
        for (r, c), v in sorted(self.entries.items()):
            lines.append(f"{r} {c} {_fmt(v)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_coo_text(cls, text: str) -> "ExactMatrix":
        lines = text.strip().splitlines()
        rows, cols, _ = (int(x) for x in lines[0].split())
        ent = {}
        for line in lines[1:]:
            r, c, v = line.split()
            ent[(int(r), int(c))] = Fraction(v)
        return cls(rows, cols, ent)

    def to_json(self) -> str:
        return json.dumps(
            {
                "rows": self.rows,
                "cols": self.cols,
                "entries": [[r, c, _fmt(v)] for (r, c), v in sorted(self.entries.items())],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "ExactMatrix":
        obj = json.loads(text)
        return cls(obj["rows"], obj["cols"], {(r, c): Fraction(v) for r, c, v in obj["entries"]})


def _fmt(v) -> str:
    if isinstance(v, GaussianRational):
        raise TypeError("export supports rational entries only")
    f = Fraction(v)
    return f"{f.numerator}/{f.denominator}"


# elimination ------------------------------------------------------------------


def to_integer_row(vec: Mapping[int, object]) -> dict[int, int]:
    """Scale a rational vector to a primitive integer vector with positive leading entry."""
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    row = {k: int(v * den) for k, v in vec.items() if v}
    return _primitive(row)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


class EchelonBuilder:
    """Incremental fraction-free row echelon form.

    Rows are primitive integer vectors keyed by their pivot (leading) column.
    """

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def reduce(self, vec: Mapping[int, object]) -> dict[int, int]:
        row = to_integer_row(vec)
        pivots = self.pivots
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                return row
            a, b = prow[c], row[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {k: v * fa for k, v in row.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - fb * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new)
        return row

    def insert(self, vec: Mapping[int, object]) -> bool:
        """Add vec to the row space; True if it was independent."""
        row = self.reduce(vec)
        if not row:
            return False
        self.pivots[min(row)] = row
        return True

    def __contains__(self, vec) -> bool:
        return not self.reduce(vec)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rref(self) -> list[dict[int, int]]:
        """Fully reduced rows, each primitive with positive pivot, sorted by pivot."""
        cols = sorted(self.pivots)
        rows = {c: dict(self.pivots[c]) for c in cols}
        for c in reversed(cols):
            prow = rows[c]
            for c2 in cols:
                if c2 >= c:
                    break
                row = rows[c2]
                b = row.get(c)
                if not b:
                    continue
                a = prow[c]
                g = gcd(a, b)
                fa, fb = a // g, b // g
                new = {k: v * fa for k, v in row.items()}
                for k, v in prow.items():
                    nv = new.get(k, 0) - fb * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                rows[c2] = _primitive(new)
        return [rows[c] for c in cols]


def rank(vectors: Iterable[Mapping[int, object]]) -> int:
    eb = EchelonBuilder()
    for v in vectors:
        eb.insert(v)
    return eb.rank


def nullspace(builder: EchelonBuilder, ncols: int) -> list[dict[int, int]]:
    """Basis of {x : row . x = 0 for every row}, as primitive integer vectors."""
    rows = builder.rref()
    pivot_cols = {min(r): r for r in rows}
    out = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        vec: dict[int, Fraction] = {f: Fraction(1)}
        for p, r in pivot_cols.items():
            v = r.get(f)
            if v:
                vec[p] = Fraction(-v, r[p])
        out.append(to_integer_row(vec))
    return out


class SubspaceBasis:
    """A subspace of Q^ambient in reduced row echelon form.

    ``rows`` are primitive integer vectors (sparse dicts); ``shape`` records
    the matrix shape when the ambient space is a space of matrices.
    """

    __slots__ = ("ambient", "rows", "shape")

    def __init__(self, ambient: int, vectors: Iterable[Mapping[int, object]] = (), shape=None):
        eb = EchelonBuilder()
        for v in vectors:
            if any(not 0 <= k < ambient for k in v):
                raise IndexError("vector outside the ambient space")
            eb.insert(v)
        self.ambient = ambient
        self.rows = eb.rref()
        self.shape = shape

    @classmethod
    def from_matrices(cls, mats: Sequence[ExactMatrix], shape=None) -> "SubspaceBasis":
        if shape is None:
            shape = mats[0].shape
        return cls(shape[0] * shape[1], (m.flatten() for m in mats), shape)

    @classmethod
    def full(cls, ambient: int, shape=None) -> "SubspaceBasis":
        out = object.__new__(cls)
        out.ambient, out.shape = ambient, shape
        out.rows = [{k: 1} for k in range(ambient)]
        return out

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def contains(self, vec: Mapping[int, object]) -> bool:
        eb = EchelonBuilder()
        eb.pivots = {min(r): r for r in self.rows}
        return not eb.reduce(vec)

    def contains_matrix(self, m: ExactMatrix) -> bool:
        return self.contains(m.flatten())

    def matrices(self) -> list[ExactMatrix]:
        if self.shape is None:
            raise ValueError("basis does not live in a matrix space")
        return [ExactMatrix.unflatten(r, *self.shape) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.ambient == other.ambient and self.rows == other.rows

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim}, ambient={self.ambient})"

    def echelon_matrix(self) -> ExactMatrix:
        return ExactMatrix(
            self.dim, self.ambient, {(i, k): v for i, r in enumerate(self.rows) for k, v in r.items()}
        )

    def to_coo_text(self) -> str:
        return self.echelon_matrix().to_coo_text()

    def to_json(self) -> str:
        return self.echelon_matrix().to_json()
