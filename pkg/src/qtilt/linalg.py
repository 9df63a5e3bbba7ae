"""Dense exact-rational matrices: RREF, kernels, linear solves.

Everything category-level in this package runs over Q (via
``fractions.Fraction``) so that Hom/Ext dimension counts are exact
integers.  Matrices are stored row-major and dense; the intended scale
is a few dozen rows/columns.  Pivoting is deterministic (first nonzero
entry in column order) so every basis this module emits is reproducible.

Zero-dimensional matrices (0 rows and/or 0 columns) are valid and
represent maps to or from the zero space.
"""
from __future__ import annotations

from fractions import Fraction

Rational = Fraction


class LinAlgError(ValueError):
    pass


class RatMatrix:
    """Immutable-by-convention dense matrix over Q."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        if rows < 0 or cols < 0:
            raise LinAlgError("negative matrix dimension")
        if data is None:
            data = [Fraction(0)] * (rows * cols)
        else:
            data = [Fraction(x) for x in data]
            if len(data) != rows * cols:
                raise LinAlgError(
                    f"expected {rows * cols} entries, got {len(data)}"
                )
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.data[i * n + i] = Fraction(1)
        return m

    @classmethod
    def from_rows(cls, rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        flat = []
        for r in rows_list:
            if len(r) != cols:
                raise LinAlgError("ragged row list")
            flat.extend(r)
        return cls(rows, cols, flat)

    @classmethod
    def column(cls, entries):
        return cls(len(entries), 1, list(entries))

    def copy(self):
        return RatMatrix(self.rows, self.cols, list(self.data))

    # -- access -------------------------------------------------------

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r * self.cols + c]

    def _set(self, r, c, v):
        self.data[r * self.cols + c] = Fraction(v)

    def row(self, r):
        return self.data[r * self.cols:(r + 1) * self.cols]

    def col(self, c):
        return [self.data[r * self.cols + c] for r in range(self.rows)]

    def is_zero(self):
        return all(x == 0 for x in self.data)

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.data)))

    def __repr__(self):
        rows = [
            "[" + ", ".join(str(x) for x in self.row(r)) + "]"
            for r in range(self.rows)
        ]
        return f"RatMatrix({self.rows}x{self.cols}, [" + ", ".join(rows) + "])"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        self._same_shape(other)
        return RatMatrix(
            self.rows, self.cols,
            [a + b for a, b in zip(self.data, other.data)],
        )

    def __sub__(self, other):
        self._same_shape(other)
        return RatMatrix(
            self.rows, self.cols,
            [a - b for a, b in zip(self.data, other.data)],
        )

    def __neg__(self):
        return RatMatrix(self.rows, self.cols, [-a for a in self.data])

    def scale(self, c):
        c = Fraction(c)
        return RatMatrix(self.rows, self.cols, [c * a for a in self.data])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise LinAlgError(
                f"shape mismatch {self.rows}x{self.cols} @ "
                f"{other.rows}x{other.cols}"
            )
        out = RatMatrix(self.rows, other.cols)
        oc = other.cols
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                a = self.data[base + k]
                if a == 0:
                    continue
                kb = k * oc
                ob = i * oc
                for j in range(oc):
                    out.data[ob + j] += a * other.data[kb + j]
        return out

    def matpow(self, n):
        if self.rows != self.cols:
            raise LinAlgError("matpow needs a square matrix")
        result = RatMatrix.identity(self.rows)
        base = self
        while n > 0:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def transpose(self):
        out = RatMatrix(self.cols, self.rows)
        for r in range(self.rows):
            for c in range(self.cols):
                out.data[c * self.rows + r] = self.data[r * self.cols + c]
        return out

    def apply(self, vec):
        """Matrix-vector product; ``vec`` is a plain list."""
        if len(vec) != self.cols:
            raise LinAlgError("vector length mismatch")
        return [
            sum(self.data[r * self.cols + c] * vec[c]
                for c in range(self.cols))
            for r in range(self.rows)
        ]

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise LinAlgError("shape mismatch")

    # -- elimination --------------------------------------------------

    def rref(self):
        """Reduced row-echelon form.

        Returns ``(R, pivots)`` where ``pivots`` is the tuple of pivot
        column indices.  Pivot choice is the first nonzero entry in
        column order, so the result is canonical.
        """
        m = self.copy()
        pivots = []
        pr = 0
        for pc in range(m.cols):
            pivot_row = None
            for r in range(pr, m.rows):
                if m.data[r * m.cols + pc] != 0:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            if pivot_row != pr:
                a = pivot_row * m.cols
                b = pr * m.cols
                m.data[a:a + m.cols], m.data[b:b + m.cols] = (
                    m.data[b:b + m.cols], m.data[a:a + m.cols])
            pv = m.data[pr * m.cols + pc]
            if pv != 1:
                inv = 1 / pv
                base = pr * m.cols
                for c in range(pc, m.cols):
                    m.data[base + c] *= inv
            for r in range(m.rows):
                if r == pr:
                    continue
                f = m.data[r * m.cols + pc]
                if f == 0:
                    continue
                rb = r * m.cols
                pb = pr * m.cols
                for c in range(pc, m.cols):
                    m.data[rb + c] -= f * m.data[pb + c]
            pivots.append(pc)
            pr += 1
            if pr == m.rows:
                break
        return m, tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of the right null space, as a list of column vectors.

        The basis vector attached to free column ``f`` has a 1 in slot
        ``f``; this makes the output canonical given the pivot rule.
        """
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -red.data[r * red.cols + f]
            basis.append(v)
        return basis

    def solve(self, b):
        """One solution of ``self @ x = b``, or None if inconsistent."""
        if len(b) != self.rows:
            raise LinAlgError("right-hand side length mismatch")
        aug = RatMatrix(self.rows, self.cols + 1)
        for r in range(self.rows):
            aug.data[r * (self.cols + 1):r * (self.cols + 1) + self.cols] = \
                self.row(r)
            aug.data[r * (self.cols + 1) + self.cols] = Fraction(b[r])
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [Fraction(0)] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red.data[r * red.cols + self.cols]
        return x

    def column_space_pivots(self):
        """Indices of a deterministic set of columns spanning the image."""
        return self.rref()[1]


def hstack(matrices):
    matrices = list(matrices)
    if not matrices:
        raise LinAlgError("hstack of nothing")
    rows = matrices[0].rows
    if any(m.rows != rows for m in matrices):
        raise LinAlgError("hstack row mismatch")
    cols = sum(m.cols for m in matrices)
    out = RatMatrix(rows, cols)
    for r in range(rows):
        off = 0
        for m in matrices:
            out.data[r * cols + off:r * cols + off + m.cols] = m.row(r)
            off += m.cols
    return out


def vstack(matrices):
    matrices = list(matrices)
    if not matrices:
        raise LinAlgError("vstack of nothing")
    cols = matrices[0].cols
    if any(m.cols != cols for m in matrices):
        raise LinAlgError("vstack column mismatch")
    data = []
    for m in matrices:
        data.extend(m.data)
    return RatMatrix(sum(m.rows for m in matrices), cols, data)


def block_diag(matrices):
    matrices = list(matrices)
    rows = sum(m.rows for m in matrices)
    cols = sum(m.cols for m in matrices)
    out = RatMatrix(rows, cols)
    r0 = 0
    c0 = 0
    for m in matrices:
        for r in range(m.rows):
            out.data[(r0 + r) * cols + c0:(r0 + r) * cols + c0 + m.cols] = \
                m.row(r)
        r0 += m.rows
        c0 += m.cols
    return out


def columns_matrix(vectors, length=None):
    """Pack a list of column vectors into a matrix (length x count)."""
    if not vectors:
        if length is None:
            raise LinAlgError("cannot infer row count of empty column pack")
        return RatMatrix(length, 0)
    n = len(vectors[0])
    out = RatMatrix(n, len(vectors))
    for j, v in enumerate(vectors):
        if len(v) != n:
            raise LinAlgError("ragged column pack")
        for i in range(n):
            out.data[i * len(vectors) + j] = Fraction(v[i])
    return out


def rref(m):
    """Functional alias, see :meth:`RatMatrix.rref`."""
    return m.rref()


def kernel_basis(m):
    return m.kernel_basis()


def solve_linear(a, b):
    return a.solve(b)
