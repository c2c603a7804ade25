"""Exact rational matrices stored as an integer array over one denominator."""
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from . import kernels
from .errors import ShapeError

_SAFE = 1 << 62


def _maxabs(a):
    if a.size == 0:
        return 0
    return max(abs(int(a.max())), abs(int(a.min())))


def _compact(a):
    """Store as int64 when every entry is safely small, else as Python ints."""
    if a.dtype == np.int64:
        return a
    if _maxabs(a) < _SAFE:
        return a.astype(np.int64)
    return a.astype(object)


def _scaled(a, s):
    if s == 1:
        return a
    if a.dtype == np.int64 and _maxabs(a) * s < _SAFE:
        return a * s
    return a.astype(object) * s


def _to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, float):
        raise TypeError("floating point entries are not allowed; use Fraction or 'p/q'")
    return Fraction(x)


class QMatrix:
    """Immutable exact matrix over Q: ``num / den`` with ``den > 0`` in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = np.asarray(num)
        if num.ndim != 2:
            raise ShapeError(f"expected a 2-d array, got shape {num.shape}")
        if num.dtype != np.int64:
            if num.dtype.kind in "iu":
                num = num.astype(object)
            elif num.size:
                num = np.vectorize(int, otypes=[object])(num)
            else:
                num = num.astype(object)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        if num.size:
            if num.dtype == np.int64:
                g = gcd(int(np.gcd.reduce(num.ravel())), den)
            else:
                g = den
                for v in num.flat:
                    if v:
                        g = gcd(g, int(v))
                        if g == 1:
                            break
            if not num.any():
                den = 1
            elif g > 1:
                num = num // g
                den //= g
        else:
            den = 1
        num = _compact(num)
        num.setflags(write=False)
        self.num = num
        self.den = den

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [[_to_fraction(x) for x in row] for row in rows]
        if not rows:
            return cls.zeros(0, ncols or 0)
        den = 1
        for row in rows:
            for x in row:
                den = lcm(den, x.denominator)
        num = np.array(
            [[int(x.numerator * (den // x.denominator)) for x in row] for row in rows],
            dtype=object,
        )
        if num.ndim != 2:
            raise ShapeError("ragged rows")
        return cls(num, den)

    @classmethod
    def zeros(cls, n, m):
        return cls(np.zeros((n, m), dtype=np.int64))

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def scalar(cls, n, c):
        return cls.diag([c] * n)

    @classmethod
    def diag(cls, values):
        values = [_to_fraction(v) for v in values]
        n = len(values)
        den = 1
        for v in values:
            den = lcm(den, v.denominator)
        num = np.zeros((n, n), dtype=object)
        for i, v in enumerate(values):
            num[i, i] = v.numerator * (den // v.denominator)
        return cls(num, den)

    @classmethod
    def from_entries(cls, n, m, entries):
        """Build from a mapping ``(i, j) -> value``."""
        den = 1
        vals = {}
        for key, v in entries.items():
            v = _to_fraction(v)
            if v:
                vals[key] = v
                den = lcm(den, v.denominator)
        num = np.zeros((n, m), dtype=object)
        for (i, j), v in vals.items():
            num[i, j] = v.numerator * (den // v.denominator)
        return cls(num, den)

    # basic protocol -----------------------------------------------------

    @property
    def shape(self):
        return self.num.shape

    @property
    def nrows(self):
        return self.num.shape[0]

    @property
    def ncols(self):
        return self.num.shape[1]

    def __getitem__(self, idx):
        i, j = idx
        return Fraction(int(self.num[i, j]), self.den)

    def to_fractions(self):
        return [[Fraction(int(v), self.den) for v in row] for row in self.num.tolist()]

    def __repr__(self):
        rows = ["[" + ", ".join(str(x) for x in row) + "]" for row in self.to_fractions()]
        return f"QMatrix({self.nrows}x{self.ncols}: [" + ", ".join(rows) + "])"

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.den == other.den
            and bool(np.array_equal(self.num, other.num))
        )

    def __hash__(self):
        return hash((self.shape, self.den, tuple(int(v) for v in self.num.flat)))

    def is_zero(self):
        return not self.num.any()

    # arithmetic ---------------------------------------------------------

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot compose {self.shape} with {other.shape}")
        return QMatrix(kernels.matmul(self.num, other.num), self.den * other.den)

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        d = lcm(self.den, other.den)
        a = _scaled(self.num, d // self.den)
        b = _scaled(other.num, d // other.den)
        if a.dtype == np.int64 and b.dtype == np.int64 and _maxabs(a) + _maxabs(b) < _SAFE:
            return QMatrix(a + b if sign > 0 else a - b, d)
        a, b = a.astype(object), b.astype(object)
        return QMatrix(a + b if sign > 0 else a - b, d)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return QMatrix(-self.num, self.den)

    def scale(self, c):
        c = _to_fraction(c)
        return QMatrix(_scaled(self.num, abs(c.numerator)) * (1 if c >= 0 else -1), self.den * c.denominator)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    @property
    def T(self):
        return QMatrix(self.num.T.copy(), self.den)

    def kron(self, other):
        a, b = self.num, other.num
        if not (a.dtype == np.int64 and b.dtype == np.int64 and _maxabs(a) * _maxabs(b) < _SAFE):
            a, b = a.astype(object), b.astype(object)
        return QMatrix(np.kron(a, b).reshape(self.nrows * other.nrows, self.ncols * other.ncols), self.den * other.den)

    def rows(self, idx):
        return QMatrix(self.num[list(idx), :], self.den)

    def cols(self, idx):
        return QMatrix(self.num[:, list(idx)], self.den)

    @staticmethod
    def _common(mats):
        d = 1
        for m in mats:
            d = lcm(d, m.den)
        nums = [_scaled(m.num, d // m.den) for m in mats]
        if any(n.dtype != np.int64 for n in nums):
            nums = [n.astype(object) for n in nums]
        return nums, d

    @staticmethod
    def hstack(mats, nrows=None):
        mats = list(mats)
        if not mats:
            return QMatrix.zeros(nrows or 0, 0)
        nums, d = QMatrix._common(mats)
        return QMatrix(np.hstack(nums), d)

    @staticmethod
    def vstack(mats, ncols=None):
        mats = list(mats)
        if not mats:
            return QMatrix.zeros(0, ncols or 0)
        nums, d = QMatrix._common(mats)
        return QMatrix(np.vstack(nums), d)

    @staticmethod
    def block_diag(mats):
        mats = list(mats)
        n = sum(m.nrows for m in mats)
        k = sum(m.ncols for m in mats)
        if not mats:
            return QMatrix.zeros(0, 0)
        nums, d = QMatrix._common(mats)
        out = np.zeros((n, k), dtype=nums[0].dtype)
        i = j = 0
        for a in nums:
            out[i : i + a.shape[0], j : j + a.shape[1]] = a
            i += a.shape[0]
            j += a.shape[1]
        return QMatrix(out, d)

    def place(self, n, m, row0, col0):
        """Embed this matrix as a block of an ``n x m`` zero matrix."""
        out = np.zeros((n, m), dtype=self.num.dtype)
        out[row0 : row0 + self.nrows, col0 : col0 + self.ncols] = self.num
        return QMatrix(out, self.den)

    # elimination --------------------------------------------------------

    def echelon(self):
        """Integer reduced echelon rows and pivot columns of this matrix."""
        return kernels.echelon(self.num)

    def rank(self):
        if self.num.size == 0:
            return 0
        return len(self.echelon()[1])

    def rref(self):
        rows, piv = self.echelon()
        if not piv:
            return QMatrix.zeros(0, self.ncols), piv
        out = [
            [Fraction(int(v), int(rows[k, p])) for v in rows[k]] for k, p in enumerate(piv)
        ]
        return QMatrix.from_rows(out), piv

    def nullspace(self):
        """Columns spanning the right kernel (integer, one per free column)."""
        m = self.ncols
        if self.nrows == 0:
            return QMatrix.identity(m)
        rows, piv = self.echelon()
        free = [c for c in range(m) if c not in set(piv)]
        if not free:
            return QMatrix.zeros(m, 0)
        cols = []
        for f in free:
            # x_f = L, x_p = -rows[k, f] * L / rows[k, p]
            lval = 1
            for k, p in enumerate(piv):
                if rows[k, f]:
                    lval = lcm(lval, int(rows[k, p]))
            v = [0] * m
            v[f] = lval
            for k, p in enumerate(piv):
                if rows[k, f]:
                    v[p] = -int(rows[k, f]) * (lval // int(rows[k, p]))
            cols.append(v)
        num = np.array(cols, dtype=object).T
        g_cols = []
        for j in range(num.shape[1]):
            g = 0
            for v in num[:, j]:
                g = gcd(g, int(v))
            g_cols.append(g or 1)
        num = num // np.array(g_cols, dtype=object)
        for j in range(num.shape[1]):
            lead = next(v for v in num[:, j] if v)
            if lead < 0:
                num[:, j] = -num[:, j]
        return QMatrix(num)

    def colspace(self):
        """Columns of this matrix forming a basis of its column span."""
        if self.ncols == 0 or self.nrows == 0:
            return QMatrix.zeros(self.nrows, 0)
        _, piv = self.echelon()
        return self.cols(piv)

    def row_basis(self):
        """Rows spanning the row space, as an integer matrix in echelon form."""
        rows, piv = self.echelon()
        return QMatrix(rows if len(piv) else np.zeros((0, self.ncols), dtype=np.int64))

    def solve(self, rhs):
        """Return X with ``self @ X == rhs`` or None if inconsistent.

        Free variables are set to zero.
        """
        if self.nrows != rhs.nrows:
            raise ShapeError("row count mismatch in solve")
        n, m = self.shape
        k = rhs.ncols
        aug = QMatrix.hstack([self, rhs]) if m else rhs
        rows, piv = aug.echelon()
        if any(p >= m for p in piv):
            return None
        out = {}
        for r, p in enumerate(piv):
            pv = int(rows[r, p])
            for j in range(k):
                v = int(rows[r, m + j])
                if v:
                    out[(p, j)] = Fraction(v, pv)
        return QMatrix.from_entries(m, k, out)

    def inverse(self):
        n, m = self.shape
        if n != m:
            raise ShapeError("inverse of a non-square matrix")
        x = self.solve(QMatrix.identity(n))
        if x is None or self.rank() != n:
            raise ZeroDivisionError("singular matrix")
        return x

    def det(self):
        n, m = self.shape
        if n != m:
            raise ShapeError("determinant of a non-square matrix")
        if n == 0:
            return Fraction(1)
        if self.rank() < n:
            return Fraction(0)
        # exact Bareiss on Python ints
        a = [[int(v) for v in row] for row in self.num.tolist()]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return Fraction(sign * a[n - 1][n - 1], self.den**n)
