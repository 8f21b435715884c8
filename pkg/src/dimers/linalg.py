"""Exact Gaussian-integer arithmetic and fraction-free determinants."""
from __future__ import annotations

from dataclasses import dataclass
from numbers import Integral

from .errors import InexactDivision


class GaussianInt:
    """``re + im*i`` with unbounded integer parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianInt):
            re, im = re.re, re.im
        elif isinstance(re, complex):
            if re.real != int(re.real) or re.imag != int(re.imag):
                raise ValueError(f"{re!r} is not a Gaussian integer")
            re, im = int(re.real), int(re.imag)
        if not isinstance(re, Integral) or not isinstance(im, Integral):
            raise TypeError("Gaussian integer parts must be integers")
        self.re = int(re)
        self.im = int(im)

    @classmethod
    def coerce(cls, value) -> "GaussianInt":
        return value if isinstance(value, GaussianInt) else cls(value)

    def __repr__(self):
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __eq__(self, other):
        try:
            other = GaussianInt.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __add__(self, other):
        other = GaussianInt.coerce(other)
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianInt.coerce(other)
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianInt.coerce(other) - self

    def __mul__(self, other):
        other = GaussianInt.coerce(other)
        return GaussianInt(*_mul((self.re, self.im), (other.re, other.im)))

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def exact_div(self, other) -> "GaussianInt":
        other = GaussianInt.coerce(other)
        return GaussianInt(*_exact_div((self.re, self.im), (other.re, other.im)))

    def __complex__(self):
        return complex(self.re, self.im)


def add(a, b) -> GaussianInt:
    return GaussianInt.coerce(a) + b


def sub(a, b) -> GaussianInt:
    return GaussianInt.coerce(a) - b


def mul(a, b) -> GaussianInt:
    return GaussianInt.coerce(a) * b


def exact_div(a, b) -> GaussianInt:
    return GaussianInt.coerce(a).exact_div(b)


# Pair arithmetic used by the elimination loop; avoids object churn on big matrices.

def _mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _exact_div(a, b):
    norm = b[0] * b[0] + b[1] * b[1]
    if norm == 0:
        raise ZeroDivisionError("Gaussian integer division by zero")
    # a * conj(b) / |b|^2
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    q_re, r_re = divmod(re, norm)
    q_im, r_im = divmod(im, norm)
    if r_re or r_im:
        raise InexactDivision(f"({a[0]}+{a[1]}i) is not divisible by ({b[0]}+{b[1]}i)")
    return q_re, q_im


@dataclass(frozen=True)
class GaussianMatrix:
    """Dense square matrix of Gaussian integers, stored row by row."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(GaussianInt.coerce(v) for v in row) for row in self.entries)
        dim = len(rows)
        if any(len(row) != dim for row in rows):
            raise ValueError("GaussianMatrix must be square")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def zeros(cls, dim: int) -> "GaussianMatrix":
        return cls(tuple((0,) * dim for _ in range(dim)))

    @classmethod
    def identity(cls, dim: int) -> "GaussianMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def transpose(self) -> "GaussianMatrix":
        return GaussianMatrix(tuple(zip(*self.entries)))

    def swap_rows(self, i: int, j: int) -> "GaussianMatrix":
        rows = list(self.entries)
        rows[i], rows[j] = rows[j], rows[i]
        return GaussianMatrix(tuple(rows))

    def to_complex(self):
        return [[complex(v) for v in row] for row in self.entries]

    def nonzero_count(self) -> int:
        return sum(1 for row in self.entries for v in row if v)


def block_antidiagonal(b: GaussianMatrix) -> GaussianMatrix:
    """``[[0, B], [B^t, 0]]``: the full adjacency matrix with blacks ordered before whites."""
    p = b.dim
    zero = (GaussianInt(),) * p
    top = tuple(zero + row for row in b.entries)
    bottom = tuple(row + zero for row in b.transpose().entries)
    return GaussianMatrix(top + bottom)


def det_exact(matrix: GaussianMatrix) -> GaussianInt:
    """Fraction-free (Bareiss) elimination over the Gaussian integers.

    Full pivoting: the pivot is the nonzero entry of smallest norm in the remaining
    submatrix, moved to the diagonal by a row and a column swap. Every division is
    exact; a remainder raises InexactDivision.
    """
    n = matrix.dim
    if n == 0:
        return GaussianInt(1)
    a = [[(v.re, v.im) for v in row] for row in matrix.entries]
    sign = 1
    prev = (1, 0)
    for k in range(n - 1):
        best = None
        for r in range(k, n):
            row = a[r]
            for c in range(k, n):
                v = row[c]
                if v != (0, 0):
                    norm = v[0] * v[0] + v[1] * v[1]
                    if best is None or norm < best[0]:
                        best = (norm, r, c)
            if best is not None and best[0] == 1:
                break  # a unit cannot be beaten
        if best is None:
            return GaussianInt(0)
        _, pr, pc = best
        if pr != k:
            a[k], a[pr] = a[pr], a[k]
            sign = -sign
        if pc != k:
            for row in a:
                row[k], row[pc] = row[pc], row[k]
            sign = -sign
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            if lead == (0, 0):
                # (x*pivot - 0)/prev for every remaining entry
                for j in range(k + 1, n):
                    row_i[j] = _exact_div(_mul(row_i[j], pivot), prev)
            else:
                for j in range(k + 1, n):
                    x = _mul(row_i[j], pivot)
                    y = _mul(lead, row_k[j])
                    row_i[j] = _exact_div((x[0] - y[0], x[1] - y[1]), prev)
            row_i[k] = (0, 0)
        prev = pivot
    re, im = a[n - 1][n - 1]
    return GaussianInt(sign * re, sign * im)
