"""Dense matrices over GF(q).

Matrices are immutable row tuples.  Over GF(2) the heavy operations
(product, rank, determinant) run on rows packed into ints, bit j being
column j; the generic path does ordinary Gaussian elimination mod q.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .gfpoly import Poly, field

__all__ = [
    "Matrix",
    "identity",
    "zeros",
    "matrix_power",
    "matrix_rank",
    "det",
    "solve",
    "nullity",
    "charpoly_hessenberg",
]


@dataclass(frozen=True)
class Matrix:
    q: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], q: int = 2) -> "Matrix":
        return cls(q, tuple(tuple(int(v) % q for v in r) for r in rows))

    @classmethod
    def from_masks(cls, masks: Sequence[int], n: int) -> "Matrix":
        return cls(2, tuple(tuple((m >> j) & 1 for j in range(n)) for m in masks))

    @property
    def n(self) -> int:
        return len(self.rows)

    def masks(self) -> tuple[int, ...]:
        if self.q != 2:
            raise ValueError("packed rows exist only over GF(2)")
        return tuple(sum(v << j for j, v in enumerate(r)) for r in self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return _matmul(self, other)
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        _check(self, other)
        q = self.q
        return Matrix(q, tuple(tuple((a + b) % q for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(x) != self.n:
            raise ValueError("vector length differs from matrix size")
        q = self.q
        return tuple(sum(a * b for a, b in zip(r, x)) % q for r in self.rows)

    def row_is_unit(self, i: int) -> int:
        """Column of the lone nonzero entry of row i if it is a 1, else -1."""
        hit = -1
        for j, v in enumerate(self.rows[i]):
            if v:
                if hit >= 0 or v != 1:
                    return -1
                hit = j
        return hit

    def __str__(self):
        return "\n".join(" ".join(str(v) for v in r) for r in self.rows)


def _check(a: Matrix, b: Matrix) -> None:
    if a.q != b.q or a.n != b.n:
        raise ValueError("matrix shapes or fields differ")


def identity(n: int, q: int = 2) -> Matrix:
    return Matrix(q, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def zeros(n: int, q: int = 2) -> Matrix:
    return Matrix(q, tuple((0,) * n for _ in range(n)))


def _matmul_masks(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = []
    for row in a:
        acc = 0
        j = 0
        while row:
            if row & 1:
                acc ^= b[j]
            row >>= 1
            j += 1
        out.append(acc)
    return out


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    _check(a, b)
    if a.q == 2:
        return Matrix.from_masks(_matmul_masks(a.masks(), b.masks()), a.n)
    q, cols = a.q, list(zip(*b.rows))
    return Matrix(q, tuple(tuple(sum(x * y for x, y in zip(r, c)) % q for c in cols) for r in a.rows))


def matrix_power(t: Matrix, k: int) -> Matrix:
    """T^k by repeated squaring."""
    if k < 0:
        raise ValueError("negative matrix power")
    n = t.n
    if t.q == 2:
        result = [1 << i for i in range(n)]
        base = list(t.masks())
        while k:
            if k & 1:
                result = _matmul_masks(result, base)
            k >>= 1
            if k:
                base = _matmul_masks(base, base)
        return Matrix.from_masks(result, n)
    result, base = identity(n, t.q), t
    while k:
        if k & 1:
            result = _matmul(result, base)
        k >>= 1
        if k:
            base = _matmul(base, base)
    return result


# -- elimination --------------------------------------------------------------


def _rank_masks(rows: Iterable[int]) -> int:
    basis: dict[int, int] = {}  # leading bit -> row
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def _echelon(rows: list[list[int]], q: int) -> tuple[int, int]:
    """In-place row reduction; returns (rank, determinant factor)."""
    fld = field(q)
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    rank, factor = 0, 1
    for c in range(ncols):
        piv = next((r for r in range(rank, m) if rows[r][c]), None)
        if piv is None:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            factor = -factor
        pv = rows[rank][c]
        factor = factor * pv % q
        inv = fld.inv(pv)
        prow = [v * inv % q for v in rows[rank]]
        rows[rank] = prow
        for r in range(m):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(v - f * p) % q for v, p in zip(rows[r], prow)]
        rank += 1
    return rank, factor % q


def matrix_rank(m: Matrix | Sequence[Sequence[int]], q: int | None = None) -> int:
    """Rank over GF(q).  Accepts rectangular row lists when q is given."""
    if isinstance(m, Matrix):
        q, rows = m.q, m.rows
    else:
        if q is None:
            raise ValueError("pass q for raw row lists")
        rows = tuple(tuple(int(v) % q for v in r) for r in m)
    if not rows:
        return 0
    if q == 2:
        return _rank_masks(sum(v << j for j, v in enumerate(r)) for r in rows)
    return _echelon([list(r) for r in rows], q)[0]


def _det_masks(masks: Sequence[int], n: int) -> int:
    rows = list(masks)
    for c in range(n):
        bit = 1 << c
        piv = next((r for r in range(c, n) if rows[r] & bit), None)
        if piv is None:
            return 0
        rows[c], rows[piv] = rows[piv], rows[c]
        for r in range(c + 1, n):
            if rows[r] & bit:
                rows[r] ^= rows[c]
    return 1


def det(m: Matrix) -> int:
    if m.n == 0:
        return 1
    if m.q == 2:
        return _det_masks(m.masks(), m.n)
    rows = [list(r) for r in m.rows]
    rank, factor = _echelon(rows, m.q)
    return factor if rank == m.n else 0


def nullity(m: Matrix) -> int:
    return m.n - matrix_rank(m)


def solve(m: Matrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One solution of M x = b, or None if inconsistent.  Free variables are 0."""
    q, n = m.q, m.n
    aug = [list(r) + [int(v) % q] for r, v in zip(m.rows, b)]
    fld = field(q)
    pivots = []
    rank = 0
    for c in range(n):
        piv = next((r for r in range(rank, n) if aug[r][c]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = fld.inv(aug[rank][c])
        aug[rank] = [v * inv % q for v in aug[rank]]
        for r in range(n):
            if r != rank and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(v - f * p) % q for v, p in zip(aug[r], aug[rank])]
        pivots.append(c)
        rank += 1
    if any(aug[r][n] for r in range(rank, n)):
        return None
    x = [0] * n
    for r, c in enumerate(pivots):
        x[c] = aug[r][n]
    return tuple(x)


# -- characteristic polynomial of an arbitrary matrix --------------------------


def charpoly_hessenberg(m: Matrix) -> Poly:
    """det(xI - M) via similarity reduction to upper Hessenberg form.

    Exact over GF(q): every pivot division is by a nonzero field element.
    """
    q, n = m.q, m.n
    fld = field(q)
    a = [list(r) for r in m.rows]
    for c in range(n - 2):
        piv = next((r for r in range(c + 1, n) if a[r][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            a[c + 1], a[piv] = a[piv], a[c + 1]
            for row in a:
                row[c + 1], row[piv] = row[piv], row[c + 1]
        inv = fld.inv(a[c + 1][c])
        for r in range(c + 2, n):
            f = a[r][c] * inv % q
            if not f:
                continue
            # row_r -= f * row_{c+1};  col_{c+1} += f * col_r
            a[r] = [(v - f * p) % q for v, p in zip(a[r], a[c + 1])]
            for row in a:
                row[c + 1] = (row[c + 1] + f * row[r]) % q
    # p_k = det(xI - H_k) for the leading k x k block
    x = Poly.x(q)
    polys = [Poly.const(1, q)]
    for k in range(1, n + 1):
        pk = (x - Poly.const(a[k - 1][k - 1], q)) * polys[k - 1]
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * a[i][i - 1] % q
            if not prod:
                break
            pk = pk - Poly.const(prod * a[i - 1][k - 1] % q, q) * polys[i - 1]
        polys.append(pk)
    return polys[n]
