"""Integer matrices, Hermite normal form and integer kernels (big integers only)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import InvalidParameter


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise InvalidParameter("column count required for an empty matrix")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise InvalidParameter("ragged integer matrix")
        return cls(rows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def hnf(rows: Iterable[Sequence[int]], ncols: int) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive and strictly move right; entries above a pivot lie in
    [0, pivot). Zero rows are dropped, so the result is a basis.
    """
    a = [list(r) for r in rows]
    piv_row = 0
    pivots = []
    for c in range(ncols):
        if piv_row >= len(a):
            break
        # Euclidean elimination in column c among rows piv_row..end.
        while True:
            nz = [i for i in range(piv_row, len(a)) if a[i][c]]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(a[i][c]))
            a[piv_row], a[i_min] = a[i_min], a[piv_row]
            p = a[piv_row]
            done = True
            for i in range(piv_row + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // p[c]
                    row = a[i]
                    for k in range(c, ncols):
                        row[k] -= q * p[k]
                    if row[c]:
                        done = False
            if done:
                break
        if piv_row < len(a) and a[piv_row][c]:
            if a[piv_row][c] < 0:
                a[piv_row] = [-x for x in a[piv_row]]
            pivots.append((piv_row, c))
            piv_row += 1
    basis = a[:piv_row]
    for r, c in pivots:
        p = basis[r][c]
        for i in range(r):
            q = basis[i][c] // p
            if q:
                basis[i] = [x - q * y for x, y in zip(basis[i], basis[r])]
    return IntMatrix(tuple(tuple(r) for r in basis), ncols)


def integer_kernel(m: IntMatrix | Sequence[Sequence[int]]) -> IntMatrix:
    """Basis (in HNF) of the left kernel ``{x in Z^k : x M = 0}`` of a k-row matrix.

    Row-reduces the augmented matrix [M | I] with unimodular operations; the
    identity part of rows whose M part vanished spans the kernel.
    """
    if not isinstance(m, IntMatrix):
        m = IntMatrix.from_rows(m) if len(m) else IntMatrix((), 0)
    k = m.nrows
    width = m.ncols
    aug = [list(r) + [int(i == j) for j in range(k)] for i, r in enumerate(m.rows)]
    piv_row = 0
    for c in range(width):
        while True:
            nz = [i for i in range(piv_row, k) if aug[i][c]]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(aug[i][c]))
            aug[piv_row], aug[i_min] = aug[i_min], aug[piv_row]
            p = aug[piv_row]
            done = True
            for i in range(piv_row + 1, k):
                if aug[i][c]:
                    q = aug[i][c] // p[c]
                    row = aug[i]
                    for j in range(c, width + k):
                        row[j] -= q * p[j]
                    if row[c]:
                        done = False
            if done:
                break
        if piv_row < k and aug[piv_row][c]:
            piv_row += 1
    kernel_rows = [r[width:] for r in aug[piv_row:]]
    return hnf(kernel_rows, k)


def solve_in_lattice(basis: IntMatrix, v: Sequence[int]) -> list[int] | None:
    """Integer coefficients c with c @ basis == v, or None if v is not in the lattice.

    ``basis`` must be in the HNF produced by :func:`hnf`.
    """
    v = list(v)
    if len(v) != basis.ncols:
        raise InvalidParameter("vector length does not match lattice dimension")
    coeffs = []
    for row in basis.rows:
        c = next(j for j, x in enumerate(row) if x)
        if v[c] % row[c]:
            return None
        q = v[c] // row[c]
        coeffs.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    if any(v):
        return None
    return coeffs


def rank(rows: Iterable[Sequence[int]], ncols: int) -> int:
    return hnf(rows, ncols).nrows
