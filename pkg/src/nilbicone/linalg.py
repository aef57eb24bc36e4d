"""Exact linear algebra over the rationals (or a prime field).

Vectors and matrices are plain sequences of ``Fraction`` (or ``int`` when a
modulus is given). Everything here is Gaussian elimination; no pivoting
heuristics are needed because the arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple
Matrix = list


def _inv(c, p):
    return pow(c, -1, p) if p else 1 / Fraction(c)


def row_echelon(rows: Sequence[Sequence], p: int | None = None) -> tuple[list[list], list[int]]:
    """Return the reduced row echelon form of ``rows`` and its pivot columns."""
    if p:
        m = [[int(c) % p for c in r] for r in rows]
    else:
        m = [[Fraction(c) for c in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _inv(m[r][col], p)
        m[r] = [(c * inv) % p for c in m[r]] if p else [c * inv for c in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                factor = m[i][col]
                row = m[r]
                if p:
                    m[i] = [(a - factor * b) % p for a, b in zip(m[i], row)]
                else:
                    m[i] = [a - factor * b for a, b in zip(m[i], row)]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], p: int | None = None) -> int:
    """Exact rank of a list of row vectors."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    return len(row_echelon(rows, p)[1])


def nullspace(matrix: Sequence[Sequence], p: int | None = None) -> list[tuple]:
    """Basis of ``{v : matrix @ v = 0}`` as a list of tuples."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    red, pivots = row_echelon(matrix, p)
    free = [c for c in range(ncols) if c not in pivots]
    one = 1 if p else Fraction(1)
    zero = 0 if p else Fraction(0)
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row, pc in zip(red, pivots):
            v[pc] = (-row[fc]) % p if p else -row[fc]
        basis.append(tuple(v))
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence, p: int | None = None) -> tuple | None:
    """One solution of ``matrix @ v = rhs``, or ``None`` if inconsistent."""
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    red, pivots = row_echelon(aug, p)
    if ncols in pivots:
        return None
    zero = 0 if p else Fraction(0)
    v = [zero] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[-1]
    return tuple(v)


def in_span(vector: Sequence, rows: Sequence[Sequence], p: int | None = None) -> bool:
    return rank(list(rows) + [vector], p) == rank(rows, p)


def transpose(matrix: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*matrix)]


def mat_vec(matrix: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in matrix)


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    aug = [[Fraction(c) for c in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    red, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]
