"""Exact linear algebra over the rationals.

Vectors are tuples of ints or Fractions, matrices are tuples of row tuples.
Everything is immutable and hashable so values can double as dict keys.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vec = tuple  # tuple of int/Fraction
Mat = tuple  # tuple of Vec rows


class SingularMatrixError(ValueError):
    """Raised when inverting a matrix without an inverse."""


class NotFullRankError(ValueError):
    """Raised when an operation requires vectors that span the whole space."""


def vec(coords: Iterable) -> Vec:
    return tuple(coords)


def dot(u: Sequence, v: Sequence):
    """Exact scalar product; lengths must agree."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vadd(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u: Sequence) -> Vec:
    return tuple(c * a for a in u)


def vneg(u: Sequence) -> Vec:
    return tuple(-a for a in u)


def is_zero_vector(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def primitive(u: Sequence) -> Vec:
    """Smallest positive integer rescaling of a rational vector.

    The result has integer coordinates with gcd 1 and the same orientation.
    """
    fracs = [Fraction(a) for a in u]
    if all(f == 0 for f in fracs):
        raise ValueError("cannot normalize the zero vector")
    denom = lcm(*(f.denominator for f in fracs))
    ints = [int(f * denom) for f in fracs]
    g = gcd(*ints)
    return tuple(a // g for a in ints)


def graded_colex_key(u: Sequence):
    """Sort key for the graded colexicographic order.

    Smaller coordinate sums come first; ties are broken by the last
    coordinate where the vectors differ, larger entry meaning larger vector.
    """
    return (sum(u), tuple(reversed(u)))


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def mat_vec(m: Mat, v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def identity_matrix(n: int) -> Mat:
    return tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def row_echelon(m: Mat):
    """Reduced row echelon form with kernel basis and rank.

    Returns (echelon, kernel_basis, rank). The kernel basis spans the null
    space {v : m @ v = 0} exactly; free variables are set to 1 one at a time.
    """
    rows = [list(map(Fraction, row)) for row in m]
    if not rows:
        return (), (), 0
    ncols = len(rows[0])
    nrows = len(rows)
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    rank = len(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    kernel = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            v[pc] = -rows[i][fc]
        kernel.append(tuple(v))
    echelon = tuple(tuple(row) for row in rows)
    return echelon, tuple(kernel), rank


def rank(m: Mat) -> int:
    return row_echelon(m)[2]


def kernel_basis(m: Mat):
    return row_echelon(m)[1]


def invert(m: Mat) -> Mat:
    """Exact inverse of a square rational matrix."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    aug = [list(map(Fraction, row)) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(m)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def solve(m: Mat, rhs: Sequence) -> Vec:
    """Solve m @ x = rhs for an invertible square m."""
    return mat_vec(invert(m), rhs)


def determinant(m: Mat):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(m)
    rows = [list(map(Fraction, row)) for row in m]
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def integral_gaussian_eliminate(m: Mat) -> Mat:
    """Row reduction that preserves the lattice generated by the rows.

    Scales by the common denominator d, performs Euclidean elimination below
    each pivot (only row swaps, sign flips and integer row subtractions),
    reduces entries above the pivot modulo the pivot, and divides by d at the
    end.  For an invertible input the result is upper triangular with positive
    diagonal and the entries above each diagonal entry lie in [0, diagonal).
    Rank-deficient inputs keep trailing zero rows.
    """
    rows = [[Fraction(x) for x in row] for row in m]
    if not rows:
        return ()
    nrows, ncols = len(rows), len(rows[0])
    d = lcm(*(x.denominator for row in rows for x in row)) if rows else 1
    work = [[int(x * d) for x in row] for row in rows]

    i = 0
    for j in range(ncols):
        if i >= nrows:
            break
        a = next((k for k in range(i, nrows) if work[k][j] != 0), None)
        if a is None:
            continue
        if a != i:
            work[i], work[a] = work[a], work[i]
        if work[i][j] < 0:
            work[i] = [-x for x in work[i]]
        # Euclidean elimination below the pivot.
        for k in range(i + 1, nrows):
            while work[k][j] != 0:
                x = work[i][j]
                y = work[k][j]
                q, r = divmod(y, x)
                if q == 0:
                    work[i], work[k] = work[k], work[i]
                    if work[i][j] < 0:
                        work[i] = [-v for v in work[i]]
                    continue
                work[k] = [kv - q * iv for kv, iv in zip(work[k], work[i])]
        # Reduce entries above the pivot (may not fully eliminate them).
        x = work[i][j]
        for k in range(i):
            q = work[k][j] // x
            if q != 0:
                work[k] = [kv - q * iv for kv, iv in zip(work[k], work[i])]
        i += 1

    return tuple(tuple(Fraction(x, d) for x in row) for row in work)


def integer_solve(m: Mat, rhs: Sequence):
    """Solve m @ x = rhs over the integers, or return None.

    Brute check used by tests: reduces to rational solve plus integrality for
    square invertible m; for general m uses echelon form of the transpose.
    """
    n = len(m)
    if n and len(m[0]) == n:
        try:
            x = solve(m, rhs)
        except SingularMatrixError:
            return None
        if all(Fraction(c).denominator == 1 for c in x):
            return tuple(int(c) for c in x)
        return None
    raise ValueError("integer_solve expects a square matrix")
