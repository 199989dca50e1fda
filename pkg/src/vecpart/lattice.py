"""Full-rank lattices in Q^n.

A lattice is stored by the canonical basis matrix produced by integral
Gaussian elimination, so two lattices are equal iff their stored bases are.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .linalg import (
    Mat,
    NotFullRankError,
    Vec,
    dot,
    integral_gaussian_eliminate,
    invert,
    mat_vec,
    transpose,
    graded_colex_key,
)


class NotIntegerSublatticeError(ValueError):
    """Raised when coset enumeration is asked for a lattice not inside Z^n."""


class DegenerateDirectionError(ValueError):
    """Raised by the Psi construction when the direction vector is zero."""


class NotSublatticeError(ValueError):
    """Raised when an operation requires one lattice to contain the other."""


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice given by its canonically reduced basis rows."""

    basis: Mat
    _inverse: Mat = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_inverse", invert(self.basis))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coefficients(self, v: Sequence) -> Vec:
        """Coordinates of v in this basis (v = coeffs @ basis)."""
        return mat_vec(transpose(self._inverse), v)

    def contains(self, v: Sequence) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coefficients(v))

    def is_sublattice_of(self, other: "Lattice") -> bool:
        return all(other.contains(row) for row in self.basis)

    def is_integer(self) -> bool:
        return all(Fraction(x).denominator == 1 for row in self.basis for x in row)

    def determinant_abs(self):
        d = Fraction(1)
        for i in range(self.dimension):
            d *= self.basis[i][i]
        return abs(d)

    def canonical_representative(self, v: Sequence) -> Vec:
        """Unique coset representative with i-th coordinate in [0, diag_i).

        Requires an integer lattice and integer v; reduces v against the
        upper-triangular canonical basis column by column.
        """
        if not self.is_integer():
            raise NotIntegerSublatticeError("canonical representatives need a lattice inside Z^n")
        out = [int(x) for x in v]
        n = self.dimension
        for j in range(n):
            dj = int(self.basis[j][j])
            q = out[j] // dj
            if q:
                for c in range(j, n):
                    out[c] -= q * int(self.basis[j][c])
        return tuple(out)

    def __str__(self):
        rows = ", ".join("(" + ", ".join(str(x) for x in row) + ")" for row in self.basis)
        return f"Lattice[{rows}]"


def lattice_from_rows(rows: Mat) -> Lattice:
    """Canonicalize a square full-rank generator matrix into a Lattice."""
    reduced = integral_gaussian_eliminate(rows)
    if any(all(x == 0 for x in row) for row in reduced):
        raise NotFullRankError("generators do not span the space")
    return Lattice(reduced)


def lattice_from_generators(vectors: Iterable[Sequence]) -> Lattice:
    """Lattice generated by the given (possibly redundant) vectors."""
    rows = tuple(tuple(Fraction(x) for x in v) for v in vectors)
    if not rows:
        raise NotFullRankError("no generators")
    n = len(rows[0])
    reduced = integral_gaussian_eliminate(rows)
    nonzero = tuple(row for row in reduced if any(x != 0 for x in row))
    if len(nonzero) < n:
        raise NotFullRankError(f"generators span a rank-{len(nonzero)} subspace of Q^{n}")
    return Lattice(nonzero)


def standard_lattice(n: int) -> Lattice:
    return Lattice(tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)))


def dual(lat: Lattice) -> Lattice:
    """Dual lattice {γ : <γ, λ> in Z for all λ in the lattice}."""
    return lattice_from_rows(transpose(invert(lat.basis)))


def refine(a: Lattice, b: Lattice) -> Lattice:
    """Smallest lattice containing both (generated by the union of bases)."""
    return lattice_from_generators(a.basis + b.basis)


def intersect(a: Lattice, b: Lattice) -> Lattice:
    """Largest lattice contained in both, via <Λ*,Ψ*>*."""
    return dual(refine(dual(a), dual(b)))


def contains(lat: Lattice, v: Sequence) -> bool:
    return lat.contains(v)


def coset_representatives(lat: Lattice) -> tuple[Vec, ...]:
    """Canonical representatives of Z^n / lattice, graded-colex sorted.

    The lattice must be an integer sublattice of Z^n; there are exactly
    |det(basis)| representatives, one per coset, each with coordinate i in
    [0, diagonal_i).
    """
    if not lat.is_integer():
        raise NotIntegerSublatticeError("coset enumeration needs a lattice inside Z^n")
    diag = [int(lat.basis[i][i]) for i in range(lat.dimension)]
    reps = [()]
    for d in diag:
        reps = [r + (k,) for r in reps for k in range(d)]
    return tuple(sorted(reps, key=graded_colex_key))


def omega_sublattice(a: Sequence, lat: Lattice) -> Lattice:
    """Ω(a, Λ) = {γ in Λ : <a, γ> in Z}.

    Computed by appending a to the dual basis, reducing, dropping the zero
    row, and dualizing back.
    """
    m = dual(lat).basis + (tuple(Fraction(x) for x in a),)
    reduced = integral_gaussian_eliminate(m)
    last = reduced[-1]
    if any(x != 0 for x in last):
        raise NotFullRankError("internal error: appended row did not reduce to zero")
    return lattice_from_rows(tuple(transpose(invert(reduced[:-1]))))


def psi_sublattice(b: Sequence, alpha: Sequence, lat: Lattice, theta: Lattice) -> Lattice:
    """Ψ(b, α, Λ, Θ) = {γ in Θ : <b, γ> · α in Λ}.

    Writing ν for the coefficients of α in Λ's basis, the condition is that
    <b, γ> is a multiple of q/p with q = lcm of the denominators of ν and
    p = gcd of the numerators, i.e. Ψ = Ω((p/q)·b, Θ).
    """
    if all(x == 0 for x in alpha):
        raise DegenerateDirectionError("direction vector must be nonzero")
    nu = [Fraction(c) for c in lat.coefficients(alpha)]
    q = lcm(*(c.denominator for c in nu))
    p = gcd(*(c.numerator for c in nu))
    scaled_b = tuple(Fraction(p, q) * Fraction(x) for x in b)
    return omega_sublattice(scaled_b, theta)
