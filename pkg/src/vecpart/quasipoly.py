"""Quasipolynomials: lattice-coset-indexed polynomials and their algebra.

Includes Bernoulli (Faulhaber) sums and the two floor-elimination
procedures that turn floor expressions of linear forms into quasipolynomial
data.  All coefficients are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .lattice import (
    Lattice,
    NotSublatticeError,
    coset_representatives,
    intersect,
    omega_sublattice,
    psi_sublattice,
    standard_lattice,
)
from .linalg import dot


class Polynomial:
    """Multivariate polynomial as a map exponent-tuple -> Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs: Sequence, const=0) -> "Polynomial":
        """c0 + sum coeffs[i] * x_i."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c != 0:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = Fraction(c)
        if const != 0:
            terms[(0,) * n] = Fraction(const)
        return cls(n, terms)

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Polynomial(self.nvars, terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) - c
        return Polynomial(self.nvars, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            terms: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    terms[e] = terms.get(e, Fraction(0)) + c1 * c2
            return Polynomial(self.nvars, terms)
        return Polynomial(self.nvars, {e: c * Fraction(other) for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- evaluation / substitution --------------------------------------
    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def substitute(self, replacements: Sequence["Polynomial"]) -> "Polynomial":
        """Simultaneous substitution x_i -> replacements[i]."""
        if len(replacements) != self.nvars:
            raise ValueError("need one replacement per variable")
        nv = replacements[0].nvars if replacements else self.nvars
        out = Polynomial.zero(nv)
        power_cache: list[dict] = [dict() for _ in range(self.nvars)]

        def power(i, k):
            if k == 0:
                return Polynomial.constant(nv, 1)
            got = power_cache[i].get(k)
            if got is None:
                got = power(i, k - 1) * replacements[i]
                power_cache[i][k] = got
            return got

        for e, c in self.terms.items():
            term = Polynomial.constant(nv, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def shift_argument(self, delta: Sequence) -> "Polynomial":
        """p(x - delta) as a polynomial in x."""
        repl = [Polynomial.linear_form([1 if j == i else 0 for j in range(self.nvars)], -Fraction(delta[i]))
                for i in range(self.nvars)]
        return self.substitute(repl)

    def extend(self, extra: int) -> "Polynomial":
        """Same polynomial viewed with extra trailing variables."""
        return Polynomial(self.nvars + extra, {e + (0,) * extra: c for e, c in self.terms.items()})

    def by_last_variable(self) -> dict[int, "Polynomial"]:
        """Split sum_k h_k(front vars) * last^k into {k: h_k}."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[-1]
            out.setdefault(k, {})[e[:-1]] = c
        return {k: Polynomial(self.nvars - 1, terms) for k, terms in out.items()}

    def substitute_last(self, value: "Polynomial") -> "Polynomial":
        """Replace the last variable by a polynomial in the front variables."""
        parts = self.by_last_variable()
        out = Polynomial.zero(self.nvars - 1)
        for k, h in parts.items():
            out = out + h * (value ** k)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
            mono = "*".join(f"x{i+1}^{k}" if k > 1 else f"x{i+1}" for i, k in enumerate(e) if k)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def binomial_polynomial(linear: Polynomial, m: int) -> Polynomial:
    """binom(linear + m - 1, m - 1) as a polynomial (empty product for m=1)."""
    out = Polynomial.constant(linear.nvars, 1)
    for j in range(1, m):
        out = out * (linear + Polynomial.constant(linear.nvars, j)) * Fraction(1, j)
    return out


def bernoulli_sum(k: int) -> Polynomial:
    """The degree-(k+1) polynomial B_k with B_k(X) = sum_{t=0}^X t^k.

    Determined by Lagrange interpolation through X = -1..k+1; in particular
    B_k(-1) = 0 (empty sum) and B_0(X) = X + 1.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    xs = list(range(-1, k + 2))
    ys = [Fraction(0)]  # X = -1: empty sum
    acc = Fraction(0)
    for x in range(0, k + 2):
        acc += Fraction(x) ** k  # 0**0 == 1, matching B_0(X) = X+1
        ys.append(acc)
    # Lagrange interpolation in one variable.
    X = Polynomial.variable(1, 0)
    total = Polynomial.zero(1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        num = Polynomial.constant(1, yi)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                num = num * (X - Polynomial.constant(1, xj))
                denom *= Fraction(xi - xj)
        total = total + num * (1 / denom)
    return total


@dataclass(frozen=True)
class QuasiPolynomial:
    """A lattice together with one polynomial per (stored) coset.

    Absent cosets mean the zero polynomial.  Keys are canonical
    representatives of Z^n modulo the lattice.
    """

    lattice: Lattice
    pieces: tuple  # tuple of (shift IntVec, Polynomial), canonically sorted

    @staticmethod
    def build(lattice: Lattice, pieces: Mapping) -> "QuasiPolynomial":
        canon = {}
        for shift, poly in pieces.items():
            if poly.is_zero():
                continue
            key = lattice.canonical_representative(shift)
            if key in canon:
                merged = canon[key] + poly
                if merged.is_zero():
                    del canon[key]
                else:
                    canon[key] = merged
            else:
                canon[key] = poly
        from .linalg import graded_colex_key
        ordered = tuple(sorted(canon.items(), key=lambda kv: graded_colex_key(kv[0])))
        return QuasiPolynomial(lattice, ordered)

    @staticmethod
    def zero(n: int) -> "QuasiPolynomial":
        return QuasiPolynomial.build(standard_lattice(n), {})

    @staticmethod
    def constant(n: int, c) -> "QuasiPolynomial":
        return QuasiPolynomial.build(standard_lattice(n), {(0,) * n: Polynomial.constant(n, c)})

    @property
    def dimension(self) -> int:
        return self.lattice.dimension

    def pieces_dict(self) -> dict:
        return dict(self.pieces)

    def is_zero(self) -> bool:
        return not self.pieces

    def evaluate(self, point: Sequence) -> Fraction:
        key = self.lattice.canonical_representative(point)
        for shift, poly in self.pieces:
            if shift == key:
                return poly.evaluate(point)
        return Fraction(0)

    def __str__(self):
        if not self.pieces:
            return "0"
        bits = [f"{poly}  on  {shift}+{self.lattice}" for shift, poly in self.pieces]
        return " | ".join(bits)


def coarsen(q: QuasiPolynomial, omega: Lattice) -> QuasiPolynomial:
    """Rewrite q over the sublattice omega (pointwise the same function)."""
    if not omega.is_sublattice_of(q.lattice):
        raise NotSublatticeError("can only coarsen to a sublattice")
    if omega == q.lattice:
        return q
    pieces = q.pieces_dict()
    out = {}
    for rep in coset_representatives(omega):
        key = q.lattice.canonical_representative(rep)
        poly = pieces.get(key)
        if poly is not None:
            out[rep] = poly
    return QuasiPolynomial.build(omega, out)


def add(q: QuasiPolynomial, p: QuasiPolynomial) -> QuasiPolynomial:
    """Pointwise sum, expressed over the intersection lattice."""
    if q.dimension != p.dimension:
        raise ValueError("dimension mismatch")
    if q.is_zero():
        return p
    if p.is_zero():
        return q
    common = intersect(q.lattice, p.lattice)
    qc = coarsen(q, common)
    pc = coarsen(p, common)
    out = qc.pieces_dict()
    for shift, poly in pc.pieces:
        if shift in out:
            out[shift] = out[shift] + poly
        else:
            out[shift] = poly
    return QuasiPolynomial.build(common, out)


def multiply_indicator(q: QuasiPolynomial, shift: Sequence, lat: Lattice) -> QuasiPolynomial:
    """Pointwise product of q with the indicator of shift+lat."""
    if q.is_zero():
        return q
    common = intersect(q.lattice, lat)
    pieces = q.pieces_dict()
    out = {}
    for rep in coset_representatives(common):
        if not lat.contains(tuple(a - b for a, b in zip(rep, shift))):
            continue
        poly = pieces.get(q.lattice.canonical_representative(rep))
        if poly is not None:
            out[rep] = poly
    return QuasiPolynomial.build(common, out)


def multiply_indicators(delta: Sequence, psi: Lattice, eps: Sequence, lam: Lattice) -> QuasiPolynomial:
    """Indicator of (delta+psi) ∩ (eps+lam) as a 0/1 quasipolynomial."""
    n = psi.dimension
    common = intersect(psi, lam)
    out = {}
    one = Polynomial.constant(n, 1)
    for rep in coset_representatives(common):
        if psi.contains(tuple(a - b for a, b in zip(rep, delta))) and \
           lam.contains(tuple(a - b for a, b in zip(rep, eps))):
            out[rep] = one
    return QuasiPolynomial.build(common, out)


def _floor_fraction(x) -> int:
    f = Fraction(x)
    return f.numerator // f.denominator


def eliminate_floor_poly(delta: Sequence, lam: Lattice, f_with_t: Polynomial,
                         a: Sequence, c) -> QuasiPolynomial:
    """Quasipolynomial equal to ι_{delta+lam}(γ) · F(γ, floor(<a,γ>+c)).

    F is an (n+1)-variable polynomial whose last variable is the floor
    argument.  On each coset μ+Ω of Ω = Ω(a, lam) the floor is the linear
    form <a,γ> - d with d = <a,μ> - floor(<a,μ>+c).
    """
    n = lam.dimension
    c = Fraction(c)
    omega = omega_sublattice(a, lam)
    out = {}
    for mu in coset_representatives(omega):
        if not lam.contains(tuple(m - d for m, d in zip(mu, delta))):
            continue
        am = Fraction(dot(a, mu))
        d = am - _floor_fraction(am + c)
        linear = Polynomial.linear_form([Fraction(x) for x in a], -d)
        poly = f_with_t.substitute_last(linear)
        if not poly.is_zero():
            out[mu] = out.get(mu, Polynomial.zero(n)) + poly
    return QuasiPolynomial.build(omega, out)


def eliminate_floor_linear(delta: Sequence, lam: Lattice, f: Polynomial,
                           a: Sequence, c) -> QuasiPolynomial:
    """Quasipolynomial equal to ι_{delta+lam}(γ) · f(floor(<a,γ>+c)).

    f is a univariate polynomial in the floor value.
    """
    if f.nvars != 1:
        raise ValueError("f must be univariate")
    n = lam.dimension
    lifted = Polynomial(n + 1, {(0,) * n + e: coeff for e, coeff in f.terms.items()})
    return eliminate_floor_poly(delta, lam, lifted, a, c)


def substitute_floor_argument(q: QuasiPolynomial, b: Sequence, c, alpha: Sequence) -> QuasiPolynomial:
    """Quasipolynomial equal to q(γ - floor(<b,γ>+c)·α).

    Follows the triple-indexed expansion over Ω(b,Λ), Ψ(b,α,Λ) and Λ, with
    the indicator products resolved coset by coset on Ω ∩ Ψ.
    """
    n = q.dimension
    c = Fraction(c)
    if all(Fraction(x) == 0 for x in b) and c >= 0 and c < 1:
        return q
    if q.is_zero():
        return q
    lam = q.lattice
    omega = omega_sublattice(b, lam)
    psi = psi_sublattice(b, alpha, lam, lam)
    fine = intersect(omega, psi)
    bf = [Fraction(x) for x in b]
    af = [Fraction(x) for x in alpha]
    out = {}
    for rep in coset_representatives(fine):
        mu = omega.canonical_representative(rep)
        d = Fraction(dot(bf, mu)) - _floor_fraction(Fraction(dot(bf, mu)) + c)
        nu = psi.canonical_representative(rep)
        s = Fraction(dot(bf, nu))
        for shift, poly in q.pieces:
            sigma = tuple(Fraction(sh) + (s - d) * a_i for sh, a_i in zip(shift, af))
            if not lam.contains(tuple(r - x for r, x in zip(rep, sigma))):
                continue
            # R_j(γ + (d - <b,γ>)·α)
            repl = []
            inner = Polynomial.linear_form(bf, -d)  # <b,γ> - d
            for t in range(n):
                base = Polynomial.variable(n, t)
                if af[t] != 0:
                    base = base - inner * af[t]
                repl.append(base)
            val = poly.substitute(repl)
            if not val.is_zero():
                out[rep] = out.get(rep, Polynomial.zero(n)) + val
    return QuasiPolynomial.build(fine, out)


def compress(q: QuasiPolynomial) -> QuasiPolynomial:
    """Merge cosets carrying translation-equal polynomial data.

    If shifting every piece by δ permutes the piece map, the lattice is
    refined to include δ and redundant pieces are dropped.  Idempotent.
    """
    from .lattice import lattice_from_generators

    current = q
    improved = True
    while improved:
        improved = False
        pieces = current.pieces_dict()
        if len(pieces) < 1:
            # canonical zero form
            if current.lattice != standard_lattice(current.dimension):
                return QuasiPolynomial.zero(current.dimension)
            return current
        shifts = list(pieces)
        lam = current.lattice
        reps_all = coset_representatives(lam)
        candidates = []
        for i in range(len(shifts)):
            for j in range(len(shifts)):
                if i != j and pieces[shifts[i]] == pieces[shifts[j]]:
                    candidates.append(tuple(a - b for a, b in zip(shifts[j], shifts[i])))
        seen = set()
        for delta in candidates:
            if delta in seen or lam.contains(delta):
                continue
            seen.add(delta)
            # translation-invariance of the whole piece map under delta
            ok = True
            for rep in reps_all:
                here = pieces.get(rep)
                there = pieces.get(lam.canonical_representative(tuple(r + d for r, d in zip(rep, delta))))
                if (here is None) != (there is None) or (here is not None and here != there):
                    ok = False
                    break
            if not ok:
                continue
            bigger = lattice_from_generators(lam.basis + (tuple(Fraction(x) for x in delta),))
            new_pieces = {}
            for rep in coset_representatives(bigger):
                poly = pieces.get(lam.canonical_representative(rep))
                if poly is not None:
                    new_pieces[rep] = poly
            current = QuasiPolynomial.build(bigger, new_pieces)
            improved = True
            break
    return current
