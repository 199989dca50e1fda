"""Partial fraction decomposition of vector partition generating functions.

The generating function 1/prod(1-x^alpha) is decomposed into fractions whose
denominator direction vectors are linearly independent (semi-reduced) and
carry a single scale per direction (fully reduced), by repeated application
of the generalized Szenes-Vergne identity and the geometric series formula.
Fully reduced fractions convert into per-cone quasipolynomial contributions
through the Brion-Vergne dual-basis formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .cones import chamber_from_generators
from .lattice import lattice_from_generators
from .linalg import (
    NotFullRankError,
    dot,
    graded_colex_key,
    invert,
    primitive,
    rank,
    row_echelon,
    transpose,
)
from .quasipoly import Polynomial, QuasiPolynomial, binomial_polynomial


class ZeroVectorError(ValueError):
    pass


class NegativeCoordinateError(ValueError):
    pass


class PoleAtPointError(ValueError):
    pass


class InvalidCombinationError(ValueError):
    pass


class LaurentPolynomial:
    """Laurent polynomial: map from integer exponent vector to Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def monomial(cls, exponent: Sequence, coeff=1) -> "LaurentPolynomial":
        return cls({tuple(exponent): Fraction(coeff)})

    @classmethod
    def one(cls, n: int) -> "LaurentPolynomial":
        return cls({(0,) * n: Fraction(1)})

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return LaurentPolynomial(terms)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return LaurentPolynomial(terms)

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"x{i+1}^{k}" for i, k in enumerate(e) if k)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


# A denominator key maps each direction to an ascending tuple of (scale b,
# multiplicity m) pairs; it is stored as a canonical sorted tuple so it can
# key a dict.
DenomKey = tuple  # tuple[(alpha, ((b, m), ...)), ...]


def make_key(entries: Mapping) -> DenomKey:
    items = []
    for alpha, pairs in entries.items():
        pairs = tuple(sorted((int(b), int(m)) for b, m in pairs if m > 0))
        if pairs:
            if any(b == 0 for b, _ in pairs):
                raise ValueError("zero scale in denominator")
            items.append((tuple(alpha), pairs))
    return tuple(sorted(items, key=lambda it: graded_colex_key(it[0])))


def key_directions(key: DenomKey) -> tuple:
    return tuple(alpha for alpha, _ in key)


def key_to_dict(key: DenomKey) -> dict:
    return {alpha: list(pairs) for alpha, pairs in key}


def multiplicity_tuple(key: DenomKey, delta_order: Sequence) -> tuple:
    """Per-direction total multiplicities in the fixed Delta order."""
    totals = {alpha: sum(m for _, m in pairs) for alpha, pairs in key}
    return tuple(totals.get(tuple(a), 0) for a in delta_order)


@dataclass
class PartialFractionSum:
    """Map from denominator structure to Laurent numerator."""

    delta: tuple  # graded-colex-sorted problem directions
    fractions: dict  # DenomKey -> LaurentPolynomial

    @property
    def dimension(self) -> int:
        return len(self.delta[0])

    def add_fraction(self, key: DenomKey, numer: LaurentPolynomial):
        if key in self.fractions:
            merged = self.fractions[key] + numer
            if merged.is_zero():
                del self.fractions[key]
            else:
                self.fractions[key] = merged
        elif not numer.is_zero():
            self.fractions[key] = numer

    def copy(self) -> "PartialFractionSum":
        return PartialFractionSum(self.delta, dict(self.fractions))


def generating_sum(delta: Iterable[Sequence]) -> PartialFractionSum:
    """The single fraction 1/prod_{alpha in Delta}(1 - x^alpha)."""
    vecs = [tuple(int(x) for x in v) for v in delta]
    if not vecs:
        raise NotFullRankError("empty direction set")
    n = len(vecs[0])
    for v in vecs:
        if all(x == 0 for x in v):
            raise ZeroVectorError(f"zero vector in Delta")
        if any(x < 0 for x in v):
            raise NegativeCoordinateError(f"negative coordinate in {v}")
    if rank(tuple(vecs)) < n:
        raise NotFullRankError("Delta does not span the space")
    ordered = tuple(sorted(vecs, key=graded_colex_key))
    entries: dict = {}
    for v in vecs:
        entries.setdefault(v, []).append((1, 0))
    key_map = {}
    for v, occurrences in entries.items():
        key_map[v] = [(1, len(occurrences))]
    key = make_key(key_map)
    return PartialFractionSum(ordered, {key: LaurentPolynomial.one(n)})


def geometric_numerator(k: int, exponent: Sequence) -> LaurentPolynomial:
    """g_k(x^alpha): numerator of 1/(1-x^alpha) over denominator 1-x^{k alpha}."""
    if k == 0:
        raise ValueError("k must be nonzero")
    n = len(exponent)
    terms = {}
    if k > 0:
        for t in range(k):
            e = tuple(t * x for x in exponent)
            terms[e] = terms.get(e, 0) + 1
    else:
        for t in range(1, -k + 1):
            e = tuple(-t * x for x in exponent)
            terms[e] = terms.get(e, 0) - 1
    return LaurentPolynomial(terms)


def szenes_vergne_apply(key: DenomKey, numer: LaurentPolynomial,
                        rhs: Sequence, target: tuple):
    """One application of the generalized Szenes-Vergne identity.

    rhs is a sequence of (alpha, b, a) with nonzero integer coefficients a,
    target is (alpha, b, a) with a > 0; the underlying identity is
    a_target*b_target*alpha_target = sum a_i * b_i * alpha_i.  Returns the
    list of (key, numerator) replacement fractions.
    """
    t_alpha, t_b, t_a = target
    if t_a == 0:
        raise InvalidCombinationError("target coefficient must be nonzero")
    if not rhs:
        raise InvalidCombinationError("empty combination")
    base = key_to_dict(key)

    def remove_entry(d, alpha, b):
        pairs = d[alpha]
        for idx, (bb, mm) in enumerate(pairs):
            if bb == b:
                if mm > 1:
                    pairs[idx] = (bb, mm - 1)
                else:
                    pairs.pop(idx)
                    if not pairs:
                        del d[alpha]
                return
        raise KeyError((alpha, b))

    def add_entry(d, alpha, b, m=1):
        pairs = d.setdefault(alpha, [])
        for idx, (bb, mm) in enumerate(pairs):
            if bb == b:
                pairs[idx] = (bb, mm + m)
                return
        pairs.append((b, m))

    # residual: every participant loses one power of its (b, m) entry
    for alpha, b, _a in rhs:
        remove_entry(base, tuple(alpha), b)
    # the new target factor
    add_entry(base, tuple(t_alpha), t_a * t_b)

    out = []
    l = len(rhs)
    for j in range(l):
        d = {a: list(p) for a, p in base.items()}
        carried = LaurentPolynomial.one(len(t_alpha))
        for i in range(l):
            alpha_i, b_i, a_i = rhs[i]
            delta_i = tuple(b_i * x for x in alpha_i)
            if i < j:
                carried = carried * LaurentPolynomial.monomial(tuple(a_i * x for x in delta_i))
                add_entry(d, tuple(alpha_i), b_i)
            elif i == j:
                carried = carried * geometric_numerator(a_i, delta_i)
            else:
                add_entry(d, tuple(alpha_i), b_i)
        out.append((make_key(d), numer * carried))
    return out


def _is_semi_reduced(key: DenomKey, n: int) -> bool:
    dirs = key_directions(key)
    return len(dirs) == n and rank(dirs) == n


def decompose_semi_reduced(s: PartialFractionSum) -> PartialFractionSum:
    """Transform into a sum whose fractions all have independent spanning
    denominator directions, by repeated Szenes-Vergne applications."""
    n = s.dimension
    result = PartialFractionSum(s.delta, {})
    work = dict(s.fractions)
    while work:
        key = min(work, key=_key_sort_key)
        numer = work.pop(key)
        if numer.is_zero():
            continue
        dirs = sorted(key_directions(key), key=graded_colex_key)
        if len(dirs) < n:
            raise NotFullRankError("fraction directions stopped spanning the space")
        if _is_semi_reduced(key, n):
            result.add_fraction(key, numer)
            continue
        # smallest dependent prefix
        prefix = []
        s_idx = None
        for idx, alpha in enumerate(dirs):
            prefix.append(alpha)
            if rank(tuple(prefix)) < len(prefix):
                s_idx = idx
                break
        assert s_idx is not None
        prefix_dirs = dirs[: s_idx + 1]
        entry_for = dict(key)
        betas = []
        for alpha in prefix_dirs:
            b_hi, _m_hi = entry_for[alpha][-1]
            betas.append((alpha, b_hi))
        # dependency coefficients c with sum c_i * beta_i = 0
        beta_rows = tuple(tuple(b * x for x in alpha) for alpha, b in betas)
        kern = row_echelon(transpose(beta_rows))[1]
        assert len(kern) == 1
        coeffs = list(kern[0])
        t_idx = next(i for i, c in enumerate(coeffs) if c != 0)
        # relation: c_t * beta_t = -sum_{i>t} c_i * beta_i
        a_vals = [None] * len(coeffs)
        a_vals[t_idx] = coeffs[t_idx]
        for i in range(t_idx + 1, len(coeffs)):
            a_vals[i] = -coeffs[i]
        scaled = primitive([a_vals[i] if a_vals[i] is not None else 0 for i in range(len(coeffs))])
        if scaled[t_idx] < 0:
            scaled = tuple(-x for x in scaled)
        target = (betas[t_idx][0], betas[t_idx][1], int(scaled[t_idx]))
        rhs = [(betas[i][0], betas[i][1], int(scaled[i]))
               for i in range(t_idx + 1, len(coeffs)) if scaled[i] != 0]
        old_tuple = multiplicity_tuple(key, s.delta)
        for new_key, new_numer in szenes_vergne_apply(key, numer, rhs, target):
            new_tuple = multiplicity_tuple(new_key, s.delta)
            assert new_tuple > old_tuple, "multiplicity tuple must increase lexicographically"
            if new_key in work:
                merged = work[new_key] + new_numer
                if merged.is_zero():
                    del work[new_key]
                else:
                    work[new_key] = merged
            elif not new_numer.is_zero():
                work[new_key] = new_numer
    return result


def _key_sort_key(key: DenomKey):
    return tuple((graded_colex_key(alpha), pairs) for alpha, pairs in key)


def reduce_fully(s: PartialFractionSum) -> PartialFractionSum:
    """Merge per-direction scales to a single lcm scale per direction."""
    n = s.dimension
    result = PartialFractionSum(s.delta, {})
    for key, numer in s.fractions.items():
        d = key_to_dict(key)
        extra = LaurentPolynomial.one(n)
        new_d = {}
        for alpha, pairs in d.items():
            if len(pairs) == 1:
                new_d[alpha] = pairs
                continue
            big = lcm(*(abs(b) for b, _ in pairs))
            total_m = 0
            for b, m in pairs:
                c = big // b  # sign folds in: b may be negative
                if c != 1:
                    g = geometric_numerator(c, tuple(b * x for x in alpha))
                    for _ in range(m):
                        extra = extra * g
                total_m += m
            new_d[alpha] = [(big, total_m)]
        result.add_fraction(make_key(new_d), numer * extra)
    return result


def is_fully_reduced(s: PartialFractionSum) -> bool:
    n = s.dimension
    for key in s.fractions:
        if not _is_semi_reduced(key, n):
            return False
        if any(len(pairs) != 1 for _, pairs in key):
            return False
    return True


def evaluate_fraction(key: DenomKey, numer: LaurentPolynomial, point: Sequence) -> Fraction:
    denom = Fraction(1)
    for alpha, pairs in key:
        for b, m in pairs:
            factor = Fraction(1)
            mono = Fraction(1)
            for x, e in zip(point, alpha):
                mono *= Fraction(x) ** (b * e)
            factor = 1 - mono
            if factor == 0:
                raise PoleAtPointError(f"pole at {point} for direction {alpha} scale {b}")
            denom *= factor ** m
    return numer.evaluate(point) / denom


def numeric_check(s: PartialFractionSum, point: Sequence) -> Fraction:
    """Exact value of the sum at a pole-free rational point."""
    total = Fraction(0)
    for key, numer in s.fractions.items():
        total += evaluate_fraction(key, numer, point)
    return total


@dataclass(frozen=True)
class ReducedFraction:
    """A fully reduced fraction prepared for quasipolynomial extraction.

    directions are the scale-folded vectors beta_i = b_i * alpha_i (graded
    colex sorted), duals their dual basis, multiplicities the denominator
    exponents, numerator the attached Laurent polynomial.
    """

    directions: tuple
    duals: tuple
    multiplicities: tuple
    numerator: LaurentPolynomial

    @property
    def dimension(self) -> int:
        return len(self.directions[0])


def brion_vergne(key: DenomKey, numer: LaurentPolynomial) -> ReducedFraction:
    """Dual data of a fully reduced fraction (the xi-operator ingredients)."""
    entries = []
    for alpha, pairs in key:
        if len(pairs) != 1:
            raise ValueError("fraction is not fully reduced")
        b, m = pairs[0]
        entries.append((tuple(b * x for x in alpha), m))
    entries.sort(key=lambda em: graded_colex_key(em[0]))
    betas = tuple(e for e, _ in entries)
    mults = tuple(m for _, m in entries)
    n = len(betas[0])
    if len(betas) != n or rank(betas) != n:
        raise NotFullRankError("directions of a fully reduced fraction must form a basis")
    duals = transpose(invert(betas))  # row i is the dual vector of beta_i
    return ReducedFraction(directions=betas, duals=tuple(duals), multiplicities=mults, numerator=numer)


def fraction_to_quasipoly(rf: ReducedFraction):
    """Cone, lattice and quasipolynomial contribution of a reduced fraction.

    The value at γ is  sum over numerator monomials coeff · x^δ  of
    ι_{δ+Λ(β)}(γ) · prod_i binom(<β*_i, γ-δ> + m_i - 1, m_i - 1); the cone
    indicator ι_C is intentionally dropped (the caller only applies the
    formula inside the cone).
    """
    n = rf.dimension
    cone = chamber_from_generators(rf.directions)
    lat = lattice_from_generators(rf.directions)
    pieces: dict = {}
    for delta, coeff in rf.numerator.terms.items():
        poly = Polynomial.constant(n, coeff)
        for beta_dual, m in zip(rf.duals, rf.multiplicities):
            if m > 1:
                shift = -Fraction(dot(beta_dual, delta))
                linear = Polynomial.linear_form([Fraction(x) for x in beta_dual], shift)
                poly = poly * binomial_polynomial(linear, m)
        key = lat.canonical_representative(delta)
        pieces[key] = pieces.get(key, Polynomial.zero(n)) + poly
    qp = QuasiPolynomial.build(lat, pieces)
    return cone, lat, qp


def decompose(delta: Iterable[Sequence]):
    """Full pipeline: initial sum, semi-reduced, fully reduced."""
    start = generating_sum(delta)
    semi = decompose_semi_reduced(start)
    full = reduce_fully(semi)
    return start, semi, full
