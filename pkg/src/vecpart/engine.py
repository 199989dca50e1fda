"""End-to-end vector partition function computation.

Two independent pipelines produce per-chamber quasipolynomials: the partial
fraction route (decompose the generating function, convert each reduced
fraction, sum the fractions whose cone contains the chamber) and the
elementary route (inductive Bernoulli summation over a complex kept normal
with respect to each direction in turn).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .complexes import (
    ChamberComplex,
    chambers_amalgamated,
    chambers_arbitrary,
    chambers_proper,
    initial_support_complex,
    reorder_independent_first,
    subdivide_direction,
)
from .cones import Chamber, chamber_from_generators, exit_wall
from .lattice import Lattice, lattice_from_generators, standard_lattice
from .linalg import dot, graded_colex_key
from .oracle import count_partitions_box
from .partfrac import decompose, fraction_to_quasipoly, brion_vergne, numeric_check
from .quasipoly import (
    Polynomial,
    QuasiPolynomial,
    add,
    bernoulli_sum,
    compress,
    eliminate_floor_poly,
    multiply_indicator,
    substitute_floor_argument,
)


class InternalInconsistencyError(RuntimeError):
    """A computed evaluation violated non-negativity or integrality."""


class UnsupportedRootSystemError(ValueError):
    pass


STRATEGIES = ("arbitrary", "proper", "amalgamated")
ALGORITHMS = ("pf", "elementary")


def root_system(name: str, rank_: Optional[int] = None) -> tuple:
    """Positive roots in simple-root coordinates, graded-colex sorted.

    Accepts "B3" or ("B", 3).  Supported: A1..A6, B2..B5, C2..C5, D3..D5,
    G2, F4 (matching the reference tables for A2..A4, B2, B3, C2, C3, G2).
    """
    name = name.strip()
    if rank_ is None:
        family, rank_ = name[0].upper(), int(name[1:])
    else:
        family = name[0].upper()
    n = rank_

    def chain(i, j, n):  # alpha_i + ... + alpha_j as a coordinate vector
        return tuple(1 if i <= k <= j else 0 for k in range(n))

    roots: list = []
    if family == "A" and 1 <= n <= 6:
        roots = [chain(i, j, n) for i in range(n) for j in range(i, n)]
    elif family == "B" and 2 <= n <= 5:
        roots = [chain(i, j, n) for i in range(n) for j in range(i, n)]
        for i in range(n):
            for j in range(i + 1, n):
                roots.append(tuple(
                    (1 if i <= k < j else 0) + (2 if j <= k else 0) for k in range(n)))
    elif family == "C" and 2 <= n <= 5:
        roots = [chain(i, j, n) for i in range(n) for j in range(i, n)]
        for i in range(n - 1):
            roots.append(tuple((2 if i <= k < n - 1 else 0) + (1 if k == n - 1 else 0)
                               for k in range(n)))
        for i in range(n - 1):
            for j in range(i + 1, n - 1):
                roots.append(tuple(
                    (1 if i <= k < j else 0) + (2 if j <= k < n - 1 else 0) +
                    (1 if k == n - 1 else 0) for k in range(n)))
    elif family == "D" and 3 <= n <= 5:
        # e_i - e_j, e_i + e_j in the Bourbaki simple-root coordinates
        for i in range(n - 1):
            for j in range(i, n - 1):
                roots.append(chain(i, j, n))
        roots.append(tuple(1 if k == n - 1 else 0 for k in range(n)))
        for i in range(n - 2):
            roots.append(tuple((1 if i <= k <= n - 3 else 0) + (1 if k == n - 1 else 0)
                               for k in range(n)))
        for i in range(n - 2):
            for j in range(i + 1, n - 1):
                roots.append(tuple(
                    (1 if i <= k < j else 0) + (2 if j <= k <= n - 3 else 0) +
                    (1 if k >= n - 2 else 0) for k in range(n)))
    elif family == "G" and n == 2:
        roots = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
    elif family == "F" and n == 4:
        roots = [(1,0,0,0),(0,1,0,0),(0,0,1,0),(0,0,0,1),
                 (1,1,0,0),(0,1,1,0),(0,0,1,1),
                 (1,1,1,0),(0,1,2,0),(0,1,1,1),
                 (1,1,2,0),(1,1,1,1),(0,1,2,1),
                 (1,2,2,0),(1,1,2,1),(0,1,2,2),
                 (1,2,2,1),(1,1,2,2),
                 (1,2,3,1),(1,2,2,2),
                 (1,2,3,2),
                 (1,2,4,2),
                 (1,3,4,2),
                 (2,3,4,2)]
    else:
        raise UnsupportedRootSystemError(f"unsupported root system {family}{n}")
    out = sorted(set(roots), key=graded_colex_key)
    if len(out) != len(roots):
        raise AssertionError("duplicate roots generated")
    return tuple(out)


@dataclass
class VpfResult:
    delta: tuple
    complex: ChamberComplex
    formulas: dict  # chamber id -> QuasiPolynomial
    algorithm: str  # "pf" | "elementary"
    strategy: str   # "arbitrary" | "proper" | "amalgamated"

    @property
    def dimension(self) -> int:
        return len(self.delta[0])


def _build_complex(delta, strategy: str) -> ChamberComplex:
    if strategy == "arbitrary":
        return chambers_arbitrary(delta)
    if strategy == "proper":
        return chambers_proper(delta)
    if strategy == "amalgamated":
        return chambers_amalgamated(delta)
    raise ValueError(f"unknown strategy {strategy!r}")


def compute_pf(delta: Sequence, strategy: str = "proper",
               check_points: int = 3, seed: int = 7) -> VpfResult:
    """Per-chamber quasipolynomials via partial fraction decomposition.

    A fully reduced fraction contributes to a chamber iff the chamber's
    internal point lies in the cone of the fraction's denominator
    directions; contributions are evaluated with the cone indicator
    dropped, which is valid inside that cone.
    """
    delta = tuple(tuple(int(x) for x in v) for v in delta)
    cx = _build_complex(delta, strategy)
    start, semi, full = decompose(delta)
    if check_points:
        _assert_substitution_identity(start, semi, full, check_points, seed)
    contributions = []
    for key, numer in sorted(full.fractions.items()):
        rf = brion_vergne(key, numer)
        cone, lat, qp = fraction_to_quasipoly(rf)
        contributions.append((cone, qp))
    formulas = {}
    for cid in cx.ids():
        point = cx.chambers[cid].internal_point()
        parts = [qp for cone, qp in contributions if cone.contains(point)]
        formulas[cid] = _sum_quasipolynomials(parts, len(delta[0]))
    return VpfResult(delta=delta, complex=cx, formulas=formulas,
                     algorithm="pf", strategy=strategy)


# compress is cosmetic; skip it for formulas whose coset structure is huge
COMPRESS_PIECE_LIMIT = 600


def _sum_quasipolynomials(parts, n: int) -> QuasiPolynomial:
    """Sum by coarsening every part once to the common intersection lattice
    (cheaper than cascading pairwise additions)."""
    from .lattice import intersect as lat_intersect
    from .quasipoly import coarsen

    parts = [p for p in parts if not p.is_zero()]
    if not parts:
        return QuasiPolynomial.zero(n)
    if len(parts) == 1:
        return compress(parts[0])
    common = parts[0].lattice
    for p in parts[1:]:
        if p.lattice != common:
            common = lat_intersect(common, p.lattice)
    merged: dict = {}
    for p in parts:
        for shift, poly in coarsen(p, common).pieces:
            if shift in merged:
                merged[shift] = merged[shift] + poly
            else:
                merged[shift] = poly
    total = QuasiPolynomial.build(common, merged)
    if len(total.pieces) > COMPRESS_PIECE_LIMIT:
        return total
    return compress(total)


def _assert_substitution_identity(start, semi, full, npoints: int, seed: int):
    import random

    rng = random.Random(seed)
    n = start.dimension
    done = 0
    attempts = 0
    while done < npoints:
        attempts += 1
        if attempts > 100 * npoints:
            raise RuntimeError("could not find pole-free check points")
        point = tuple(Fraction(rng.randint(2, 19), rng.randint(23, 41)) for _ in range(n))
        try:
            v0 = numeric_check(start, point)
            v1 = numeric_check(semi, point)
            v2 = numeric_check(full, point)
        except Exception:
            continue
        if not (v0 == v1 == v2):
            raise InternalInconsistencyError(
                f"substitution identity failed at {point}: {v0} vs {v1} vs {v2}")
        done += 1


def _min_scale_into_lattice(alpha, lat: Lattice) -> int:
    """Smallest a > 0 with a*alpha in the lattice."""
    coeffs = lat.coefficients(alpha)
    return lcm(*(Fraction(c).denominator for c in coeffs))


def _direct_sum_nonzero(q_gamma: QuasiPolynomial, alpha, b1) -> QuasiPolynomial:
    """sum_{t=0}^{floor(<gamma,b1>/<alpha,b1>)} P_Gamma(gamma - t*alpha)
    for a quasipolynomial P_Gamma, via Bernoulli sums and floor elimination."""
    n = q_gamma.dimension
    lam = q_gamma.lattice
    denom = Fraction(dot(alpha, b1))
    a_step = _min_scale_into_lattice(alpha, lam)
    a_vec = tuple(Fraction(x) / (a_step * denom) for x in b1)
    total = QuasiPolynomial.zero(n)
    alpha_f = [Fraction(x) for x in alpha]
    bern_cache: dict[int, Polynomial] = {}
    for w in range(a_step):
        for shift, poly in q_gamma.pieces:
            # expand poly(gamma - (a*u + w) * alpha) in powers of u (last var)
            step = Polynomial.linear_form([0] * n + [Fraction(a_step)], Fraction(w))
            repl = []
            for t in range(n):
                base = Polynomial.variable(n + 1, t)
                if alpha_f[t]:
                    base = base - step * alpha_f[t]
                repl.append(base)
            repl.append(Polynomial.variable(n + 1, n))  # u stays u
            expanded = poly.extend(1).substitute(repl)
            # sum over u = 0..U: replace u^k by B_k(T), then eliminate the floor
            f_with_t = Polynomial.zero(n + 1)
            for k, h in expanded.by_last_variable().items():
                bk = bern_cache.get(k)
                if bk is None:
                    bk = bernoulli_sum(k)
                    bern_cache[k] = bk
                lifted_bk = Polynomial(n + 1, {(0,) * n + e: c for e, c in bk.terms.items()})
                f_with_t = f_with_t + h.extend(1) * lifted_bk
            delta_shift = tuple(int(s) + w * int(a) for s, a in zip(shift, alpha))
            term = eliminate_floor_poly(delta_shift, lam, f_with_t, a_vec, Fraction(-w, a_step))
            total = add(total, term)
    return total


def compute_elementary(delta: Sequence, strategy: str = "proper") -> VpfResult:
    """Per-chamber quasipolynomials by the inductive elementary algorithm.

    Maintains a complex covering C(Delta) that is re-subdivided to be normal
    with respect to each added vector; each chamber's new formula combines a
    Bernoulli direct sum with the alternating tail over its exit-wall chain.
    The strategy argument does not alter the internal subdivision (normality
    is required), so the result is tagged with the complex actually built.
    """
    delta = tuple(tuple(int(x) for x in v) for v in delta)
    ordered = reorder_independent_first(delta)
    n = len(ordered[0])
    base = tuple(ordered[:n])

    cx = initial_support_complex(ordered)
    base_cone = chamber_from_generators(base)
    base_lat = lattice_from_generators(base)
    formulas: dict[int, QuasiPolynomial] = {}
    for cid in cx.ids():
        if cx.chambers[cid].walls == base_cone.walls:
            formulas[cid] = QuasiPolynomial.build(
                base_lat, {(0,) * n: Polynomial.constant(n, 1)})
        else:
            formulas[cid] = QuasiPolynomial.zero(n)
    if not any(not q.is_zero() for q in formulas.values()):
        raise AssertionError("base cone not found in initial subdivision")

    for k in range(n, len(ordered)):
        alpha = ordered[k]
        lineage = subdivide_direction(cx, alpha, proper=False)
        # transfer formulas to subdivision pieces
        changed = True
        while changed:
            changed = False
            for old, news in lineage.items():
                if old in formulas:
                    val = formulas.pop(old)
                    for nid in news:
                        formulas[nid] = val
                    changed = True
        for cid in cx.ids():
            if cid not in formulas:
                raise AssertionError(f"lost formula for chamber {cid}")

        # process chambers so that each chain is computed before its upstream
        new_formulas: dict[int, QuasiPolynomial] = {}
        order = _chain_order(cx, alpha)
        for cid in order:
            chamber = cx.chambers[cid]
            b1 = exit_wall(chamber, alpha)
            if b1 is None:
                raise InternalInconsistencyError(
                    f"chamber {cid} is not normal w.r.t. {alpha}")
            denom = Fraction(dot(alpha, b1))
            chain = _chain_of(cx, cid, alpha)
            # direct part
            q_gamma = formulas[cid]
            if q_gamma.is_zero():
                if chain:
                    next_gamma = formulas[chain[0]]
                    b_hat = tuple(Fraction(x) / denom for x in b1)
                    direct = substitute_floor_argument(next_gamma, b_hat, Fraction(0), alpha)
                    theta = _theta_lattice(b_hat, n)
                    direct = multiply_indicator(direct, (0,) * n, theta)
                else:
                    direct = QuasiPolynomial.zero(n)
            else:
                direct = _direct_sum_nonzero(q_gamma, alpha, b1)
            # alternating tail over the chain of already-computed new formulas
            total = direct
            prev_wall = b1
            for next_id in chain:
                q_next = new_formulas[next_id]
                b_prev = tuple(Fraction(x) / Fraction(dot(alpha, prev_wall)) for x in prev_wall)
                term_in = substitute_floor_argument(q_next, b_prev, Fraction(1), alpha)
                total = add(total, term_in)
                next_wall = exit_wall(cx.chambers[next_id], alpha)
                b_next = tuple(Fraction(x) / Fraction(dot(alpha, next_wall)) for x in next_wall)
                term_out = substitute_floor_argument(q_next, b_next, Fraction(1), alpha)
                total = add(total, QuasiPolynomial.build(
                    term_out.lattice,
                    {s: -p for s, p in term_out.pieces}))
                prev_wall = next_wall
            new_formulas[cid] = compress(total)
        formulas = new_formulas

    result_cx = cx
    return VpfResult(delta=delta, complex=result_cx, formulas=formulas,
                     algorithm="elementary", strategy="arbitrary")


def _theta_lattice(b_hat, n: int) -> Lattice:
    """{gamma in Z^n : <b_hat, gamma> in Z}."""
    from .lattice import omega_sublattice
    return omega_sublattice(b_hat, standard_lattice(n))


def _chain_of(cx: ChamberComplex, cid: int, alpha) -> list:
    """Ids of the chambers an exiting ray visits after leaving cid."""
    chain = []
    seen = {cid}
    current = cid
    while True:
        wall = exit_wall(cx.chambers[current], alpha)
        neighbors = cx.neighbor_set(current, wall)
        if len(neighbors) > 1:
            raise InternalInconsistencyError(
                f"chamber {current} has several neighbors across its exit wall")
        if not neighbors:
            return chain
        nxt = next(iter(neighbors))
        if nxt in seen:
            raise InternalInconsistencyError("cycle in exit-wall chain")
        seen.add(nxt)
        chain.append(nxt)
        current = nxt


def _chain_order(cx: ChamberComplex, alpha) -> list:
    """Chamber ids ordered so exit-wall chains come before their upstreams."""
    order = []
    state: dict[int, int] = {}

    def visit(cid):
        if state.get(cid) == 2:
            return
        if state.get(cid) == 1:
            raise InternalInconsistencyError("cycle in exit-wall dependencies")
        state[cid] = 1
        wall = exit_wall(cx.chambers[cid], alpha)
        if wall is not None:
            for nxt in cx.neighbor_set(cid, wall):
                visit(nxt)
        state[cid] = 2
        order.append(cid)

    for cid in cx.ids():
        visit(cid)
    return order


def evaluate_result(result: VpfResult, gamma: Sequence) -> int:
    """P_Delta(gamma) from the result's chamber formulas.

    Chambers with a non-zero formula are preferred for boundary points
    (zero formulas are only interior-valid); returns 0 when no chamber
    contains the point.  The value is checked to be a non-negative integer.
    """
    gamma = tuple(int(g) for g in gamma)
    best = None
    for cid in result.complex.ids():
        if result.complex.chambers[cid].contains(gamma):
            q = result.formulas.get(cid)
            if q is not None and not q.is_zero():
                best = q
                break
            if best is None:
                best = q
    if best is None or best.is_zero():
        return 0
    value = best.evaluate(gamma)
    if value.denominator != 1 or value < 0:
        raise InternalInconsistencyError(
            f"evaluation at {gamma} gave {value}, not a non-negative integer")
    return int(value)


def verify_against_oracle(result: VpfResult, box: int):
    """Compare evaluate_result with brute-force counting on a grid.

    Returns (number of points checked, first mismatch or None).
    """
    n = result.dimension
    table = count_partitions_box(result.delta, (box,) * n)
    checked = 0
    for point, want in sorted(table.items()):
        got = evaluate_result(result, point)
        checked += 1
        if got != want:
            return checked, (point, got, want)
    return checked, None
