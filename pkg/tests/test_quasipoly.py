from fractions import Fraction as F
from itertools import product

import pytest

from vecpart.lattice import lattice_from_generators, standard_lattice
from vecpart.quasipoly import (
    Polynomial,
    QuasiPolynomial,
    add,
    bernoulli_sum,
    binomial_polynomial,
    coarsen,
    compress,
    eliminate_floor_linear,
    multiply_indicator,
    multiply_indicators,
    substitute_floor_argument,
)

Z2 = standard_lattice(2)


def L(*rows):
    return lattice_from_generators(rows)


def grid(radius=10, n=2):
    return list(product(range(-radius, radius + 1), repeat=n))


def floor_f(x):
    x = F(x)
    return x.numerator // x.denominator


# ---------------------------------------------------------------- polynomials
def test_polynomial_algebra():
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert p.evaluate((3, 2)) == 5
    q = p.substitute([x + Polynomial.constant(2, 1), y])
    assert q.evaluate((2, 2)) == p.evaluate((3, 2))
    assert (x ** 3).evaluate((2, 0)) == 8


def test_binomial_polynomial():
    lin = Polynomial.linear_form([1, 0])
    b = binomial_polynomial(lin, 3)  # binom(x+2, 2)
    for t in range(0, 8):
        from math import comb
        assert b.evaluate((t, 0)) == comb(t + 2, 2)
    assert binomial_polynomial(lin, 1) == Polynomial.constant(2, 1)


# ------------------------------------------------------------- bernoulli sums
def test_bernoulli_examples():
    b0 = bernoulli_sum(0)
    assert b0 == Polynomial(1, {(1,): 1, (0,): 1})  # X + 1
    b1 = bernoulli_sum(1)
    for X in range(0, 12):
        assert b1.evaluate((X,)) == X * (X + 1) // 2
    b2 = bernoulli_sum(2)
    for X in range(0, 21):
        assert b2.evaluate((X,)) == sum(t * t for t in range(X + 1))


@pytest.mark.parametrize("k", range(0, 7))
def test_bernoulli_difference_identity(k):
    bk = bernoulli_sum(k)
    assert bk.degree() == k + 1
    x = Polynomial.variable(1, 0)
    shifted = bk.substitute([x - Polynomial.constant(1, 1)])
    diff = bk - shifted
    assert diff == x ** k
    if k >= 1:
        assert bk.evaluate((-1,)) == 0
    # direct summation oracle
    for X in range(0, 15):
        assert bk.evaluate((X,)) == sum(t ** k for t in range(X + 1))


# ------------------------------------------------------------ quasipolynomial
def test_evaluate_examples():
    a2 = QuasiPolynomial.build(Z2, {(0, 0): Polynomial.linear_form([1, 0], 1)})
    assert a2.evaluate((1, 2)) == 2
    b2 = QuasiPolynomial.build(
        L((1, 0), (0, 2)),
        {(0, 0): Polynomial(2, {(2, 0): F(-1, 2), (1, 1): 1, (0, 2): F(-1, 4),
                                (1, 0): F(1, 2), (0, 1): F(1, 2), (0, 0): 1}),
         (0, 1): Polynomial(2, {(2, 0): F(-1, 2), (1, 1): 1, (0, 2): F(-1, 4),
                                (1, 0): F(1, 2), (0, 1): F(1, 2), (0, 0): F(3, 4)})})
    assert b2.evaluate((2, 3)) == 5
    assert QuasiPolynomial.zero(2).evaluate((5, 7)) == 0


def test_coarsen():
    q = QuasiPolynomial.build(Z2, {(0, 0): Polynomial.linear_form([1, 0], 1)})
    assert coarsen(q, Z2) == q
    fine = coarsen(q, L((2, 0), (0, 1)))
    assert len(fine.pieces) == 2
    for p in grid(5):
        assert fine.evaluate(p) == q.evaluate(p)


def test_add():
    lam = L((2, 0), (0, 1))
    q = QuasiPolynomial.build(lam, {(0, 0): Polynomial.linear_form([1, 0])})
    one = QuasiPolynomial.constant(2, 1)
    s = add(q, one)
    for p in grid(6):
        assert s.evaluate(p) == q.evaluate(p) + 1
    assert add(q, QuasiPolynomial.zero(2)) == q
    # commutative, associative after compress
    r = QuasiPolynomial.build(L((1, 0), (0, 3)), {(0, 1): Polynomial.constant(2, F(1, 3))})
    assert compress(add(q, r)) == compress(add(r, q))


def test_multiply_indicators():
    got = multiply_indicators((0, 0), Z2, (0, 0), Z2)
    assert got.evaluate((3, 4)) == 1
    # disjoint cosets
    lam = L((2, 0), (0, 2))
    got = multiply_indicators((1, 0), lam, (0, 0), lam)
    assert got.is_zero()
    # (2Z x Z) ∩ (Z x 2Z) = 2Z x 2Z
    got = multiply_indicators((0, 0), L((2, 0), (0, 1)), (0, 0), L((1, 0), (0, 2)))
    for p in grid(6):
        want = 1 if p[0] % 2 == 0 and p[1] % 2 == 0 else 0
        assert got.evaluate(p) == want
        assert got.evaluate(p) in (0, 1)


def test_eliminate_floor_linear_trivial():
    f = Polynomial(1, {(1,): 1, (0,): 1})  # f(T) = T + 1
    got = eliminate_floor_linear((0, 0), Z2, f, (1, 0), 0)
    for p in grid(6):
        assert got.evaluate(p) == p[0] + 1


def test_eliminate_floor_linear_worked_example():
    # lattice ((1,0),(0,2)), a = (0,1/2), c = -w/2 reproduces floor(x2/2)+1
    lam = L((1, 0), (0, 2))
    f = Polynomial(1, {(1,): 1, (0,): 1})
    total = {}
    for w in (0, 1):
        qp = eliminate_floor_linear((0, w), lam, f, (0, F(1, 2)), F(-w, 2))
        for shift, poly in qp.pieces:
            assert shift not in total
            total[shift] = poly
    assert total[(0, 0)] == Polynomial(2, {(0, 1): F(1, 2), (0, 0): 1})
    assert total[(0, 1)] == Polynomial(2, {(0, 1): F(1, 2), (0, 0): F(1, 2)})


def test_eliminate_floor_linear_grid_oracle():
    lam = L((1, 1), (0, 3))
    a = (F(2, 3), F(-1, 2))
    c = F(1, 5)
    f = Polynomial(1, {(2,): 1, (1,): -2, (0,): F(1, 2)})
    got = eliminate_floor_linear((1, 2), lam, f, a, c)
    for p in grid(7):
        direct = 0
        if lam.contains((p[0] - 1, p[1] - 2)):
            t = floor_f(a[0] * p[0] + a[1] * p[1] + c)
            direct = f.evaluate((t,))
        assert got.evaluate(p) == direct


def test_substitute_floor_argument_identity():
    q = QuasiPolynomial.build(L((1, 0), (0, 2)),
                              {(0, 1): Polynomial.linear_form([1, 2], 3)})
    got = substitute_floor_argument(q, (0, 0), 0, (1, 1))
    for p in grid(6):
        assert got.evaluate(p) == q.evaluate(p)


def test_substitute_floor_argument_worked_example():
    # S2 = P_Delta((x1,x2) - floor(<(-1,1),x> + 1) * (0,1)), the compression
    # example of the reference implementation
    lam = L((1, 0), (0, 2))
    q = QuasiPolynomial.build(lam, {
        (0, 0): Polynomial(2, {(0, 1): F(1, 2), (0, 0): 1}),
        (0, 1): Polynomial(2, {(0, 1): F(1, 2), (0, 0): F(1, 2)})})
    s2 = substitute_floor_argument(q, (-1, 1), 1, (0, 1))
    comp = compress(s2)
    pieces = dict(comp.pieces)
    assert comp.lattice == L((2, 0), (0, 1))
    assert pieces[(0, 0)] == Polynomial(2, {(1, 0): F(1, 2)})
    assert pieces[(1, 0)] == Polynomial(2, {(1, 0): F(1, 2), (0, 0): F(1, 2)})


def test_substitute_floor_argument_grid_oracle():
    lam = L((2, 0), (0, 2))
    q = QuasiPolynomial.build(lam, {
        (0, 0): Polynomial(2, {(1, 0): 1, (0, 0): 2}),
        (1, 1): Polynomial(2, {(0, 1): F(1, 2)})})
    b = (F(1, 2), F(-1, 3))
    c = F(2, 7)
    alpha = (1, 2)
    got = substitute_floor_argument(q, b, c, alpha)
    for p in grid(8):
        t = floor_f(b[0] * p[0] + b[1] * p[1] + c)
        direct = q.evaluate((p[0] - t * alpha[0], p[1] - t * alpha[1]))
        assert got.evaluate(p) == direct


def test_multiply_indicator_grid():
    q = QuasiPolynomial.build(Z2, {(0, 0): Polynomial.linear_form([1, 1], 1)})
    theta = L((3, 0), (0, 1))
    got = multiply_indicator(q, (1, 0), theta)
    for p in grid(7):
        want = q.evaluate(p) if theta.contains((p[0] - 1, p[1])) else 0
        assert got.evaluate(p) == want


def test_compress_examples():
    # constant over a sublattice of index 4 expressed on all cosets
    lam = L((2, 0), (0, 2))
    pieces = {rep: Polynomial.constant(2, 5)
              for rep in [(0, 0), (0, 1), (1, 0), (1, 1)]}
    q = QuasiPolynomial.build(lam, pieces)
    c = compress(q)
    assert c.lattice == Z2 and len(c.pieces) == 1
    # paper compression example: 8 pieces on ((2,0),(0,4)) -> 2 on ((2,0),(0,1))
    big = L((2, 0), (0, 4))
    half_x = Polynomial(2, {(1, 0): F(1, 2)})
    pieces = {}
    for j in range(4):
        pieces[(0, j)] = half_x + Polynomial.constant(2, 1)
        pieces[(1, j)] = half_x + Polynomial.constant(2, F(1, 2))
    q = QuasiPolynomial.build(big, pieces)
    c = compress(q)
    assert c.lattice == L((2, 0), (0, 1))
    assert dict(c.pieces)[(0, 0)] == half_x + Polynomial.constant(2, 1)
    assert dict(c.pieces)[(1, 0)] == half_x + Polynomial.constant(2, F(1, 2))
    assert compress(c) == c
    for p in grid(7):
        assert c.evaluate(p) == q.evaluate(p)


def test_compress_does_not_merge_unequal():
    lam = L((2, 0), (0, 1))
    q = QuasiPolynomial.build(lam, {
        (0, 0): Polynomial.constant(2, 1),
        (1, 0): Polynomial.constant(2, 2)})
    assert compress(q) == q


def test_coarsen_rejects_non_sublattice():
    from vecpart.lattice import NotSublatticeError

    q = QuasiPolynomial.build(L((2, 0), (0, 2)), {(0, 0): Polynomial.constant(2, 1)})
    with pytest.raises(NotSublatticeError):
        coarsen(q, Z2)
