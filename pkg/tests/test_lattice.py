from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vecpart.linalg import NotFullRankError, determinant, dot
from vecpart.lattice import (
    DegenerateDirectionError,
    NotIntegerSublatticeError,
    Lattice,
    coset_representatives,
    dual,
    intersect,
    lattice_from_generators,
    omega_sublattice,
    psi_sublattice,
    refine,
    standard_lattice,
)

Z2 = standard_lattice(2)


def L(*rows):
    return lattice_from_generators(rows)


def box_points(radius=6, n=2):
    return list(product(range(-radius, radius + 1), repeat=n))


def members(lat, radius=6):
    return {p for p in box_points(radius, lat.dimension) if lat.contains(p)}


def test_from_generators_examples():
    assert L((1, 0), (0, 1)) == Z2
    assert L((2, 0), (0, 2), (1, 1)).basis == ((F(1), F(1)), (F(0), F(2)))
    with pytest.raises(NotFullRankError):
        lattice_from_generators([(1, 1)])


def test_from_generators_membership_oracle():
    # two generator sets of the same lattice coincide structurally
    a = L((2, 0), (0, 2), (1, 1))
    b = L((1, 1), (1, -1))
    assert a == b
    want = {p for p in box_points() if (p[0] + p[1]) % 2 == 0}
    assert members(a) == want


def test_dual_examples():
    assert dual(Z2) == Z2
    d = dual(L((2, 0), (0, 1)))
    assert d.basis == ((F(1, 2), F(0)), (F(0), F(1)))
    # definition check on generators
    for gen in L((2, 0), (0, 1)).basis:
        for row in d.basis:
            assert F(dot(row, gen)).denominator == 1


def test_refine_examples():
    a = L((2, 0), (0, 2))
    assert refine(a, a) == a
    got = refine(a, L((1, 1), (0, 2)))
    # membership oracle: smallest lattice containing both generator sets
    gens = [(2, 0), (0, 2), (1, 1)]
    combos = {tuple(sum(c * g[i] for c, g in zip(cs, gens)) for i in range(2))
              for cs in product(range(-4, 5), repeat=3)}
    assert members(got, 4) == {p for p in box_points(4) if p in combos}
    assert refine(L((2, 0), (0, 2)), Z2) == Z2


def test_intersect_examples():
    a = L((2, 0), (0, 1))
    b = L((1, 0), (0, 3))
    got = intersect(a, b)
    assert members(got) == members(a) & members(b)
    assert intersect(Z2, L((2, 0), (0, 2))) == L((2, 0), (0, 2))
    assert intersect(a, a) == a


def test_contains_examples():
    assert Z2.contains((3, -5))
    assert not L((2, 0), (0, 2)).contains((1, 1))
    assert L((1, 1), (0, 2)).contains((2, 4))


def test_coset_representatives_examples():
    assert coset_representatives(Z2) == ((0, 0),)
    assert coset_representatives(L((1, 0), (0, 2))) == ((0, 0), (0, 1))
    reps = coset_representatives(L((2, 0), (0, 4)))
    assert len(reps) == 8
    assert set(reps) == {(i, j) for i in range(2) for j in range(4)}
    with pytest.raises(NotIntegerSublatticeError):
        coset_representatives(L((F(1, 2), 0), (0, 1)))


def test_coset_representatives_pairwise_distinct():
    lat = L((1, 1), (0, 3))
    reps = coset_representatives(lat)
    assert len(reps) == int(lat.determinant_abs())
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert not lat.contains((a[0] - b[0], a[1] - b[1]))
    # every box point congruent to exactly one representative
    for p in box_points(4):
        hits = [r for r in reps if lat.contains((p[0] - r[0], p[1] - r[1]))]
        assert len(hits) == 1
        assert lat.canonical_representative(p) == hits[0]


def test_omega_examples():
    assert omega_sublattice((0, 0), L((1, 1), (0, 2))) == L((1, 1), (0, 2))
    assert omega_sublattice((F(1, 2), 0), Z2) == L((2, 0), (0, 1))
    got = omega_sublattice((F(1, 2), F(1, 2)), Z2)
    assert got == L((1, 1), (0, 2))
    # definition filter on a box
    want = {p for p in box_points() if F(p[0] + p[1], 2).denominator == 1}
    assert members(got) == want


def test_psi_examples():
    lam = L((1, 0), (0, 2))
    got = psi_sublattice((1, 0), (0, 1), lam, Z2)
    assert got == L((2, 0), (0, 1))
    # definition filter: gamma in Z^2 with <b,gamma>*alpha in lam
    want = {p for p in box_points() if lam.contains((0, p[0]))}
    assert members(got) == want
    # b = 0 makes the condition vacuous
    assert psi_sublattice((0, 0), (0, 1), lam, Z2) == Z2
    with pytest.raises(DegenerateDirectionError):
        psi_sublattice((1, 0), (0, 0), lam, Z2)


def test_psi_is_sublattice_of_theta():
    theta = L((1, 1), (0, 2))
    got = psi_sublattice((F(1, 3), F(1, 2)), (2, 1), L((3, 0), (0, 3)), theta)
    assert got.is_sublattice_of(theta)
    for p in box_points(6):
        if got.contains(p):
            s = F(1, 3) * p[0] + F(1, 2) * p[1]
            assert L((3, 0), (0, 3)).contains((2 * s, s))


small = st.integers(min_value=-3, max_value=3)

full_rank_2x2 = lambda: st.tuples(st.tuples(small, small), st.tuples(small, small)).filter(
    lambda rows: determinant(rows) != 0)


@given(full_rank_2x2(), full_rank_2x2())
@settings(max_examples=40, deadline=None)
def test_lattice_algebra_properties(r1, r2):
    a = lattice_from_generators(r1)
    b = lattice_from_generators(r2)
    assert dual(dual(a)) == a
    meet = intersect(a, b)
    join = refine(a, b)
    assert meet.is_sublattice_of(a) and meet.is_sublattice_of(b)
    assert a.is_sublattice_of(join) and b.is_sublattice_of(join)
    assert refine(a, b) == refine(b, a)
    assert intersect(a, b) == intersect(b, a)


@given(full_rank_2x2())
@settings(max_examples=30, deadline=None)
def test_omega_box_oracle(rows):
    lam_rows = tuple(tuple(2 * x for x in r) for r in rows)
    lam = lattice_from_generators(lam_rows)
    a = (F(1, 2), F(1, 3))
    om = omega_sublattice(a, lam)
    for p in box_points(5):
        in_om = om.contains(p)
        direct = lam.contains(p) and F(a[0] * p[0] + a[1] * p[1]).denominator == 1
        assert in_om == direct
