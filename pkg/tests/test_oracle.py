import random
from itertools import product

from vecpart.oracle import count_partitions, count_partitions_box


def brute(delta, gamma, bound=25):
    # explicit enumeration of coefficient tuples
    def rec(i, rest):
        if i == len(delta):
            return 1 if all(x == 0 for x in rest) else 0
        total = 0
        t = 0
        while True:
            nxt = tuple(r - t * a for r, a in zip(rest, delta[i]))
            if any(x < 0 for x in nxt):
                break
            total += rec(i + 1, nxt)
            t += 1
        return total

    return rec(0, tuple(gamma))


def test_examples():
    a2 = [(1, 0), (0, 1), (1, 1)]
    assert count_partitions(a2, (1, 2)) == 2
    assert count_partitions(a2, (0, 0)) == 1
    g2 = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
    assert count_partitions(g2, (5, 3)) == 16
    assert count_partitions(g2, (5, 2)) == 10
    assert count_partitions(a2, (-1, 2)) == 0


def test_against_explicit_enumeration():
    rng = random.Random(3)
    for _ in range(8):
        delta = [(rng.randint(0, 2), rng.randint(0, 2)) for _ in range(4)]
        delta = [d for d in delta if d != (0, 0)] or [(1, 0)]
        gamma = (rng.randint(0, 6), rng.randint(0, 6))
        assert count_partitions(delta, gamma) == brute(delta, gamma)


def test_permutation_invariance():
    delta = [(1, 0), (0, 1), (1, 1), (1, 2)]
    g = (4, 5)
    want = count_partitions(delta, g)
    assert count_partitions(list(reversed(delta)), g) == want


def test_monotone_in_delta():
    small = [(1, 0), (0, 1)]
    big = small + [(1, 1)]
    for p in product(range(5), repeat=2):
        assert count_partitions(big, p) >= count_partitions(small, p)


def test_ray_recursion():
    delta = [(1, 0), (0, 1), (1, 1), (1, 2)]
    gamma = (5, 6)
    total = 0
    t = 0
    while 5 - t >= 0 and 6 - 2 * t >= 0:
        total += count_partitions(delta[:-1], (5 - t, 6 - 2 * t))
        t += 1
    assert count_partitions(delta, gamma) == total


def test_box_table_consistency():
    delta = [(1, 0), (0, 1), (1, 1)]
    table = count_partitions_box(delta, (6, 6))
    for p, v in table.items():
        assert v == count_partitions(delta, p)
