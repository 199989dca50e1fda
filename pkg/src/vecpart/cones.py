"""Pointed polyhedral cones (chambers) with normalized walls and vertices.

A chamber is the solution set of homogeneous inequalities <wall, x> >= 0.
Walls and vertices are primitive integer vectors; walls carry no redundant
inequality and are sorted in graded colexicographic order, which makes the
wall tuple a canonical key for the cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .linalg import (
    NotFullRankError,
    Vec,
    dot,
    graded_colex_key,
    primitive,
    rank,
    row_echelon,
)

IntVec = tuple


@dataclass(frozen=True)
class Chamber:
    """Full-dimensional pointed cone with canonical walls and vertices."""

    walls: tuple
    vertices: tuple
    id: int = -1

    @property
    def dimension(self) -> int:
        return len(self.walls[0]) if self.walls else len(self.vertices[0])

    def contains(self, point: Sequence) -> bool:
        return all(dot(w, point) >= 0 for w in self.walls)

    def strictly_contains(self, point: Sequence) -> bool:
        return all(dot(w, point) > 0 for w in self.walls)

    def internal_point(self) -> Vec:
        """Sum of the vertices, rescaled to primitive integer coordinates."""
        acc = [0] * self.dimension
        for v in self.vertices:
            acc = [a + b for a, b in zip(acc, v)]
        return primitive(acc)

    def same_cone(self, other: "Chamber") -> bool:
        return self.walls == other.walls

    def __str__(self):
        return f"Chamber#{self.id}(walls={self.walls})"


def vertices_from_normals(walls: Sequence) -> tuple:
    """All normalized vertices of the cone cut out by the given walls.

    For every (n-1)-subset of walls whose common kernel is a line, the
    primitive generator is oriented to have non-negative products with all
    walls and kept if no product is negative.
    """
    if not walls:
        raise ValueError("need at least one wall")
    n = len(walls[0])
    found = []
    seen = set()
    for subset in combinations(walls, n - 1):
        if subset:
            kern = row_echelon(subset)[1]
        else:  # n == 1: no constraints, the kernel is the whole line
            kern = (tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
            kern = tuple(kern)
        if len(kern) != 1:
            continue
        v = primitive(kern[0])
        products = [dot(v, w) for w in walls]
        if any(p < 0 for p in products):
            v = tuple(-x for x in v)
            products = [-p for p in products]
        if any(p < 0 for p in products):
            continue
        if v not in seen:
            seen.add(v)
            found.append(v)
    return tuple(sorted(found, key=graded_colex_key))


def normals_from_generators(generators: Sequence) -> tuple:
    """Normalized walls of the cone generated by the given vectors.

    The generators must span the whole space.  Candidate normals come from
    (n-1)-subsets spanning a hyperplane; a candidate survives if every
    generator lies on one side, and is oriented inward.
    """
    gens = tuple(tuple(g) for g in generators)
    if not gens:
        raise NotFullRankError("no generators")
    n = len(gens[0])
    if rank(gens) < n:
        raise NotFullRankError("generators do not span the space")
    walls = []
    seen = set()
    for subset in combinations(gens, n - 1):
        if subset:
            kern = row_echelon(subset)[1]
        else:  # n == 1
            kern = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        if len(kern) != 1:
            continue
        m = primitive(kern[0])
        products = [dot(g, m) for g in gens]
        if any(p > 0 for p in products) and any(p < 0 for p in products):
            continue
        if any(p < 0 for p in products):
            m = tuple(-x for x in m)
        if m in seen:
            continue
        seen.add(m)
        walls.append(m)
    return tuple(sorted(walls, key=graded_colex_key))


_normalize_cache: dict = {}


def chamber_from_walls(walls: Iterable, chamber_id: int = -1) -> Optional[Chamber]:
    """Normalize an inequality list into a canonical Chamber.

    Returns None when the inequalities cut out a lower-dimensional set (the
    vertices fail to span).  Redundant inequalities are dropped by the
    vertex/normal round trip.
    """
    key = tuple(sorted(set(tuple(w) for w in walls)))
    cached = _normalize_cache.get(key)
    if cached is None:
        verts = vertices_from_normals(key)
        n = len(key[0])
        if len(verts) < n or rank(verts) < n:
            cached = (None, None)
        else:
            norm_walls = normals_from_generators(verts)
            cached = (norm_walls, vertices_from_normals(norm_walls))
        _normalize_cache[key] = cached
    if cached[0] is None:
        return None
    return Chamber(walls=cached[0], vertices=cached[1], id=chamber_id)


def chamber_from_generators(generators: Iterable, chamber_id: int = -1) -> Chamber:
    """Canonical chamber generated by the given full-rank vector set."""
    walls = normals_from_generators(tuple(tuple(g) for g in generators))
    return Chamber(walls=walls, vertices=vertices_from_normals(walls), id=chamber_id)


def splits_chamber(chamber: Chamber, a: Sequence) -> bool:
    """True iff the plane with normal a cuts the chamber into two full cones."""
    has_pos = has_neg = False
    for v in chamber.vertices:
        p = dot(a, v)
        if p > 0:
            has_pos = True
        elif p < 0:
            has_neg = True
        if has_pos and has_neg:
            return True
    return False


def split_by_plane(chamber: Chamber, a: Sequence):
    """Split a chamber by the plane with normal a.

    Returns None when all vertices lie on one closed side; otherwise the
    pair (plus, minus) of normalized chambers with the extra inequality
    <a,x> >= 0 resp. <-a,x> >= 0.
    """
    if all(x == 0 for x in a):
        raise ValueError("zero normal")
    a = primitive(a)
    if not splits_chamber(chamber, a):
        return None
    neg = tuple(-x for x in a)
    plus = chamber_from_walls(chamber.walls + (a,))
    minus = chamber_from_walls(chamber.walls + (neg,))
    if plus is None or minus is None:
        raise AssertionError("strictly split chamber produced a degenerate piece")
    return plus, minus


def is_normal_wrt(chamber: Chamber, direction: Sequence) -> bool:
    """True iff exactly one wall has positive product with the direction."""
    if all(x == 0 for x in direction):
        raise ValueError("zero direction")
    count = sum(1 for w in chamber.walls if dot(w, direction) > 0)
    return count == 1


def exit_wall(chamber: Chamber, direction: Sequence):
    """The unique wall with positive product with direction, or None."""
    positives = [w for w in chamber.walls if dot(w, direction) > 0]
    return positives[0] if len(positives) == 1 else None


def normally_separated(c: Chamber, d: Chamber) -> bool:
    """Normal separation test for two vertex-generated chambers.

    Either they share a wall plane (a wall a of c, -a of d) and every vertex
    of c on that plane is a vertex of d (and symmetrically), or two linearly
    independent vectors are >= 0 on all of c and <= 0 on all of d.
    """
    # Shared-wall alternative.
    d_wall_set = set(d.walls)
    for a in c.walls:
        if tuple(-x for x in a) in d_wall_set:
            c_on = [v for v in c.vertices if dot(a, v) == 0]
            d_on = [v for v in d.vertices if dot(a, v) == 0]
            if all(v in d.vertices for v in c_on) and all(v in c.vertices for v in d_on):
                return True
    # Two-independent-separators alternative; candidates are walls of c and
    # negated walls of d, which is enough for cones touching in rank < n-1.
    separators = []
    for a in c.walls:
        if all(dot(a, v) <= 0 for v in d.vertices):
            separators.append(a)
    for a in d.walls:
        na = tuple(-x for x in a)
        if all(dot(na, v) >= 0 for v in c.vertices):
            separators.append(na)
    return bool(separators) and rank(tuple(separators)) >= 2
