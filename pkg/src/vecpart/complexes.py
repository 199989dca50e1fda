"""Chamber complexes: normally separated collections of cones with neighbor
maps, directional subdivision, and amalgamation.

The complex is the mutable state shared by the subdivision algorithms; all
chambers live in the non-negative orthant, and every public operation leaves
the collection normally separated (each wall has at most one true neighbor,
sharing the full wall).
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .cones import (
    Chamber,
    chamber_from_generators,
    chamber_from_walls,
    splits_chamber,
    vertices_from_normals,
)
from .linalg import (
    NotFullRankError,
    dot,
    graded_colex_key,
    primitive,
    rank,
    row_echelon,
)


class BadSubdivisionError(ValueError):
    pass


class NotRefinedError(ValueError):
    """Amalgamation input is not sufficiently refined by Delta."""


class SubdivisionStuckError(RuntimeError):
    """The subdivision queue stopped making progress (internal error)."""


class ChamberComplex:
    """Mutable collection of chambers with per-wall neighbor sets."""

    def __init__(self):
        self.chambers: dict[int, Chamber] = {}
        self.neighbors: dict[int, dict[tuple, set[int]]] = {}
        self.next_id = 1

    def fresh_id(self) -> int:
        i = self.next_id
        self.next_id += 1
        return i

    def add(self, chamber: Chamber, neighbor_map: Optional[dict] = None) -> int:
        cid = chamber.id if chamber.id >= 0 else self.fresh_id()
        if chamber.id < 0:
            chamber = Chamber(chamber.walls, chamber.vertices, cid)
        self.chambers[cid] = chamber
        self.neighbors[cid] = neighbor_map or {}
        self.next_id = max(self.next_id, cid + 1)
        return cid

    def ids(self):
        return sorted(self.chambers)

    def neighbor_set(self, cid: int, wall) -> set:
        return self.neighbors.get(cid, {}).get(tuple(wall), set())

    def copy(self) -> "ChamberComplex":
        out = ChamberComplex()
        out.chambers = dict(self.chambers)
        out.neighbors = {cid: {w: set(ns) for w, ns in m.items()} for cid, m in self.neighbors.items()}
        out.next_id = self.next_id
        return out

    def check_normally_separated(self) -> bool:
        from .cones import normally_separated
        ids = self.ids()
        for a, b in combinations(ids, 2):
            ca, cb = self.chambers[a], self.chambers[b]
            shared = set(ca.walls) & {tuple(-x for x in w) for w in cb.walls}
            if shared and not normally_separated(ca, cb):
                return False
        return True


def _mirror(wall):
    return tuple(-x for x in wall)


def extend_to_normal(cx: ChamberComplex, replaced_id: int, pieces: Sequence[Chamber],
                     piece_neighbors: dict) -> dict:
    """Replace a chamber by a subdivision and restore normal separation.

    pieces must tile the replaced chamber with disjoint interiors;
    piece_neighbors holds the neighbor sets within the piece collection.
    Maintains conservative neighbor upper bounds, prunes extraneous entries,
    and splits chambers that stopped being normally separated.  Returns a
    map old_id -> [new piece ids] covering every chamber that was replaced
    (including chambers split during the extension).
    """
    if replaced_id not in cx.chambers:
        raise BadSubdivisionError(f"unknown chamber {replaced_id}")
    split_map: dict[int, list[int]] = {}

    old_nb = cx.neighbors.pop(replaced_id)
    del cx.chambers[replaced_id]
    piece_ids = []
    for p in pieces:
        cx.chambers[p.id] = p
        piece_ids.append(p.id)
        m = {tuple(w): set(ns) for w, ns in piece_neighbors.get(p.id, {}).items()}
        for w in p.walls:
            inherited = old_nb.get(w)
            if inherited:
                m.setdefault(w, set()).update(inherited)
        cx.neighbors[p.id] = m
    split_map[replaced_id] = list(piece_ids)

    def remap_references(dead_id: int, new_chambers: Sequence[Chamber]):
        by_wall: dict[tuple, list[int]] = {}
        for p in new_chambers:
            for w in p.walls:
                by_wall.setdefault(w, []).append(p.id)
        for cid, nbmap in cx.neighbors.items():
            for wall, ns in nbmap.items():
                if dead_id in ns:
                    ns.discard(dead_id)
                    for pid in by_wall.get(_mirror(wall), ()):
                        if pid != cid:
                            ns.add(pid)

    remap_references(replaced_id, pieces)

    def try_actions(cid: int) -> bool:
        """One prune or split around chamber cid; True if anything changed."""
        c = cx.chambers[cid]
        nbmap = cx.neighbors[cid]
        for wall in sorted(nbmap, key=graded_colex_key):
            entries = nbmap[wall]
            if len(entries) <= 1:
                continue
            for eid in sorted(entries):
                e = cx.chambers[eid]
                mirrored = _mirror(wall)
                for beta in e.vertices:
                    if dot(beta, wall) != 0:
                        continue
                    for b in e.walls:
                        if b == mirrored or b == wall:
                            continue
                        if dot(b, beta) != 0:
                            continue
                        minus = chamber_from_walls(c.walls + (_mirror(b),))
                        if minus is not None and minus.walls == c.walls:
                            entries.discard(eid)
                            cx.neighbor_set(eid, mirrored).discard(cid)
                            return True
                        if splits_chamber(c, b):
                            _split_in_place(cx, cid, b, split_map)
                            return True
        return False

    while True:
        acted = False
        for cid in sorted(cx.chambers):
            if any(len(ns) > 1 for ns in cx.neighbors[cid].values()):
                if try_actions(cid):
                    acted = True
                    break
        if not acted:
            break
    return split_map


def _split_in_place(cx: ChamberComplex, cid: int, plane, split_map: dict):
    """Split chamber cid by the plane, updating neighbor upper bounds."""
    c = cx.chambers.pop(cid)
    old_nb = cx.neighbors.pop(cid)
    plane = primitive(plane)
    plus = chamber_from_walls(c.walls + (plane,), cx.fresh_id())
    minus = chamber_from_walls(c.walls + (_mirror(plane),), cx.fresh_id())
    if plus is None or minus is None:
        raise AssertionError("split plane did not produce two full pieces")
    cx.chambers[plus.id] = plus
    cx.chambers[minus.id] = minus
    m_plus: dict = {plane: {minus.id}}
    m_minus: dict = {_mirror(plane): {plus.id}}
    for w in plus.walls:
        if w != plane and w in old_nb:
            m_plus.setdefault(w, set()).update(old_nb[w])
    for w in minus.walls:
        if w != _mirror(plane) and w in old_nb:
            m_minus.setdefault(w, set()).update(old_nb[w])
    cx.neighbors[plus.id] = m_plus
    cx.neighbors[minus.id] = m_minus
    by_wall: dict[tuple, list[int]] = {}
    for p in (plus, minus):
        for w in p.walls:
            by_wall.setdefault(w, []).append(p.id)
    for other, nbmap in cx.neighbors.items():
        if other in (plus.id, minus.id):
            continue
        for wall, ns in nbmap.items():
            if cid in ns:
                ns.discard(cid)
                for pid in by_wall.get(_mirror(wall), ()):
                    ns.add(pid)
    # record lineage, collapsing chains
    for old, news in list(split_map.items()):
        if cid in news:
            news.remove(cid)
            news.extend([plus.id, minus.id])
            break
    else:
        split_map[cid] = [plus.id, minus.id]


def directional_walls(c_walls_i, c_walls_j, nu):
    """c_{i,j} = b_j/<nu,b_j> - b_i/<nu,b_i>, primitive."""
    pi = Fraction(dot(nu, c_walls_i))
    pj = Fraction(dot(nu, c_walls_j))
    vec = tuple(Fraction(bj) / pj - Fraction(bi) / pi for bi, bj in zip(c_walls_i, c_walls_j))
    return primitive(vec)


def spanned_hyperplane_normals(delta: Sequence) -> frozenset:
    """Primitive normals (sign-canonical) of hyperplanes spanned by
    (n-1)-subsets of delta."""
    vecs = tuple(tuple(v) for v in delta)
    n = len(vecs[0])
    out = set()
    for subset in combinations(set(vecs), n - 1):
        if subset:
            kern = row_echelon(subset)[1]
        else:
            kern = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        if len(kern) != 1:
            continue
        m = primitive(kern[0])
        out.add(_sign_canonical(m))
    return frozenset(out)


def _sign_canonical(v):
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _chamber_in_cone(chamber: Chamber, cone_walls) -> bool:
    return all(all(dot(w, v) >= 0 for v in chamber.vertices) for w in cone_walls)


def _combinatorially_separates(piece_a: Chamber, piece_b: Chamber, subset_cones) -> bool:
    """True when some Delta-subset cone contains one piece but not the other."""
    for walls in subset_cones:
        if _chamber_in_cone(piece_a, walls) != _chamber_in_cone(piece_b, walls):
            return True
    return False


def subdivide_direction(cx: ChamberComplex, nu: Sequence, proper: bool = False,
                        spanned: Optional[frozenset] = None,
                        subset_cones=None) -> dict:
    """Subdivide the complex so every chamber has a unique exit wall along nu.

    In proper mode only splitting planes spanned by (n-1)-subsets of Delta
    are used (`spanned` holds their sign-canonical primitive normals), a
    split must combinatorially separate its two pieces (when `subset_cones`
    is given), and chambers with no usable plane are left as they are.
    Returns a lineage map old_id -> [replacement ids].
    """
    lineage: dict[int, list[int]] = {}
    queue = deque(sorted(cx.chambers))
    refined: set[int] = set()
    stall = 0
    while queue:
        cid = queue.popleft()
        if cid not in cx.chambers:
            continue
        c = cx.chambers[cid]
        pos = [w for w in c.walls if dot(w, nu) > 0]
        if not pos:
            raise AssertionError(f"chamber {cid} has no exit wall along {nu}")
        waiting = any(nid not in refined and nid in cx.chambers
                      for w in pos for nid in cx.neighbor_set(cid, w))
        if waiting:
            queue.append(cid)
            stall += 1
            if stall > len(queue) + 2:
                raise SubdivisionStuckError(f"deferral cycle while subdividing along {nu}")
            continue
        stall = 0
        if len(pos) == 1:
            refined.add(cid)
            continue

        if proper:
            plane = plus = minus = None
            for bi, bj in combinations(pos, 2):
                cand = directional_walls(bi, bj, nu)
                if _sign_canonical(cand) not in spanned or not splits_chamber(c, cand):
                    continue
                cand_plus = chamber_from_walls(c.walls + (cand,))
                cand_minus = chamber_from_walls(c.walls + (_mirror(cand),))
                # splitting is only useful when the two pieces can carry
                # different formulas, i.e. some Delta-subset cone contains
                # one piece but not the other
                if subset_cones is not None and not _combinatorially_separates(
                        cand_plus, cand_minus, subset_cones):
                    continue
                plane, plus, minus = cand, cand_plus, cand_minus
                break
            if plane is None:
                refined.add(cid)
                continue
            plus = Chamber(plus.walls, plus.vertices, cx.fresh_id())
            minus = Chamber(minus.walls, minus.vertices, cx.fresh_id())
            pieces = [plus, minus]
            piece_nb = {plus.id: {plane: {minus.id}},
                        minus.id: {_mirror(plane): {plus.id}}}
        else:
            pieces = []
            piece_walls = {}
            for i, bi in enumerate(pos):
                extra = tuple(directional_walls(bi, bj, nu) for j, bj in enumerate(pos) if j != i)
                piece = chamber_from_walls(c.walls + extra, -1)
                if piece is not None:
                    piece = Chamber(piece.walls, piece.vertices, cx.fresh_id())
                    pieces.append(piece)
                    piece_walls[i] = piece
            piece_nb: dict = {p.id: {} for p in pieces}
            for i, bi in enumerate(pos):
                for j, bj in enumerate(pos):
                    if j <= i or i not in piece_walls or j not in piece_walls:
                        continue
                    cij = directional_walls(bi, bj, nu)
                    di, dj = piece_walls[i], piece_walls[j]
                    if cij in di.walls and _mirror(cij) in dj.walls:
                        piece_nb[di.id].setdefault(cij, set()).add(dj.id)
                        piece_nb[dj.id].setdefault(_mirror(cij), set()).add(di.id)
            if not pieces:
                raise AssertionError("directional subdivision produced no pieces")

        split_map = extend_to_normal(cx, cid, pieces, piece_nb)
        for old, news in split_map.items():
            lineage.setdefault(old, []).extend(news)
            live = [nid for nid in news if nid in cx.chambers]
            if old in refined:
                # pieces of an already-refined chamber stay refined; they are
                # only ever cut by planes orthogonal to nu
                refined.discard(old)
                refined.update(live)
            else:
                queue.extend(live)
    return lineage


def initial_complex(generators: Sequence) -> ChamberComplex:
    """Complex containing the single cone generated by the given vectors."""
    cx = ChamberComplex()
    c = chamber_from_generators(generators)
    cx.add(Chamber(c.walls, c.vertices, cx.fresh_id()))
    return cx


def split_complex_by_plane(cx: ChamberComplex, plane) -> dict:
    """Split every chamber of the complex by a global hyperplane."""
    plane = primitive(plane)
    lineage: dict[int, list[int]] = {}
    for cid in list(cx.chambers):
        if cid not in cx.chambers:
            continue
        c = cx.chambers[cid]
        if not splits_chamber(c, plane):
            continue
        plus = chamber_from_walls(c.walls + (plane,), cx.fresh_id())
        minus = chamber_from_walls(c.walls + (_mirror(plane),), cx.fresh_id())
        piece_nb = {plus.id: {plane: {minus.id}},
                    minus.id: {_mirror(plane): {plus.id}}}
        split_map = extend_to_normal(cx, cid, [plus, minus], piece_nb)
        for old, news in split_map.items():
            lineage.setdefault(old, []).extend(news)
    return lineage


def reorder_independent_first(delta: Sequence) -> tuple:
    """Stable reorder moving the earliest independent n-subset to the front."""
    vecs = [tuple(v) for v in delta]
    n = len(vecs[0])
    front = []
    rest = []
    for v in vecs:
        if len(front) < n and rank(tuple(front) + (v,)) == len(front) + 1:
            front.append(v)
        else:
            rest.append(v)
    if len(front) < n:
        raise NotFullRankError("Delta does not span the space")
    return tuple(front + rest)


def initial_support_complex(ordered: Sequence) -> ChamberComplex:
    """The support cone C(Delta) sliced by the hyperplanes spanned by
    (n-1)-subsets of the first n (independent) vectors.

    The cone generated by the first n vectors is one of the cells, which is
    what the inductive formula construction needs; when the first n vectors
    already generate C(Delta) (as for root systems) nothing is sliced.
    """
    n = len(ordered[0])
    cx = initial_complex(ordered)
    for subset in combinations(ordered[:n], n - 1):
        if subset:
            kern = row_echelon(subset)[1]
        else:
            kern = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        if len(kern) != 1:
            continue
        split_complex_by_plane(cx, primitive(kern[0]))
    return cx


def chambers_arbitrary(delta: Sequence) -> ChamberComplex:
    """Chambers of quasipolynomiality via full directional subdivision."""
    ordered = reorder_independent_first(delta)
    cx = initial_support_complex(ordered)
    for alpha in ordered:
        subdivide_direction(cx, alpha, proper=False)
    return cx


def chambers_proper(delta: Sequence) -> ChamberComplex:
    """Chambers of quasipolynomiality restricted to Delta-spanned walls."""
    ordered = reorder_independent_first(delta)
    spanned = spanned_hyperplane_normals(ordered)
    cones = full_rank_subset_cones(ordered)
    cx = initial_support_complex(ordered)
    for alpha in ordered:
        subdivide_direction(cx, alpha, proper=True, spanned=spanned, subset_cones=cones)
    return cx


def full_rank_subset_cones(delta: Sequence):
    """Wall systems of the cones spanned by full-rank n-subsets of Delta,
    enumerated in a fixed (lexicographic over sorted Delta) order."""
    vecs = sorted(set(tuple(v) for v in delta), key=graded_colex_key)
    n = len(vecs[0])
    cones = []
    for subset in combinations(vecs, n):
        if rank(subset) == n:
            from .cones import normals_from_generators
            cones.append(normals_from_generators(subset))
    return cones


def membership_signature(chamber: Chamber, cone_walls: Sequence, check: bool = True) -> tuple:
    """Bit per n-subset cone: 1 iff the chamber lies inside the cone.

    With check=True, raises NotRefinedError when the chamber's interior
    straddles a cone (partially inside), which breaks amalgamation.
    """
    bits = []
    for walls in cone_walls:
        inside = all(all(dot(w, v) >= 0 for v in chamber.vertices) for w in walls)
        if not inside and check:
            # cheap separation: some cone wall sees the whole chamber weakly outside
            separated = any(all(dot(w, v) <= 0 for v in chamber.vertices) for w in walls)
            if not separated:
                meet = chamber_from_walls(chamber.walls + tuple(walls))
                if meet is not None and meet.walls != chamber.walls:
                    raise NotRefinedError(
                        f"chamber {chamber.id} straddles a Delta-spanned subset cone")
        bits.append(1 if inside else 0)
    return tuple(bits)


def _union_is_convex(members: Sequence[Chamber]):
    """Exact convexity test for a union of chambers.

    Returns the hull chamber when the union equals the cone on the pooled
    vertices, else None.  Works by splitting the hull recursively along the
    members' walls until every piece lies inside a member.
    """
    if len(members) == 1:
        return members[0]
    pooled = []
    for m in members:
        pooled.extend(m.vertices)
    hull = chamber_from_generators(tuple(dict.fromkeys(pooled)))
    member_walls = []
    for m in members:
        member_walls.extend(m.walls)
    member_walls = list(dict.fromkeys(member_walls))
    stack = [hull]
    while stack:
        piece = stack.pop()
        covered = any(all(dot(w, v) >= 0 for v in piece.vertices for w in m.walls)
                      for m in members)
        if covered:
            continue
        split_wall = next((w for w in member_walls if splits_chamber(piece, w)), None)
        if split_wall is None:
            return None
        stack.append(chamber_from_walls(piece.walls + (split_wall,)))
        stack.append(chamber_from_walls(piece.walls + (_mirror(split_wall),)))
    return hull


def amalgamate(cx: ChamberComplex, delta: Sequence):
    """Merge chambers with equal n-subset-cone membership signatures.

    Returns (new complex, member map new_id -> [old ids]).  Groups whose
    union is not convex are kept as they were.
    """
    cone_walls = full_rank_subset_cones(delta)
    groups: dict[tuple, list[int]] = {}
    for cid in cx.ids():
        sig = membership_signature(cx.chambers[cid], cone_walls)
        groups.setdefault(sig, []).append(cid)

    out = ChamberComplex()
    members_of: dict[int, list[int]] = {}
    old_to_new: dict[int, int] = {}
    for sig in sorted(groups):
        ids = groups[sig]
        merged = _union_is_convex([cx.chambers[i] for i in ids]) if len(ids) > 1 else cx.chambers[ids[0]]
        if merged is not None:
            new_id = out.add(Chamber(merged.walls, merged.vertices, -1))
            members_of[new_id] = list(ids)
            for i in ids:
                old_to_new[i] = new_id
        else:
            for i in ids:
                ch = cx.chambers[i]
                new_id = out.add(Chamber(ch.walls, ch.vertices, -1))
                members_of[new_id] = [i]
                old_to_new[i] = new_id

    # neighbor map: remap member relations, keep only surviving shared walls
    for new_id, olds in members_of.items():
        merged = out.chambers[new_id]
        nbmap: dict[tuple, set[int]] = {}
        for old in olds:
            for wall, ns in cx.neighbors.get(old, {}).items():
                if wall not in merged.walls:
                    continue
                for nid in ns:
                    tgt = old_to_new.get(nid)
                    if tgt is None or tgt == new_id:
                        continue
                    if _mirror(wall) in out.chambers[tgt].walls:
                        nbmap.setdefault(wall, set()).add(tgt)
        out.neighbors[new_id] = nbmap
    return out, members_of


def chambers_amalgamated(delta: Sequence) -> ChamberComplex:
    ordered = reorder_independent_first(delta)
    cx = chambers_proper(ordered)
    merged, _ = amalgamate(cx, ordered)
    return merged
