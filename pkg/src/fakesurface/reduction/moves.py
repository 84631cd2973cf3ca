"""Complexity-changing moves on embedded disks.

Every move is computed positionally: occurrences are addressed by
``(disk, position)`` so that coincidences between neighbouring edges in the
host surface are harmless.  After the local rewrite a generic 2-complex
normalizer (free reduction, free-face collapse, gluing of two-sheet edges,
merging through degree-2 vertices) restores a fake surface.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

from ..disks import (NONTRIVIAL, TRIVIAL, NotEmbedded, doubled_chain, is_embedded,
                     neighborhood_sequences)
from ..surface import FakeSurface
from .work import POINT, Marker, NonCellular, Work, end_in, end_out, inverse

GENERIC_TRIVIAL = "generic_trivial"
GENERIC_NONTRIVIAL = "generic_nontrivial"
OP4 = "op4_trivial"
OP3 = "op3_nontrivial"
LOOP = "loop_move"
KINDS = (GENERIC_TRIVIAL, GENERIC_NONTRIVIAL, OP4, OP3, LOOP)


class MoveError(ValueError):
    """A move was requested on a disk that does not meet its preconditions."""


@dataclass(frozen=True)
class ReductionMove:
    kind: str
    disk_index: int
    along_positions: Tuple[int, ...]
    fresh_edges: Tuple[int, ...] = ()
    merged_edges: Tuple[Tuple[int, int, int], ...] = ()
    vertex_delta: int = 0

    @property
    def rotation(self) -> int:
        return self.along_positions[0] - 1 if self.along_positions else 0


def _rotated(surface, disk_index, rotation):
    if not 0 <= disk_index < surface.disk_count:
        raise MoveError(f"no disk {disk_index}")
    if not is_embedded(surface, disk_index):
        raise MoveError(f"disk {disk_index} is not embedded")
    w = surface.disks[disk_index]
    r = rotation % len(w)
    disks = list(surface.disks)
    disks[disk_index] = w[r:] + w[:r]
    return FakeSurface(surface.name, surface.vertex_count, surface.edges, tuple(disks)), r


def _find_corner(surface, a, b):
    """Locate the unique corner joining edge-ends a and b; True when it reads a then b."""
    hits = []
    for d, w in enumerate(surface.disks):
        for p, x in enumerate(w):
            y = w[(p + 1) % len(w)]
            if end_in(x) == a and end_out(y) == b:
                hits.append((d, p, True))
            elif end_in(x) == b and end_out(y) == a:
                hits.append((d, p, False))
    if len(hits) != 1:
        raise MoveError(f"expected one corner between {a} and {b}, found {len(hits)}")
    return hits[0]


def _put(subs, occ, seq):
    """Substitute ``seq`` for the core of an occurrence, respecting how the host reads it."""
    subs[(occ.disk, occ.pos)] = inverse(seq) if occ.reversed else list(seq)


def _rewrite(work, subs, marks):
    """Apply positional substitutions and drop markers after the marked positions."""
    for d, w in work.live():
        out = []
        for p, x in enumerate(w):
            out.extend(subs.get((d, p), [x]))
            if (d, p) in marks:
                out.append(marks[(d, p)])
        work.words[d] = out


def _fill_markers(work, fills):
    for d, w in work.live():
        out = []
        for x in w:
            if isinstance(x, Marker):
                seq = fills[x.key]
                out.extend(seq if x.forward else inverse(seq))
            else:
                out.append(x)
        work.words[d] = out


def _rotate_after_marker(w, key):
    ks = [i for i, x in enumerate(w) if isinstance(x, Marker) and x.key == key]
    k = ks[0]
    r = w[k + 1:] + w[:k]
    return r if w[k].forward else inverse(r)


def _finish(surface, work, kind, disk_index, along):
    work.normalize()
    out = work.freeze(surface.name)
    dv = out.vertex_count - surface.vertex_count
    return out, ReductionMove(kind, disk_index, tuple(along), tuple(work.fresh),
                              tuple(work.merged), dv)


def _trivial(s, d, r, kind):
    word = s.disks[d]
    n = len(word)
    B, C = neighborhood_sequences(s, d)
    tb, tc = B.steps, C.steps
    work = Work(s)
    a = list(word)
    v = [s.endpoints(x)[1] for x in a]          # v[i-1] = head(a_i)
    beta = [end_out(t.right) for t in tb]       # beta[i-1] at v_i, beta[n-1] at v_0
    gamma = [end_out(t.right) for t in tc]
    subs, marks = {}, {}
    if n == 1:
        work.words[d] = None
        _put(subs, tb[0], [])
        _put(subs, tc[0], [])
        _rewrite(work, subs, marks)
        del work.edges[abs(a[0])]
        return _finish(s, work, kind, d, [0])
    corner = {}
    for i in range(n):
        cd, cp, fwd = _find_corner(s, beta[i], gamma[i])
        corner[i] = (cd, cp)
        marks[(cd, cp)] = Marker(i, fwd)
    work.words[d] = None
    if n == 2:
        w = work.new_vertex()
        work.move_end(beta[0], w)
        work.move_end(beta[1], w)
        _put(subs, tb[0], [])
        _put(subs, tb[1], [])
        _put(subs, tc[0], [-a[1]])
        if corner[0][0] == corner[1][0]:
            raise NonCellular("both corner regions of the 2-gon coincide")
        _rewrite(work, subs, marks)
        r1 = _rotate_after_marker(work.words[corner[0][0]], 0)
        r0 = _rotate_after_marker(work.words[corner[1][0]], 1)
        work.words[corner[0][0]] = None
        work.words[corner[1][0]] = None
        work.words.append(inverse(r1) + [a[1]] + r0)
        del work.edges[abs(a[0])]
        return _finish(s, work, kind, d, [(r + 1) % n])
    # n >= 3: new vertices w_2..w_{n-1}, rungs v_i -> w_i, bridges w_i -> w_{i+1}
    W = {i: work.new_vertex() for i in range(2, n)}
    rung = {i: work.new_edge(v[i - 1], W[i]) for i in range(2, n)}
    bridge = {i: work.new_edge(W[i], W[i + 1]) for i in range(2, n - 1)}
    _put(subs, tb[0], [-bridge[i] for i in range(n - 2, 1, -1)])
    _put(subs, tb[1], [])
    for i in range(3, n):
        _put(subs, tb[i - 1], [bridge[i - 1]])
    _put(subs, tb[n - 1], [])
    _put(subs, tc[0], [-x for x in reversed(a[1:])])
    work.move_end(beta[0], W[2])
    for i in range(2, n):
        work.move_end(beta[i - 1], W[i])
    work.move_end(beta[n - 1], W[n - 1])
    fills = {0: [-rung[2], -a[1]], n - 1: [-rung[n - 1], a[n - 1]]}
    for i in range(2, n):
        fills[i - 1] = [-rung[i]]
    _rewrite(work, subs, marks)
    _fill_markers(work, fills)
    for i in range(2, n - 1):
        work.words.append([-a[i], rung[i], bridge[i], -rung[i + 1]])
    del work.edges[abs(a[0])]
    return _finish(s, work, kind, d, [(r + 1) % n, (r + n - 1) % n])


def _nontrivial(s, d, r, kind):
    word = s.disks[d]
    n = len(word)
    T = doubled_chain(s, d).steps
    work = Work(s)
    a = list(word)
    v = [s.endpoints(x)[1] for x in a]
    beta = [end_out(t.right) for t in T]    # beta[k] sits at v_{(k+1) mod n}
    subs, marks = {}, {}
    work.words[d] = None
    if n == 1:
        _put(subs, T[0], [])
        _put(subs, T[1], [])
        _rewrite(work, subs, marks)
        del work.edges[abs(a[0])]
        return _finish(s, work, kind, d, [0])
    for i in range(1, n):
        cd, cp, fwd = _find_corner(s, beta[i - 1], beta[n + i - 1])
        marks[(cd, cp)] = Marker(i, fwd)
    if n == 2:
        _put(subs, T[0], [])
        _put(subs, T[1], [])
        _put(subs, T[2], [-a[1]])
        work.move_end(beta[0], v[1])
        _rewrite(work, subs, marks)
        _fill_markers(work, {1: [-a[1]]})
        del work.edges[abs(a[0])]
        return _finish(s, work, kind, d, [(r + 1) % n])
    W = {i: work.new_vertex() for i in range(2, n)}
    rung = {i: work.new_edge(v[i - 1], W[i]) for i in range(2, n)}
    bridge = {i: work.new_edge(W[i], W[i + 1] if i + 1 < n else v[n - 1])
              for i in range(2, n)}
    _put(subs, T[0], [-bridge[i] for i in range(n - 1, 1, -1)])
    _put(subs, T[1], [])
    for i in range(3, n + 1):
        _put(subs, T[i - 1], [bridge[i - 1]])
    _put(subs, T[n], [-x for x in reversed(a[1:])])
    work.move_end(beta[0], W[2])
    for i in range(2, n):
        work.move_end(beta[i - 1], W[i])
    fills = {1: [-rung[2], -a[1]]}
    for i in range(2, n):
        fills[i] = [-rung[i]]
    _rewrite(work, subs, marks)
    _fill_markers(work, fills)
    for i in range(2, n - 1):
        work.words.append([-a[i], rung[i], bridge[i], -rung[i + 1]])
    work.words.append([-a[n - 1], rung[n - 1], bridge[n - 1]])
    del work.edges[abs(a[0])]
    return _finish(s, work, kind, d, [(r + 1) % n])


def reduce_disk(surface: FakeSurface, disk_index: int, rotation: int = 0, kind=None):
    """Collapse the neighbourhood of an embedded disk, starting the walk at ``rotation``."""
    s, r = _rotated(surface, disk_index, rotation)
    side, _ = neighborhood_sequences(s, disk_index)
    if side.closed_trivially:
        return _trivial(s, disk_index, r, kind or GENERIC_TRIVIAL)
    return _nontrivial(s, disk_index, r, kind or GENERIC_NONTRIVIAL)


def op_reduce_disk(surface: FakeSurface, disk_index: int):
    return reduce_disk(surface, disk_index, 0)


def op4_trivial_along(surface: FakeSurface, disk_index: int, rotation: int = 0):
    s, _ = _rotated(surface, disk_index, rotation)
    if len(s.disks[disk_index]) != 4 or not neighborhood_sequences(s, disk_index)[0].closed_trivially:
        raise MoveError(f"disk {disk_index} is not an embedded 4-gon with trivial bundle")
    return reduce_disk(surface, disk_index, rotation, OP4)


def op3_nontrivial_along(surface: FakeSurface, disk_index: int, rotation: int = 0):
    s, _ = _rotated(surface, disk_index, rotation)
    if len(s.disks[disk_index]) != 3 or neighborhood_sequences(s, disk_index)[0].closed_trivially:
        raise MoveError(f"disk {disk_index} is not an embedded 3-gon with nontrivial bundle")
    return reduce_disk(surface, disk_index, rotation, OP3)


def loop_move(surface: FakeSurface, disk_index: int):
    """Blow a 1-gon with nontrivial bundle up into a 2-gon plus a trivial 1-gon.

    The new trivial 1-gon is the last disk of the result.
    """
    s, _ = _rotated(surface, disk_index, 0)
    if len(s.disks[disk_index]) != 1:
        raise MoveError(f"disk {disk_index} is not a 1-gon")
    t1, t2 = doubled_chain(s, disk_index).steps
    if t1.right == -t1.left:
        raise MoveError(f"disk {disk_index} has trivial bundle")
    work = Work(s)
    a1 = s.disks[disk_index][0]
    v0 = s.endpoints(a1)[0]
    u = work.new_vertex()
    p = work.new_edge(v0, u)
    q = work.new_edge(u, v0)
    e = work.new_edge(u, u)
    subs = {}
    _put(subs, t1, [p, e, -p])
    _put(subs, t2, [-q, e, q])
    work.words[disk_index] = [a1]
    _rewrite(work, subs, {})
    work.words[disk_index] = [p, q]
    work.words.append([e])
    del work.edges[abs(a1)]
    out = work.freeze(s.name)
    return out, ReductionMove(LOOP, disk_index, (0,), tuple(work.fresh), (), 1)


def apply_move(surface: FakeSurface, move: ReductionMove):
    """Re-run a recorded move."""
    if move.kind == LOOP:
        return loop_move(surface, move.disk_index)
    n = len(surface.disks[move.disk_index])
    kind = move.kind if move.kind in (OP3, OP4) else None
    return reduce_disk(surface, move.disk_index, move.rotation % n, kind)
