"""Embedded disks, their T-bundle neighbourhood chains, and pairwise intersections."""
from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .surface import FakeSurface

TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"


class ChainError(ValueError):
    """The neighbourhood chain could not be continued (the surface is not valid)."""


class NotEmbedded(ValueError):
    pass


@dataclass(frozen=True)
class EmbeddedDiskReport:
    disk_index: int
    length: int
    boundary_vertex_count: int
    embedded: bool


@dataclass(frozen=True)
class Occurrence:
    """One oriented look at a word position: (left, core, right) with core = +edge."""
    disk: int
    pos: int
    reversed: bool
    left: int
    core: int
    right: int

    @property
    def triple(self):
        return (self.left, self.core, self.right)


@dataclass(frozen=True)
class NeighborhoodSequence:
    steps: Tuple[Occurrence, ...]
    broadened: bool = False  # an occurrence was found inside the disk's own word

    @property
    def triples(self):
        return tuple(s.triple for s in self.steps)

    @property
    def closed_trivially(self) -> bool:
        return self.steps[-1].right == -self.steps[0].left


@dataclass(frozen=True)
class IntersectionProfile:
    shared_vertices: FrozenSet[int]
    shared_edges: FrozenSet[int]
    shared_edge_adjacency: str


def boundary_vertices(surface: FakeSurface, word: Sequence[int]) -> List[int]:
    """Vertices reached after each entry, so entry i ends at the i-th vertex."""
    return [surface.endpoints(x)[1] for x in word]


def is_embedded(surface: FakeSurface, disk_index: int) -> bool:
    word = surface.disks[disk_index]
    if len({abs(x) for x in word}) != len(word):
        return False
    vs = boundary_vertices(surface, word)
    return len(set(vs)) == len(vs)


def embedded_disks(surface: FakeSurface) -> List[EmbeddedDiskReport]:
    out = []
    for i, word in enumerate(surface.disks):
        emb = is_embedded(surface, i)
        n = len(word) if emb else len(set(boundary_vertices(surface, word)))
        out.append(EmbeddedDiskReport(i, len(word), n, emb))
    return out


def _look(surface, disk, pos, want):
    """Orient the entry at (disk, pos) so that its middle reads ``want``."""
    w = surface.disks[disk]
    x = w[pos]
    nxt, prv = w[(pos + 1) % len(w)], w[pos - 1]
    if x == want:
        return Occurrence(disk, pos, False, prv, x, nxt)
    return Occurrence(disk, pos, True, -nxt, -x, -prv)


def other_occurrences(surface: FakeSurface, disk_index: int, i: int):
    """Positions of |a_i| outside the embedded disk's own position i, ordered."""
    a = abs(surface.disks[disk_index][i])
    return [(d, p) for d, w in enumerate(surface.disks) for p, x in enumerate(w)
            if abs(x) == a and (d, p) != (disk_index, i)]


def _first_pair(surface, disk_index):
    word = surface.disks[disk_index]
    a1 = word[0]
    occ = other_occurrences(surface, disk_index, 0)
    if len(occ) != 2:
        raise ChainError(f"edge {abs(a1)} has {len(occ)} outside occurrences, expected 2")
    looks = [_look(surface, d, p, a1) for d, p in occ]
    # prefer an occurrence that already reads +a1; if none does, the reversed host
    # with the lower (disk, position) address is taken first
    straight = [o for o in looks if not o.reversed]
    first = straight[0] if straight else looks[0]
    second = looks[1] if first is looks[0] else looks[0]
    return first, second


def _chain(surface, disk_index, start, length):
    word = surface.disks[disk_index]
    n = len(word)
    steps = [start]
    broadened = start.disk == disk_index
    for k in range(1, length):
        i = k % n
        want_left = -steps[-1].right
        hits = [o for o in (_look(surface, d, p, word[i])
                            for d, p in other_occurrences(surface, disk_index, i))
                if o.left == want_left]
        if len(hits) != 1:
            raise ChainError(
                f"no unique occurrence ({want_left},{word[i]},*) continuing the chain "
                f"of disk {disk_index} (found {len(hits)})")
        steps.append(hits[0])
        broadened |= hits[0].disk == disk_index
    return NeighborhoodSequence(tuple(steps), broadened)


def _require_embedded(surface, disk_index):
    if not is_embedded(surface, disk_index):
        raise NotEmbedded(f"disk {disk_index} is not embedded")


def neighborhood_sequences(surface: FakeSurface, disk_index: int):
    """The two side chains of an embedded disk, each of length n.

    For a nontrivial bundle the second chain is the continuation of the first.
    """
    _require_embedded(surface, disk_index)
    n = len(surface.disks[disk_index])
    first, second = _first_pair(surface, disk_index)
    return (_chain(surface, disk_index, first, n), _chain(surface, disk_index, second, n))


def doubled_chain(surface: FakeSurface, disk_index: int) -> NeighborhoodSequence:
    """The first chain continued for 2n steps; it always closes."""
    _require_embedded(surface, disk_index)
    n = len(surface.disks[disk_index])
    first, _ = _first_pair(surface, disk_index)
    return _chain(surface, disk_index, first, 2 * n)


def bundle_type(surface: FakeSurface, disk_index: int) -> str:
    side, _ = neighborhood_sequences(surface, disk_index)
    return TRIVIAL if side.closed_trivially else NONTRIVIAL


def intersection_profile(surface: FakeSurface, disk_a: int, disk_b: int) -> IntersectionProfile:
    wa, wb = surface.disks[disk_a], surface.disks[disk_b]
    va = set(boundary_vertices(surface, wa))
    vb = set(boundary_vertices(surface, wb))
    ea = {abs(x) for x in wa}
    eb = [abs(x) for x in wb]
    shared = ea & set(eb)
    kind = "disjoint"
    ends = {e: set(surface.endpoints(e)) for e in shared}
    if any(eb.count(e) > 1 for e in shared):
        kind = "repeated-edge"
    elif len(shared) >= 2:
        pairs = [(e, f) for e in shared for f in shared if e < f]
        touching = [(e, f) for e, f in pairs if ends[e] & ends[f]]
        if touching:
            kind = "other"
            if len(shared) == 2:
                e, f = pairs[0]
                pa = [i for i, x in enumerate(wa) if abs(x) in (e, f)]
                if len(pa) == 2 and (pa[1] - pa[0]) % len(wa) in (1, len(wa) - 1):
                    kind = "consecutive"
    return IntersectionProfile(frozenset(va & vb), frozenset(shared), kind)
