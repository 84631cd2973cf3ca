"""Recognising the configurations that guarantee a complexity reduction."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from ..disks import TRIVIAL, bundle_type, embedded_disks, intersection_profile
from ..surface import FakeSurface

# Template words: plain ints are edge variables (sign gives orientation); a tuple
# of alternatives marks an optional slot, e.g. ((7,), (7, 8)) reads "7" or "7, 8".
PATTERN_4_4_45_A = ([1, 2, 3, 4], [2, 5, -3, 6], [-4, -5, 3, ((7,), (7, 8))])
PATTERN_4_4_45_B = ([1, 2, 3, 4], [2, 5, 3, 6], [1, 7, 4, ((8,), (8, 9))])
PATTERN_5_4_4_4_A = ([1, 2, 3, 4, 5], [1, 7, 5, 6], [2, 9, 4, 8], [10, -3, 9, -3])
PATTERN_5_4_4_4_B = ([1, 2, 3, 4, 5], [10, -2, 7, 5], [2, 9, 4, 8], [6, 4, -7, -1])

PATTERNS = {
    "4+4+4(5)_1": PATTERN_4_4_45_A,
    "4+4+4(5)_2": PATTERN_4_4_45_B,
    "5+4+4+4_1": PATTERN_5_4_4_4_A,
    "5+4+4+4_2": PATTERN_5_4_4_4_B,
}


@dataclass(frozen=True, order=True)
class CaseWitness:
    case_id: int
    disks: Tuple[int, ...]
    data: Tuple[Tuple[str, object], ...] = field(default=(), compare=False)

    def get(self, key, default=None):
        return dict(self.data).get(key, default)


def _expansions(template):
    """All plain-int readings of a template word with optional slots."""
    parts = [[(x,)] if isinstance(x, int) else list(x) for x in template]
    for choice in itertools.product(*parts):
        yield [y for seq in choice for y in seq]


def _unify(pattern, word, assign, used):
    assign, used = dict(assign), set(used)
    for p, x in zip(pattern, word):
        v, s = abs(p), (1 if p > 0 else -1)
        val = x * s
        if v in assign:
            if assign[v] != val:
                return None
        else:
            if abs(val) in used:
                return None
            assign[v] = val
            used.add(abs(val))
    return assign, used


def match_configuration(surface: FakeSurface, pattern: Sequence) -> List[Dict]:
    """All ways to read the template words as distinct disks of the surface.

    A match is a dict with ``disks`` (surface disk per template word),
    ``assignment`` (variable -> signed edge) and ``rotations`` (rotation and
    orientation of each matched word).  Disk words may be matched in either
    orientation.
    """
    results = []
    expanded = [list(_expansions(t)) for t in pattern]

    def go(k, assign, used, disks, rots):
        if k == len(pattern):
            results.append({"disks": tuple(disks), "assignment": dict(assign),
                            "rotations": tuple(rots)})
            return
        for d, w in enumerate(surface.disks):
            if d in disks:
                continue
            for alt in expanded[k]:
                if len(alt) != len(w):
                    continue
                for flip in (False, True):
                    ww = [-x for x in reversed(w)] if flip else list(w)
                    for r in range(len(ww)):
                        got = _unify(alt, ww[r:] + ww[:r], assign, used)
                        if got is not None:
                            go(k + 1, got[0], got[1], disks + [d], rots + [(r, flip)])

    go(0, {}, frozenset(), [], [])
    return results


def _positions(word, edges):
    return tuple(i for i, x in enumerate(word) if abs(x) in edges)


def detect_cases(surface: FakeSurface) -> List[CaseWitness]:
    """Every configuration present, sorted by case number then disks.

    1: embedded trivial-bundle disk with at most 3 sides.
    2: embedded nontrivial-bundle disk with at most 2 sides.
    3: two embedded 3-gons meeting in exactly one vertex.
    4: an embedded 3-gon sharing exactly one edge (and only its endpoints)
       with another 3-gon or 4-gon.
    5: a trivial 4-gon next to a 4-vertex disk, sharing two disjoint edges
       (or two edges with a trivial 4-gon), or one edge the other disk repeats.
    6, 8: the three- and four-disk templates in PATTERNS.
    7: a trivial 5-gon and a trivial 4-gon sharing two disjoint edges.
    """
    reports = embedded_disks(surface)
    emb = {r.disk_index: r.length for r in reports if r.embedded}
    btype = {d: bundle_type(surface, d) for d in emb}
    nverts = {r.disk_index: r.boundary_vertex_count for r in reports}
    out: List[CaseWitness] = []
    by_len = lambda n: [d for d, m in emb.items() if m == n]
    for d, n in emb.items():
        if n <= 3 and btype[d] == TRIVIAL:
            out.append(CaseWitness(1, (d,), (("n", n),)))
        if n <= 2 and btype[d] != TRIVIAL:
            out.append(CaseWitness(2, (d,), (("n", n),)))
    threes, fours, fives = by_len(3), by_len(4), by_len(5)
    for d, e in itertools.combinations(threes, 2):
        p = intersection_profile(surface, d, e)
        if len(p.shared_vertices) == 1 and not p.shared_edges:
            out.append(CaseWitness(3, (d, e), (("vertex", min(p.shared_vertices)),)))
    for d in threes:
        for e in threes + fours:
            if e == d or (e in threes and e < d):
                continue
            p = intersection_profile(surface, d, e)
            if len(p.shared_edges) == 1:
                (edge,) = p.shared_edges
                if p.shared_vertices == set(surface.endpoints(edge)):
                    out.append(CaseWitness(4, (d, e), (
                        ("shared", (_positions(surface.disks[d], p.shared_edges),
                                    _positions(surface.disks[e], p.shared_edges))),)))
    for d in fours:
        if btype[d] != TRIVIAL:
            continue
        for e in range(surface.disk_count):
            if e == d or nverts[e] != 4:
                continue
            p = intersection_profile(surface, d, e)
            e_trivial = e in emb and btype[e] == TRIVIAL
            ok = False
            if len(p.shared_edges) == 2 and (p.shared_edge_adjacency == "disjoint" or e_trivial):
                ok = True
            if len(p.shared_edges) == 1 and p.shared_edge_adjacency == "repeated-edge":
                ok = True
            if ok:
                out.append(CaseWitness(5, (d, e), (
                    ("shared", _positions(surface.disks[d], p.shared_edges)),
                    ("kind", p.shared_edge_adjacency))))
    for case_id, names, first_len in ((6, ("4+4+4(5)_1", "4+4+4(5)_2"), 4),
                                      (8, ("5+4+4+4_1", "5+4+4+4_2"), 5)):
        for name in names:
            seen = set()
            for m in match_configuration(surface, PATTERNS[name]):
                d0 = m["disks"][0]
                if emb.get(d0) != first_len or btype[d0] != TRIVIAL or m["disks"] in seen:
                    continue
                seen.add(m["disks"])
                out.append(CaseWitness(case_id, m["disks"], (
                    ("pattern", name), ("rotation", m["rotations"][0]))))
    for d in fives:
        if btype[d] != TRIVIAL:
            continue
        for e in fours:
            if btype[e] != TRIVIAL:
                continue
            p = intersection_profile(surface, d, e)
            if len(p.shared_edges) == 2 and p.shared_edge_adjacency == "disjoint":
                out.append(CaseWitness(7, (d, e), (
                    ("shared", _positions(surface.disks[d], p.shared_edges)),)))
    out.sort()
    return out
