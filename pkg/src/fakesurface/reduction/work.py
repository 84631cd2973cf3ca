"""Mutable scratch state used while rewriting a surface, plus the 2-complex normalizer."""
from __future__ import annotations

from collections import Counter
from typing import Dict, List, Optional

from ..surface import FakeSurface


class NonCellular(ValueError):
    """The rewrite would leave a 2-cell or edge without a cellular structure."""


class _Point:
    """The one-point complex."""
    vertex_count = 0
    name = "POINT"

    def __repr__(self):
        return "POINT"


POINT = _Point()


def end_in(x):
    """The edge-end a traversal enters its vertex through.

    >>> end_in(3), end_in(-3)
    ((3, 'h'), (3, 't'))
    """
    return (abs(x), "h" if x > 0 else "t")


def end_out(x):
    return (abs(x), "t" if x > 0 else "h")


def inverse(word):
    """
    >>> inverse([1, -2, 3])
    [-3, 2, -1]
    """
    return [-x for x in reversed(word)]


class Marker:
    __slots__ = ("key", "forward")

    def __init__(self, key, forward):
        self.key = key
        self.forward = forward


class Work:
    def __init__(self, surface: FakeSurface):
        self.name = surface.name
        self.edges: Dict[int, List[int]] = {e: [t, h] for e, t, h in surface.edges}
        self.words: List[Optional[list]] = [list(w) for w in surface.disks]
        self.vertices = set(range(1, surface.vertex_count + 1))
        self.next_edge = surface.max_edge_id() + 1
        self.next_vertex = surface.vertex_count + 1
        self.fresh: List[int] = []
        self.merged: List[tuple] = []

    # -- construction helpers
    def new_vertex(self):
        v = self.next_vertex
        self.next_vertex += 1
        self.vertices.add(v)
        return v

    def new_edge(self, tail, head, fresh=True):
        e = self.next_edge
        self.next_edge += 1
        self.edges[e] = [tail, head]
        if fresh:
            self.fresh.append(e)
        return e

    def vertex_of(self, end):
        e, side = end
        return self.edges[e][1 if side == "h" else 0]

    def move_end(self, end, v):
        e, side = end
        self.edges[e][1 if side == "h" else 0] = v

    def head(self, x):
        t, h = self.edges[abs(x)]
        return h if x > 0 else t

    def tail(self, x):
        t, h = self.edges[abs(x)]
        return t if x > 0 else h

    def live(self):
        return [(i, w) for i, w in enumerate(self.words) if w is not None]

    def multiplicity(self):
        c = Counter()
        for _, w in self.live():
            c.update(abs(x) for x in w)
        return c

    def degree(self):
        d = Counter({v: 0 for v in self.vertices})
        for t, h in self.edges.values():
            d[t] += 1
            d[h] += 1
        return d

    # -- normalisation
    def normalize(self):
        while self._step():
            pass

    def _step(self) -> bool:
        for i, w in self.live():
            r = _cyclic_reduce(w)
            if not r:
                raise NonCellular(f"boundary word of region {i} reduces to nothing")
            if len(r) != len(w):
                self.words[i] = r
                return True
        mult = self.multiplicity()
        where = {}
        for i, w in self.live():
            for p, x in enumerate(w):
                where.setdefault(abs(x), []).append((i, p))
        for e in sorted(self.edges):
            if mult[e] == 1:
                # free edge: collapse the region through it
                (i, _), = where[e]
                self.words[i] = None
                del self.edges[e]
                return True
        for e in sorted(self.edges):
            if mult[e] == 0:
                t, h = self.edges[e]
                if t == h:
                    raise NonCellular(f"bare loop {e}")
                del self.edges[e]
                for ends in self.edges.values():
                    for k in (0, 1):
                        if ends[k] == h:
                            ends[k] = t
                self.vertices.discard(h)
                return True
        stuck = None
        for e in sorted(self.edges):
            if mult[e] == 2:
                (i, p), (j, q) = where[e]
                if i == j:
                    stuck = stuck or e
                    continue
                wi = _front(self.words[i], p, e)
                wj = _front(self.words[j], q, e)
                self.words[i] = None
                self.words[j] = None
                self.words.append(wi[1:] + inverse(wj[1:]))
                del self.edges[e]
                return True
        deg = self.degree()
        for v in sorted(self.vertices):
            if deg[v] == 0:
                if not self.edges and not self.live() and len(self.vertices) == 1:
                    return False
                raise NonCellular(f"isolated vertex {v}")
            if deg[v] == 2:
                self._merge_at(v)
                return True
        if stuck is not None:
            raise NonCellular(f"edge {stuck} is bounded twice by a single region")
        return False

    def _merge_at(self, v):
        ends = [(e, k) for e, te in self.edges.items() for k in (0, 1) if te[k] == v]
        (e, ke), (f, kf) = sorted(ends)
        if e == f:
            raise NonCellular(f"loop {e} at vertex {v} would lose its only vertex")
        # signed traversals passing through v: first e, then f
        se = e if ke == 1 else -e
        sf = f if kf == 0 else -f
        tail = self.tail(se)
        head = self.head(sf)
        g = self.new_edge(tail, head, fresh=False)
        del self.edges[e], self.edges[f]
        self.vertices.discard(v)
        for i, w in self.live():
            self.words[i] = _splice_pair(w, se, sf, g)
        self.merged.append((se, sf, g))

    def freeze(self, name=None):
        """Relabel vertices 1..k in order and return an immutable surface (or POINT)."""
        words = [tuple(w) for _, w in self.live()]
        if not words and not self.edges and len(self.vertices) <= 1:
            return POINT
        order = {v: i + 1 for i, v in enumerate(sorted(self.vertices))}
        edges = {e: (order[t], order[h]) for e, (t, h) in self.edges.items()}
        return FakeSurface.build(name or self.name, len(order), edges, words)


def _cyclic_reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return out


def _front(w, p, e):
    """Rotate w so the entry at p comes first, inverting if needed so it reads +e."""
    r = w[p:] + w[:p]
    if r[0] == e:
        return r
    r = inverse(r)
    return r[-1:] + r[:-1]


def _splice_pair(w, se, sf, g):
    """Replace every adjacent (se, sf) by g and (-sf, -se) by -g."""
    def pair(x, y):
        return (x, y) == (se, sf) or (x, y) == (-sf, -se)
    n = len(w)
    start = next((p for p in range(n) if not pair(w[p - 1], w[p])), None)
    if start is None:
        raise NonCellular("degenerate word around a degree-2 vertex")
    r = w[start:] + w[:start]
    out, i = [], 0
    while i < n:
        if i + 1 < n and pair(r[i], r[i + 1]):
            out.append(g if r[i] == se else -g)
            i += 2
        elif abs(r[i]) in (abs(se), abs(sf)):
            raise NonCellular(f"edge {abs(r[i])} is not continued across its degree-2 vertex")
        else:
            out.append(r[i])
            i += 1
    return out
