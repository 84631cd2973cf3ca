"""
Closed cellular fake surfaces: data model, text format and structural checks.

A surface is a skeleton graph (vertices ``1..k``, directed edges with
positive ids) together with one cyclic boundary word per 2-cell.  A word
entry ``e > 0`` traverses edge ``e`` from tail to head, ``-e`` from head to
tail.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class FakeSurface:
    name: str
    vertex_count: int
    edges: Tuple[Tuple[int, int, int], ...]  # (id, tail, head), sorted by id
    disks: Tuple[Tuple[int, ...], ...]
    _ends: Dict[int, Tuple[int, int]] = field(
        default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(tuple(e) for e in self.edges)))
        object.__setattr__(self, "disks", tuple(tuple(d) for d in self.disks))
        object.__setattr__(self, "_ends", {e: (t, h) for e, t, h in self.edges})

    @classmethod
    def build(cls, name, vertex_count, edges, disks):
        if isinstance(edges, dict):
            edges = [(e, t, h) for e, (t, h) in edges.items()]
        return cls(name, vertex_count, tuple(edges), tuple(disks))

    @property
    def edge_ids(self) -> List[int]:
        return [e for e, _, _ in self.edges]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def disk_count(self) -> int:
        return len(self.disks)

    def endpoints(self, e: int) -> Tuple[int, int]:
        """(start, end) vertices of the signed traversal ``e``."""
        t, h = self._ends[abs(e)]
        return (t, h) if e > 0 else (h, t)

    def max_edge_id(self) -> int:
        return max(self.edge_ids, default=0)

    def vertex_degree(self, v: int) -> int:
        return sum((t == v) + (h == v) for _, t, h in self.edges)

    def renamed(self, name: str) -> "FakeSurface":
        return FakeSurface(name, self.vertex_count, self.edges, self.disks)


@dataclass(frozen=True)
class CatalogEntry:
    surface: FakeSurface
    source_line: int
    tags: frozenset = frozenset()


# ---------------------------------------------------------------------------
# text format

def _tokens(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            toks.append((tok, col + 1))
            col += len(tok)
        yield lineno, toks, not raw.strip()


def _int(tok, lineno, col):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer, got {tok!r}", lineno, col) from None


def _parse_block(lines, first_line=1):
    name = None
    vertex_count = None
    edges = {}
    disks = []
    for lineno, toks in lines:
        if not toks:
            continue
        key, kcol = toks[0]
        args = toks[1:]
        if key == "surface":
            if len(args) != 1:
                raise ParseError("surface takes exactly one name", lineno, kcol)
            name = args[0][0]
        elif key == "vertices":
            if len(args) != 1:
                raise ParseError("vertices takes exactly one count", lineno, kcol)
            vertex_count = _int(args[0][0], lineno, args[0][1])
            if vertex_count < 1:
                raise ParseError("vertex count must be positive", lineno, args[0][1])
        elif key == "edge":
            if len(args) != 3:
                raise ParseError("edge takes <id> <tail> <head>", lineno, kcol)
            eid, tail, head = (_int(t, lineno, c) for t, c in args)
            if eid == 0:
                raise ParseError("zero edge id", lineno, args[0][1])
            if eid < 0:
                raise ParseError(f"edge id must be positive, got {eid}", lineno, args[0][1])
            if eid in edges:
                raise ParseError(f"duplicate edge {eid}", lineno, args[0][1])
            if vertex_count is None:
                raise ParseError("edge declared before vertices", lineno, kcol)
            for val, (_, c) in zip((tail, head), args[1:]):
                if not 1 <= val <= vertex_count:
                    raise ParseError(f"endpoint {val} out of range 1..{vertex_count}", lineno, c)
            edges[eid] = (tail, head)
        elif key == "disk":
            if not args:
                raise ParseError("empty disk word", lineno, kcol)
            word = []
            for tok, c in args:
                w = _int(tok, lineno, c)
                if w == 0:
                    raise ParseError("zero edge id", lineno, c)
                if abs(w) not in edges:
                    raise ParseError(f"undeclared edge {abs(w)}", lineno, c)
                word.append(w)
            disks.append(tuple(word))
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno, kcol)
    if vertex_count is None:
        raise ParseError("missing vertices line", first_line)
    if not disks:
        raise ParseError("no disks", first_line)
    return FakeSurface.build(name or "unnamed", vertex_count, edges, disks)


def parse_surface(text: str) -> FakeSurface:
    """Parse one surface block.  Fake-surface invariants are not checked."""
    return _parse_block([(n, t) for n, t, _ in _tokens(text)])


def parse_catalog(text: str) -> List[CatalogEntry]:
    """Parse blank-line separated surface blocks."""
    entries = []
    block = []
    start = None

    def flush():
        if block and any(toks for _, toks in block):
            surf = _parse_block(block, start)
            entries.append(CatalogEntry(surf, start))

    for lineno, toks, raw_blank in _tokens(text):
        if raw_blank:
            flush()
            block = []
            start = None
            continue
        if start is None:
            start = lineno
        block.append((lineno, toks))
    flush()
    return entries


def serialize_surface(surface: FakeSurface) -> str:
    out = [f"surface {surface.name}", f"vertices {surface.vertex_count}"]
    out += [f"edge {e} {t} {h}" for e, t, h in surface.edges]
    out += ["disk " + " ".join(str(x) for x in d) for d in surface.disks]
    return "\n".join(out) + "\n"


def serialize_catalog(surfaces: Iterable[FakeSurface]) -> str:
    return "\n".join(serialize_surface(s) for s in surfaces)


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def corners(surface: FakeSurface):
    """Yield ``(vertex, end_in, end_out, disk, position)`` for every corner.

    Edge ends are ``(edge, "h")`` or ``(edge, "t")``.  The corner at
    ``position`` sits between entry ``position`` and the next one.
    """
    for di, word in enumerate(surface.disks):
        n = len(word)
        for i in range(n):
            a, b = word[i], word[(i + 1) % n]
            v = surface.endpoints(a)[1]
            end_in = (abs(a), "h" if a > 0 else "t")
            end_out = (abs(b), "t" if b > 0 else "h")
            yield v, end_in, end_out, di, i


def validate_surface(surface: FakeSurface) -> ValidationReport:
    """Check every closed fake surface invariant; report all violations."""
    bad = []
    ids = set(surface.edge_ids)
    for e, t, h in surface.edges:
        for x in (t, h):
            if not 1 <= x <= surface.vertex_count:
                bad.append(f"edge {e} endpoint {x} out of range")
    unknown = sorted({abs(x) for d in surface.disks for x in d} - ids)
    for e in unknown:
        bad.append(f"undeclared edge {e}")
    if bad:
        return ValidationReport(tuple(bad))

    occ = Counter(abs(x) for d in surface.disks for x in d)
    for e in sorted(ids):
        if occ[e] != 3:
            bad.append(f"edge {e} occurs {occ[e]} times")
    total = sum(len(d) for d in surface.disks)
    if total != 3 * surface.edge_count:
        bad.append(f"total word length {total} != 3 * {surface.edge_count}")

    for di, word in enumerate(surface.disks):
        n = len(word)
        for i in range(n):
            a, b = word[i], word[(i + 1) % n]
            if surface.endpoints(a)[1] != surface.endpoints(b)[0]:
                bad.append(f"disk {di} not composable at position {i} ({a},{b})")

    for v in range(1, surface.vertex_count + 1):
        deg = surface.vertex_degree(v)
        if deg != 4:
            bad.append(f"vertex {v} has degree {deg}")

    by_vertex: Dict[int, List[frozenset]] = {}
    for v, ein, eout, di, i in corners(surface):
        by_vertex.setdefault(v, []).append(frozenset([ein, eout]))
    for v in range(1, surface.vertex_count + 1):
        cs = by_vertex.get(v, [])
        if len(cs) != 6:
            bad.append(f"vertex {v} has {len(cs)} corners")
            continue
        ends = {(e, "t") for e, t, h in surface.edges if t == v} | \
               {(e, "h") for e, t, h in surface.edges if h == v}
        want = {frozenset(p) for p in itertools.combinations(sorted(ends), 2)}
        if len(ends) != 4 or set(cs) != want or len(set(cs)) != 6:
            bad.append(f"vertex {v} link is not the complete graph on its 4 edge-ends")
    return ValidationReport(tuple(bad))


def euler_characteristic(surface: FakeSurface) -> int:
    """
    >>> s = FakeSurface.build("one", 1, {1: (1, 1), 2: (1, 1)}, [[-2, 1, 1], [1, 2], [2]])
    >>> euler_characteristic(s)
    2
    """
    return surface.vertex_count - surface.edge_count + surface.disk_count


def _components(vertex_count, edges):
    parent = list(range(vertex_count + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, t, h in edges:
        parent[find(t)] = find(h)
    return len({find(v) for v in range(1, vertex_count + 1)})


def skeleton_component_count(surface: FakeSurface) -> int:
    return _components(surface.vertex_count, surface.edges)


def disjoint_union(a: FakeSurface, b: FakeSurface, name=None) -> FakeSurface:
    shift_e = a.max_edge_id()
    shift_v = a.vertex_count
    edges = list(a.edges) + [(e + shift_e, t + shift_v, h + shift_v) for e, t, h in b.edges]
    disks = list(a.disks) + [tuple(x + shift_e if x > 0 else x - shift_e for x in d)
                             for d in b.disks]
    return FakeSurface.build(name or f"{a.name}+{b.name}", a.vertex_count + b.vertex_count,
                             edges, disks)


def relabel(surface: FakeSurface, edge_map: Dict[int, int],
            vertex_map: Optional[Dict[int, int]] = None, name=None) -> FakeSurface:
    """Rename edge ids and vertices.

    ``edge_map`` sends an old id to a new id; a negative new id also reverses
    the edge, so every traversal of it changes sign.
    """
    vm = vertex_map or {v: v for v in range(1, surface.vertex_count + 1)}
    edges = [(abs(edge_map[e]), vm[t], vm[h]) if edge_map[e] > 0 else
             (-edge_map[e], vm[h], vm[t]) for e, t, h in surface.edges]
    disks = [tuple(edge_map[abs(x)] * (1 if x > 0 else -1) for x in d) for d in surface.disks]
    return FakeSurface.build(name or surface.name, surface.vertex_count, edges, disks)


# ---------------------------------------------------------------------------
# canonical form

def _min_rotation(word: Sequence[int]) -> Tuple[int, ...]:
    n = len(word)
    return min(tuple(word[i:]) + tuple(word[:i]) for i in range(n)) if n else ()


def _encode(word, labels, next_label):
    enc = []
    new = {}
    for x in word:
        e = abs(x)
        if e in labels:
            lab = labels[e]
        elif e in new:
            lab = new[e]
        else:
            lab = next_label + len(new)
            new[e] = lab
        enc.append(lab if x > 0 else -lab)
    return tuple(enc), new


def canonical_form(surface: FakeSurface) -> FakeSurface:
    """Label-, rotation- and disk-order-independent normal form.

    Orientation reversal of a disk is not quotiented out.
    """
    disks = surface.disks
    best = [None]

    def search(labels, remaining, acc):
        if not remaining:
            key = tuple(acc)
            if best[0] is None or key < best[0][0]:
                best[0] = (key, dict(labels))
            return
        options = []
        for di in remaining:
            w = disks[di]
            for r in range(len(w)):
                rot = w[r:] + w[:r]
                enc, new = _encode(rot, labels, len(labels) + 1)
                options.append(((len(w), enc), di, new))
        low = min(o[0] for o in options)
        if best[0] is not None and tuple(acc) + (low,) > best[0][0][:len(acc) + 1]:
            return
        seen = set()
        for key, di, new in options:
            if key != low or (key, frozenset(new.items())) in seen:
                continue
            seen.add((key, frozenset(new.items())))
            merged = dict(labels)
            merged.update(new)
            search(merged, remaining - {di}, acc + [key])

    search({}, frozenset(range(len(disks))), [])
    labels = best[0][1] if best[0] else {}
    nxt = len(labels) + 1
    for e in sorted(surface.edge_ids):
        if e not in labels:
            labels[e] = nxt
            nxt += 1
    relabeled = relabel(surface, labels)
    words = sorted(_min_rotation(d) for d in relabeled.disks)
    vmap = {}
    for w in words:
        for x in w:
            v = relabeled.endpoints(x)[0]
            if v not in vmap:
                vmap[v] = len(vmap) + 1
    for v in range(1, surface.vertex_count + 1):
        if v not in vmap:
            vmap[v] = len(vmap) + 1
    edges = [(e, vmap[t], vmap[h]) for e, t, h in relabeled.edges]
    return FakeSurface.build(surface.name, surface.vertex_count, edges, words)
