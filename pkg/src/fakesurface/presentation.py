"""Balanced presentations from maximal-tree collapse, and stable Andrews-Curtis moves.

Words are tuples of signed generator indices (``+k`` is the k-th generator,
``-k`` its inverse, numbering from 1).  Relators are also numbered from 1 at
the move level, matching the script format ``AC1 1 3``.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .homology import smith_normal_form
from .surface import FakeSurface, _components

Word = Tuple[int, ...]


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class GroupPresentation:
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...]

    @property
    def balanced(self) -> bool:
        return len(self.generators) == len(self.relators)

    @property
    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    @property
    def empty_relators(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i, r in enumerate(self.relators) if not r)

    def is_empty(self) -> bool:
        return not self.generators and not self.relators

    def word_str(self, w: Word) -> str:
        return " ".join(("-" if x < 0 else "") + self.generators[abs(x) - 1] for x in w)

    def __str__(self):
        rels = ", ".join(self.word_str(r) or "1" for r in self.relators)
        return f"< {' '.join(self.generators)} | {rels} >"


# -- free group words

def free_reduce(w: Iterable[int]) -> Word:
    """
    >>> free_reduce([1, 2, -2, -1, 1])
    (1,)
    """
    out: List[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Iterable[int]) -> Word:
    """
    >>> cyclic_reduce([-2, 1, 2])
    (1,)
    """
    w = list(free_reduce(w))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


# -- text format

def format_presentation(p: GroupPresentation) -> str:
    lines = ["gens " + " ".join(p.generators)]
    for r in p.relators:
        lines.append(("rel " + p.word_str(r)).rstrip())
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> GroupPresentation:
    gens: Optional[List[str]] = None
    rels: List[Word] = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if line[0] == "gens":
            gens = line[1:]
        elif line[0] == "rel":
            if gens is None:
                raise PresentationError(f"line {n}: rel before gens")
            rels.append(tuple(_letter(tok, gens, n) for tok in line[1:]))
        else:
            raise PresentationError(f"line {n}: unknown keyword {line[0]!r}")
    if gens is None:
        raise PresentationError("missing gens line")
    return GroupPresentation(tuple(gens), tuple(rels))


def _letter(tok, gens, lineno=None):
    sign = -1 if tok.startswith("-") else 1
    name = tok.lstrip("-")
    if name not in gens:
        where = f"line {lineno}: " if lineno else ""
        raise PresentationError(f"{where}unknown generator {name!r}")
    return sign * (gens.index(name) + 1)


# -- maximal trees

def _simple_edges(graph) -> Tuple[int, List[Tuple[int, int, int]]]:
    if isinstance(graph, FakeSurface):
        return graph.vertex_count, list(graph.edges)
    k, edges = graph
    if isinstance(edges, dict):
        edges = [(e, t, h) for e, (t, h) in sorted(edges.items())]
    return k, list(edges)


def spanning_trees(graph) -> List[FrozenSet[int]]:
    """All spanning trees of a connected multigraph, by deletion and contraction.

    ``graph`` is a surface or a pair ``(vertex_count, edges)`` with edges given
    as ``(id, tail, head)`` triples or an ``id -> (tail, head)`` dict.
    """
    k, edges = _simple_edges(graph)
    if _components(k, edges) != 1:
        raise PresentationError("graph is not connected")
    out: List[FrozenSet[int]] = []

    def go(rest, chosen, classes):
        rest = [(e, u, v) for e, u, v in rest if classes[u] != classes[v]]
        if len(set(classes.values())) == 1:
            out.append(frozenset(chosen))
            return
        if not rest:
            return
        (e, u, v), tail = rest[0], rest[1:]
        # trees through e: contract it
        cu, cv = classes[u], classes[v]
        merged = {x: (cu if c == cv else c) for x, c in classes.items()}
        go(tail, chosen + [e], merged)
        # trees avoiding e: delete it, if the rest still connects everything
        if _connected_after(tail, classes):
            go(tail, chosen, classes)

    go(edges, [], {v: v for v in range(1, k + 1)})
    return out


def _connected_after(edges, classes):
    parent = {c: c for c in set(classes.values())}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for _, u, v in edges:
        parent[find(classes[u])] = find(classes[v])
    return len({find(c) for c in parent}) == 1


def matrix_tree_count(graph) -> int:
    """Spanning-tree count as the determinant of a reduced Laplacian (loops ignored)."""
    k, edges = _simple_edges(graph)
    if k == 1:
        return 1
    lap = [[0] * k for _ in range(k)]
    for _, u, v in edges:
        if u == v:
            continue
        lap[u - 1][u - 1] += 1
        lap[v - 1][v - 1] += 1
        lap[u - 1][v - 1] -= 1
        lap[v - 1][u - 1] -= 1
    minor = [row[1:] for row in lap[1:]]
    diag = smith_normal_form(minor).diagonal
    det = 1
    for d in diag:
        det *= d
    return det


def path_tree_count(graph) -> int:
    """Number of spanning trees that are paths (Hamiltonian paths as edge sets)."""
    return sum(1 for t in spanning_trees(graph) if _is_path(graph, t))


def _is_path(graph, tree):
    k, edges = _simple_edges(graph)
    deg = {v: 0 for v in range(1, k + 1)}
    for e, u, v in edges:
        if e in tree:
            deg[u] += 1
            deg[v] += 1
    return max(deg.values()) <= 2


def is_maximal_tree(surface: FakeSurface, tree: Iterable[int]) -> bool:
    tree = set(tree)
    if not tree <= set(surface.edge_ids):
        return False
    sub = [(e, t, h) for e, t, h in surface.edges if e in tree]
    return len(sub) == surface.vertex_count - 1 and _components(surface.vertex_count, sub) == 1


def collapse_tree(surface: FakeSurface, tree: Iterable[int]) -> GroupPresentation:
    """Collapse a maximal tree: non-tree edges become generators ``x<id>``."""
    tree = {abs(e) for e in tree}
    if not is_maximal_tree(surface, tree):
        raise PresentationError(f"{sorted(tree)} is not a maximal tree of the skeleton")
    gens = [e for e in surface.edge_ids if e not in tree]
    index = {e: i + 1 for i, e in enumerate(gens)}
    rels = tuple(tuple(index[abs(x)] * (1 if x > 0 else -1) for x in w if abs(x) not in tree)
                 for w in surface.disks)
    return GroupPresentation(tuple(f"x{e}" for e in gens), rels)


# -- moves

@dataclass(frozen=True)
class ACMove:
    """One stable Andrews-Curtis move, or a Tietze elimination (``ELIM``).

    ``i``/``j`` are relator numbers from 1; ``g`` is a signed generator index.
    """
    kind: str
    i: int = 0
    j: int = 0
    g: int = 0

    def to_text(self, p: Optional[GroupPresentation] = None) -> str:
        name = (lambda x: ("-" if x < 0 else "") + (p.generators[abs(x) - 1] if p else f"#{abs(x)}"))
        if self.kind == "AC1":
            return f"AC1 {self.i} {self.j}"
        if self.kind in ("AC2", "AC5"):
            return f"{self.kind} {self.i}"
        if self.kind == "AC3":
            return f"AC3 {self.i} {name(self.g)}"
        if self.kind == "AC4":
            return "AC4"
        return f"ELIM {self.i} {name(self.g)}"


def _relator(p, i):
    if not 1 <= i <= len(p.relators):
        raise PresentationError(f"no relator {i}")
    return p.relators[i - 1]


def _with(p, i, w):
    rels = list(p.relators)
    rels[i - 1] = free_reduce(w)
    return GroupPresentation(p.generators, tuple(rels))


def _fresh_name(gens):
    used = [int(m.group(1)) for g in gens for m in [re.fullmatch(r"x(\d+)", g)] if m]
    n = max(used, default=0) + 1
    return f"x{n}"


def _drop_generator(p, g, rel_index, substitute=None):
    """Remove generator |g| and relator rel_index, substituting a word for it elsewhere."""
    g = abs(g)
    rels = []
    for k, r in enumerate(p.relators, 1):
        if k == rel_index:
            continue
        w = []
        for x in r:
            if abs(x) == g:
                w.extend(substitute if x > 0 else invert(substitute))
            else:
                w.append(x)
        rels.append(w)
    renum = lambda x: (abs(x) - (abs(x) > g)) * (1 if x > 0 else -1)
    gens = p.generators[:g - 1] + p.generators[g:]
    return GroupPresentation(gens, tuple(tuple(renum(x) for x in r) for r in rels))


def apply_ac_move(p: GroupPresentation, m: ACMove) -> GroupPresentation:
    """Apply one move; results are freely (not cyclically) reduced."""
    if m.kind == "AC1":
        if m.i == m.j:
            raise PresentationError("AC1 needs two different relators")
        return _with(p, m.i, _relator(p, m.i) + _relator(p, m.j))
    if m.kind == "AC2":
        return _with(p, m.i, invert(_relator(p, m.i)))
    if m.kind == "AC3":
        if not 1 <= abs(m.g) <= len(p.generators):
            raise PresentationError(f"no generator {m.g}")
        return _with(p, m.i, (m.g,) + _relator(p, m.i) + (-m.g,))
    if m.kind == "AC4":
        gens = p.generators + (_fresh_name(p.generators),)
        return GroupPresentation(gens, p.relators + ((len(gens),),))
    if m.kind == "AC5":
        r = _relator(p, m.i)
        if len(r) != 1:
            raise PresentationError(f"relator {m.i} is not a single generator")
        g = abs(r[0])
        if any(abs(x) == g for k, w in enumerate(p.relators, 1) if k != m.i for x in w):
            raise PresentationError(f"generator {p.generators[g - 1]} occurs in other relators")
        return _drop_generator(p, g, m.i, ())
    if m.kind == "ELIM":
        return eliminate_generator(p, m.i, m.g)
    raise PresentationError(f"unknown move {m.kind}")


def eliminate_generator(p: GroupPresentation, relator_index: int, generator: int) -> GroupPresentation:
    """Solve relator ``relator_index`` for a generator occurring in it exactly once."""
    r = _relator(p, relator_index)
    g = abs(generator)
    where = [k for k, x in enumerate(r) if abs(x) == g]
    if len(where) != 1:
        raise PresentationError(
            f"generator {p.generators[g - 1]} occurs {len(where)} times in relator {relator_index}")
    k = where[0]
    a, b = r[:k], r[k + 1:]
    # a g b = 1 gives g = a^-1 b^-1; a g^-1 b = 1 gives g = b a
    sub = invert(a) + invert(b) if r[k] > 0 else tuple(b) + tuple(a)
    q = _drop_generator(p, g, relator_index, free_reduce(sub))
    return simplify_presentation(q)


def simplify_presentation(p: GroupPresentation, cyclic: bool = True) -> GroupPresentation:
    red = cyclic_reduce if cyclic else free_reduce
    return GroupPresentation(p.generators, tuple(red(r) for r in p.relators))


def rename_generators(p: GroupPresentation, names: Dict[str, str]) -> GroupPresentation:
    return GroupPresentation(tuple(names.get(g, g) for g in p.generators), p.relators)


def abelianized_matrix(p: GroupPresentation):
    """Exponent sums: rows are generators, columns relators."""
    m = [[0] * len(p.relators) for _ in p.generators]
    for j, r in enumerate(p.relators):
        for x in r:
            m[abs(x) - 1][j] += 1 if x > 0 else -1
    return m


def abelian_determinant(p: GroupPresentation) -> Optional[int]:
    """|det| of the exponent-sum matrix, or None when it is not square."""
    m = abelianized_matrix(p)
    if len(p.generators) != len(p.relators):
        return None
    if not m:
        return 1
    det = 1
    for d in smith_normal_form(m).diagonal:
        det *= d
    return det


# -- move scripts

def parse_moves(text: str, p: GroupPresentation) -> List[ACMove]:
    """Parse a move script against a starting presentation (generator names resolve as moves apply)."""
    moves = []
    cur = p
    for n, raw in enumerate(text.splitlines(), 1):
        tok = raw.split("#", 1)[0].split()
        if not tok:
            continue
        kind = tok[0].upper()
        try:
            if kind == "AC1":
                m = ACMove("AC1", int(tok[1]), int(tok[2]))
            elif kind in ("AC2", "AC5"):
                m = ACMove(kind, int(tok[1]))
            elif kind == "AC3":
                m = ACMove("AC3", int(tok[1]), g=_letter(tok[2], list(cur.generators)))
            elif kind == "AC4":
                m = ACMove("AC4")
            elif kind == "ELIM":
                m = ACMove("ELIM", int(tok[1]), g=_letter(tok[2], list(cur.generators)))
            else:
                raise PresentationError(f"unknown move {tok[0]!r}")
        except (IndexError, ValueError) as exc:
            raise PresentationError(f"line {n}: {exc}") from None
        moves.append(m)
        cur = apply_ac_move(cur, m)
    return moves


def format_moves(moves: Sequence[ACMove], p: GroupPresentation) -> str:
    lines, cur = [], p
    for m in moves:
        lines.append(m.to_text(cur))
        cur = apply_ac_move(cur, m)
    return "\n".join(lines) + ("\n" if lines else "")


def apply_moves(p: GroupPresentation, moves: Iterable[ACMove]) -> GroupPresentation:
    for m in moves:
        p = apply_ac_move(p, m)
    return p


# -- bounded search for a trivialisation

def _best_rotation(w):
    w = cyclic_reduce(w)
    if not w:
        return ()
    iw = invert(w)
    cands = [w[k:] + w[:k] for k in range(len(w))] + [iw[k:] + iw[:k] for k in range(len(iw))]
    return min(cands, key=lambda c: (len(c), c))


def _sorted_relators(rels):
    return tuple(sorted((_best_rotation(r) for r in rels), key=lambda c: (len(c), c)))


def canonical_key(p: GroupPresentation, exact_up_to: int = 2):
    """Dedup key: relators up to rotation and inversion, generators up to renaming.

    With at most ``exact_up_to`` generators every signed renaming is tried, so
    isomorphic-by-renaming presentations share a key.  Beyond that generators
    are renamed by first use, which is cheaper and may miss some matches.
    """
    n = len(p.generators)
    if n <= exact_up_to:
        best = None
        for perm in itertools.permutations(range(1, n + 1)):
            for signs in itertools.product((1, -1), repeat=n):
                ren = [tuple(perm[abs(x) - 1] * signs[abs(x) - 1] * (1 if x > 0 else -1)
                             for x in r) for r in p.relators]
                key = _sorted_relators(ren)
                if best is None or key < best:
                    best = key
        return (n, best)
    rels = _sorted_relators(p.relators)
    names: Dict[int, int] = {}
    for r in rels:
        for x in r:
            if abs(x) not in names:
                names[abs(x)] = (len(names) + 1) * (1 if x > 0 else -1)
    ren = [tuple(names[abs(x)] * (1 if x > 0 else -1) for x in r) for r in rels]
    return (n, _sorted_relators(ren))


def _rotations_to(word, k, i):
    """AC3 moves turning relator i (currently ``word``) into its k-th left rotation."""
    moves, w = [], list(word)
    for _ in range(k):
        a = w[0]
        moves.append(ACMove("AC3", i, g=-a))
        w = w[1:] + [a]
    return moves


def _cyclic_moves(word, i):
    moves, w = [], list(word)
    while len(w) >= 2 and w[0] == -w[-1]:
        moves.append(ACMove("AC3", i, g=-w[0]))
        w = w[1:-1]
    return moves


def _shortcuts(p):
    for i, r in enumerate(p.relators, 1):
        if len(r) == 1:
            g = abs(r[0])
            if not any(abs(x) == g for k, w in enumerate(p.relators, 1) if k != i for x in w):
                yield [ACMove("AC5", i)]
    for i, r in enumerate(p.relators, 1):
        counts: Dict[int, int] = {}
        for x in r:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        for g in sorted(counts):
            if counts[g] == 1:
                yield [ACMove("ELIM", i, g=g)]
        if len(r) == 1 and r[0] < 0:
            yield [ACMove("AC2", i)]


def _products(p):
    n = len(p.relators)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j or not p.relators[j - 1]:
                continue
            for inv in (False, True):
                rj = invert(p.relators[j - 1]) if inv else p.relators[j - 1]
                pre = [ACMove("AC2", j)] if inv else []
                for k in range(len(rj)):
                    yield pre + _rotations_to(rj, k, j) + [ACMove("AC1", i, j)]


@dataclass
class SearchResult:
    moves: Optional[List[ACMove]]
    expanded: int

    @property
    def found(self):
        return self.moves is not None


def bounded_trivialization_search(p: GroupPresentation, budget: int = 20000,
                                  length_slack: int = 4) -> SearchResult:
    """Breadth-first search for moves reaching the empty presentation.

    Tietze eliminations and AC5 act as free shortcuts: they are explored
    before anything else, and a presentation offering one is expanded only
    through its shortcuts.  Relator products r_i r_j^{+-1}, against every
    rotation of r_j, cost one step each and are written out as primitive
    AC2/AC3/AC1 moves.
    Total relator length is capped at the start length plus ``length_slack``.
    Running out of budget says nothing about whether a trivialisation exists.
    """
    if not p.balanced:
        raise PresentationError("search needs a balanced presentation")
    cap = max(p.total_length, 1) + length_slack
    queue = deque([(p, [])])
    seen = {canonical_key(p)}
    expanded = 0
    while queue and expanded < budget:
        cur, path = queue.popleft()
        expanded += 1
        if cur.is_empty():
            return SearchResult(path, expanded)
        shortcuts = list(_shortcuts(cur))
        # a presentation that still allows a shortcut is only expanded through
        # its shortcuts, which keep the stable class and shrink the search
        stages = [(True, shortcuts)] if shortcuts else [(False, _products(cur))]
        for free, gen in stages:
            for ms in gen:
                try:
                    nxt = apply_moves(cur, ms)
                except PresentationError:
                    continue
                if not free:
                    i = ms[-1].i
                    fix = _cyclic_moves(nxt.relators[i - 1], i)
                    nxt = apply_moves(nxt, fix)
                    ms = ms + fix
                    if nxt.total_length > cap:
                        continue
                key = canonical_key(nxt)
                if key in seen:
                    continue
                seen.add(key)
                if nxt.is_empty():
                    return SearchResult(path + ms, expanded)
                if free:
                    queue.appendleft((nxt, path + ms))
                else:
                    queue.append((nxt, path + ms))
    return SearchResult(None, expanded)
