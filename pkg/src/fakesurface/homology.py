"""Cellular chain complex of a fake surface and its integral homology."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .surface import FakeSurface, skeleton_component_count


@dataclass(frozen=True)
class BoundaryMatrices:
    d1: np.ndarray  # vertices x edges
    d2: np.ndarray  # edges x disks
    edge_order: Tuple[int, ...]


@dataclass(frozen=True)
class SnfResult:
    diagonal: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


@dataclass(frozen=True)
class HomologySummary:
    h0_rank: int
    h1_rank: int
    h1_torsion: Tuple[int, ...]
    h2_rank: int

    def __str__(self):
        tors = "".join(f"+Z/{t}" for t in self.h1_torsion)
        return f"H0=Z^{self.h0_rank} H1=Z^{self.h1_rank}{tors} H2=Z^{self.h2_rank}"


def boundary_matrices(surface: FakeSurface) -> BoundaryMatrices:
    order = tuple(sorted(surface.edge_ids))
    row = {e: i for i, e in enumerate(order)}
    d2 = np.zeros((len(order), surface.disk_count), dtype=object)
    for j, word in enumerate(surface.disks):
        for x in word:
            d2[row[abs(x)], j] += 1 if x > 0 else -1
    d1 = np.zeros((surface.vertex_count, len(order)), dtype=object)
    for e, t, h in surface.edges:
        d1[h - 1, row[e]] += 1
        d1[t - 1, row[e]] -= 1
    return BoundaryMatrices(d1, d2, order)


def smith_normal_form(m) -> SnfResult:
    """Diagonal of the Smith normal form, exact Python integers.

    Pivot is the smallest nonzero absolute entry (row-major tie break).

    >>> smith_normal_form([[2, 4], [6, 8]]).diagonal
    (2, 4)
    """
    a = [[int(x) for x in r] for r in np.asarray(m, dtype=object).tolist()] if np.size(m) else []
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: List[int] = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # divisibility: fold in any entry not divisible by the pivot
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remaining entry of the pivot row/column into place
            cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]] + \
                   [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
        diag.append(abs(a[t][t]))
        t += 1
    diag += [0] * (min(rows, cols) - len(diag))
    return SnfResult(tuple(diag))


def homology_summary(surface: FakeSurface) -> HomologySummary:
    bm = boundary_matrices(surface)
    s1 = smith_normal_form(bm.d1)
    s2 = smith_normal_form(bm.d2)
    e = surface.edge_count
    h0 = skeleton_component_count(surface) if surface.vertex_count else 0
    return HomologySummary(
        h0_rank=h0,
        h1_rank=e - s1.rank - s2.rank,
        h1_torsion=s2.torsion,
        h2_rank=surface.disk_count - s2.rank,
    )


def is_acyclic(surface: FakeSurface) -> bool:
    h = homology_summary(surface)
    return h.h0_rank == 1 and h.h1_rank == 0 and not h.h1_torsion and h.h2_rank == 0
