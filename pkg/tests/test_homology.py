import random

import numpy as np
import pytest

from fakesurface import fixtures as F
from fakesurface.homology import (boundary_matrices, homology_summary, is_acyclic,
                                  smith_normal_form)
from fakesurface.surface import disjoint_union
from randsurf import random_special


def test_pentagon_is_acyclic():
    h = homology_summary(F.PENTAGON)
    assert (h.h0_rank, h.h1_rank, h.h1_torsion, h.h2_rank) == (1, 0, (), 0)
    assert is_acyclic(F.PENTAGON)
    assert str(h) == "H0=Z^1 H1=Z^0 H2=Z^0"


@pytest.mark.parametrize("s", [F.SURFACE_1, F.SURFACE_2, F.SURFACE_3])
def test_complexity_one_surfaces(s):
    h = homology_summary(s)
    assert (h.h1_rank, h.h1_torsion, h.h2_rank) == (0, (), 1)
    assert not is_acyclic(s)


def test_boundary_composition_vanishes():
    for seed in range(30):
        b = boundary_matrices(random_special(seed, 1 + seed % 6))
        assert not (b.d1.dot(b.d2)).any()


def test_snf_small_cases():
    assert smith_normal_form(np.array([[2, 4], [6, 8]], dtype=object)).diagonal == (2, 4)
    assert smith_normal_form(np.array([[0, 0], [0, 0]], dtype=object)).rank == 0
    r = smith_normal_form(np.array([[2, 0], [0, 3]], dtype=object))
    assert r.diagonal == (1, 6) and r.torsion == (6,)


def test_snf_divisibility_and_rank():
    rng = random.Random(1)
    for _ in range(100):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = np.array([[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)],
                     dtype=object)
        r = smith_normal_form(m)
        d = [x for x in r.diagonal if x]
        assert all(b % a == 0 for a, b in zip(d, d[1:]))
        assert r.rank == np.linalg.matrix_rank(m.astype(float))


def test_union_adds_components():
    h = homology_summary(disjoint_union(F.PENTAGON, F.SURFACE_1))
    assert h.h0_rank == 2 and h.h2_rank == 1


def test_euler_characteristic_matches_betti_numbers():
    from fakesurface.surface import euler_characteristic
    for seed in range(40):
        s = random_special(seed, 1 + seed % 6)
        h = homology_summary(s)
        assert h.h0_rank - h.h1_rank + h.h2_rank == euler_characteristic(s)
