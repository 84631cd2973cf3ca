import random

from fakesurface import fixtures as F
from fakesurface.reduction.cases import (PATTERN_4_4_45_A, PATTERN_4_4_45_B, detect_cases,
                                         match_configuration)
from fakesurface.surface import FakeSurface, relabel
from randsurf import random_special, random_surface


def _ids(ws):
    return [(w.case_id, w.disks) for w in ws]


def test_pentagon_witnesses():
    assert _ids(detect_cases(F.PENTAGON)) == [(7, (3, 4)), (7, (3, 5))]


def test_complexity_one_witnesses():
    assert _ids(detect_cases(F.SURFACE_1)) == [(2, (2,))]
    assert [w.case_id for w in detect_cases(F.SURFACE_2)] == [1, 1]


def test_case_three_configuration_found():
    assert (3, (2, 3)) in _ids(detect_cases(F.load("case3")))


def test_pattern_matching_with_optional_slot():
    edges = {e: (1, 1) for e in range(1, 10)}
    short = FakeSurface.build("p", 1, edges, [[1, 2, 3, 4], [2, 5, -3, 6], [-4, -5, 3, 7]])
    long_ = FakeSurface.build("p", 1, edges, [[1, 2, 3, 4], [2, 5, -3, 6], [-4, -5, 3, 7, 8]])
    for s in (short, long_):
        hits = match_configuration(s, PATTERN_4_4_45_A)
        assert (0, 1, 2) in [m["disks"] for m in hits]
    assert match_configuration(short, PATTERN_4_4_45_B) == []


def test_pattern_matches_rotated_and_reversed_words():
    edges = {e: (1, 1) for e in range(1, 10)}
    words = [[3, 4, 1, 2], [-6, 3, -5, -2], [3, 7, -4, -5]]
    s = FakeSurface.build("p", 1, edges, words)
    hits = match_configuration(s, PATTERN_4_4_45_A)
    assert hits and hits[0]["disks"] == (0, 1, 2)


def test_assignment_injective():
    edges = {e: (1, 1) for e in range(1, 10)}
    # edge 2 would have to play two template variables
    s = FakeSurface.build("p", 1, edges, [[1, 2, 2, 4], [2, 5, -2, 6], [-4, -5, 2, 7]])
    assert match_configuration(s, PATTERN_4_4_45_A) == []


def test_detection_is_relabelling_equivariant():
    rng = random.Random(5)
    for seed in range(150):
        s = (random_special if seed % 3 else random_surface)(seed, 2 + seed % 6)
        ids = s.edge_ids
        new = rng.sample(range(1, 5 * len(ids)), len(ids))
        perm = list(range(1, s.vertex_count + 1))
        rng.shuffle(perm)
        t = relabel(s, {e: n * rng.choice((1, -1)) for e, n in zip(ids, new)},
                    dict(zip(range(1, s.vertex_count + 1), perm)))
        assert _ids(detect_cases(s)) == _ids(detect_cases(t)), seed
