"""Acceptance checks, one per criterion.

Each check returns ``(ok, detail)``.  The outcome of every check is printed
as a single PASS/FAIL line at the end of the pytest run (see conftest.py)
and also when the module is executed directly.
"""
import io
import random
import time

import pytest

from fakesurface import cli
from fakesurface import fixtures as F
from fakesurface.disks import NONTRIVIAL, TRIVIAL, bundle_type, doubled_chain, embedded_disks
from fakesurface.homology import homology_summary, is_acyclic
from fakesurface.presentation import (ACMove, GroupPresentation, abelian_determinant,
                                      apply_ac_move, apply_moves, bounded_trivialization_search,
                                      collapse_tree, eliminate_generator, free_reduce,
                                      matrix_tree_count, parse_presentation, path_tree_count,
                                      rename_generators, spanning_trees)
from fakesurface.reduction.driver import reduce_to_point, verify_trace
from fakesurface.reduction.moves import (apply_move, op3_nontrivial_along, op4_trivial_along,
                                         reduce_disk)
from fakesurface.reduction.work import POINT, NonCellular
from fakesurface.surface import euler_characteristic, serialize_catalog, validate_surface
from randsurf import random_special, random_surface

RESULTS = {}


def _surfaces(count, start=0):
    for seed in range(start, start + count):
        yield (random_special if seed % 3 else random_surface)(seed, 1 + seed % 7)


def _embedded(s):
    return [r.disk_index for r in embedded_disks(s) if r.embedded]


def criterion_1():
    s = F.load("pentagon")
    counts = (s.vertex_count, s.edge_count, s.disk_count, euler_characteristic(s))
    occ = [sum(abs(x) == e for d in s.disks for x in d) for e in s.edge_ids]
    total = sum(len(d) for d in s.disks)
    ok = validate_surface(s).ok and counts == (5, 10, 6, 1) and set(occ) == {3} and total == 30
    return ok, f"V,E,F,χ={counts} word length={total}"


def criterion_2():
    h = homology_summary(F.PENTAGON)
    ok = (h.h0_rank, h.h1_rank, h.h1_torsion, h.h2_rank) == (1, 0, (), 0)
    for s in (F.SURFACE_1, F.SURFACE_2, F.SURFACE_3):
        g = homology_summary(s)
        ok &= (g.h1_rank, g.h1_torsion, g.h2_rank) == (0, (), 1)
    return ok, f"pentagon {h}; complexity-one surfaces h1=0 h2=Z"


def _rotations(w):
    return {tuple(w[k:] + w[:k]) for k in range(len(w))}


def _parse_rels(p, rels):
    q = parse_presentation("gens " + " ".join(p.generators) + "\n" +
                           "".join(f"rel {r}\n" for r in rels))
    return q.relators


# relators as printed for the two collapses; the sixth T1 relator is printed
# with +x5, which the surface does not produce (see the ledger)
PRINTED_T1 = ["-x8 -x3 x6 -x2", "x6 -x7 x3 -x2", "-x8 x7 -x3", "-x5", "-x7 -x2 x5", "-x8 x6 x5"]
PRINTED_T2 = ["x4 -x3 x6", "-x9 x6 -x7 x3", "x7 -x3 x9", "x4 -x5 -x9", "-x7 x4 x5", "x6 -x5"]


def criterion_3():
    p1 = collapse_tree(F.PENTAGON, F.T1)
    p2 = collapse_tree(F.PENTAGON, F.T2)
    want1 = _parse_rels(p1, PRINTED_T1)
    want2 = _parse_rels(p2, PRINTED_T2)
    t2_ok = p2.generators == ("x3", "x4", "x5", "x6", "x7", "x9") and all(
        tuple(a) in _rotations(list(b)) for a, b in zip(p2.relators, want2))
    t1_match = [tuple(a) in _rotations(list(b)) for a, b in zip(p1.relators, want1)]
    x5 = p1.generators.index("x5") + 1
    flipped = tuple(-x if abs(x) == x5 else x for x in want1[5])
    erratum = (not t1_match[5] and tuple(p1.relators[5]) in _rotations(list(flipped))
               and p2.word_str(p2.relators[5]) == "x6 -x5")
    t1_ok = p1.generators == ("x2", "x3", "x5", "x6", "x7", "x8") and all(t1_match[:5]) and erratum

    g = lambda p, n: p.generators.index(n) + 1
    q = eliminate_generator(p1, 4, g(p1, "x5"))
    q = eliminate_generator(q, 5, g(q, "x8"))
    q = eliminate_generator(q, 4, g(q, "x7"))
    mid_ok = str(q) == "< x2 x3 x6 | -x6 -x3 x6 -x2, x6 x2 x3 -x2, -x6 -x2 -x3 >"
    a = rename_generators(eliminate_generator(q, 3, g(q, "x6")), {"x2": "x", "x3": "y"})
    b = rename_generators(eliminate_generator(q, 1, g(q, "x2")), {"x3": "x", "x6": "y"})
    two_ok = (str(a) == "< x y | y x -y -x -y -x, -x -y x y -x >" and
              str(b) == "< x y | -x y x -y x y, -y -y x y -x >")
    detail = ("T2 exact; T1 relators 1-5 exact, relator 6 matches with the printed x5 "
              "sign flipped (T2 relator 6 from the same disk confirms); "
              "3- and 2-generator forms verbatim")
    return t1_ok and t2_ok and mid_ok and two_ok, detail


def criterion_4():
    counts = [len(_embedded(s)) for s in (F.SURFACE_1, F.SURFACE_2, F.SURFACE_3)]
    return counts == [1, 2, 2], f"embedded disks {counts}"


def criterion_5():
    ok = bundle_type(F.load("trivial4"), 2) == TRIVIAL
    ok &= bundle_type(F.load("nontrivial3"), 1) == NONTRIVIAL
    surfaces = disks = 0
    seed = 0
    while surfaces < 220:
        s = (random_special if seed % 3 else random_surface)(seed, 1 + seed % 7)
        seed += 1
        emb = _embedded(s)
        if not emb or not validate_surface(s).ok:
            continue
        surfaces += 1
        for d in emb:
            ok &= doubled_chain(s, d).closed_trivially
            disks += 1
    return ok, f"local patterns typed correctly; doubling holds on {disks} disks of {surfaces} surfaces"


def _check(s, out, mv):
    if out is POINT:
        return is_acyclic(s)
    return (validate_surface(out).ok and homology_summary(out) == homology_summary(s)
            and euler_characteristic(out) == euler_characteristic(s)
            and out.vertex_count - s.vertex_count == mv.vertex_delta)


WANT = {("T-move", 3): -1, ("U-move", 2): -1, ("trivial", 2): -2, ("nontrivial", 3): 0}


def criterion_6():
    ok = True
    seen = {}
    for s, d, fn in ((F.load("trivial4"), 2, op4_trivial_along),
                     (F.load("nontrivial3"), 1, op3_nontrivial_along)):
        out, mv = fn(s, d)
        ok &= _check(s, out, mv) and mv.vertex_delta == 0
        seen[fn.__name__] = mv.vertex_delta
    for s in _surfaces(400):
        for d in _embedded(s):
            n, bt = len(s.disks[d]), bundle_type(s, d)
            for r in range(n):
                try:
                    out, mv = reduce_disk(s, d, r)
                except NonCellular:
                    ok &= not is_acyclic(s)
                    continue
                ok &= _check(s, out, mv)
                ok &= apply_move(s, mv) == (out, mv)
                key = {(TRIVIAL, 3): ("T-move", 3), (NONTRIVIAL, 2): ("U-move", 2),
                       (TRIVIAL, 2): ("trivial", 2), (NONTRIVIAL, 3): ("nontrivial", 3)}.get((bt, n))
                if key:
                    ok &= mv.vertex_delta == WANT[key]
                    seen[key] = mv.vertex_delta
    ok &= all(k in seen for k in WANT)
    return ok, "deltas " + ", ".join(f"{k if isinstance(k, str) else k[0]}={v}"
                                     for k, v in seen.items())


def criterion_7():
    s = F.load("case3")
    out, _ = op3_nontrivial_along(s, 2, 0)
    red = [i for i, w in enumerate(out.disks) if sorted(map(abs, w)) == [4, 7, 12]]
    if len(red) != 1:
        return False, "red disk not found"
    chain = doubled_chain(out, red[0]).triples[:3]
    target = ((11, 7, -15), (15, -12, 13), (-13, 4, -11))
    m, ok = {}, True
    for x, y in zip((v for t in chain for v in t), (v for t in target for v in t)):
        img = abs(y) * (1 if (x > 0) == (y > 0) else -1)
        ok &= m.setdefault(abs(x), img) == img
    ok &= len({abs(v) for v in m.values()}) == len(m)
    ok &= bundle_type(out, red[0]) == TRIVIAL
    return ok, f"red chain {chain} is trivial"


def criterion_8():
    tr = reduce_to_point(F.PENTAGON, max_steps=200)
    verify_trace(tr)
    cur, h, ok = F.PENTAGON, homology_summary(F.PENTAGON), True
    for mv in tr.moves[:-1]:
        cur, _ = apply_move(cur, mv)
        ok &= homology_summary(cur) == h
    return ok and tr.reached_point and len(tr.moves) <= 200, \
        f"POINT in {len(tr.moves)} moves, trace replayed"


def criterion_9():
    rng = random.Random(9)
    ok = True
    for _ in range(25):
        k = rng.randint(1, 7)
        edges = [(v - 1, rng.randint(1, v - 1), v) for v in range(2, k + 1)]
        edges += [(k + i, rng.randint(1, k), rng.randint(1, k)) for i in range(rng.randint(0, 7))]
        ok &= len(spanning_trees((k, edges))) == matrix_tree_count((k, edges))
    n = len(spanning_trees(F.PENTAGON))
    paths = path_tree_count(F.PENTAGON)
    ok &= n == matrix_tree_count(F.PENTAGON) == 125 and paths == 60
    return ok, f"pentagon: {n} spanning trees (matrix-tree {matrix_tree_count(F.PENTAGON)}), {paths} path trees"


def criterion_10():
    rng = random.Random(10)
    ok, applied = True, 0
    while applied < 1000:
        n = rng.randint(2, 4)
        p = GroupPresentation(tuple(f"x{i}" for i in range(1, n + 1)), tuple(
            free_reduce(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(4))
            for _ in range(n)))
        d = abelian_determinant(p)
        for _ in range(40):
            i = rng.randint(1, n)
            kind = rng.choice(("AC1", "AC2", "AC3"))
            if kind == "AC1":
                m = ACMove("AC1", i, rng.choice([j for j in range(1, n + 1) if j != i]))
            elif kind == "AC2":
                m = ACMove("AC2", i)
            else:
                m = ACMove("AC3", i, g=rng.choice((1, -1)) * rng.randint(1, n))
            p = apply_ac_move(p, m)
            ok &= abelian_determinant(p) == d
            applied += 1
    t1 = collapse_tree(F.PENTAGON, F.T1)
    det = abelian_determinant(t1)
    res = bounded_trivialization_search(t1, budget=20000)
    found = res.found and apply_moves(t1, res.moves).is_empty()
    return ok and det == 1 and found, \
        f"|det| stable over {applied} moves; T1 |det|={det}; witness of {len(res.moves or [])} moves"


def criterion_11(tmp_dir):
    cats = {"complexity1": open(F.data_path("complexity1.cat")).read()}
    cats["fixtures"] = serialize_catalog(
        [F.load(n) for n in ("pentagon", "trivial4", "nontrivial3", "case3")])
    acyclic = [s for s in (random_special(seed, 4 + seed % 3) for seed in range(3000))
               if is_acyclic(s)][:15]
    cats["random"] = serialize_catalog(list(_surfaces(40)) + acyclic)
    ok, notes = True, []
    for name, text in cats.items():
        path = tmp_dir / f"{name}.cat"
        path.write_text(text)
        out = io.StringIO()
        code = cli.main(["scan", str(path), "--reduce"], out=out)
        lines = out.getvalue().splitlines()
        ok &= code == 0 and "violations=0" in lines[-1]
        ok &= all("first_case=" in line for line in lines[:-1] if "valid=yes" in line)
        notes.append(f"{name}: {lines[-1]}")
    return ok, "; ".join(notes)


LIMITS = {1: 1, 2: 1, 3: 1, 4: None, 5: 30, 6: 60, 7: None, 8: 10, 9: 5, 10: 60, 11: None}


def run_criterion(k, tmp_dir=None):
    fn = globals()[f"criterion_{k}"]
    t0 = time.perf_counter()
    try:
        ok, detail = fn(tmp_dir) if k == 11 else fn()
    except Exception as exc:  # a crash is a failure, reported like one
        ok, detail = False, f"raised {exc!r}"
    took = time.perf_counter() - t0
    limit = LIMITS[k]
    if limit is not None and took >= limit:
        ok, detail = False, detail + f"; took {took:.2f}s, limit {limit}s"
    RESULTS[k] = (ok, f"{detail} [{took:.2f}s]")
    return ok, RESULTS[k][1]


@pytest.mark.parametrize("k", range(1, 12))
def test_criterion(k, tmp_path):
    ok, detail = run_criterion(k, tmp_path)
    assert ok, detail


def summary_lines():
    return [f"criterion {k:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
            for k, (ok, detail) in sorted(RESULTS.items())]


if __name__ == "__main__":
    import pathlib
    import tempfile
    with tempfile.TemporaryDirectory() as d:
        for k in range(1, 12):
            run_criterion(k, pathlib.Path(d))
    print("\n".join(summary_lines()))
