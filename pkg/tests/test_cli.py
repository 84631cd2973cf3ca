import io

import pytest

from fakesurface import cli
from fakesurface import fixtures as F
from fakesurface.reduction.driver import InvariantViolation
from fakesurface.surface import serialize_catalog, serialize_surface


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def pentagon(tmp_path):
    path = tmp_path / "pentagon.fs"
    path.write_text(serialize_surface(F.PENTAGON))
    return str(path)


def test_validate(pentagon):
    assert run("validate", pentagon) == (0, "valid, V=5 E=10 F=6 χ=1\n")


def test_validate_invalid(tmp_path):
    path = tmp_path / "bad.fs"
    path.write_text("vertices 1\nedge 1 1 1\ndisk 1\n")
    code, text = run("validate", str(path))
    assert code == 1 and text.startswith("invalid")


def test_parse_error_and_missing_file(tmp_path, capsys):
    path = tmp_path / "bad.fs"
    path.write_text("vertices 1\nedge 1 1 1\ndisk 0\n")
    assert run("validate", str(path))[0] == 1
    assert "line 3" in capsys.readouterr().err
    assert run("validate", str(tmp_path / "nope.fs"))[0] == 1


def test_unknown_command():
    assert run("frobnicate")[0] == 1


def test_homology(pentagon):
    code, text = run("homology", pentagon)
    assert code == 0
    assert "h0=1 h1=0 torsion=- h2=0 acyclic=yes" in text


def test_disks(pentagon):
    code, text = run("disks", pentagon)
    assert code == 0 and text.splitlines()[-1] == "embedded_count=4"
    assert "disk=2 length=5 boundary_vertices=5 embedded=yes bundle=trivial" in text


def test_trees(pentagon):
    code, text = run("trees", pentagon, "--count-only")
    assert (code, text) == (0, "count=125 matrix_tree=125 path_trees=60\n")
    code, text = run("trees", pentagon)
    assert text.count("tree ") == 125


def test_present(pentagon, tmp_path):
    code, text = run("present", pentagon, "--tree", "1,-4,10,9")
    assert code == 0
    assert text.startswith("gens x2 x3 x5 x6 x7 x8\nrel -x8 -x3 x6 -x2\n")
    assert "det=1" in text
    script = tmp_path / "elim.txt"
    script.write_text("ELIM 4 x5\nELIM 5 x8\nELIM 4 x7\nELIM 3 x6\n")
    code, text = run("present", pentagon, "--tree", "1,4,10,9", "--eliminate", str(script))
    assert text.startswith("gens x2 x3\nrel x3 x2 -x3 -x2 -x3 -x2\nrel -x2 -x3 x2 x3 -x2\n")
    assert run("present", pentagon, "--tree", "1,2,3")[0] == 1


def test_reduce(pentagon, tmp_path):
    trace = tmp_path / "out.trace"
    code, text = run("reduce", pentagon, "--max-steps", "200", "--trace", str(trace))
    assert code == 0 and text.startswith("result=POINT")
    assert trace.read_text().rstrip().endswith("end POINT")


def test_reduce_failures(tmp_path, pentagon):
    s1 = tmp_path / "s1.fs"
    s1.write_text(serialize_surface(F.SURFACE_1))
    assert run("reduce", str(s1))[0] == 2
    assert run("reduce", pentagon, "--max-steps", "1")[0] == 2


def test_invariant_violation_exit_code(pentagon, monkeypatch):
    def broken(*a, **k):
        raise InvariantViolation("homology changed")
    monkeypatch.setattr(cli, "reduce_to_point", broken)
    assert run("reduce", pentagon)[0] == 3


def test_ac(tmp_path):
    pres = tmp_path / "p.txt"
    pres.write_text("gens x y\nrel x y -x -y -y\nrel x\n")
    moves = tmp_path / "m.txt"
    moves.write_text("ELIM 2 x\nAC5 1\n")
    code, text = run("ac", str(pres), "--moves", str(moves))
    assert code == 0 and "# trivial=yes" in text
    code, text = run("ac", str(pres), "--search")
    assert code == 0 and text.startswith("search=found")
    pres.write_text("gens x y\nrel x y -x -y\nrel x\n")
    code, text = run("ac", str(pres), "--search", "--budget", "100")
    assert code == 2 and text.startswith("search=exhausted")
    moves.write_text("AC9 1\n")
    assert run("ac", str(pres), "--moves", str(moves))[0] == 1


def test_scan_complexity_one(tmp_path):
    report = tmp_path / "report.txt"
    code, text = run("scan", str(F.data_path("complexity1.cat")), "--reduce", "--report", str(report))
    assert code == 0
    lines = text.splitlines()
    assert len(lines) == 4
    for line in lines[:3]:
        assert "valid=yes" in line and "h1=0 torsion=- h2=1" in line
        assert "reduce=skipped(not acyclic)" in line
    assert lines[-1] == "entries=3 valid=3 point=0 violations=0 no_witness=-"
    assert report.read_text() == text


def test_scan_records_bad_entries_and_continues(tmp_path):
    cat = tmp_path / "mixed.cat"
    cat.write_text(serialize_surface(F.PENTAGON) + "\n" +
                   "surface broken\nvertices 1\nedge 1 1 1\ndisk 1\n\n"
                   "surface garbled\nvertices 1\nedge 1 1 1\ndisk 0\n")
    code, text = run("scan", str(cat), "--reduce")
    lines = text.splitlines()
    assert code == 0 and len(lines) == 4
    assert "reduce=POINT" in lines[0] and "first_case=7" in lines[0]
    assert "name=broken valid=no" in lines[1]
    assert "error=" in lines[2]
    assert lines[-1].startswith("entries=3 valid=1 point=1 violations=0")


def test_scan_lists_surfaces_without_witness(tmp_path):
    from randsurf import random_surface
    from fakesurface.reduction import detect_cases
    s = next(s for s in (random_surface(seed, 3) for seed in range(500)) if not detect_cases(s))
    cat = tmp_path / "c.cat"
    cat.write_text(serialize_catalog([s.renamed("lonely")]))
    code, text = run("scan", str(cat))
    assert text.splitlines()[-1].endswith("no_witness=lonely")


def test_scan_empty_and_unreadable(tmp_path):
    cat = tmp_path / "empty.cat"
    cat.write_text("# nothing here\n")
    assert run("scan", str(cat)) == (0, "entries=0 valid=0 point=0 violations=0 no_witness=-\n")
    assert run("scan", str(tmp_path / "missing.cat"))[0] == 1


def test_scan_parallel_output_matches_serial(tmp_path):
    from randsurf import random_special
    cat = tmp_path / "r.cat"
    cat.write_text(serialize_catalog([F.PENTAGON] + [random_special(s, 4) for s in range(6)]))
    serial = run("scan", str(cat), "--reduce")
    assert run("scan", str(cat), "--reduce", "--jobs", "3") == serial
    assert run("scan", str(cat), "--reduce") == serial
