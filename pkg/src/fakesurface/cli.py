"""Command-line front end.

Every command writes plain text to stdout.  Machine-readable lines use
``key=value`` pairs separated by spaces.  Exit codes: 0 success, 1 bad input,
2 reduction or search gave up, 3 an internal invariant broke.
"""
from __future__ import annotations

import argparse
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from .disks import ChainError, bundle_type, embedded_disks
from .homology import homology_summary, is_acyclic
from .presentation import (PresentationError, abelian_determinant, apply_moves,
                           bounded_trivialization_search, collapse_tree, format_moves,
                           format_presentation, matrix_tree_count, parse_moves,
                           parse_presentation, path_tree_count, simplify_presentation,
                           spanning_trees)
from .reduction import (POINT, InvariantViolation, ReductionFailed, detect_cases,
                        format_trace, reduce_to_point)
from .surface import ParseError, euler_characteristic, parse_surface, validate_surface

OK, BAD_INPUT, GAVE_UP, BROKEN = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")


def _load_surface(path):
    try:
        return parse_surface(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}: {exc}")


def _fmt_homology(h):
    tors = ",".join(map(str, h.h1_torsion)) or "-"
    return f"h0={h.h0_rank} h1={h.h1_rank} torsion={tors} h2={h.h2_rank}"


def _counts(s):
    return f"V={s.vertex_count} E={s.edge_count} F={s.disk_count} χ={euler_characteristic(s)}"


# -- commands

def cmd_validate(args, out):
    s = _load_surface(args.file)
    report = validate_surface(s)
    if report.ok:
        print(f"valid, {_counts(s)}", file=out)
        return OK
    print(f"invalid, {_counts(s)}", file=out)
    for v in report.violations:
        print(f"violation: {v}", file=out)
    return BAD_INPUT


def _require_valid(s):
    report = validate_surface(s)
    if not report.ok:
        raise InputError(f"invalid surface: {report.violations[0]}")


def cmd_homology(args, out):
    s = _load_surface(args.file)
    _require_valid(s)
    h = homology_summary(s)
    print(h, file=out)
    print(f"{_fmt_homology(h)} acyclic={'yes' if is_acyclic(s) else 'no'}", file=out)
    return OK


def cmd_disks(args, out):
    s = _load_surface(args.file)
    _require_valid(s)
    for r in embedded_disks(s):
        line = (f"disk={r.disk_index} length={r.length} "
                f"boundary_vertices={r.boundary_vertex_count} embedded={'yes' if r.embedded else 'no'}")
        if r.embedded:
            try:
                line += f" bundle={bundle_type(s, r.disk_index)}"
            except ChainError as exc:
                line += f" bundle=error({exc})"
        print(line, file=out)
    n = sum(r.embedded for r in embedded_disks(s))
    print(f"embedded_count={n}", file=out)
    return OK


def cmd_trees(args, out):
    s = _load_surface(args.file)
    _require_valid(s)
    trees = spanning_trees(s)
    if not args.count_only:
        for t in trees:
            print("tree " + ",".join(map(str, sorted(t))), file=out)
    print(f"count={len(trees)} matrix_tree={matrix_tree_count(s)} path_trees={path_tree_count(s)}",
          file=out)
    return OK


def _ids(text):
    try:
        return [int(x) for x in re.split(r"[,\s]+", text.strip()) if x]
    except ValueError:
        raise InputError(f"bad id list: {text!r}")


def cmd_present(args, out):
    s = _load_surface(args.file)
    _require_valid(s)
    try:
        p = collapse_tree(s, _ids(args.tree))
        if args.eliminate:
            p = apply_moves(p, parse_moves(_read(args.eliminate), p))
        if args.simplify:
            p = simplify_presentation(p)
    except PresentationError as exc:
        raise InputError(str(exc))
    out.write(format_presentation(p))
    det = abelian_determinant(p)
    print(f"# generators={len(p.generators)} relators={len(p.relators)} "
          f"det={'-' if det is None else det}", file=out)
    return OK


def cmd_reduce(args, out):
    s = _load_surface(args.file)
    try:
        trace = reduce_to_point(s, max_steps=args.max_steps)
    except ReductionFailed as exc:
        print(f"result=failed reason={exc.reason!r}", file=out)
        if args.trace and exc.trace is not None and exc.trace.end is not None:
            _write(args.trace, format_trace(exc.trace))
        return GAVE_UP
    if args.trace:
        _write(args.trace, format_trace(trace))
    first = trace.first_case
    print(f"result=POINT steps={len(trace.moves)} first_case={'-' if first is None else first}",
          file=out)
    return OK


def cmd_ac(args, out):
    try:
        p = parse_presentation(_read(args.presentation))
        if args.moves:
            p = apply_moves(p, parse_moves(_read(args.moves), p))
    except PresentationError as exc:
        raise InputError(str(exc))
    if args.search:
        res = bounded_trivialization_search(p, budget=args.budget)
        if not res.found:
            print(f"search=exhausted expanded={res.expanded}", file=out)
            return GAVE_UP
        print(f"search=found expanded={res.expanded} moves={len(res.moves)}", file=out)
        out.write(format_moves(res.moves, p))
        return OK
    out.write(format_presentation(p))
    print(f"# trivial={'yes' if p.is_empty() else 'no'}", file=out)
    return OK


# -- catalog scanning

def _catalog_blocks(text):
    """Blank-line separated blocks as (first line number, block text); comment-only blocks dropped."""
    blocks, cur, start = [], [], None
    for n, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            if cur:
                blocks.append((start, "\n".join(cur)))
            cur, start = [], None
            continue
        if start is None:
            start = n
        cur.append(raw)
    if cur:
        blocks.append((start, "\n".join(cur)))
    return [(n, b) for n, b in blocks
            if any(line.split("#", 1)[0].strip() for line in b.splitlines())]


def scan_entry(job):
    """Work out one catalog record.  Returns (record line, status)."""
    line_no, text, do_reduce, max_steps = job
    try:
        s = parse_surface(text)
    except ParseError as exc:
        return f"line={line_no} name=? error={str(exc)!r}", "error"
    fields = [f"name={s.name}"]
    report = validate_surface(s)
    if not report.ok:
        fields.append("valid=no")
        fields.append(f"error={report.violations[0]!r}")
        return " ".join(fields), "invalid"
    h = homology_summary(s)
    wits = detect_cases(s)
    emb = [r.disk_index for r in embedded_disks(s) if r.embedded]
    fields += ["valid=yes", f"χ={euler_characteristic(s)}", _fmt_homology(h),
               "embedded=" + (",".join(map(str, emb)) or "-"),
               "cases=" + (",".join(str(w.case_id) for w in wits) or "-"),
               f"first_case={wits[0].case_id if wits else '-'}"]
    status = "ok" if wits else "no_witness"
    if do_reduce:
        if not is_acyclic(s):
            fields.append("reduce=skipped(not acyclic)")
        else:
            try:
                tr = reduce_to_point(s, max_steps=max_steps)
                fired = tr.first_case
                fields.append(f"reduce=POINT steps={len(tr.moves)} "
                              f"fired_first={'-' if fired is None else fired}")
                status = "point" if wits else "point_no_witness"
            except ReductionFailed as exc:
                fields.append(f"reduce=failed reason={exc.reason!r}")
            except InvariantViolation as exc:
                fields.append(f"reduce=violation reason={str(exc)!r}")
                status = "violation"
    return " ".join(fields), status


def cmd_scan(args, out):
    text = _read(args.catalog)
    jobs = [(n, b, args.reduce, args.max_steps) for n, b in _catalog_blocks(text)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(scan_entry, jobs))
    else:
        results = [scan_entry(j) for j in jobs]
    lines = [r for r, _ in results]
    statuses = [st for _, st in results]
    names = [re.search(r"name=(\S+)", r).group(1) for r in lines]
    no_wit = [nm for nm, st in zip(names, statuses) if st in ("no_witness", "point_no_witness")]
    summary = (f"entries={len(lines)} valid={sum(st not in ('error', 'invalid') for st in statuses)} "
               f"point={sum(st.startswith('point') for st in statuses)} "
               f"violations={statuses.count('violation')} "
               f"no_witness={','.join(no_wit) or '-'}")
    lines.append(summary)
    body = "\n".join(lines) + "\n"
    out.write(body)
    if args.report:
        _write(args.report, body)
    return BROKEN if "violation" in statuses else OK


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}")


def build_parser():
    ap = argparse.ArgumentParser(prog="fakesurface", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn in (("validate", cmd_validate), ("homology", cmd_homology), ("disks", cmd_disks)):
        sp = sub.add_parser(name)
        sp.add_argument("file")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("trees")
    sp.add_argument("file")
    sp.add_argument("--count-only", action="store_true")
    sp.set_defaults(func=cmd_trees)

    sp = sub.add_parser("present")
    sp.add_argument("file")
    sp.add_argument("--tree", required=True, help="edge ids, comma separated")
    sp.add_argument("--simplify", action="store_true")
    sp.add_argument("--eliminate", metavar="SCRIPT")
    sp.set_defaults(func=cmd_present)

    sp = sub.add_parser("reduce")
    sp.add_argument("file")
    sp.add_argument("--max-steps", type=int, default=None)
    sp.add_argument("--trace", metavar="OUT")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("ac")
    sp.add_argument("presentation")
    sp.add_argument("--moves", metavar="SCRIPT")
    sp.add_argument("--search", action="store_true", help="look for a trivialising move sequence")
    sp.add_argument("--budget", type=int, default=20000)
    sp.set_defaults(func=cmd_ac)

    sp = sub.add_parser("scan")
    sp.add_argument("catalog")
    sp.add_argument("--reduce", action="store_true")
    sp.add_argument("--max-steps", type=int, default=None)
    sp.add_argument("--report", metavar="OUT")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_scan)
    return ap


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return BROKEN


if __name__ == "__main__":
    sys.exit(main())
