"""Drive a surface down to a point and record the moves as a replayable trace."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..disks import TRIVIAL, bundle_type, embedded_disks
from ..homology import homology_summary, is_acyclic
from ..surface import (FakeSurface, canonical_form, euler_characteristic, parse_surface,
                       serialize_surface, validate_surface)
from .cases import CaseWitness, detect_cases
from .moves import (GENERIC_NONTRIVIAL, GENERIC_TRIVIAL, LOOP, OP3, OP4, KINDS, MoveError,
                    ReductionMove, apply_move, loop_move, reduce_disk)
from .work import POINT, NonCellular

LOOKAHEAD = 5
NO_CASE = 0  # improvement found by the fallback search, not by a listed configuration


class ReductionFailed(RuntimeError):
    def __init__(self, reason, surface, trace=None):
        super().__init__(reason)
        self.reason = reason
        self.surface = surface
        self.trace = trace


class InvariantViolation(AssertionError):
    """A move changed homology, broke validity, or a trace failed to replay."""


@dataclass
class ZigzagTrace:
    start: FakeSurface
    moves: List[ReductionMove] = field(default_factory=list)
    end: object = None
    fired: List[Tuple[int, Tuple[int, ...]]] = field(default_factory=list)  # (case, disks) per stage
    stage_of_move: List[int] = field(default_factory=list)

    @property
    def reached_point(self):
        return self.end is POINT

    @property
    def first_case(self) -> Optional[int]:
        return self.fired[0][0] if self.fired else None


def complexity(s) -> int:
    return 0 if s is POINT else s.vertex_count


def check_move(before: FakeSurface, after, move: ReductionMove):
    h = homology_summary(before)
    if after is POINT:
        if not is_acyclic(before):
            raise InvariantViolation(f"{move.kind} reached a point from a non-acyclic surface")
        return
    report = validate_surface(after)
    if not report.ok:
        raise InvariantViolation(f"{move.kind} produced an invalid surface: {report.violations[0]}")
    if homology_summary(after) != h:
        raise InvariantViolation(f"{move.kind} changed homology: {h} -> {homology_summary(after)}")
    if euler_characteristic(after) != euler_characteristic(before):
        raise InvariantViolation(f"{move.kind} changed the Euler characteristic")


def _kind_for(surface, d):
    n = len(surface.disks[d])
    trivial = bundle_type(surface, d) == TRIVIAL
    if n == 4 and trivial:
        return OP4
    if n == 3 and not trivial:
        return OP3
    return None


def _moves_on(surface, d, preferred=()):
    n = len(surface.disks[d])
    order = [r % n for r in preferred] + [r for r in range(n) if r not in preferred]
    seen = []
    for r in order:
        if r not in seen:
            seen.append(r)
    kind = _kind_for(surface, d)
    for r in seen:
        yield lambda s=surface, d=d, r=r: reduce_disk(s, d, r, kind)
    if n == 1 and bundle_type(surface, d) != TRIVIAL:
        yield lambda s=surface, d=d: loop_move(s, d)


def _candidates(surface, w: CaseWitness):
    """First moves of the witness's pipeline, most promising first."""
    if w.case_id in (1, 2):
        yield from _moves_on(surface, w.disks[0])
        return
    emb = {r.disk_index: r for r in embedded_disks(surface)}
    preferred = ()
    shared = w.get("shared")
    if w.case_id == 4 and shared:
        preferred = (shared[0][0] - 1,)
    elif w.case_id == 5 and shared:
        preferred = tuple(p - 1 for p in shared)
    elif w.case_id == 7 and shared:
        # walk the 5-gon so that the two shared edges are the ones dropped on one side
        n = len(surface.disks[w.disks[0]])
        p, q = shared
        preferred = (p + 1,) if (q - p) % n == 2 else (q + 1,)
    elif w.case_id in (6, 8):
        r, _ = w.get("rotation")
        preferred = (r, r + 2)
    for i, d in enumerate(w.disks):
        rep = emb.get(d)
        if rep is None or not rep.embedded or rep.length > 5:
            continue
        if w.case_id in (3, 4) and rep.length == 3 and bundle_type(surface, d) == TRIVIAL:
            continue  # case 1 covers it
        yield from _moves_on(surface, d, preferred if i == 0 else ())


def _fallback(surface):
    reps = sorted((r.length, r.disk_index) for r in embedded_disks(surface)
                  if r.embedded and r.length <= 5)
    for _, d in reps:
        yield from _moves_on(surface, d)


def _try(thunk):
    try:
        return thunk()
    except (NonCellular, MoveError):
        return None


def _improve(surface, target, depth, seen, stats):
    """Moves leading from ``surface`` to complexity below ``target``, or None."""
    stats["nodes"] = stats.get("nodes", 0) + 1
    witnesses = detect_cases(surface)
    sources = [(w, _candidates(surface, w)) for w in witnesses]
    sources.append((CaseWitness(NO_CASE, ()), _fallback(surface)))
    for w, gen in sources:
        for thunk in gen:
            got = _try(thunk)
            if got is None:
                continue
            out, mv = got
            check_move(surface, out, mv)
            c = complexity(out)
            if c < target:
                return w, [(mv, out)]
            if depth + 1 >= LOOKAHEAD or c > target + 1:
                continue
            key = canonical_form(out)
            if key in seen:
                continue
            seen.add(key)
            rest = _improve(out, target, depth + 1, seen, stats)
            if rest is not None:
                return w, [(mv, out)] + rest[1]
    return None


def reduce_to_point(surface: FakeSurface, max_steps: Optional[int] = None,
                    force: bool = False, verify: bool = True) -> ZigzagTrace:
    """Reduce a contractible surface to a point, one complexity drop at a time."""
    if max_steps is None:
        max_steps = 10 * (surface.vertex_count + 10)
    report = validate_surface(surface)
    if not report.ok:
        raise ReductionFailed(f"invalid surface: {report.violations[0]}", surface)
    trace = ZigzagTrace(surface)
    if not force and not is_acyclic(surface):
        raise ReductionFailed("surface is not acyclic, so it cannot reach a point", surface, trace)
    cur = surface
    while cur is not POINT:
        found = _improve(cur, complexity(cur), 0, set(), {})
        if found is None:
            trace.end = cur
            raise ReductionFailed("no reducing configuration found", cur, trace)
        w, steps = found
        if len(trace.moves) + len(steps) > max_steps:
            trace.end = cur
            raise ReductionFailed(f"step limit {max_steps} reached", cur, trace)
        trace.fired.append((w.case_id, w.disks))
        for mv, out in steps:
            trace.moves.append(mv)
            trace.stage_of_move.append(len(trace.fired) - 1)
        cur = steps[-1][1]
    trace.end = cur
    if verify:
        verify_trace(trace)
    return trace


def replay(start: FakeSurface, moves):
    cur = start
    for mv in moves:
        if cur is POINT:
            raise InvariantViolation("move recorded after reaching a point")
        out, again = apply_move(cur, mv)
        if again != mv:
            raise InvariantViolation(f"replayed move differs: {again} != {mv}")
        check_move(cur, out, mv)
        cur = out
    return cur


def verify_trace(trace: ZigzagTrace):
    end = replay(trace.start, trace.moves)
    if (end is POINT) != (trace.end is POINT):
        raise InvariantViolation("trace replay ends differently")
    if end is not POINT and canonical_form(end) != canonical_form(trace.end):
        raise InvariantViolation("trace replay ends on a different surface")


# -- text format

def format_move(mv: ReductionMove) -> str:
    merged = ";".join(f"{a},{b}->{c}" for a, b, c in mv.merged_edges)
    return (f"move {mv.kind} disk={mv.disk_index} "
            f"along={','.join(map(str, mv.along_positions))} dV={mv.vertex_delta} "
            f"fresh={','.join(map(str, mv.fresh_edges))} merged={merged}")


def format_trace(trace: ZigzagTrace) -> str:
    lines = []
    for i, mv in enumerate(trace.moves):
        stage = trace.stage_of_move[i] if i < len(trace.stage_of_move) else None
        if stage is not None and (i == 0 or trace.stage_of_move[i - 1] != stage):
            case, disks = trace.fired[stage]
            lines.append(f"# case {case} disks={','.join(map(str, disks))}")
        lines.append(format_move(mv))
    if trace.end is POINT:
        lines.append("end POINT")
    else:
        lines.append("end surface")
        lines.append(serialize_surface(trace.end).rstrip("\n"))
    return "\n".join(lines) + "\n"


def _ints(text):
    return tuple(int(x) for x in text.split(",") if x)


def parse_move(line: str) -> ReductionMove:
    parts = line.split()
    if len(parts) < 2 or parts[0] != "move" or parts[1] not in KINDS:
        raise ValueError(f"not a move line: {line!r}")
    fields = dict(p.split("=", 1) for p in parts[2:])
    merged = []
    for item in filter(None, fields.get("merged", "").split(";")):
        ab, c = item.split("->")
        a, b = _ints(ab)
        merged.append((a, b, int(c)))
    return ReductionMove(parts[1], int(fields["disk"]), _ints(fields.get("along", "")),
                         _ints(fields.get("fresh", "")), tuple(merged), int(fields["dV"]))


def parse_trace(text: str, start: FakeSurface) -> ZigzagTrace:
    lines = text.splitlines()
    trace = ZigzagTrace(start)
    for i, line in enumerate(lines):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s == "end POINT":
            trace.end = POINT
            return trace
        if s == "end surface":
            trace.end = parse_surface("\n".join(lines[i + 1:]))
            return trace
        trace.moves.append(parse_move(s))
    raise ValueError("trace has no end line")
