"""Misalignment detection: cycle splicing, reducibility search, classification.

The pipeline per trajectory:

1. splice out cycles (a repeated state means the actions between the two
   visits were wasted), each multi-action cycle being one cognitive-
   dissonance finding;
2. walk the intention segments; a segment of several actions that a single
   bounded action could have produced is user unfamiliarity, one that no
   single action reproduces is a functional inadequacy of the tool set;
3. if the last segment ends the trajectory, compare the final grid with the
   task answer: a mismatch is cognitive dissonance, a match records the
   segment as a newly discovered intention.

Cycle eligibility compares grids AND clipboards: a pair of states that agree
on the grid but not the clipboard (e.g. before/after a copy) is not spliced,
because cutting it would break replayability of the reduced action list.
Grid-preserving single steps (copy of the same content, submit, select) are
spliced silently; only cycles spanning two or more actions are findings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

from .actions import operation_tags, selection_family_with_boxes
from .errors import SegmentOutOfBounds, TrajlensError
from .grid import (
    GRID_PRESERVING,
    MOVE_DELTAS,
    Action,
    OpKind,
    State,
    apply_action,
    state_key,
)
from .replay import Trajectory
from .tasks import TaskSpec


class MisalignmentKind(Enum):
    COGNITIVE_DISSONANCE = "cognitive_dissonance"
    USER_UNFAMILIARITY = "user_unfamiliarity"
    FUNCTIONAL_INADEQUACY = "functional_inadequacy"


class IntentionSource(Enum):
    ANNOTATED = "annotated"
    AUTO_SEGMENTED = "auto_segmented"
    GENERATOR_TRUTH = "generator_truth"


@dataclass(frozen=True)
class IntentionSegment:
    """Half-open state-index range [start, end] realizing one intention."""

    start: int
    end: int
    label: str

    def __post_init__(self):
        if not (0 <= self.start < self.end):
            raise ValueError(f"bad segment [{self.start}, {self.end}]")


@dataclass(frozen=True)
class IntentionSet:
    segments: tuple[IntentionSegment, ...]
    source: IntentionSource

    def __post_init__(self):
        prev_end = 0
        for seg in self.segments:
            if seg.start < prev_end:
                raise ValueError("segments overlap or are unordered")
            prev_end = seg.end


@dataclass(frozen=True)
class Finding:
    """One classified misalignment, anchored to original state indices."""

    kind: MisalignmentKind
    start: int
    end: int
    evidence: str


@dataclass(frozen=True)
class ReducedTrajectory:
    """A trajectory with its cycles spliced out.

    States are the surviving originals (so clipboards and submissions remain
    intact); original_indices maps each surviving state back to its index in
    the unreduced trajectory.
    """

    states: tuple[State, ...]
    actions: tuple[Action, ...]
    original_indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.states) != len(self.actions) + 1:
            raise ValueError("state/action count mismatch")


@dataclass(frozen=True)
class MisalignmentReport:
    trajectory_id: str
    findings: tuple[Finding, ...]
    reduced: ReducedTrajectory
    discovered_intentions: tuple[IntentionSegment, ...]

    def counts(self) -> dict[MisalignmentKind, int]:
        out = {kind: 0 for kind in MisalignmentKind}
        for f in self.findings:
            out[f.kind] += 1
        return out


# --- cycle splicing -----------------------------------------------------------


def _splice_eligible(a: State, b: State) -> bool:
    return state_key(a) == state_key(b) and a.clipboard == b.clipboard


@dataclass(frozen=True)
class SpliceResult:
    reduced: ReducedTrajectory
    findings: tuple[Finding, ...]


def splice_cycles(trajectory: Trajectory) -> SpliceResult:
    """Remove cycles to fixpoint, earliest start first, then shortest.

    Each spliced cycle of two or more actions yields one cognitive-
    dissonance finding; single no-op steps are removed without findings.
    """
    states = list(trajectory.states)
    actions = list(trajectory.record.actions)
    original = list(range(len(states)))
    findings: list[Finding] = []

    while True:
        found = None
        for i in range(len(states)):
            for j in range(i + 1, len(states)):
                if _splice_eligible(states[i], states[j]):
                    found = (i, j)
                    break
            if found:
                break
        if found is None:
            break
        i, j = found
        if j > i + 1:
            findings.append(
                Finding(
                    MisalignmentKind.COGNITIVE_DISSONANCE,
                    original[i],
                    original[j],
                    f"{j - i} actions return to an earlier state and are undone",
                )
            )
        del states[i + 1 : j + 1]
        del actions[i:j]
        del original[i + 1 : j + 1]

    reduced = ReducedTrajectory(tuple(states), tuple(actions), tuple(original))
    return SpliceResult(reduced, tuple(findings))


# --- single-action reducibility search ----------------------------------------


def _diff_cells(a, b) -> list[int]:
    return [i for i in range(len(a.cells)) if a.cells[i] != b.cells[i]]


def _bbox_of_indices(indices: Sequence[int], width: int):
    rows = [i // width for i in indices]
    cols = [i % width for i in indices]
    return min(rows), min(cols), max(rows), max(cols)


def _covers(outer, inner) -> bool:
    return (
        outer[0] <= inner[0]
        and outer[1] <= inner[1]
        and outer[2] >= inner[2]
        and outer[3] >= inner[3]
    )


def find_single_action(source: State, target: State) -> Optional[Action]:
    """First bounded action carrying source onto target's grid, if any.

    Equality is grid-only, so grid-preserving prerequisites never block a
    reduction. The scan honors the canonical family order exactly; cheap
    reject-only prechecks (an action can only match if its effect region
    covers every differing cell) keep it fast on large grids.
    """
    src_key = state_key(source)
    dst_key = state_key(target)
    sg, tg = source.grid, target.grid
    same_dims = (sg.height, sg.width) == (tg.height, tg.width)

    diff_box = None
    paintable: Optional[int] = None
    if same_dims:
        diff = _diff_cells(sg, tg)
        if diff:
            diff_box = _bbox_of_indices(diff, sg.width)
            wanted = {tg.cells[i] for i in diff}
            paintable = wanted.pop() if len(wanted) == 1 else -1

    boxed = selection_family_with_boxes(sg)
    selections = [sel for _, sel in boxed]
    boxes = [box for box, _ in boxed]

    def check(op, sel) -> Optional[Action]:
        action = Action(op, sel)
        try:
            result = apply_action(source, action)
        except TrajlensError:
            return None
        if state_key(result) == dst_key:
            # soundness assertion demanded of every return
            assert state_key(apply_action(source, action)) == dst_key
            return action
        return None

    for op in operation_tags():
        kind = op.kind
        if kind in GRID_PRESERVING:
            if src_key == dst_key:
                return check(op, selections[0])
            continue
        if kind is OpKind.RESIZE:
            if op.dims != (tg.height, tg.width):
                continue
            hit = check(op, selections[0])
            if hit is not None:
                return hit
            continue
        if not same_dims:
            continue

        if kind in MOVE_DELTAS:
            dr, dc = MOVE_DELTAS[kind]
            for sel, box in zip(selections, boxes):
                if diff_box is not None:
                    reach = (
                        box[0] + min(dr, 0),
                        box[1] + min(dc, 0),
                        box[2] + max(dr, 0),
                        box[3] + max(dc, 0),
                    )
                    if not _covers(reach, diff_box):
                        continue
                hit = check(op, sel)
                if hit is not None:
                    return hit
        elif kind in (OpKind.ROTATE_CW, OpKind.ROTATE_CCW, OpKind.FLIP_H, OpKind.FLIP_V):
            square = kind in (OpKind.ROTATE_CW, OpKind.ROTATE_CCW)
            for sel, box in zip(selections, boxes):
                if square and (box[2] - box[0]) != (box[3] - box[1]):
                    continue
                if diff_box is not None and not _covers(box, diff_box):
                    continue
                hit = check(op, sel)
                if hit is not None:
                    return hit
        elif kind is OpKind.PAINT:
            if diff_box is not None and paintable != op.color:
                continue
            for sel, box in zip(selections, boxes):
                if diff_box is not None and not _covers(box, diff_box):
                    continue
                hit = check(op, sel)
                if hit is not None:
                    return hit
        elif kind is OpKind.PASTE:
            clip = source.clipboard
            if clip is None:
                continue
            for sel, box in zip(selections, boxes):
                if diff_box is not None:
                    reach = (
                        box[0],
                        box[1],
                        min(sg.height - 1, box[0] + clip.height - 1),
                        min(sg.width - 1, box[1] + clip.width - 1),
                    )
                    if not _covers(reach, diff_box):
                        continue
                hit = check(op, sel)
                if hit is not None:
                    return hit
    return None


def naive_find_single_action(source: State, target: State) -> Optional[Action]:
    """Blind scan over the whole family; the independent oracle for the above."""
    from .actions import enumerate_bounded_actions

    dst_key = state_key(target)
    for action in enumerate_bounded_actions(source):
        try:
            result = apply_action(source, action)
        except TrajlensError:
            continue
        if state_key(result) == dst_key:
            return action
    return None


# --- segmentation -------------------------------------------------------------

_SINGLETON_KINDS = frozenset({OpKind.SUBMIT, OpKind.RESIZE})


def auto_segment(trajectory) -> IntentionSet:
    """Fallback segmentation for logs with no annotated intentions.

    Cuts at submits, at resizes, and between maximal runs of one operation
    tag; any Trajectory or ReducedTrajectory works.
    """
    actions = trajectory.actions
    segments = []
    i, n = 0, len(actions)
    while i < n:
        kind = actions[i].op.kind
        j = i + 1
        if kind not in _SINGLETON_KINDS:
            while j < n and actions[j].op.kind == kind and actions[j].op.kind not in _SINGLETON_KINDS:
                j += 1
        run = j - i
        label = kind.value if run == 1 else f"{kind.value} x{run}"
        segments.append(IntentionSegment(i, j, label))
        i = j
    return IntentionSet(tuple(segments), IntentionSource.AUTO_SEGMENTED)


# --- the full detector ---------------------------------------------------------


def detect(
    trajectory: Trajectory,
    intentions: Optional[IntentionSet],
    task: TaskSpec,
) -> MisalignmentReport:
    """Classify every misalignment in one trajectory.

    Intention indices address the cycle-reduced trajectory; passing None
    falls back to auto-segmentation of the reduced trajectory.
    """
    spliced = splice_cycles(trajectory)
    reduced = spliced.reduced
    findings = list(spliced.findings)
    if intentions is None:
        intentions = auto_segment(reduced)

    n = len(reduced.actions)
    for seg in intentions.segments:
        if seg.end > n:
            raise SegmentOutOfBounds(
                f"segment [{seg.start}, {seg.end}] exceeds reduced length {n}"
            )

    discovered: list[IntentionSegment] = []
    segments = intentions.segments
    for idx, seg in enumerate(segments):
        o_start, o_end = reduced.original_indices[seg.start], reduced.original_indices[seg.end]
        if seg.end > seg.start + 1:
            shortcut = find_single_action(reduced.states[seg.start], reduced.states[seg.end])
            if shortcut is not None:
                findings.append(
                    Finding(
                        MisalignmentKind.USER_UNFAMILIARITY,
                        o_start,
                        o_end,
                        f"'{seg.label}' ({seg.end - seg.start} actions) is one "
                        f"{shortcut.op.label()} away",
                    )
                )
            else:
                findings.append(
                    Finding(
                        MisalignmentKind.FUNCTIONAL_INADEQUACY,
                        o_start,
                        o_end,
                        f"'{seg.label}' ({seg.end - seg.start} actions) has no "
                        "single-action equivalent in the bounded family",
                    )
                )
        if idx == len(segments) - 1 and seg.end == n:
            if reduced.states[n].grid != task.answer:
                findings.append(
                    Finding(
                        MisalignmentKind.COGNITIVE_DISSONANCE,
                        o_start,
                        o_end,
                        "the trajectory ends on a grid that is not the answer",
                    )
                )
            else:
                discovered.append(seg)

    return MisalignmentReport(
        trajectory_id=trajectory.record.trajectory_id,
        findings=tuple(findings),
        reduced=reduced,
        discovered_intentions=tuple(discovered),
    )


# --- file formats ---------------------------------------------------------------


def intention_set_to_json(trajectory_id: str, intentions: IntentionSet) -> dict:
    return {
        "trajectory_id": trajectory_id,
        "source": intentions.source.value,
        "segments": [
            {"start": s.start, "end": s.end, "label": s.label} for s in intentions.segments
        ],
    }


def intention_set_from_json(obj) -> tuple[str, IntentionSet]:
    segments = tuple(
        IntentionSegment(s["start"], s["end"], s.get("label", ""))
        for s in obj["segments"]
    )
    source = IntentionSource(obj.get("source", "annotated"))
    return obj["trajectory_id"], IntentionSet(segments, source)


def save_intentions(sets: dict[str, IntentionSet], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = [intention_set_to_json(tid, s) for tid, s in sorted(sets.items())]
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path


def load_intentions(path: str | Path) -> dict[str, IntentionSet]:
    doc = json.loads(Path(path).read_text())
    if isinstance(doc, dict):
        doc = [doc]
    out = {}
    for obj in doc:
        tid, intentions = intention_set_from_json(obj)
        out[tid] = intentions
    return out


def report_to_json(report: MisalignmentReport) -> dict:
    from .logs import action_to_json

    return {
        "trajectory_id": report.trajectory_id,
        "findings": [
            {
                "kind": f.kind.value,
                "start": f.start,
                "end": f.end,
                "evidence": f.evidence,
            }
            for f in report.findings
        ],
        "reduced": {
            "actions": [action_to_json(a) for a in report.reduced.actions],
            "original_indices": list(report.reduced.original_indices),
            "final_grid": report.reduced.states[-1].grid.rows(),
        },
        "discovered_intentions": [
            {"start": s.start, "end": s.end, "label": s.label}
            for s in report.discovered_intentions
        ],
    }
