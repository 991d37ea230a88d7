"""Synthetic labeled corpora: scripted tasks plus parameterized user models.

Each scripted task carries an ideal route (one action per intention) and a
pixel route (selected steps expanded into per-cell runs). Three user model
presets replay them:

* ideal — the scripted minimal solution, then a correct submit;
* unfamiliar — the pixel route, so multi-action steps are reducible to the
  single action they expanded, by construction;
* dissonant — the ideal route with injected do/undo flip pairs and, with
  probability error_rate, a stray final edit before submitting.

Every injection is recorded in the trajectory's truth labels with the same
index conventions the detector reports (original state indices for
findings, reduced indices for intention segments), so detector output can
be compared with ground truth exactly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from datetime import datetime, timedelta
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

from .detect import (
    Finding,
    IntentionSegment,
    IntentionSet,
    IntentionSource,
    MisalignmentKind,
    save_intentions,
)
from .errors import UnsolvableTask
from .grid import (
    COPY,
    FLIP_H,
    FLIP_V,
    MOVE_LEFT,
    MOVE_UP,
    PASTE,
    SUBMIT,
    Action,
    Grid,
    OpKind,
    Selection,
    State,
    apply_action,
    paint,
    resize,
)
from .logs import TrajectoryRecord, write_log
from .tasks import TaskSpec, save_task, write_task_manifest

# --- scripted tasks -------------------------------------------------------------


@dataclass(frozen=True)
class ScriptStep:
    """One intention of a scripted route and the actions realizing it."""

    label: str
    actions: tuple[Action, ...]

    def __post_init__(self):
        if not self.actions:
            raise ValueError("a script step needs at least one action")


@dataclass(frozen=True)
class ScriptedTask:
    spec: TaskSpec
    ideal_steps: tuple[ScriptStep, ...]
    pixel_steps: tuple[ScriptStep, ...]

    @property
    def task_id(self) -> str:
        return self.spec.task_id


def _replay_route(spec: TaskSpec, steps: Sequence[ScriptStep]) -> State:
    state = State.initial(spec.test_input)
    for step in steps:
        for action in step.actions:
            state = apply_action(state, action)
    return state


def _scripted(spec: TaskSpec, ideal, pixel=None) -> ScriptedTask:
    ideal = tuple(ideal)
    pixel = tuple(pixel) if pixel is not None else ideal
    for route in (ideal, pixel):
        final = _replay_route(spec, route)
        if final.grid != spec.answer:
            raise UnsolvableTask(f"script for {spec.task_id} does not reach the answer")
    return ScriptedTask(spec, ideal, pixel)


def _expand_paint(state: State, action: Action) -> tuple[Action, ...]:
    """Per-cell run equivalent to one multi-cell paint (changed cells only)."""
    color = action.op.color
    grid = state.grid
    cells = [rc for rc in action.selection.cells() if grid.at(*rc) != color]
    if len(cells) < 2:
        return (action,)
    return tuple(
        Action(paint(color), Selection.from_cells(grid.height, grid.width, [rc]))
        for rc in cells
    )


def _expand_paste(state: State, action: Action) -> tuple[Action, ...]:
    """Per-cell paint run equivalent to one paste of the loaded clipboard."""
    clip = state.clipboard
    if clip is None:
        raise ValueError("paste expansion needs a loaded clipboard")
    box = action.selection.bbox()
    top, left = (box[0], box[1]) if box else (0, 0)
    grid = state.grid
    runs = []
    for r in range(clip.height):
        for c in range(clip.width):
            tr, tc = top + r, left + c
            if tr < grid.height and tc < grid.width and grid.at(tr, tc) != clip.at(r, c):
                runs.append(
                    Action(
                        paint(clip.at(r, c)),
                        Selection.from_cells(grid.height, grid.width, [(tr, tc)]),
                    )
                )
    if len(runs) < 2:
        return (action,)
    return tuple(runs)


def _pixel_route(spec: TaskSpec, ideal: Sequence[ScriptStep]) -> tuple[ScriptStep, ...]:
    """Expand paint/paste steps into pixel-level runs, verifying each step
    still lands on the same state as the ideal route."""
    out = []
    state = State.initial(spec.test_input)
    for step in ideal:
        if len(step.actions) == 1 and step.actions[0].op.kind is OpKind.PAINT:
            expanded = _expand_paint(state, step.actions[0])
        elif len(step.actions) == 1 and step.actions[0].op.kind is OpKind.PASTE:
            expanded = _expand_paste(state, step.actions[0])
        else:
            expanded = step.actions
        probe = state
        for action in expanded:
            probe = apply_action(probe, action)
        for action in step.actions:
            state = apply_action(state, action)
        if probe.grid != state.grid:
            raise UnsolvableTask(f"expansion of '{step.label}' diverges")
        out.append(ScriptStep(step.label, tuple(expanded)))
    return tuple(out)


# --- hand-encoded fixture tasks ---------------------------------------------------


def _block(rows: list[list[int]], top: int, left: int, h: int, w: int, color: int):
    for r in range(top, top + h):
        for c in range(left, left + w):
            rows[r][c] = color


def task_49() -> ScriptedTask:
    """Crop-the-smallest-block puzzle on a 20x20 board.

    Several solid rectangles; the answer is the smallest one (a 3x3 magenta
    block). The top rows left of the block are kept clear so a pixel-level
    solver can slide it to the corner.
    """
    rows = [[0] * 20 for _ in range(20)]
    _block(rows, 0, 16, 3, 3, 6)  # the smallest block, top-right
    _block(rows, 6, 8, 4, 5, 2)
    _block(rows, 12, 14, 5, 5, 1)
    _block(rows, 14, 0, 4, 4, 4)
    test_input = Grid.from_rows(rows)
    answer = Grid.filled(3, 3, 6)

    train_in = [[0] * 12 for _ in range(12)]
    _block(train_in, 1, 9, 2, 2, 3)
    _block(train_in, 5, 2, 5, 5, 2)
    train = (Grid.from_rows(train_in), Grid.filled(2, 2, 3))

    spec = TaskSpec("49", (train,), test_input, answer)
    ideal = [
        ScriptStep(
            "copy the smallest block",
            (Action(COPY, Selection.rect(20, 20, 0, 16, 2, 18)),),
        ),
        ScriptStep(
            "paste it at the top-left corner",
            (Action(PASTE, Selection.rect(20, 20, 0, 0, 2, 2)),),
        ),
        ScriptStep(
            "crop the grid to the block",
            (Action(resize(3, 3), Selection.full(20, 20)),),
        ),
    ]
    moves = tuple(
        Action(MOVE_LEFT, Selection.rect(20, 20, 0, 16 - i, 2, 18 - i))
        for i in range(16)
    )
    pixel = [
        ScriptStep("move the small block to the top-left corner", moves),
        ScriptStep(
            "crop the grid to the block",
            (Action(resize(3, 3), Selection.full(20, 20)),),
        ),
    ]
    return _scripted(spec, ideal, pixel)


_WAVE = (2, 2, 7, 7)  # square-wave column per row, period 4


def task_124() -> ScriptedTask:
    """Grow-the-grid puzzle: make the 8x10 board square and continue the
    magenta square-wave into the two new rows (both new cells share column 2)."""
    rows = [[0] * 10 for _ in range(8)]
    for r in range(8):
        rows[r][_WAVE[r % 4]] = 6
    test_input = Grid.from_rows(rows)
    ans = [[0] * 10 for _ in range(10)]
    for r in range(10):
        ans[r][_WAVE[r % 4]] = 6
    answer = Grid.from_rows(ans)

    train_in = [[0] * 6 for _ in range(4)]
    wave_small = (1, 1, 4, 4)
    for r in range(4):
        train_in[r][wave_small[r % 4]] = 6
    train_out = [[0] * 6 for _ in range(6)]
    for r in range(6):
        train_out[r][wave_small[r % 4]] = 6
    train = (Grid.from_rows(train_in), Grid.from_rows(train_out))

    spec = TaskSpec("124", (train,), test_input, answer)
    ideal = [
        ScriptStep("make the grid square", (Action(resize(10, 10), Selection.full(8, 10)),)),
        ScriptStep(
            "continue the zigzag",
            (Action(paint(6), Selection.rect(10, 10, 8, 2, 9, 2)),),
        ),
    ]
    return _scripted(spec, ideal, _pixel_route(spec, ideal))


def identity_task() -> ScriptedTask:
    """1x1 task whose answer is its input; solvable by submitting alone."""
    grid = Grid.from_rows([[5]])
    spec = TaskSpec("identity-1x1", ((grid, grid),), grid, grid)
    return ScriptedTask(spec, (), ())


# --- parametric families -----------------------------------------------------------


def extend_stripe_task(
    task_id: str, height: int, width: int, extension: int, column: int, color: int = 6
) -> ScriptedTask:
    """Vertical stripe that must be continued to the bottom after growing
    the grid by `extension` rows."""
    rows = [[0] * width for _ in range(height)]
    for r in range(height):
        rows[r][column] = color
    test_input = Grid.from_rows(rows)
    new_h = height + extension
    ans = [[0] * width for _ in range(new_h)]
    for r in range(new_h):
        ans[r][column] = color
    answer = Grid.from_rows(ans)

    t_in = [[0] * width for _ in range(max(1, height - 1))]
    for r in range(max(1, height - 1)):
        t_in[r][column] = color
    t_out = [[0] * width for _ in range(max(1, height - 1) + extension)]
    for r in range(len(t_out)):
        t_out[r][column] = color
    train = (Grid.from_rows(t_in), Grid.from_rows(t_out))

    spec = TaskSpec(task_id, (train,), test_input, answer)
    ideal = [
        ScriptStep("grow the grid", (Action(resize(new_h, width), Selection.full(height, width)),)),
        ScriptStep(
            "extend the stripe",
            (Action(paint(color), Selection.rect(new_h, width, height, column, new_h - 1, column)),),
        ),
    ]
    return _scripted(spec, ideal, _pixel_route(spec, ideal))


def recolor_rects_task(
    task_id: str,
    height: int,
    width: int,
    rects: Sequence[tuple[int, int, int, int, int]],
    target_color: int,
) -> ScriptedTask:
    """Solid rectangles that must all be recolored to one target color."""
    rows = [[0] * width for _ in range(height)]
    for top, left, bottom, right, color in rects:
        _block(rows, top, left, bottom - top + 1, right - left + 1, color)
    test_input = Grid.from_rows(rows)
    ans = [[0] * width for _ in range(height)]
    for top, left, bottom, right, _color in rects:
        _block(ans, top, left, bottom - top + 1, right - left + 1, target_color)
    answer = Grid.from_rows(ans)

    first = rects[0]
    t_in = [[0] * 4 for _ in range(4)]
    _block(t_in, 1, 1, 2, 2, first[4])
    t_out = [[0] * 4 for _ in range(4)]
    _block(t_out, 1, 1, 2, 2, target_color)
    train = (Grid.from_rows(t_in), Grid.from_rows(t_out))

    spec = TaskSpec(task_id, (train,), test_input, answer)
    ideal = [
        ScriptStep(
            f"recolor block {i + 1}",
            (Action(paint(target_color), Selection.rect(height, width, top, left, bottom, right)),),
        )
        for i, (top, left, bottom, right, _c) in enumerate(rects)
    ]
    return _scripted(spec, ideal, _pixel_route(spec, ideal))


def crop_block_task(
    task_id: str,
    height: int,
    width: int,
    distractors: Sequence[tuple[int, int, int, int, int]],
    payload_top: int,
    payload_left: int,
    payload: Grid,
) -> ScriptedTask:
    """Copy the smallest block to the origin and crop the grid to it.

    The payload may be multi-colored, in which case the pixel route's paint
    run is only reducible through paste.
    """
    rows = [[0] * width for _ in range(height)]
    for top, left, bottom, right, color in distractors:
        _block(rows, top, left, bottom - top + 1, right - left + 1, color)
    for r in range(payload.height):
        for c in range(payload.width):
            rows[payload_top + r][payload_left + c] = payload.at(r, c)
    test_input = Grid.from_rows(rows)
    answer = payload

    t_in = [[0] * 5 for _ in range(5)]
    _block(t_in, 3, 3, 2, 2, 2)
    t_in[1][1] = 4
    train = (Grid.from_rows(t_in), Grid.from_rows([[4]]))

    spec = TaskSpec(task_id, (train,), test_input, answer)
    ph, pw = payload.height, payload.width
    ideal = [
        ScriptStep(
            "copy the smallest block",
            (
                Action(
                    COPY,
                    Selection.rect(
                        height, width, payload_top, payload_left,
                        payload_top + ph - 1, payload_left + pw - 1,
                    ),
                ),
            ),
        ),
        ScriptStep(
            "paste it at the origin",
            (Action(PASTE, Selection.rect(height, width, 0, 0, ph - 1, pw - 1)),),
        ),
        ScriptStep(
            "crop the grid to the block",
            (Action(resize(ph, pw), Selection.full(height, width)),),
        ),
    ]
    return _scripted(spec, ideal, _pixel_route(spec, ideal))


def scripted_task_library() -> list[ScriptedTask]:
    """Every built-in task with a scripted solution, fixtures first."""
    return [
        task_49(),
        task_124(),
        identity_task(),
        extend_stripe_task("stripe-6x6", 4, 6, 2, 2, color=3),
        extend_stripe_task("stripe-8x5", 5, 5, 3, 1, color=4),
        extend_stripe_task("stripe-7x7", 6, 7, 1, 4, color=8),
        recolor_rects_task(
            "recolor-6x6", 6, 6, [(1, 1, 2, 3, 1), (4, 4, 5, 5, 3)], target_color=5
        ),
        recolor_rects_task(
            "recolor-7x7", 7, 7, [(0, 0, 1, 1, 2), (3, 2, 5, 4, 9), (6, 6, 6, 6, 1)],
            target_color=4,
        ),
        crop_block_task(
            "crop-8x8", 8, 8, [(4, 4, 7, 7, 2)], 1, 5, Grid.filled(2, 2, 6)
        ),
        crop_block_task(
            "crop-9x9", 9, 9, [(5, 5, 8, 8, 1)], 1, 6,
            Grid.from_rows([[6, 8], [8, 6]]),
        ),
    ]


def library_by_id() -> dict[str, ScriptedTask]:
    return {t.task_id: t for t in scripted_task_library()}


# --- user models --------------------------------------------------------------------


class ModelKind(Enum):
    IDEAL = "ideal"
    UNFAMILIAR = "unfamiliar"
    DISSONANT = "dissonant"


@dataclass(frozen=True)
class UserModel:
    kind: ModelKind
    error_rate: float = 0.0
    pixel_expansion: bool = False
    cycle_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not (0.0 <= self.error_rate <= 1.0 and 0.0 <= self.cycle_rate <= 1.0):
            raise ValueError("rates must lie in [0, 1]")


def ideal_model(seed: int = 0) -> UserModel:
    return UserModel(ModelKind.IDEAL, seed=seed)


def unfamiliar_model(seed: int = 0) -> UserModel:
    return UserModel(ModelKind.UNFAMILIAR, pixel_expansion=True, seed=seed)


def dissonant_model(seed: int = 0, error_rate: float = 0.12, cycle_rate: float = 0.25) -> UserModel:
    # error rate default sits in the complement of the reported human
    # accuracy band for these puzzles (roughly 85-90%)
    return UserModel(
        ModelKind.DISSONANT, error_rate=error_rate, cycle_rate=cycle_rate, seed=seed
    )


@dataclass(frozen=True)
class LabeledTrajectory:
    record: TrajectoryRecord
    truth_intentions: IntentionSet
    truth_findings: tuple[Finding, ...]


# --- generation -----------------------------------------------------------------------


def _asym_flip(grid: Grid) -> Optional[Action]:
    """A flip action that provably changes the grid: the first adjacent
    unequal pair, horizontal then vertical scan."""
    h, w = grid.height, grid.width
    for r in range(h):
        for c in range(w - 1):
            if grid.at(r, c) != grid.at(r, c + 1):
                return Action(FLIP_H, Selection.rect(h, w, r, c, r, c + 1))
    for r in range(h - 1):
        for c in range(w):
            if grid.at(r, c) != grid.at(r + 1, c):
                return Action(FLIP_V, Selection.rect(h, w, r, c, r + 1, c))
    return None


def _stray_color(states: Sequence[State], answer: Grid) -> int:
    used = set(answer.cells)
    for state in states:
        used.update(state.grid.cells)
    for color in range(1, 10):
        if color not in used:
            return color
    return 9


def _assemble(
    scripted: ScriptedTask, model: UserModel, rng: random.Random
) -> tuple[list[Action], list[IntentionSegment], list[Finding], bool]:
    spec = scripted.spec
    steps = scripted.pixel_steps if model.pixel_expansion else scripted.ideal_steps
    state = State.initial(spec.test_input)
    states = [state]
    actions: list[Action] = []
    segments: list[IntentionSegment] = []
    findings: list[Finding] = []
    expected_pairs: set[tuple[int, int]] = set()

    cycle_at = {
        b for b in range(1, len(steps)) if rng.random() < model.cycle_rate
    }
    if model.kind is ModelKind.DISSONANT and not cycle_at and len(steps) >= 2:
        cycle_at = {rng.randrange(1, len(steps))}
    corrupt = rng.random() < model.error_rate

    o_now = 0  # original index of the latest state
    o_first = 0  # original index of the current state's first visit
    r = 0  # reduced index of the current state

    def emit(action: Action) -> None:
        nonlocal state, o_now
        state = apply_action(state, action)
        states.append(state)
        actions.append(action)
        o_now += 1

    for b, step in enumerate(steps):
        if b in cycle_at:
            flip = _asym_flip(state.grid)
            if flip is not None:
                emit(flip)
                emit(flip)
                findings.append(
                    Finding(
                        MisalignmentKind.COGNITIVE_DISSONANCE,
                        o_first,
                        o_now,
                        "injected do/undo flip pair",
                    )
                )
                expected_pairs.add((o_first, o_now))
        k = len(step.actions)
        for action in step.actions:
            emit(action)
        segments.append(IntentionSegment(r, r + k, step.label))
        if k > 1:
            findings.append(
                Finding(
                    MisalignmentKind.USER_UNFAMILIARITY,
                    o_first,
                    o_now,
                    "pixel-level expansion of one action",
                )
            )
        o_first = o_now
        r += k

    if corrupt:
        color = _stray_color(states, spec.answer)
        cell = (rng.randrange(state.grid.height), rng.randrange(state.grid.width))
        emit(
            Action(
                paint(color),
                Selection.from_cells(state.grid.height, state.grid.width, [cell]),
            )
        )
        segments.append(IntentionSegment(r, r + 1, "stray edit"))
        findings.append(
            Finding(
                MisalignmentKind.COGNITIVE_DISSONANCE,
                o_first,
                o_now,
                "wrong final submission",
            )
        )
        o_first = o_now
        r += 1

    emit(Action(SUBMIT, Selection.full(state.grid.height, state.grid.width)))
    expected_pairs.add((o_now - 1, o_now))
    success = state.submitted == spec.answer

    _check_repeats(states, expected_pairs, scripted.task_id)
    return actions, segments, findings, success


def _check_repeats(states, expected_pairs, task_id):
    """Fail loudly if the assembled trajectory repeats a replay-relevant
    state anywhere other than the injections we labeled."""
    seen: dict = {}
    found: set[tuple[int, int]] = set()
    for idx, s in enumerate(states):
        key = (s.grid, s.clipboard)
        for earlier in seen.get(key, ()):
            found.add((earlier, idx))
        seen.setdefault(key, []).append(idx)
    if found != expected_pairs:
        raise ValueError(
            f"{task_id}: accidental state repeats {sorted(found - expected_pairs)}"
        )


_EPOCH = datetime(2024, 1, 1)


def generate_corpus(
    scripted: ScriptedTask | TaskSpec, models: Sequence[tuple[UserModel, int]]
) -> list[LabeledTrajectory]:
    """Generate labeled trajectories for one task; deterministic per seed."""
    if isinstance(scripted, TaskSpec):
        match = library_by_id().get(scripted.task_id)
        if match is None or match.spec != scripted:
            raise UnsolvableTask(f"no scripted solution for task {scripted.task_id}")
        scripted = match

    out: list[LabeledTrajectory] = []
    serial = 0
    for model, count in models:
        for idx in range(count):
            rng = random.Random(model.seed * 1_000_003 + serial)
            actions, segments, findings, success = _assemble(scripted, model, rng)
            start = _EPOCH + timedelta(minutes=serial)
            record = TrajectoryRecord(
                trajectory_id=f"{scripted.task_id}-{model.kind.value}-{model.seed}-{idx:03d}",
                start_time=start,
                end_time=start + timedelta(seconds=5 * len(actions)),
                user_id=f"user-{model.kind.value}-{idx % 5}",
                task_id=scripted.task_id,
                actions=tuple(actions),
                success=success,
            )
            out.append(
                LabeledTrajectory(
                    record,
                    IntentionSet(tuple(segments), IntentionSource.GENERATOR_TRUTH),
                    tuple(findings),
                )
            )
            serial += 1
    return out


def default_mix(seed: int = 0) -> list[tuple[UserModel, int]]:
    """25 trajectories per task: 10 ideal, 10 unfamiliar, 5 dissonant."""
    return [
        (ideal_model(seed), 10),
        (unfamiliar_model(seed + 1), 10),
        (dissonant_model(seed + 2), 5),
    ]


# --- reference trajectories for the crop task fixture ---------------------------------


def task_49_reference_records() -> list[TrajectoryRecord]:
    """Three curated solving attempts for the crop task: the efficient
    copy/paste route, the pixel-level slide, and a wrong-block attempt that
    ends in an incorrect submission."""
    t0 = _EPOCH

    def record(tid, user, actions, success):
        return TrajectoryRecord(
            trajectory_id=tid,
            start_time=t0,
            end_time=t0 + timedelta(seconds=5 * len(actions)),
            user_id=user,
            task_id="49",
            actions=tuple(actions),
            success=success,
        )

    efficient = [
        Action(COPY, Selection.rect(20, 20, 0, 16, 2, 18)),
        Action(PASTE, Selection.rect(20, 20, 0, 0, 2, 2)),
        Action(resize(3, 3), Selection.full(20, 20)),
    ]
    pixel = [
        Action(MOVE_LEFT, Selection.rect(20, 20, 0, 16 - i, 2, 18 - i)) for i in range(16)
    ] + [Action(resize(3, 3), Selection.full(20, 20))]
    wrong = (
        [Action(MOVE_UP, Selection.rect(20, 20, 14 - i, 0, 17 - i, 3)) for i in range(14)]
        + [Action(resize(4, 4), Selection.full(20, 20))]
        + [Action(SUBMIT, Selection.full(4, 4))]
    )
    return [
        record("49-efficient", "user-a", efficient, False),
        record("49-pixel-moves", "user-b", pixel, False),
        record("49-wrong-block", "user-c", wrong, False),
    ]


def task_49_reference_annotations() -> dict[str, IntentionSet]:
    """Intention annotations for the reference records (indices address the
    cycle-reduced trajectories)."""
    ann = IntentionSource.ANNOTATED
    return {
        "49-efficient": IntentionSet(
            (
                IntentionSegment(0, 1, "copy the smallest block"),
                IntentionSegment(1, 2, "paste it at the corner"),
                IntentionSegment(2, 3, "crop the grid to the block"),
            ),
            ann,
        ),
        "49-pixel-moves": IntentionSet(
            (
                IntentionSegment(0, 16, "move the small block to the corner"),
                IntentionSegment(16, 17, "crop the grid to the block"),
            ),
            ann,
        ),
        # each slide of the wrong block was deliberate; the misalignment is
        # the goal itself, so every step is its own intention
        "49-wrong-block": IntentionSet(
            tuple(
                [IntentionSegment(i, i + 1, "slide the block") for i in range(14)]
                + [IntentionSegment(14, 15, "crop the grid to the block")]
            ),
            ann,
        ),
    }


# --- corpus files -----------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusPaths:
    log: Path
    intentions: Path
    truth: Path
    task_dir: Path


def truth_to_json(labeled: Sequence[LabeledTrajectory]) -> list[dict]:
    return [
        {
            "trajectory_id": lt.record.trajectory_id,
            "findings": [
                {"kind": f.kind.value, "start": f.start, "end": f.end, "evidence": f.evidence}
                for f in lt.truth_findings
            ],
        }
        for lt in sorted(labeled, key=lambda l: l.record.trajectory_id)
    ]


def load_truth(path: str | Path) -> dict[str, tuple[Finding, ...]]:
    doc = json.loads(Path(path).read_text())
    out = {}
    for obj in doc:
        out[obj["trajectory_id"]] = tuple(
            Finding(MisalignmentKind(f["kind"]), f["start"], f["end"], f.get("evidence", ""))
            for f in obj["findings"]
        )
    return out


def write_corpus(
    labeled: Sequence[LabeledTrajectory],
    tasks: Sequence[TaskSpec],
    out_dir: str | Path,
) -> CorpusPaths:
    """Write the log CSV, intention JSON, truth JSON, and task files."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    log_path = write_log([lt.record for lt in labeled], out_dir / "logs.csv")
    intentions = {lt.record.trajectory_id: lt.truth_intentions for lt in labeled}
    intentions_path = save_intentions(intentions, out_dir / "intentions.json")
    truth_path = out_dir / "truth.json"
    truth_path.write_text(json.dumps(truth_to_json(labeled), indent=2, sort_keys=True) + "\n")
    task_dir = out_dir / "tasks"
    for task in tasks:
        save_task(task, task_dir)
    write_task_manifest(task_dir)
    return CorpusPaths(log_path, intentions_path, truth_path, task_dir)
