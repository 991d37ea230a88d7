"""Deterministic grid state machine: states, selections, and operation semantics.

Everything here is an immutable value; transitions are pure functions, so
states can be replayed, hashed, and compared across runs without any shared
mutable context.

Conventions fixed by this dialect:

* grids are row-major tuples of colors 0..9 (0 = background), dims 1..30;
* moves translate the masked cells one step, discarding cells pushed past
  the boundary and zero-filling vacated cells;
* rotate/flip act on the selection's bounding box (rotation requires a
  square box);
* copy captures the mask's bounding-box sub-grid, paste stamps the clipboard
  at the mask's top-left anchor clipped to the grid;
* resize crops from the origin / pads with background and clears the
  selection; submit snapshots the grid without altering it.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator, Optional, Sequence

from .errors import DimensionMismatch, EmptyClipboard, InvalidRotation

MAX_DIM = 30
NUM_COLORS = 10


@dataclass(frozen=True)
class Grid:
    """A colored cell matrix, row-major."""

    height: int
    width: int
    cells: tuple[int, ...]

    def __post_init__(self):
        if not (1 <= self.height <= MAX_DIM and 1 <= self.width <= MAX_DIM):
            raise ValueError(f"grid dims {self.height}x{self.width} outside 1..{MAX_DIM}")
        if len(self.cells) != self.height * self.width:
            raise ValueError("cell count does not match dims")
        for c in self.cells:
            if not (0 <= c < NUM_COLORS):
                raise ValueError(f"color {c} outside 0..{NUM_COLORS - 1}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Grid":
        height = len(rows)
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(height, width, tuple(c for row in rows for c in row))

    @classmethod
    def filled(cls, height: int, width: int, color: int = 0) -> "Grid":
        return cls(height, width, (color,) * (height * width))

    def at(self, r: int, c: int) -> int:
        return self.cells[r * self.width + c]

    def rows(self) -> list[list[int]]:
        w = self.width
        return [list(self.cells[i * w : (i + 1) * w]) for i in range(self.height)]

    def with_cells(self, cells: Sequence[int]) -> "Grid":
        return Grid(self.height, self.width, tuple(cells))


@dataclass(frozen=True)
class Selection:
    """Binary mask with the same shape as an associated grid."""

    height: int
    width: int
    mask: tuple[bool, ...]

    def __post_init__(self):
        if len(self.mask) != self.height * self.width:
            raise ValueError("mask length does not match dims")

    @classmethod
    def empty(cls, height: int, width: int) -> "Selection":
        return cls(height, width, (False,) * (height * width))

    @classmethod
    def full(cls, height: int, width: int) -> "Selection":
        return cls(height, width, (True,) * (height * width))

    @classmethod
    def from_cells(cls, height: int, width: int, cells) -> "Selection":
        mask = [False] * (height * width)
        for r, c in cells:
            mask[r * width + c] = True
        return cls(height, width, tuple(mask))

    @classmethod
    def rect(cls, height: int, width: int, top: int, left: int, bottom: int, right: int) -> "Selection":
        """Inclusive-corner axis-aligned rectangle."""
        row_off = (False,) * width
        row_on = (False,) * left + (True,) * (right - left + 1) + (False,) * (width - 1 - right)
        mask: list[bool] = []
        for r in range(height):
            mask.extend(row_on if top <= r <= bottom else row_off)
        return cls(height, width, tuple(mask))

    def cells(self) -> Iterator[tuple[int, int]]:
        w = self.width
        for i, on in enumerate(self.mask):
            if on:
                yield divmod(i, w)[0], i % w

    def count(self) -> int:
        return sum(self.mask)

    def bbox(self) -> Optional[tuple[int, int, int, int]]:
        """(top, left, bottom, right) inclusive, or None for an empty mask."""
        top = left = None
        bottom = right = -1
        w = self.width
        for i, on in enumerate(self.mask):
            if not on:
                continue
            r, c = divmod(i, w)
            if top is None:
                top = r
            bottom = r
            left = c if left is None else min(left, c)
            right = max(right, c)
        if top is None:
            return None
        return top, left, bottom, right


class OpKind(Enum):
    MOVE_UP = "move_up"
    MOVE_DOWN = "move_down"
    MOVE_LEFT = "move_left"
    MOVE_RIGHT = "move_right"
    ROTATE_CW = "rotate_cw"
    ROTATE_CCW = "rotate_ccw"
    FLIP_H = "flip_h"
    FLIP_V = "flip_v"
    PAINT = "paint"
    COPY = "copy"
    PASTE = "paste"
    RESIZE = "resize"
    SELECT = "select"
    SUBMIT = "submit"


MOVE_DELTAS = {
    OpKind.MOVE_UP: (-1, 0),
    OpKind.MOVE_DOWN: (1, 0),
    OpKind.MOVE_LEFT: (0, -1),
    OpKind.MOVE_RIGHT: (0, 1),
}

# Operations that never alter the grid component of the state.
GRID_PRESERVING = frozenset({OpKind.COPY, OpKind.SELECT, OpKind.SUBMIT})


@dataclass(frozen=True)
class Operation:
    """An operation tag plus its parameters (color for paint, dims for resize)."""

    kind: OpKind
    color: Optional[int] = None
    dims: Optional[tuple[int, int]] = None

    def __post_init__(self):
        if self.kind is OpKind.PAINT:
            if self.color is None or not (0 <= self.color < NUM_COLORS):
                raise ValueError("paint requires a color in 0..9")
        elif self.color is not None:
            raise ValueError(f"{self.kind.value} takes no color")
        if self.kind is OpKind.RESIZE:
            if self.dims is None or not all(1 <= d <= MAX_DIM for d in self.dims):
                raise ValueError("resize requires dims in 1..30")
        elif self.dims is not None:
            raise ValueError(f"{self.kind.value} takes no dims")

    def label(self) -> str:
        if self.kind is OpKind.PAINT:
            return f"paint({self.color})"
        if self.kind is OpKind.RESIZE:
            return f"resize({self.dims[0]},{self.dims[1]})"
        return self.kind.value


def move_op(kind: OpKind) -> Operation:
    return Operation(kind)


def paint(color: int) -> Operation:
    return Operation(OpKind.PAINT, color=color)


def resize(height: int, width: int) -> Operation:
    return Operation(OpKind.RESIZE, dims=(height, width))


MOVE_UP = Operation(OpKind.MOVE_UP)
MOVE_DOWN = Operation(OpKind.MOVE_DOWN)
MOVE_LEFT = Operation(OpKind.MOVE_LEFT)
MOVE_RIGHT = Operation(OpKind.MOVE_RIGHT)
ROTATE_CW = Operation(OpKind.ROTATE_CW)
ROTATE_CCW = Operation(OpKind.ROTATE_CCW)
FLIP_H = Operation(OpKind.FLIP_H)
FLIP_V = Operation(OpKind.FLIP_V)
COPY = Operation(OpKind.COPY)
PASTE = Operation(OpKind.PASTE)
SELECT = Operation(OpKind.SELECT)
SUBMIT = Operation(OpKind.SUBMIT)


@dataclass(frozen=True)
class Action:
    """An operation scoped by a selection mask over the pre-state grid."""

    op: Operation
    selection: Selection


@dataclass(frozen=True)
class State:
    """The replayable machine state: grid + selection + clipboard (+ last submission)."""

    grid: Grid
    selection: Selection
    clipboard: Optional[Grid] = None
    submitted: Optional[Grid] = None

    def __post_init__(self):
        if (self.selection.height, self.selection.width) != (self.grid.height, self.grid.width):
            raise DimensionMismatch(
                f"selection {self.selection.height}x{self.selection.width} "
                f"vs grid {self.grid.height}x{self.grid.width}"
            )

    @classmethod
    def initial(cls, grid: Grid) -> "State":
        return cls(grid=grid, selection=Selection.empty(grid.height, grid.width))


class Mode(Enum):
    GRID_ONLY = "grid_only"
    GRID_AND_SELECTION = "grid_and_selection"


@dataclass(frozen=True)
class StateKey:
    """Canonical identity of a state under a comparison mode.

    The digest is the raw canonical encoding (dims + cells, plus the mask in
    selection mode), so key equality is exactly component equality.
    """

    mode: Mode
    digest: bytes

    @property
    def hex_id(self) -> str:
        return hashlib.sha256(self.digest).hexdigest()


def state_key(state: State, mode: Mode = Mode.GRID_ONLY) -> StateKey:
    g = state.grid
    parts = [b"\x01" if mode is Mode.GRID_AND_SELECTION else b"\x00",
             bytes((g.height, g.width)), bytes(g.cells)]
    if mode is Mode.GRID_AND_SELECTION:
        parts.append(bytes(state.selection.mask))
    return StateKey(mode, b"".join(parts))


def _require_match(state: State, action: Action) -> None:
    sel = action.selection
    if (sel.height, sel.width) != (state.grid.height, state.grid.width):
        raise DimensionMismatch(
            f"action selection {sel.height}x{sel.width} vs grid "
            f"{state.grid.height}x{state.grid.width}"
        )


def _apply_move(grid: Grid, sel: Selection, dr: int, dc: int) -> tuple[Grid, Selection]:
    h, w = grid.height, grid.width
    cells = list(grid.cells)
    new_mask = [False] * (h * w)
    picked = [(i, grid.cells[i]) for i, on in enumerate(sel.mask) if on]
    for i, _ in picked:
        cells[i] = 0
    for i, value in picked:
        r, c = divmod(i, w)
        nr, nc = r + dr, c + dc
        if 0 <= nr < h and 0 <= nc < w:
            j = nr * w + nc
            cells[j] = value
            new_mask[j] = True
    return grid.with_cells(cells), Selection(h, w, tuple(new_mask))


def _apply_boxed(grid: Grid, sel: Selection, kind: OpKind) -> tuple[Grid, Selection]:
    """Rotate/flip the selection's bounding-box sub-grid (and the mask with it)."""
    box = sel.bbox()
    if box is None:
        return grid, sel
    top, left, bottom, right = box
    bh, bw = bottom - top + 1, right - left + 1
    if kind in (OpKind.ROTATE_CW, OpKind.ROTATE_CCW) and bh != bw:
        raise InvalidRotation(f"bounding box {bh}x{bw} is not square")

    if kind is OpKind.ROTATE_CW:
        source = lambda r, c: (bh - 1 - c, r)
    elif kind is OpKind.ROTATE_CCW:
        source = lambda r, c: (c, bw - 1 - r)
    elif kind is OpKind.FLIP_H:
        source = lambda r, c: (r, bw - 1 - c)
    else:  # FLIP_V
        source = lambda r, c: (bh - 1 - r, c)

    w = grid.width
    cells = list(grid.cells)
    mask = list(sel.mask)
    for r in range(bh):
        for c in range(bw):
            sr, sc = source(r, c)
            src = (top + sr) * w + (left + sc)
            dst = (top + r) * w + (left + c)
            cells[dst] = grid.cells[src]
            mask[dst] = sel.mask[src]
    return grid.with_cells(cells), Selection(grid.height, w, tuple(mask))


def _apply_paste(grid: Grid, sel: Selection, clip: Optional[Grid]) -> tuple[Grid, Selection]:
    if clip is None:
        raise EmptyClipboard("paste before any copy")
    box = sel.bbox()
    top, left = (box[0], box[1]) if box else (0, 0)
    h, w = grid.height, grid.width
    cells = list(grid.cells)
    mask = [False] * (h * w)
    for r in range(clip.height):
        tr = top + r
        if tr >= h:
            break
        for c in range(clip.width):
            tc = left + c
            if tc >= w:
                break
            j = tr * w + tc
            cells[j] = clip.at(r, c)
            mask[j] = True
    return grid.with_cells(cells), Selection(h, w, tuple(mask))


def _apply_resize(grid: Grid, new_h: int, new_w: int) -> Grid:
    cells = []
    for r in range(new_h):
        if r < grid.height:
            row = grid.cells[r * grid.width : r * grid.width + min(grid.width, new_w)]
            cells.extend(row)
            cells.extend([0] * (new_w - len(row)))
        else:
            cells.extend([0] * new_w)
    return Grid(new_h, new_w, tuple(cells))


def apply_action(state: State, action: Action) -> State:
    """Pure state transition; the input state is never modified.

    Raises DimensionMismatch, InvalidRotation, or EmptyClipboard; everything
    else (including empty selections) degrades to a no-op on the grid.
    """
    _require_match(state, action)
    op = action.op
    kind = op.kind
    grid, sel = state.grid, action.selection

    if kind in MOVE_DELTAS:
        dr, dc = MOVE_DELTAS[kind]
        new_grid, new_sel = _apply_move(grid, sel, dr, dc)
        return replace(state, grid=new_grid, selection=new_sel)
    if kind in (OpKind.ROTATE_CW, OpKind.ROTATE_CCW, OpKind.FLIP_H, OpKind.FLIP_V):
        new_grid, new_sel = _apply_boxed(grid, sel, kind)
        return replace(state, grid=new_grid, selection=new_sel)
    if kind is OpKind.PAINT:
        cells = list(grid.cells)
        for i, on in enumerate(sel.mask):
            if on:
                cells[i] = op.color
        return replace(state, grid=grid.with_cells(cells), selection=sel)
    if kind is OpKind.COPY:
        box = sel.bbox()
        if box is None:
            return replace(state, selection=sel)
        top, left, bottom, right = box
        sub = tuple(
            grid.at(r, c) for r in range(top, bottom + 1) for c in range(left, right + 1)
        )
        clip = Grid(bottom - top + 1, right - left + 1, sub)
        return replace(state, selection=sel, clipboard=clip)
    if kind is OpKind.PASTE:
        new_grid, new_sel = _apply_paste(grid, sel, state.clipboard)
        return replace(state, grid=new_grid, selection=new_sel)
    if kind is OpKind.RESIZE:
        new_h, new_w = op.dims
        new_grid = _apply_resize(grid, new_h, new_w)
        return replace(state, grid=new_grid, selection=Selection.empty(new_h, new_w))
    if kind is OpKind.SELECT:
        return replace(state, selection=sel)
    if kind is OpKind.SUBMIT:
        return replace(state, selection=sel, submitted=grid)
    raise AssertionError(f"unhandled operation {kind}")
