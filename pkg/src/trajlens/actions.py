"""The bounded, deterministically ordered action family used for search.

Arbitrary masks are exponential, so the searchable family fixes the
selections to: the full grid, every axis-aligned rectangle, one mask per
color present, and the 4-connected components of nonzero color. Operation
tags are enumerated in a fixed order (moves, rotations, flips, the ten
paints, copy, paste, every resize, select, submit), and selections in
lexicographic bounding-box order, so the first match of any search is
well defined.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .grid import (
    MAX_DIM,
    NUM_COLORS,
    Action,
    Grid,
    OpKind,
    Operation,
    Selection,
    State,
    paint,
    resize,
)

Box = tuple[int, int, int, int]

_FIXED_TAGS_BEFORE_RESIZE = [
    Operation(OpKind.MOVE_UP),
    Operation(OpKind.MOVE_DOWN),
    Operation(OpKind.MOVE_LEFT),
    Operation(OpKind.MOVE_RIGHT),
    Operation(OpKind.ROTATE_CW),
    Operation(OpKind.ROTATE_CCW),
    Operation(OpKind.FLIP_H),
    Operation(OpKind.FLIP_V),
    *[paint(c) for c in range(NUM_COLORS)],
    Operation(OpKind.COPY),
    Operation(OpKind.PASTE),
]

_FIXED_TAGS_AFTER_RESIZE = [
    Operation(OpKind.SELECT),
    Operation(OpKind.SUBMIT),
]


@lru_cache(maxsize=1)
def operation_tags() -> tuple[Operation, ...]:
    """Every operation tag in family order, resizes expanded row-major."""
    tags = list(_FIXED_TAGS_BEFORE_RESIZE)
    tags.extend(resize(h, w) for h in range(1, MAX_DIM + 1) for w in range(1, MAX_DIM + 1))
    tags.extend(_FIXED_TAGS_AFTER_RESIZE)
    return tuple(tags)


def _color_masks(grid: Grid) -> list[Selection]:
    present: dict[int, list[bool]] = {}
    for i, cell in enumerate(grid.cells):
        present.setdefault(cell, [False] * len(grid.cells))[i] = True
    return [
        Selection(grid.height, grid.width, tuple(mask))
        for _, mask in sorted(present.items())
    ]


def _component_masks(grid: Grid) -> list[Selection]:
    """4-connected components of same-colored nonzero cells."""
    h, w = grid.height, grid.width
    seen = [False] * (h * w)
    out = []
    for start in range(h * w):
        if seen[start] or grid.cells[start] == 0:
            continue
        color = grid.cells[start]
        mask = [False] * (h * w)
        stack = [start]
        seen[start] = True
        while stack:
            i = stack.pop()
            mask[i] = True
            r, c = divmod(i, w)
            for nr, nc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                if 0 <= nr < h and 0 <= nc < w:
                    j = nr * w + nc
                    if not seen[j] and grid.cells[j] == color:
                        seen[j] = True
                        stack.append(j)
        out.append(Selection(h, w, tuple(mask)))
    return out


@lru_cache(maxsize=8)
def _rect_selections(h: int, w: int) -> tuple[tuple[Box, Selection], ...]:
    """All axis-aligned rectangles for given dims (content-independent)."""
    out = []
    for top in range(h):
        for left in range(w):
            for bottom in range(top, h):
                for right in range(left, w):
                    box = (top, left, bottom, right)
                    out.append((box, Selection.rect(h, w, *box)))
    return tuple(out)


@lru_cache(maxsize=32)
def selection_family_with_boxes(grid: Grid) -> tuple[tuple[Box, Selection], ...]:
    """All family selections with bounding boxes, deduplicated, in canonical
    order: lexicographic by (top, left, bottom, right), ties by mask bits.
    Every returned mask is non-empty.
    """
    h, w = grid.height, grid.width
    masks: dict[tuple[bool, ...], tuple[Box, Selection]] = {}

    for box, sel in _rect_selections(h, w):
        masks.setdefault(sel.mask, (box, sel))
    for sel in _color_masks(grid):
        masks.setdefault(sel.mask, (sel.bbox(), sel))
    for sel in _component_masks(grid):
        masks.setdefault(sel.mask, (sel.bbox(), sel))

    return tuple(sorted(masks.values(), key=lambda bs: (bs[0], bs[1].mask)))


def selection_family(grid: Grid) -> list[Selection]:
    return [sel for _, sel in selection_family_with_boxes(grid)]


def enumerate_bounded_actions(state: State) -> Iterator[Action]:
    """Yield every action in the bounded family in canonical order."""
    selections = selection_family(state.grid)
    for op in operation_tags():
        for sel in selections:
            yield Action(op, sel)


def family_size(state: State) -> int:
    return len(operation_tags()) * len(selection_family(state.grid))
