"""Trajectory log CSV parsing and writing.

Row layout: trajectory_id, start_time, end_time (ISO-8601), user_id,
task_id, success (0/1), sequence. The sequence column holds a JSON array of
actions, each ``{"op": ..., "params": {...}, "selection": {"h", "w", "rle"}}``
with the mask run-length encoded (alternating false/true run lengths,
starting with the false run). Malformed rows are collected with their row
numbers; well-formed rows are still returned.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

from .errors import ParseError, SequenceParseError
from .grid import Action, OpKind, Operation, Selection
from .tasks import check_manifest

LOG_SCHEMA_VERSION = 1
LOG_COLUMNS = [
    "trajectory_id",
    "start_time",
    "end_time",
    "user_id",
    "task_id",
    "success",
    "sequence",
]


@dataclass(frozen=True)
class TrajectoryRecord:
    """One logged solving attempt, as stored (not yet replay-validated)."""

    trajectory_id: str
    start_time: datetime
    end_time: datetime
    user_id: str
    task_id: str
    actions: tuple[Action, ...]
    success: bool

    def __post_init__(self):
        if not self.actions:
            raise ValueError("a record needs at least one action")
        if self.end_time < self.start_time:
            raise ValueError("end_time before start_time")


# --- mask RLE ----------------------------------------------------------------


def rle_encode(mask: tuple[bool, ...]) -> list[int]:
    runs = []
    current, count = False, 0
    for bit in mask:
        if bit == current:
            count += 1
        else:
            runs.append(count)
            current, count = bit, 1
    runs.append(count)
    return runs


def rle_decode(runs: list[int], length: int) -> tuple[bool, ...]:
    bits: list[bool] = []
    value = False
    for run in runs:
        if not isinstance(run, int) or run < 0:
            raise ValueError(f"bad run length {run!r}")
        bits.extend([value] * run)
        value = not value
    if len(bits) != length:
        raise ValueError(f"rle covers {len(bits)} cells, expected {length}")
    return tuple(bits)


# --- action (de)serialization -------------------------------------------------


def action_to_json(action: Action) -> dict:
    op = action.op
    params: dict = {}
    if op.kind is OpKind.PAINT:
        params["color"] = op.color
    elif op.kind is OpKind.RESIZE:
        params["h"], params["w"] = op.dims
    sel = action.selection
    return {
        "op": op.kind.value,
        "params": params,
        "selection": {"h": sel.height, "w": sel.width, "rle": rle_encode(sel.mask)},
    }


def action_from_json(obj) -> Action:
    if not isinstance(obj, dict):
        raise ValueError("action must be an object")
    try:
        kind = OpKind(obj["op"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"unknown op {obj.get('op')!r}") from exc
    params = obj.get("params") or {}
    if kind is OpKind.PAINT:
        op = Operation(kind, color=params.get("color"))
    elif kind is OpKind.RESIZE:
        if "h" not in params or "w" not in params:
            raise ValueError("resize params need h and w")
        op = Operation(kind, dims=(params["h"], params["w"]))
    else:
        op = Operation(kind)
    sel_obj = obj.get("selection")
    if not isinstance(sel_obj, dict):
        raise ValueError("missing selection")
    h, w = sel_obj.get("h"), sel_obj.get("w")
    if not (isinstance(h, int) and isinstance(w, int)):
        raise ValueError("selection needs integer dims")
    mask = rle_decode(sel_obj.get("rle", []), h * w)
    return Action(op, Selection(h, w, mask))


def sequence_to_json(actions) -> str:
    return json.dumps([action_to_json(a) for a in actions], separators=(",", ":"))


def sequence_from_json(text: str) -> tuple[Action, ...]:
    doc = json.loads(text)
    if not isinstance(doc, list):
        raise ValueError("sequence must be a JSON array")
    return tuple(action_from_json(a) for a in doc)


# --- CSV ---------------------------------------------------------------------


@dataclass
class LogParseResult:
    records: list[TrajectoryRecord] = field(default_factory=list)
    errors: list[SequenceParseError] = field(default_factory=list)


def _record_from_row(row: dict) -> TrajectoryRecord:
    missing = [c for c in LOG_COLUMNS if row.get(c) in (None, "")]
    if missing:
        raise ValueError(f"missing columns {missing}")
    return TrajectoryRecord(
        trajectory_id=row["trajectory_id"],
        start_time=datetime.fromisoformat(row["start_time"]),
        end_time=datetime.fromisoformat(row["end_time"]),
        user_id=row["user_id"],
        task_id=row["task_id"],
        actions=sequence_from_json(row["sequence"]),
        success=_parse_success(row["success"]),
    )


def _parse_success(text: str) -> bool:
    if text not in ("0", "1"):
        raise ValueError(f"success must be 0 or 1, got {text!r}")
    return text == "1"


def parse_log(path: str | Path) -> LogParseResult:
    """Parse a log CSV; bad rows become errors, good rows still come back."""
    path = Path(path)
    check_manifest(path.with_name(path.name + ".manifest.json"), LOG_SCHEMA_VERSION)
    try:
        handle = path.open(newline="")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    result = LogParseResult()
    with handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise ParseError(f"{path}: empty file (no header row)")
        unknown = set(LOG_COLUMNS) - set(reader.fieldnames)
        if unknown:
            raise ParseError(f"{path}: header missing columns {sorted(unknown)}")
        for row_no, row in enumerate(reader, start=2):
            try:
                result.records.append(_record_from_row(row))
            except (ValueError, json.JSONDecodeError) as exc:
                result.errors.append(SequenceParseError(row_no, str(exc)))
    return result


def write_log(records, path: str | Path, manifest: bool = True) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(LOG_COLUMNS)
        for rec in records:
            writer.writerow(
                [
                    rec.trajectory_id,
                    rec.start_time.isoformat(),
                    rec.end_time.isoformat(),
                    rec.user_id,
                    rec.task_id,
                    "1" if rec.success else "0",
                    sequence_to_json(rec.actions),
                ]
            )
    if manifest:
        manifest_path = path.with_name(path.name + ".manifest.json")
        manifest_path.write_text(
            json.dumps(
                {"schema_version": LOG_SCHEMA_VERSION, "format": "trajectory-log-csv"},
                indent=2,
                sort_keys=True,
            )
            + "\n"
        )
    return path
