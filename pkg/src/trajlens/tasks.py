"""Task definitions in the standard ARC JSON layout."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError, SchemaError
from .grid import Grid

TASK_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TaskSpec:
    """One puzzle: training pairs, the test input, and its expected answer."""

    task_id: str
    train_pairs: tuple[tuple[Grid, Grid], ...]
    test_input: Grid
    answer: Grid

    def __post_init__(self):
        if not self.train_pairs:
            raise ValueError("a task needs at least one train pair")


def _grid_from_json(obj, where: str) -> Grid:
    if not (isinstance(obj, list) and obj and all(isinstance(r, list) for r in obj)):
        raise SchemaError(f"{where}: expected a non-empty 2-D array")
    try:
        return Grid.from_rows(obj)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"{where}: {exc}") from exc


def _pair_from_json(obj, where: str) -> tuple[Grid, Grid]:
    if not isinstance(obj, dict) or "input" not in obj or "output" not in obj:
        raise SchemaError(f"{where}: expected an object with input/output")
    return (
        _grid_from_json(obj["input"], f"{where}.input"),
        _grid_from_json(obj["output"], f"{where}.output"),
    )


def task_from_json(task_id: str, doc) -> TaskSpec:
    if not isinstance(doc, dict):
        raise SchemaError("task document must be a JSON object")
    for key in ("train", "test"):
        if key not in doc or not isinstance(doc[key], list) or not doc[key]:
            raise SchemaError(f"missing or empty '{key}' array")
    train = tuple(_pair_from_json(p, f"train[{i}]") for i, p in enumerate(doc["train"]))
    test_input, answer = _pair_from_json(doc["test"][0], "test[0]")
    return TaskSpec(task_id, train, test_input, answer)


def task_to_json(task: TaskSpec) -> dict:
    return {
        "train": [
            {"input": a.rows(), "output": b.rows()} for a, b in task.train_pairs
        ],
        "test": [{"input": task.test_input.rows(), "output": task.answer.rows()}],
    }


def load_task(path: str | Path) -> TaskSpec:
    """Load one task file; the task id is the file stem."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    return task_from_json(path.stem, doc)


def save_task(task: TaskSpec, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{task.task_id}.json"
    path.write_text(json.dumps(task_to_json(task), indent=2, sort_keys=True) + "\n")
    return path


def write_task_manifest(directory: str | Path) -> Path:
    path = Path(directory) / "manifest.json"
    path.write_text(
        json.dumps({"schema_version": TASK_SCHEMA_VERSION, "format": "arc-task-json"},
                   indent=2, sort_keys=True) + "\n"
    )
    return path


def load_task_dir(directory: str | Path) -> dict[str, TaskSpec]:
    """Load every *.json task in a directory (skipping manifests)."""
    directory = Path(directory)
    check_manifest(directory / "manifest.json", TASK_SCHEMA_VERSION)
    tasks = {}
    for path in sorted(directory.glob("*.json")):
        if path.name == "manifest.json":
            continue
        task = load_task(path)
        tasks[task.task_id] = task
    return tasks


def check_manifest(path: Path, supported: int) -> None:
    """Validate an adjacent schema manifest when present."""
    if not path.exists():
        return
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    version = doc.get("schema_version")
    if not isinstance(version, int) or version > supported:
        raise SchemaError(f"{path}: unsupported schema_version {version!r}")
