"""Command-line entry point wiring the whole pipeline.

Subcommands: ``graph`` (build + export state-space graphs), ``detect``
(misalignment reports), ``stats`` (distribution and ranking CSVs),
``generate`` (synthetic labeled corpora). Every run writes a manifest
listing its artifacts with content hashes; identical inputs and seeds give
byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import os
import sys
from pathlib import Path

from . import analytics, synthgen
from .detect import MisalignmentKind, auto_segment, detect, load_intentions, report_to_json
from .errors import TrajlensError
from .graphs import build_graph, drop_self_edges, graph_to_dot, graph_to_json
from .grid import Mode
from .html_export import export_html, find_viewer_bundle
from .logs import parse_log
from .replay import replay_all
from .tasks import load_task_dir

log = logging.getLogger("trajlens")

_MODES = {"grid-only": Mode.GRID_ONLY, "with-selection": Mode.GRID_AND_SELECTION}
_MODE_DIRS = {
    Mode.GRID_ONLY: "graphs_without_selection",
    Mode.GRID_AND_SELECTION: "graphs_with_selection",
}


def _setup_logging() -> None:
    level = os.environ.get("TRAJLENS_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(out_dir: Path, artifacts: list[Path]) -> Path:
    doc = {
        "schema_version": 1,
        "artifacts": [
            {"path": str(p.relative_to(out_dir)), "sha256": _sha256(p)}
            for p in sorted(set(artifacts))
        ],
    }
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path


def _load_corpus(args) -> tuple[dict, dict]:
    """Load tasks and group replayable records per task; fatal on empty logs."""
    tasks = load_task_dir(args.tasks)
    result = parse_log(args.logs)
    for err in result.errors:
        log.warning("%s: skipped %s", args.logs, err)
    if not result.records:
        raise TrajlensError(f"no trajectories found in {args.logs}")
    grouped: dict = {}
    for record in result.records:
        grouped.setdefault(record.task_id, []).append(record)
    unknown = sorted(set(grouped) - set(tasks))
    if unknown:
        log.warning("logs reference unknown tasks %s; skipping those rows", unknown)
        for task_id in unknown:
            grouped.pop(task_id)
    if not grouped:
        raise TrajlensError(f"no trajectory in {args.logs} matches a task in {args.tasks}")
    return tasks, grouped


def _replayed(tasks, grouped):
    for task_id in sorted(grouped):
        task = tasks[task_id]
        trajectories, failures = replay_all(grouped[task_id], task)
        for failure in failures:
            log.warning("task %s: dropped invalid trajectory (%s)", task_id, failure)
        if trajectories:
            yield task, trajectories


# --- graph ---------------------------------------------------------------------


def cmd_graph(args) -> int:
    tasks, grouped = _load_corpus(args)
    mode = _MODES[args.mode]
    formats = set(args.format.split(","))
    out_dir = Path(args.out)
    sub = out_dir / _MODE_DIRS[mode]
    sub.mkdir(parents=True, exist_ok=True)
    artifacts: list[Path] = []
    bundle = find_viewer_bundle() if "html" in formats else None
    if "html" in formats and bundle is None:
        log.warning("viewer bundle not built; HTML export degrades to JSON only")

    for task, trajectories in _replayed(tasks, grouped):
        graph = build_graph(trajectories, task, mode)
        doc = graph_to_json(graph)
        if "json" in formats:
            path = sub / f"{task.task_id}.json"
            path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
            artifacts.append(path)
        if "dot" in formats:
            path = sub / f"{task.task_id}.dot"
            path.write_text(graph_to_dot(graph))
            artifacts.append(path)
        if "html" in formats and bundle is not None:
            path = export_html(doc, sub / f"{task.task_id}.html", bundle)
            if path:
                artifacts.append(path)
    _write_manifest(out_dir, artifacts)
    return 0


# --- detect --------------------------------------------------------------------


def cmd_detect(args) -> int:
    sources = [s for s in (args.intentions, args.truth) if s] + (
        ["auto"] if args.auto_segment else []
    )
    if len(sources) != 1:
        print(
            "detect needs exactly one intention source: "
            "--intentions FILE, --truth FILE, or --auto-segment",
            file=sys.stderr,
        )
        return 1
    intention_sets = None
    if not args.auto_segment:
        intention_sets = load_intentions(args.intentions or args.truth)

    tasks, grouped = _load_corpus(args)
    out_dir = Path(args.out)
    reports_dir = out_dir / "reports"
    reports_dir.mkdir(parents=True, exist_ok=True)
    artifacts: list[Path] = []

    for task, trajectories in _replayed(tasks, grouped):
        rows = []
        for trajectory in trajectories:
            tid = trajectory.record.trajectory_id
            if intention_sets is None:
                intentions = None  # detect() auto-segments the reduced trajectory
            else:
                intentions = intention_sets.get(tid)
                if intentions is None:
                    log.warning("no intentions for %s; skipping", tid)
                    continue
            report = detect(trajectory, intentions, task)
            path = reports_dir / f"{tid}.json"
            path.write_text(json.dumps(report_to_json(report), indent=2, sort_keys=True) + "\n")
            artifacts.append(path)
            counts = report.counts()
            rows.append(
                [
                    tid,
                    counts[MisalignmentKind.COGNITIVE_DISSONANCE],
                    counts[MisalignmentKind.USER_UNFAMILIARITY],
                    counts[MisalignmentKind.FUNCTIONAL_INADEQUACY],
                    len(report.findings),
                ]
            )
        summary = out_dir / f"{task.task_id}_summary.csv"
        with summary.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(
                [
                    "trajectory_id",
                    "cognitive_dissonance",
                    "user_unfamiliarity",
                    "functional_inadequacy",
                    "total",
                ]
            )
            writer.writerows(rows)
        artifacts.append(summary)
    _write_manifest(out_dir, artifacts)
    return 0


# --- stats ---------------------------------------------------------------------


def cmd_stats(args) -> int:
    tasks, grouped = _load_corpus(args)
    mode = _MODES[args.mode]
    out_dir = Path(args.out)
    stats_dir = out_dir / "stats"
    stats_dir.mkdir(parents=True, exist_ok=True)
    artifacts: list[Path] = []

    node_dists, out_dists, metrics_rows = [], [], []
    for task, trajectories in _replayed(tasks, grouped):
        graph = drop_self_edges(build_graph(trajectories, task, mode))
        node_dist = analytics.node_size_distribution(graph, args.bins)
        out_dist = analytics.out_degree_distribution(graph, args.bins)
        node_dists.append(node_dist)
        out_dists.append(out_dist)
        for dist, stem in ((node_dist, "node_size"), (out_dist, "out_degree")):
            path = stats_dir / f"{task.task_id}_{stem}.csv"
            _write_distribution_csv(dist, path)
            artifacts.append(path)
        metrics_rows.append(
            [
                task.task_id,
                len(graph.nodes),
                len(graph.edges),
                graph.trajectory_count,
                f"{analytics.graph_entropy(graph):.9f}",
            ]
        )

    for dists, stem in ((node_dists, "node_size"), (out_dists, "out_degree")):
        ranking = analytics.rank_tasks(dists)
        path = stats_dir / f"ranking_{stem}.csv"
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["task_id", "mean"])
            writer.writerows([tid, f"{mean:.9f}"] for tid, mean in ranking.entries)
        artifacts.append(path)

    path = stats_dir / "graph_metrics.csv"
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["task_id", "nodes", "edges", "trajectories", "entropy_bits"])
        writer.writerows(metrics_rows)
    artifacts.append(path)
    _write_manifest(out_dir, artifacts)
    return 0


def _write_distribution_csv(dist, path: Path) -> None:
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["node", "value"])
        for i, value in enumerate(dist.values):
            writer.writerow([i, f"{value:.9f}"])
        writer.writerow(["mean", f"{dist.mean:.9f}"])
        for b, count in enumerate(dist.histogram):
            lo = b * dist.bin_width
            writer.writerow([f"bin_{lo:.2f}_{min(1.0, lo + dist.bin_width):.2f}", count])


# --- generate ------------------------------------------------------------------


def cmd_generate(args) -> int:
    library = synthgen.library_by_id()
    task_ids = args.task or sorted(library)
    missing = [t for t in task_ids if t not in library]
    if missing:
        print(f"unknown tasks {missing}; available: {sorted(library)}", file=sys.stderr)
        return 1
    mix = [
        (synthgen.ideal_model(args.seed), args.ideal),
        (synthgen.unfamiliar_model(args.seed + 1), args.unfamiliar),
        (synthgen.dissonant_model(args.seed + 2), args.dissonant),
    ]
    labeled = []
    specs = []
    for task_id in task_ids:
        scripted = library[task_id]
        labeled.extend(synthgen.generate_corpus(scripted, mix))
        specs.append(scripted.spec)
    out_dir = Path(args.out)
    paths = synthgen.write_corpus(labeled, specs, out_dir)
    artifacts = [paths.log, paths.log.with_name(paths.log.name + ".manifest.json"),
                 paths.intentions, paths.truth]
    artifacts.extend(sorted(paths.task_dir.glob("*.json")))
    _write_manifest(out_dir, artifacts)
    return 0


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trajlens",
        description="Replay, graph, and audit grid-puzzle solving trajectories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def corpus_args(p):
        p.add_argument("--tasks", required=True, help="directory of task JSON files")
        p.add_argument("--logs", required=True, help="trajectory log CSV")
        p.add_argument("--out", required=True, help="output directory")

    p_graph = sub.add_parser("graph", help="build and export state-space graphs")
    corpus_args(p_graph)
    p_graph.add_argument("--mode", choices=sorted(_MODES), default="grid-only")
    p_graph.add_argument(
        "--format", default="json,dot,html", help="comma list of json,dot,html"
    )
    p_graph.set_defaults(func=cmd_graph)

    p_detect = sub.add_parser("detect", help="classify trajectory misalignments")
    corpus_args(p_detect)
    p_detect.add_argument("--intentions", help="annotated intention JSON")
    p_detect.add_argument("--truth", help="generator-truth intention JSON")
    p_detect.add_argument(
        "--auto-segment", action="store_true", help="segment trajectories automatically"
    )
    p_detect.set_defaults(func=cmd_detect)

    p_stats = sub.add_parser("stats", help="distribution, ranking, and entropy CSVs")
    corpus_args(p_stats)
    p_stats.add_argument("--mode", choices=sorted(_MODES), default="grid-only")
    p_stats.add_argument("--bins", type=float, default=0.05, help="histogram bin width")
    p_stats.set_defaults(func=cmd_stats)

    p_gen = sub.add_parser("generate", help="write a synthetic labeled corpus")
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--task", action="append", help="library task id (repeatable)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--ideal", type=int, default=10)
    p_gen.add_argument("--unfamiliar", type=int, default=10)
    p_gen.add_argument("--dissonant", type=int, default=5)
    p_gen.set_defaults(func=cmd_generate)

    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TrajlensError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
