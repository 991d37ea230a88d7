#!/usr/bin/env python3
"""End-to-end demo: synthesize a corpus, then graph, detect, and profile it.

Writes everything under ./artifacts/demo (override with --out). The graph
step emits per-task JSON/DOT and, when the viewer bundle has been built
(see frontend/README.md), a self-contained interactive HTML per task.
"""

import argparse
import sys

from trajlens.cli import main as trajlens_main


def run(argv) -> int:
    code = trajlens_main(argv)
    if code != 0:
        print(f"step failed: trajlens {' '.join(argv)}", file=sys.stderr)
    return code


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="artifacts/demo")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument(
        "--task",
        action="append",
        help="library task id (repeatable); defaults to the two fixture puzzles",
    )
    args = parser.parse_args()
    tasks = args.task or ["49", "124"]
    out = args.out

    gen = ["generate", "--out", f"{out}/corpus", "--seed", str(args.seed)]
    for task in tasks:
        gen += ["--task", task]
    corpus = [f"--tasks", f"{out}/corpus/tasks", "--logs", f"{out}/corpus/logs.csv"]

    steps = [
        gen,
        ["graph", *corpus, "--out", f"{out}/graphs", "--mode", "grid-only"],
        ["graph", *corpus, "--out", f"{out}/graphs", "--mode", "with-selection",
         "--format", "json"],
        ["detect", *corpus, "--truth", f"{out}/corpus/intentions.json",
         "--out", f"{out}/detect"],
        ["stats", *corpus, "--out", f"{out}/stats"],
    ]
    for step in steps:
        code = run(step)
        if code != 0:
            return code
    print(f"pipeline artifacts under {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
