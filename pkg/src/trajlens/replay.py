"""Exact replay of recorded trajectories through the state machine."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import ReplayError, TaskMismatch, TrajlensError
from .grid import OpKind, State, apply_action
from .logs import TrajectoryRecord
from .tasks import TaskSpec

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Trajectory:
    """A record plus all materialized states (one more state than actions)."""

    record: TrajectoryRecord
    states: tuple[State, ...]
    # True iff some submit snapshot equals the task answer
    submitted_correct: bool
    # True iff the last state's grid equals the task answer
    final_matches_answer: bool

    @property
    def actions(self):
        return self.record.actions

    def __len__(self) -> int:
        return len(self.record.actions)


def replay(record: TrajectoryRecord, task: TaskSpec) -> Trajectory:
    """Materialize every intermediate state by exact replay.

    The initial state is the task's test input with an empty selection and
    clipboard. A transition failure raises ReplayError carrying the failing
    action index. A stored success flag that disagrees with the replayed
    outcome is logged as a data-quality warning, never an error.
    """
    if record.task_id != task.task_id:
        raise TaskMismatch(
            f"record {record.trajectory_id} belongs to task {record.task_id}, "
            f"not {task.task_id}"
        )
    states = [State.initial(task.test_input)]
    submitted_correct = False
    for index, action in enumerate(record.actions):
        try:
            nxt = apply_action(states[-1], action)
        except TrajlensError as exc:
            raise ReplayError(index, exc) from exc
        if action.op.kind is OpKind.SUBMIT and nxt.submitted == task.answer:
            submitted_correct = True
        states.append(nxt)

    trajectory = Trajectory(
        record=record,
        states=tuple(states),
        submitted_correct=submitted_correct,
        final_matches_answer=states[-1].grid == task.answer,
    )
    if record.success != submitted_correct:
        log.warning(
            "trajectory %s: stored success=%s but replay says %s",
            record.trajectory_id,
            record.success,
            submitted_correct,
        )
    return trajectory


def replay_all(records, task: TaskSpec) -> tuple[list[Trajectory], list[ReplayError]]:
    """Replay many records, collecting failures instead of aborting."""
    done, failed = [], []
    for record in records:
        try:
            done.append(replay(record, task))
        except ReplayError as exc:
            log.warning("trajectory %s: %s", record.trajectory_id, exc)
            failed.append(exc)
    return done, failed
