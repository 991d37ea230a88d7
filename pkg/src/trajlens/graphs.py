"""Aggregate replayed trajectories into weighted state-space multigraphs.

Nodes are canonical states (grid-only or grid+selection), edges are
operations, and both carry traversal frequencies. In grid-only mode,
transitions that provably change nothing visible (copy/select/submit steps
whose endpoints collapse to the same node) are dropped, mirroring the
without-selection visualizations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import EmptyGraph, TaskMismatch
from .grid import GRID_PRESERVING, Mode, OpKind, State, StateKey, state_key
from .replay import Trajectory
from .tasks import TaskSpec


class NodeClass(Enum):
    INPUT = "input"
    ANSWER = "answer"
    WRONG_SUBMISSION = "wrong_submission"
    OTHER = "other"


NODE_COLORS = {
    NodeClass.INPUT: "blue",
    NodeClass.ANSWER: "green",
    NodeClass.WRONG_SUBMISSION: "red",
    NodeClass.OTHER: "gray",
}


@dataclass
class NodeMeta:
    visits: int
    klass: NodeClass
    sample_state: State


@dataclass
class EdgeMeta:
    traversals: int


EdgeId = tuple[StateKey, str, StateKey]


@dataclass
class StateGraph:
    task_id: str
    mode: Mode
    nodes: dict[StateKey, NodeMeta]
    edges: dict[EdgeId, EdgeMeta]
    trajectory_count: int

    def out_edges(self, key: StateKey) -> list[tuple[EdgeId, EdgeMeta]]:
        return [(eid, meta) for eid, meta in self.edges.items() if eid[0] == key]


def build_graph(
    trajectories: Iterable[Trajectory], task: TaskSpec, mode: Mode = Mode.GRID_ONLY
) -> StateGraph:
    trajectories = list(trajectories)
    input_key = state_key(State.initial(task.test_input), mode)
    nodes: dict[StateKey, NodeMeta] = {}
    edges: dict[EdgeId, EdgeMeta] = {}
    wrong_submissions: set[StateKey] = set()

    def visit(key: StateKey, state: State) -> None:
        meta = nodes.get(key)
        if meta is None:
            nodes[key] = NodeMeta(visits=1, klass=NodeClass.OTHER, sample_state=state)
        else:
            meta.visits += 1

    for trajectory in trajectories:
        if trajectory.record.task_id != task.task_id:
            raise TaskMismatch(
                f"trajectory {trajectory.record.trajectory_id} belongs to "
                f"{trajectory.record.task_id}, not {task.task_id}"
            )
        states = trajectory.states
        prev_key = state_key(states[0], mode)
        visit(prev_key, states[0])
        for action, nxt in zip(trajectory.record.actions, states[1:]):
            next_key = state_key(nxt, mode)
            kind = action.op.kind
            if kind is OpKind.SUBMIT and nxt.grid != task.answer:
                wrong_submissions.add(prev_key)
            if (
                mode is Mode.GRID_ONLY
                and next_key == prev_key
                and kind in GRID_PRESERVING
            ):
                continue  # invisible in the without-selection view
            eid = (prev_key, action.op.label(), next_key)
            meta = edges.get(eid)
            if meta is None:
                edges[eid] = EdgeMeta(traversals=1)
            else:
                meta.traversals += 1
            visit(next_key, nxt)
            prev_key = next_key

    answer = task.answer
    for key, meta in nodes.items():
        if meta.sample_state.grid == answer:
            meta.klass = NodeClass.ANSWER  # wins ties, incl. the identity task
        elif key in wrong_submissions:
            meta.klass = NodeClass.WRONG_SUBMISSION
        elif key == input_key:
            meta.klass = NodeClass.INPUT
        else:
            meta.klass = NodeClass.OTHER

    return StateGraph(task.task_id, mode, nodes, edges, len(trajectories))


def drop_self_edges(graph: StateGraph) -> StateGraph:
    """Remove every loop edge; node visit counts are untouched."""
    edges = {eid: EdgeMeta(m.traversals) for eid, m in graph.edges.items() if eid[0] != eid[2]}
    nodes = {k: NodeMeta(m.visits, m.klass, m.sample_state) for k, m in graph.nodes.items()}
    return StateGraph(graph.task_id, graph.mode, nodes, edges, graph.trajectory_count)


def normalized_node_sizes(graph: StateGraph) -> dict[StateKey, float]:
    """Per-node visits divided by the busiest node's visits."""
    if not graph.nodes:
        raise EmptyGraph(f"graph for task {graph.task_id} has no nodes")
    top = max(meta.visits for meta in graph.nodes.values())
    return {key: meta.visits / top for key, meta in graph.nodes.items()}


# --- serialization -------------------------------------------------------------


def graph_to_json(graph: StateGraph) -> dict:
    nodes = sorted(graph.nodes.items(), key=lambda kv: kv[0].hex_id)
    edges = sorted(
        graph.edges.items(), key=lambda kv: (kv[0][0].hex_id, kv[0][1], kv[0][2].hex_id)
    )
    return {
        "task_id": graph.task_id,
        "mode": graph.mode.value,
        "trajectory_count": graph.trajectory_count,
        "nodes": [
            {
                "key": key.hex_id,
                "visits": meta.visits,
                "klass": meta.klass.value,
                "grid": meta.sample_state.grid.rows(),
            }
            for key, meta in nodes
        ],
        "edges": [
            {
                "src": src.hex_id,
                "dst": dst.hex_id,
                "op": op,
                "traversals": meta.traversals,
            }
            for (src, op, dst), meta in edges
        ],
    }


_DOT_FILL = {
    NodeClass.INPUT: "#4a90d9",
    NodeClass.ANSWER: "#2d8a4e",
    NodeClass.WRONG_SUBMISSION: "#c44536",
    NodeClass.OTHER: "#bbbbbb",
}


def graph_to_dot(graph: StateGraph) -> str:
    """DOT export with widths growing logarithmically in frequency."""
    max_visits = max((m.visits for m in graph.nodes.values()), default=1)
    lines = [f'digraph "{graph.task_id}" {{', "  node [style=filled, shape=circle];"]
    for key, meta in sorted(graph.nodes.items(), key=lambda kv: kv[0].hex_id):
        width = 0.4 + 0.8 * math.log(meta.visits + 1) / math.log(max_visits + 1)
        lines.append(
            f'  "{key.hex_id[:12]}" [fillcolor="{_DOT_FILL[meta.klass]}", '
            f'width={width:.3f}, label="{meta.visits}"];'
        )
    for (src, op, dst), meta in sorted(
        graph.edges.items(), key=lambda kv: (kv[0][0].hex_id, kv[0][1], kv[0][2].hex_id)
    ):
        pen = 1.0 + 1.5 * math.log(meta.traversals + 1)
        lines.append(
            f'  "{src.hex_id[:12]}" -> "{dst.hex_id[:12]}" '
            f'[label="{op}", penwidth={pen:.3f}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
