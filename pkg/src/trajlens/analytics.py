"""Quantitative measures over built state-space graphs.

Normalized node size profiles where users concentrated; normalized
out-degree profiles how much choice each state offered; the entropy rate of
the traversal-frequency random walk condenses both into one diversity
number. All normalizations divide by the per-graph maximum so tasks of
different sizes rank on one scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyGraph, MetricMismatch
from .graphs import StateGraph, normalized_node_sizes


class Metric(Enum):
    NODE_SIZE = "normalized_node_size"
    OUT_DEGREE = "normalized_out_degree"


@dataclass(frozen=True)
class DegreeDistribution:
    task_id: str
    metric: Metric
    values: tuple[float, ...]  # ordered by node key for determinism
    mean: float
    bin_width: float
    histogram: tuple[int, ...]

    def __post_init__(self):
        assert all(0.0 <= v <= 1.0 for v in self.values)


def _histogram(values, bin_width: float) -> tuple[int, ...]:
    bins = max(1, math.ceil(round(1.0 / bin_width, 9)))
    counts = [0] * bins
    for v in values:
        counts[min(int(v / bin_width), bins - 1)] += 1
    return tuple(counts)


def _distribution(task_id, metric, keyed_values, bin_width) -> DegreeDistribution:
    ordered = tuple(v for _, v in sorted(keyed_values, key=lambda kv: kv[0].hex_id))
    mean = sum(ordered) / len(ordered)
    return DegreeDistribution(
        task_id, metric, ordered, mean, bin_width, _histogram(ordered, bin_width)
    )


def node_size_distribution(graph: StateGraph, bin_width: float = 0.05) -> DegreeDistribution:
    sizes = normalized_node_sizes(graph)  # raises EmptyGraph
    return _distribution(graph.task_id, Metric.NODE_SIZE, list(sizes.items()), bin_width)


def out_degree_distribution(graph: StateGraph, bin_width: float = 0.05) -> DegreeDistribution:
    """Distinct outgoing (operation, successor) pairs per node, max-normalized.

    Terminal nodes contribute 0; call after dropping self-edges for the
    without-selection reading.
    """
    if not graph.nodes:
        raise EmptyGraph(f"graph for task {graph.task_id} has no nodes")
    degrees = {key: 0 for key in graph.nodes}
    for (src, _, _), _meta in graph.edges.items():
        degrees[src] += 1
    top = max(degrees.values())
    keyed = [(k, (d / top if top else 0.0)) for k, d in degrees.items()]
    return _distribution(graph.task_id, Metric.OUT_DEGREE, keyed, bin_width)


@dataclass(frozen=True)
class TaskRanking:
    metric: Metric
    entries: tuple[tuple[str, float], ...]  # (task_id, mean), descending


def rank_tasks(distributions) -> TaskRanking:
    """Sort tasks by mean, descending; ties break on task id."""
    distributions = list(distributions)
    if not distributions:
        raise MetricMismatch("nothing to rank")
    metric = distributions[0].metric
    if any(d.metric is not metric for d in distributions):
        raise MetricMismatch("mixed metrics in one ranking")
    entries = sorted(((d.task_id, d.mean) for d in distributions), key=lambda e: (-e[1], e[0]))
    return TaskRanking(metric, tuple(entries))


def graph_entropy(graph: StateGraph) -> float:
    """Entropy rate (bits) of the traversal-frequency random walk.

    Sum over nodes of pi(n) * H(outgoing traversal distribution at n), with
    pi the visit-count distribution; terminal nodes contribute 0.
    """
    if not graph.nodes:
        raise EmptyGraph(f"graph for task {graph.task_id} has no nodes")
    total_visits = sum(m.visits for m in graph.nodes.values())
    if total_visits == 0:
        return 0.0
    outgoing: dict = {}
    for (src, _, _), meta in graph.edges.items():
        outgoing.setdefault(src, []).append(meta.traversals)
    entropy = 0.0
    for key, meta in graph.nodes.items():
        counts = outgoing.get(key)
        if not counts:
            continue
        total = sum(counts)
        h = 0.0
        for c in counts:
            p = c / total
            h -= p * math.log2(p)
        entropy += (meta.visits / total_visits) * h
    return entropy


def spearman_rank_correlation(xs, ys) -> float:
    """Spearman's rho with average ranks for ties."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need two sequences of equal length >= 2")

    def ranks(vals):
        order = sorted(range(len(vals)), key=lambda i: vals[i])
        out = [0.0] * len(vals)
        i = 0
        while i < len(order):
            j = i
            while j + 1 < len(order) and vals[order[j + 1]] == vals[order[i]]:
                j += 1
            avg = (i + j) / 2 + 1
            for k in range(i, j + 1):
                out[order[k]] = avg
            i = j + 1
        return out

    rx, ry = ranks(list(xs)), ranks(list(ys))
    mx, my = sum(rx) / len(rx), sum(ry) / len(ry)
    cov = sum((a - mx) * (b - my) for a, b in zip(rx, ry))
    vx = math.sqrt(sum((a - mx) ** 2 for a in rx))
    vy = math.sqrt(sum((b - my) ** 2 for b in ry))
    if vx == 0 or vy == 0:
        return 0.0
    return cov / (vx * vy)


def ranking_concordance(a: TaskRanking, b: TaskRanking) -> float:
    """Spearman correlation between two rankings over the same task set."""
    ids = [task_id for task_id, _ in a.entries]
    if sorted(ids) != sorted(t for t, _ in b.entries):
        raise MetricMismatch("rankings cover different task sets")
    pos_b = {task_id: i for i, (task_id, _) in enumerate(b.entries)}
    return spearman_rank_correlation(range(len(ids)), [pos_b[t] for t in ids])
