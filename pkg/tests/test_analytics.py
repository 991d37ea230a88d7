"""Distributions, rankings, entropy, and the concordance diagnostic."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trajlens import synthgen
from trajlens.analytics import (
    Metric,
    graph_entropy,
    node_size_distribution,
    out_degree_distribution,
    rank_tasks,
    ranking_concordance,
    spearman_rank_correlation,
)
from trajlens.errors import EmptyGraph, MetricMismatch
from trajlens.graphs import EdgeMeta, NodeClass, NodeMeta, StateGraph, build_graph, drop_self_edges
from trajlens.grid import Grid, Mode, State, StateKey
from trajlens.replay import replay


def replay_corpus(scripted, mix):
    labeled = synthgen.generate_corpus(scripted, mix)
    return [replay(lt.record, scripted.spec) for lt in labeled]


def path_graph(t49, ref_trajectories):
    return build_graph([ref_trajectories["49-efficient"]], t49.spec, Mode.GRID_ONLY)


def fabricated_graph(nodes, edges):
    """Hand-built graph: nodes {name: visits}, edges {(a, op, b): traversals}."""
    sample = State.initial(Grid.from_rows([[1]]))
    keyed = {
        name: StateKey(Mode.GRID_ONLY, name.encode()) for name in nodes
    }
    return StateGraph(
        task_id="fixture",
        mode=Mode.GRID_ONLY,
        nodes={
            keyed[name]: NodeMeta(visits, NodeClass.OTHER, sample)
            for name, visits in nodes.items()
        },
        edges={
            (keyed[a], op, keyed[b]): EdgeMeta(t)
            for (a, op, b), t in edges.items()
        },
        trajectory_count=max(nodes.values(), default=0),
    )


# --- node size distribution -------------------------------------------------------


def test_path_graph_distribution_is_uniform_one(t49, ref_trajectories):
    dist = node_size_distribution(path_graph(t49, ref_trajectories))
    assert set(dist.values) == {1.0}
    assert dist.mean == 1.0
    assert dist.metric is Metric.NODE_SIZE


def test_easy_corpus_mean_near_one_hard_corpus_below(t124):
    easy = build_graph(
        replay_corpus(t124, [(synthgen.ideal_model(3), 20)]), t124.spec, Mode.GRID_ONLY
    )
    hard = build_graph(
        replay_corpus(
            t124,
            [
                (synthgen.ideal_model(3), 4),
                (synthgen.unfamiliar_model(4), 8),
                (synthgen.dissonant_model(5, cycle_rate=0.8), 8),
            ],
        ),
        t124.spec,
        Mode.GRID_ONLY,
    )
    easy_mean = node_size_distribution(easy).mean
    hard_mean = node_size_distribution(hard).mean
    assert easy_mean > 0.95
    assert hard_mean < easy_mean
    # cross-check against a direct recomputation
    top = max(m.visits for m in hard.nodes.values())
    direct = sum(m.visits / top for m in hard.nodes.values()) / len(hard.nodes)
    assert math.isclose(hard_mean, direct, rel_tol=1e-12)


def test_histogram_bins_count_every_node(t124):
    graph = build_graph(replay_corpus(t124, synthgen.default_mix(1)), t124.spec)
    dist = node_size_distribution(graph, bin_width=0.25)
    assert len(dist.histogram) == 4
    assert sum(dist.histogram) == len(graph.nodes)
    assert dist.histogram[-1] >= 1  # the max node lands in the last bin


# --- out-degree distribution ---------------------------------------------------------


def test_out_degree_on_a_chain(t49, ref_trajectories):
    dist = out_degree_distribution(path_graph(t49, ref_trajectories))
    # two chain nodes at 1.0, the terminal at 0.0
    assert sorted(dist.values) == [0.0, 1.0, 1.0]


def test_out_degree_star_fixture():
    graph = fabricated_graph(
        {"hub": 3, "a": 1, "b": 1, "c": 1, "a2": 1, "b2": 1, "c2": 1},
        {
            ("hub", "x", "a"): 1,
            ("hub", "y", "b"): 1,
            ("hub", "z", "c"): 1,
            ("a", "x", "a2"): 1,
            ("b", "x", "b2"): 1,
            ("c", "x", "c2"): 1,
        },
    )
    dist = out_degree_distribution(graph)
    assert sorted(dist.values, reverse=True) == [1.0, 1 / 3, 1 / 3, 1 / 3, 0.0, 0.0, 0.0]


def test_out_degree_counts_distinct_op_successor_pairs(t124):
    trajectories = replay_corpus(t124, synthgen.default_mix(19))
    graph = drop_self_edges(build_graph(trajectories, t124.spec, Mode.GRID_ONLY))
    dist = out_degree_distribution(graph)
    degrees = {}
    for (src, op, dst) in graph.edges:
        degrees.setdefault(src, set()).add((op, dst))
    top = max(len(v) for v in degrees.values())
    expect = sorted(
        (len(degrees.get(k, ())) / top) for k in graph.nodes
    )
    assert sorted(dist.values) == pytest.approx(expect)


# --- rankings ---------------------------------------------------------------------------


def test_rank_tasks_sorts_descending():
    from trajlens.analytics import DegreeDistribution

    def dist(tid, mean):
        return DegreeDistribution(tid, Metric.NODE_SIZE, (mean,), mean, 0.5, (1, 0))

    ranking = rank_tasks([dist("a", 0.5), dist("b", 0.9), dist("c", 0.2)])
    assert [t for t, _ in ranking.entries] == ["b", "a", "c"]


def test_rank_tasks_breaks_ties_by_task_id():
    from trajlens.analytics import DegreeDistribution

    def dist(tid, mean):
        return DegreeDistribution(tid, Metric.NODE_SIZE, (mean,), mean, 0.5, (1, 0))

    ranking = rank_tasks([dist("z", 0.5), dist("a", 0.5)])
    assert [t for t, _ in ranking.entries] == ["a", "z"]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=1, max_size=8, unique=True))
def test_rank_tasks_matches_sort_oracle(means):
    from trajlens.analytics import DegreeDistribution

    dists = [
        DegreeDistribution(f"t{i}", Metric.NODE_SIZE, (m,), m, 0.5, (1, 0))
        for i, m in enumerate(means)
    ]
    ranking = rank_tasks(dists)
    oracle = sorted(((f"t{i}", m) for i, m in enumerate(means)), key=lambda e: (-e[1], e[0]))
    assert list(ranking.entries) == oracle


def test_rank_tasks_rejects_mixed_metrics(t49, ref_trajectories):
    g = path_graph(t49, ref_trajectories)
    with pytest.raises(MetricMismatch):
        rank_tasks([node_size_distribution(g), out_degree_distribution(g)])


# --- graph entropy ------------------------------------------------------------------------


def test_path_graph_entropy_is_zero(t49, ref_trajectories):
    assert graph_entropy(path_graph(t49, ref_trajectories)) == 0.0


def test_fair_coin_branch_is_one_bit():
    graph = fabricated_graph(
        {"hub": 2, "a": 0, "b": 0},
        {("hub", "x", "a"): 3, ("hub", "y", "b"): 3},
    )
    assert graph_entropy(graph) == pytest.approx(1.0, abs=1e-12)


def independent_entropy(graph):
    """Direct summation with its own bookkeeping, for cross-checking."""
    rows = {}
    for (src, op, dst), meta in graph.edges.items():
        rows.setdefault(src.digest, {})[(op, dst.digest)] = meta.traversals
    total = sum(m.visits for m in graph.nodes.values())
    acc = 0.0
    for key, meta in graph.nodes.items():
        out = rows.get(key.digest)
        if not out:
            continue
        z = sum(out.values())
        h = -sum((c / z) * math.log2(c / z) for c in out.values())
        acc += meta.visits / total * h
    return acc


def test_entropy_agrees_with_independent_summation(t124, t49, ref_trajectories):
    graphs = [
        build_graph(replay_corpus(t124, synthgen.default_mix(s)), t124.spec)
        for s in (1, 2)
    ]
    graphs.append(build_graph(list(ref_trajectories.values()), t49.spec))
    rng = random.Random(4)
    for _ in range(10):
        n = rng.randint(2, 9)
        nodes = {f"n{i}": rng.randint(1, 30) for i in range(n)}
        edges = {}
        for i in range(n):
            for j in range(n):
                if i != j and rng.random() < 0.4:
                    edges[(f"n{i}", f"op{rng.randint(0, 2)}", f"n{j}")] = rng.randint(1, 9)
        graphs.append(fabricated_graph(nodes, edges))
    for graph in graphs:
        mine = graph_entropy(graph)
        theirs = independent_entropy(graph)
        assert mine >= 0.0
        if theirs:
            assert abs(mine - theirs) / theirs < 1e-9
        else:
            assert mine == 0.0


def test_entropy_never_decreases_when_a_branch_is_added(t124):
    # a deterministic corpus has zero entropy; adding a deviating
    # trajectory introduces a branch and can only raise it
    base = replay_corpus(t124, [(synthgen.ideal_model(3), 10)])
    zero = graph_entropy(build_graph(base, t124.spec))
    assert zero == 0.0
    extra = replay_corpus(t124, [(synthgen.unfamiliar_model(4), 1)])
    more = graph_entropy(build_graph(base + extra, t124.spec))
    assert more >= zero


def test_empty_graph_entropy_raises(t124):
    with pytest.raises(EmptyGraph):
        graph_entropy(build_graph([], t124.spec))


# --- spearman ----------------------------------------------------------------------------


def test_spearman_matches_scipy_on_random_data():
    scipy_stats = pytest.importorskip("scipy.stats")
    rng = random.Random(11)
    for n in (3, 6, 12, 40):
        xs = [rng.random() for _ in range(n)]
        ys = [rng.random() for _ in range(n)]
        mine = spearman_rank_correlation(xs, ys)
        ref = scipy_stats.spearmanr(xs, ys).statistic
        assert mine == pytest.approx(ref, abs=1e-12)
    # with ties
    xs = [1, 1, 2, 3, 3, 3]
    ys = [2, 1, 1, 5, 5, 4]
    assert spearman_rank_correlation(xs, ys) == pytest.approx(
        scipy_stats.spearmanr(xs, ys).statistic, abs=1e-12
    )


def test_ranking_concordance_perfect_and_reversed():
    from trajlens.analytics import DegreeDistribution, TaskRanking

    a = TaskRanking(Metric.NODE_SIZE, (("x", 0.9), ("y", 0.5), ("z", 0.1)))
    same = TaskRanking(Metric.OUT_DEGREE, (("x", 0.8), ("y", 0.4), ("z", 0.2)))
    reverse = TaskRanking(Metric.OUT_DEGREE, (("z", 0.8), ("y", 0.4), ("x", 0.2)))
    assert ranking_concordance(a, same) == pytest.approx(1.0)
    assert ranking_concordance(a, reverse) == pytest.approx(-1.0)
    with pytest.raises(MetricMismatch):
        ranking_concordance(a, TaskRanking(Metric.OUT_DEGREE, (("x", 1.0),)))
