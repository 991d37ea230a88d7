"""trajlens: replay, graph, and audit grid-puzzle solving trajectories."""

__version__ = "0.1.0"

from .grid import (  # noqa: F401
    Action,
    Grid,
    Mode,
    Operation,
    OpKind,
    Selection,
    State,
    StateKey,
    apply_action,
    state_key,
)
from .actions import enumerate_bounded_actions, selection_family  # noqa: F401
from .tasks import TaskSpec, load_task  # noqa: F401
from .logs import TrajectoryRecord, parse_log, write_log  # noqa: F401
from .replay import Trajectory, replay, replay_all  # noqa: F401
from .graphs import StateGraph, build_graph, drop_self_edges, normalized_node_sizes  # noqa: F401
from .detect import (  # noqa: F401
    IntentionSegment,
    IntentionSet,
    MisalignmentKind,
    MisalignmentReport,
    auto_segment,
    detect,
    find_single_action,
    splice_cycles,
)
from .analytics import (  # noqa: F401
    DegreeDistribution,
    TaskRanking,
    graph_entropy,
    node_size_distribution,
    out_degree_distribution,
    rank_tasks,
)
from .synthgen import (  # noqa: F401
    LabeledTrajectory,
    UserModel,
    generate_corpus,
    scripted_task_library,
)
