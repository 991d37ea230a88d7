import pytest

from trajlens import synthgen
from trajlens.replay import replay


@pytest.fixture(scope="session")
def t49():
    return synthgen.task_49()


@pytest.fixture(scope="session")
def t124():
    return synthgen.task_124()


@pytest.fixture(scope="session")
def identity():
    return synthgen.identity_task()


@pytest.fixture(scope="session")
def ref_records():
    return {r.trajectory_id: r for r in synthgen.task_49_reference_records()}


@pytest.fixture(scope="session")
def ref_annotations():
    return synthgen.task_49_reference_annotations()


@pytest.fixture(scope="session")
def ref_trajectories(t49, ref_records):
    return {tid: replay(rec, t49.spec) for tid, rec in ref_records.items()}
