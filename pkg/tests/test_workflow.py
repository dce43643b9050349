from __future__ import annotations

import json
import threading
import time

import pytest

from untrue.workflow import (
    DagCycleError,
    DagValidationError,
    TaskSpec,
    TaskState,
    UnknownDependencyError,
    execute_dag,
    validate_dag,
)


def _noop():
    pass


def task(task_id, deps=(), action=_noop, max_retries=0, retry_delay=0.0):
    return TaskSpec(
        task_id=task_id,
        action=action,
        deps=frozenset(deps),
        max_retries=max_retries,
        retry_delay=retry_delay,
    )


def test_singleton_order():
    assert validate_dag([task("only")]) == ["only"]


def test_chain_has_unique_topological_order():
    tasks = [
        task("normalize", deps=["ingest"]),
        task("ingest"),
        task("index", deps=["enrich"]),
        task("enrich", deps=["normalize"]),
    ]
    assert validate_dag(tasks) == ["ingest", "normalize", "enrich", "index"]


def test_ties_break_lexicographically():
    tasks = [task("b"), task("a"), task("c", deps=["a", "b"])]
    assert validate_dag(tasks) == ["a", "b", "c"]


def test_two_cycle_detected_with_members_named():
    tasks = [task("x", deps=["y"]), task("y", deps=["x"])]
    with pytest.raises(DagCycleError) as err:
        validate_dag(tasks)
    assert set(err.value.cycle_members) == {"x", "y"}


def test_unknown_dependency_rejected():
    with pytest.raises(UnknownDependencyError):
        validate_dag([task("a", deps=["ghost"])])


def test_self_dependency_rejected():
    with pytest.raises(DagValidationError):
        task("a", deps=["a"])


def test_empty_task_set_rejected():
    with pytest.raises(DagValidationError):
        validate_dag([])


def test_happy_chain_all_success_single_attempts():
    calls = []
    tasks = [
        task("a", action=lambda: calls.append("a")),
        task("b", deps=["a"], action=lambda: calls.append("b")),
        task("c", deps=["b"], action=lambda: calls.append("c")),
    ]
    run = execute_dag(tasks, run_id="t1")
    assert calls == ["a", "b", "c"]
    assert all(state is TaskState.SUCCESS for state in run.task_states.values())
    assert run.attempt_counts == {"a": 1, "b": 1, "c": 1}
    assert run.finished_at is not None


def test_permanent_failure_retries_then_skips_downstream():
    attempts = []

    def failing():
        attempts.append(1)
        raise RuntimeError("boom")

    tasks = [
        task("a"),
        task("b", deps=["a"], action=failing, max_retries=2),
        task("c", deps=["b"]),
        task("d", deps=["c"]),
    ]
    run = execute_dag(tasks, run_id="t2")
    assert run.task_states == {
        "a": TaskState.SUCCESS,
        "b": TaskState.FAILED,
        "c": TaskState.SKIPPED,
        "d": TaskState.SKIPPED,
    }
    assert run.attempt_counts["b"] == 3
    assert len(attempts) == 3
    assert "boom" in run.errors["b"]


def test_retry_delay_passed_to_sleep():
    sleeps = []

    def failing():
        raise RuntimeError("x")

    tasks = [task("a", action=failing, max_retries=2, retry_delay=0.25)]
    execute_dag(tasks, run_id="t3", sleep=sleeps.append)
    assert sleeps == [0.25, 0.25]


def test_diamond_dependency_timestamps_are_ordered():
    tasks = [
        task("a", action=lambda: time.sleep(0.01)),
        task("b", deps=["a"], action=lambda: time.sleep(0.01)),
        task("c", deps=["a"], action=lambda: time.sleep(0.01)),
        task("d", deps=["b", "c"]),
    ]
    run = execute_dag(tasks, run_id="t4", max_workers=2)
    assert all(state is TaskState.SUCCESS for state in run.task_states.values())
    assert run.task_started_at["b"] >= run.task_finished_at["a"]
    assert run.task_started_at["c"] >= run.task_finished_at["a"]
    assert run.task_started_at["d"] >= run.task_finished_at["b"]
    assert run.task_started_at["d"] >= run.task_finished_at["c"]


def test_sequential_mode_runs_in_topological_order():
    calls = []
    tasks = [
        task("m", action=lambda: calls.append("m")),
        task("k", action=lambda: calls.append("k")),
        task("z", deps=["k", "m"], action=lambda: calls.append("z")),
    ]
    run = execute_dag(tasks, run_id="t5", max_workers=1)
    assert calls == ["k", "m", "z"]
    assert run.is_terminal()


def test_retry_bound_holds_across_mixed_outcomes():
    flaky_state = {"left": 2}

    def flaky():
        if flaky_state["left"] > 0:
            flaky_state["left"] -= 1
            raise RuntimeError("transient")

    tasks = [task("flaky", action=flaky, max_retries=3), task("after", deps=["flaky"])]
    run = execute_dag(tasks, run_id="t6")
    assert run.task_states["flaky"] is TaskState.SUCCESS
    assert run.attempt_counts["flaky"] == 3  # two failures + one success
    for task_id, spec in (("flaky", tasks[0]), ("after", tasks[1])):
        assert run.attempt_counts[task_id] <= spec.max_retries + 1


def test_terminal_completeness():
    def failing():
        raise RuntimeError("x")

    tasks = [task("a", action=failing), task("b", deps=["a"]), task("c")]
    run = execute_dag(tasks, run_id="t7")
    assert run.is_terminal()
    assert run.finished_at is not None


def test_broken_executor_aborts_run_with_reason():
    class BrokenPool:
        def submit(self, fn, *args, **kwargs):
            raise RuntimeError("pool is shut down")

        def shutdown(self, wait=True):
            pass

    tasks = [task("a"), task("b", deps=["a"])]
    run = execute_dag(tasks, run_id="t8", executor=BrokenPool())
    assert run.task_states["a"] is TaskState.FAILED
    assert run.task_states["b"] is TaskState.FAILED
    assert "executor unavailable" in run.errors["a"]
    assert run.is_terminal()


def test_run_log_records_state_transitions(tmp_path):
    log_path = tmp_path / "run.ndjson"
    tasks = [task("a"), task("b", deps=["a"])]
    execute_dag(tasks, run_id="t9", run_log_path=log_path)
    entries = [json.loads(line) for line in log_path.read_text().splitlines()]
    assert [(e["task_id"], e["state"]) for e in entries] == [
        ("a", "running"),
        ("a", "success"),
        ("b", "running"),
        ("b", "success"),
    ]
    assert all(e["run_id"] == "t9" for e in entries)


def test_on_run_created_exposes_live_run():
    seen = []
    tasks = [task("a")]
    run = execute_dag(tasks, run_id="t10", on_run_created=seen.append)
    assert seen and seen[0] is run


def test_independent_subgraphs_can_run_concurrently():
    barrier = threading.Barrier(2, timeout=5)

    def rendezvous():
        barrier.wait()

    tasks = [task("left", action=rendezvous), task("right", action=rendezvous)]
    run = execute_dag(tasks, run_id="t11", max_workers=2)
    assert all(state is TaskState.SUCCESS for state in run.task_states.values())
