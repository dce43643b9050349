"""Minimal in-process DAG scheduler for the ingest-to-index pipeline.

Tasks declare dependencies; the scheduler runs each task only after all of
its dependencies succeeded, retries failures up to a per-task budget, and
skips every transitive dependent of a permanently failed task. State
transitions are appended to a run log as structured records.
"""

from __future__ import annotations

import json
import threading
import time
from concurrent.futures import FIRST_COMPLETED, Future, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Callable


class TaskState(str, Enum):
    PENDING = "pending"
    RUNNING = "running"
    SUCCESS = "success"
    FAILED = "failed"
    SKIPPED = "skipped"


class DagValidationError(Exception):
    pass


class DagCycleError(DagValidationError):
    def __init__(self, cycle_members: list[str]):
        super().__init__(f"dependency cycle involving tasks {sorted(cycle_members)}")
        self.cycle_members = sorted(cycle_members)


class UnknownDependencyError(DagValidationError):
    pass


@dataclass(frozen=True)
class TaskSpec:
    task_id: str
    action: Callable[[], None]
    deps: frozenset[str] = frozenset()
    max_retries: int = 0
    retry_delay: float = 0.0

    def __post_init__(self):
        if self.task_id in self.deps:
            raise DagValidationError(f"task {self.task_id!r} depends on itself")
        if self.max_retries < 0:
            raise DagValidationError("max_retries must be >= 0")
        if self.retry_delay < 0:
            raise DagValidationError("retry_delay must be >= 0")


@dataclass
class DagRun:
    run_id: str
    task_states: dict[str, TaskState]
    attempt_counts: dict[str, int]
    started_at: datetime
    finished_at: datetime | None = None
    task_started_at: dict[str, float] = field(default_factory=dict)
    task_finished_at: dict[str, float] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)

    def is_terminal(self) -> bool:
        return all(
            state in (TaskState.SUCCESS, TaskState.FAILED, TaskState.SKIPPED)
            for state in self.task_states.values()
        )

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "task_states": {t: s.value for t, s in sorted(self.task_states.items())},
            "attempt_counts": dict(sorted(self.attempt_counts.items())),
            "started_at": self.started_at.isoformat(),
            "finished_at": self.finished_at.isoformat() if self.finished_at else None,
            "errors": dict(sorted(self.errors.items())),
        }


def validate_dag(tasks: list[TaskSpec]) -> list[str]:
    """Deterministic topological order (Kahn, ties by task_id).

    Rejects duplicate ids, references to unknown tasks, and cycles; a cycle
    error names the tasks still entangled in it.
    """
    if not tasks:
        raise DagValidationError("task set is empty")
    by_id: dict[str, TaskSpec] = {}
    for task in tasks:
        if task.task_id in by_id:
            raise DagValidationError(f"duplicate task_id {task.task_id!r}")
        by_id[task.task_id] = task
    for task in tasks:
        unknown = task.deps - by_id.keys()
        if unknown:
            raise UnknownDependencyError(
                f"task {task.task_id!r} depends on unknown tasks {sorted(unknown)}"
            )

    remaining = {t.task_id: set(t.deps) for t in tasks}
    order: list[str] = []
    while remaining:
        ready = sorted(t for t, deps in remaining.items() if not deps)
        if not ready:
            raise DagCycleError(list(remaining))
        for task_id in ready:
            order.append(task_id)
            del remaining[task_id]
        for deps in remaining.values():
            deps.difference_update(ready)
    return order


class RunLog:
    """Append-only NDJSON log of task state transitions."""

    def __init__(self, path: str | Path | None):
        self._path = Path(path) if path else None
        self._lock = threading.Lock()

    def emit(self, run_id: str, task_id: str, state: TaskState, attempt: int) -> None:
        if self._path is None:
            return
        record = {
            "ts": datetime.now(timezone.utc).isoformat(),
            "run_id": run_id,
            "task_id": task_id,
            "state": state.value,
            "attempt": attempt,
        }
        with self._lock:
            with self._path.open("a", encoding="utf-8") as handle:
                handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def execute_dag(
    tasks: list[TaskSpec],
    run_id: str,
    max_workers: int = 1,
    executor: ThreadPoolExecutor | None = None,
    sleep: Callable[[float], None] = time.sleep,
    clock: Callable[[], float] = time.monotonic,
    run_log_path: str | Path | None = None,
    on_run_created: Callable[[DagRun], None] | None = None,
) -> DagRun:
    """Run a validated DAG to completion and return the final state table.

    With a single worker, execution order equals the topological order
    restricted to runnable tasks. attempt_counts[t] never exceeds
    max_retries + 1. on_run_created receives the live DagRun before any task
    starts, so callers can poll progress.
    """
    order = validate_dag(tasks)
    by_id = {t.task_id: t for t in tasks}
    log = RunLog(run_log_path)

    run = DagRun(
        run_id=run_id,
        task_states={t: TaskState.PENDING for t in order},
        attempt_counts={t: 0 for t in order},
        started_at=datetime.now(timezone.utc),
    )
    if on_run_created is not None:
        on_run_created(run)
    state_lock = threading.Lock()

    def set_state(task_id: str, state: TaskState) -> None:
        run.task_states[task_id] = state
        log.emit(run_id, task_id, state, run.attempt_counts[task_id])

    def run_task(task: TaskSpec) -> None:
        attempts = 0
        while True:
            attempts += 1
            with state_lock:
                run.attempt_counts[task.task_id] = attempts
                run.task_started_at.setdefault(task.task_id, clock())
            try:
                task.action()
            except Exception as exc:
                if attempts <= task.max_retries:
                    sleep(task.retry_delay)
                    continue
                with state_lock:
                    run.task_finished_at[task.task_id] = clock()
                    run.errors[task.task_id] = f"{type(exc).__name__}: {exc}"
                    set_state(task.task_id, TaskState.FAILED)
                return
            with state_lock:
                run.task_finished_at[task.task_id] = clock()
                set_state(task.task_id, TaskState.SUCCESS)
            return

    owns_pool = executor is None
    pool = executor or ThreadPoolExecutor(max_workers=max(1, max_workers))
    try:
        in_flight: dict[Future, str] = {}
        while True:
            with state_lock:
                # Cascade skips: any pending task with a failed or skipped
                # dependency can never run.
                changed = True
                while changed:
                    changed = False
                    for task_id in order:
                        if run.task_states[task_id] is not TaskState.PENDING:
                            continue
                        dep_states = [run.task_states[d] for d in by_id[task_id].deps]
                        if any(
                            s in (TaskState.FAILED, TaskState.SKIPPED) for s in dep_states
                        ):
                            set_state(task_id, TaskState.SKIPPED)
                            changed = True

                runnable = [
                    task_id
                    for task_id in order
                    if run.task_states[task_id] is TaskState.PENDING
                    and all(
                        run.task_states[d] is TaskState.SUCCESS for d in by_id[task_id].deps
                    )
                ]
                to_submit = runnable[: max(0, max(1, max_workers) - len(in_flight))]
                for task_id in to_submit:
                    set_state(task_id, TaskState.RUNNING)

            for task_id in to_submit:
                try:
                    future = pool.submit(run_task, by_id[task_id])
                except RuntimeError as exc:
                    _abort_run(run, log, f"executor unavailable: {exc}", state_lock)
                    return _finish(run)
                in_flight[future] = task_id

            if not in_flight:
                with state_lock:
                    if run.is_terminal():
                        break
                    # Nothing running and nothing runnable: remaining pending
                    # tasks are unreachable only via failed deps, handled above.
                    continue
            done, _ = wait(in_flight, return_when=FIRST_COMPLETED)
            for future in done:
                del in_flight[future]
                future.result()  # run_task never raises; surface bugs loudly
    finally:
        if owns_pool:
            pool.shutdown(wait=True)
    return _finish(run)


def _abort_run(run: DagRun, log: RunLog, reason: str, state_lock: threading.Lock) -> None:
    with state_lock:
        for task_id, state in run.task_states.items():
            if state in (TaskState.PENDING, TaskState.RUNNING):
                run.errors[task_id] = reason
                run.task_states[task_id] = TaskState.FAILED
                log.emit(run.run_id, task_id, TaskState.FAILED, run.attempt_counts[task_id])


def _finish(run: DagRun) -> DagRun:
    run.finished_at = datetime.now(timezone.utc)
    return run
