"""Run many instances, in parallel, into one JSON report."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from .encoding import DEFAULT_CAP
from .errors import InputError, ResourceError
from .oracle import DEFAULT_MAX_PATHS
from .solve import OracleDisagreement, query_from_document, run_query
from .sprg import read_sprg

SCHEMA_VERSION = 1


def _one(args) -> dict[str, Any]:
    path, variant, cap, check_oracle, max_paths = args
    row: dict[str, Any] = {"input": str(path)}
    t0 = time.perf_counter()
    try:
        q = query_from_document(read_sprg(path), variant)
        row["variant"] = q.variant
        row["status"] = "ok"
        row["verdict"] = run_query(q, cap, check_oracle, max_paths)
    except OracleDisagreement as exc:
        row["status"] = "disagreement"
        row["error"] = str(exc)
    except InputError as exc:
        row["status"] = "input_error"
        row["error"] = f"{type(exc).__name__}: {exc}"
    except ResourceError as exc:
        row["status"] = "resource_error"
        row["error"] = f"{type(exc).__name__}: {exc}"
    except OSError as exc:
        row["status"] = "input_error"
        row["error"] = f"{type(exc).__name__}: {exc}"
    row["seconds"] = time.perf_counter() - t0
    return row


def run_batch(inputs: Sequence[str | Path], variant: str | None = None, cap: int = DEFAULT_CAP,
              check_oracle: bool = False, max_paths: int = DEFAULT_MAX_PATHS,
              workers: int | None = None) -> dict[str, Any]:
    """One row per input, in input order; a bad file never stops the batch."""
    jobs = [(p, variant, cap, check_oracle, max_paths) for p in inputs]
    if workers == 1 or len(jobs) <= 1:
        rows = [_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_one, jobs))
    counts: dict[str, int] = {}
    for row in rows:
        counts[row["status"]] = counts.get(row["status"], 0) + 1
    return {
        "schema_version": SCHEMA_VERSION,
        "check_oracle": check_oracle,
        "summary": {"total": len(rows), **counts},
        "results": rows,
    }
