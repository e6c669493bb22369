"""Structural oracles and the batch driver behind ``verify all``."""

from __future__ import annotations

import logging
import threading
import time
from math import factorial

import numpy as np

from . import kernels
from .enumeration import (
    class_array,
    class_size,
    level_set_array,
    level_set_types,
    narayana,
    partitions,
    stirling_first_kind,
)
from .lemma import verify_A_chain, verify_lemma1, verify_recursion
from .perm import MAX_DEGREE, CycleType
from .products import verify_covering, verify_diag, verify_lemma2
from .report import AggregateReport, Report, timed

log = logging.getLogger(__name__)


def full_cycle(n: int) -> np.ndarray:
    return np.roll(np.arange(n, dtype=np.uint8), -1)


def verify_oracles(n_max: int = 8, a_chain_max: int = 6) -> Report:
    """Level sets vs Stirling, classes vs n!/z, A(K) = {id}, long-cycle factorizations vs Narayana."""
    rep = Report("oracles", {"n_max": n_max, "a_chain_max": a_chain_max}, method="brute")
    with timed(rep):
        bad = 0
        for n in range(1, n_max + 1):
            total = 0
            for i in range(n):
                X = level_set_array(n, i)
                size = X.shape[0]
                total += size
                lengths = n - kernels.cycle_counts(X)
                distinct = len(set(map(bytes, X)))
                if size != stirling_first_kind(n, n - i) or distinct != size or (lengths != i).any():
                    bad += 1
                    rep.add_counterexample({"oracle": "stirling", "n": n, "i": i, "size": size,
                                            "stirling": stirling_first_kind(n, n - i)})
            if total != factorial(n):
                bad += 1
                rep.add_counterexample({"oracle": "level-set total", "n": n, "total": total})
            for parts in partitions(n):
                ct = CycleType(parts)
                got = class_array(ct).shape[0]
                if got != class_size(ct):
                    bad += 1
                    rep.add_counterexample({"oracle": "class size", "type": str(ct), "size": got})
            # defect-0 factorizations s1 s2 = (1 2 ... n)
            c = full_cycle(n)
            for i in range(n):
                got = int(np.count_nonzero(kernels.cofactor_lengths(level_set_array(n, i), c) == n - 1 - i))
                if got != narayana(n, n - i):
                    bad += 1
                    rep.add_counterexample({"oracle": "narayana", "n": n, "i": i, "count": got,
                                            "narayana": narayana(n, n - i)})
        rep.counts["stirling_levels"] = sum(range(1, n_max + 1))
        rep.counts["classes"] = sum(1 for n in range(1, n_max + 1) for _ in partitions(n))
        for m in range(3, a_chain_max + 1):
            chain = verify_A_chain(m)
            if not chain.verified:
                bad += 1
                rep.add_counterexample({"oracle": "A-chain", "m": m, **chain.counts})
        rep.counts["failures"] = bad
        rep.verified = bad == 0
    return rep


def _checks_for(g: int, workers):
    """(label, query, thunk, degree) for every check at genus g, cheapest first."""
    m = 2 * g - 3
    recursion_count = None if m <= 5 else 100
    return [
        ("lemma2", {"g": g}, lambda: verify_lemma2(g, workers=workers), 2 * g - 2),
        ("covering", {"g": g, "m": m}, lambda: verify_covering(g, workers=workers), 2 * g - 2),
        ("diag", {"g": g}, lambda: verify_diag(g, workers=workers), 2 * g - 2),
        ("lemma1", {"m": m}, lambda: verify_lemma1(m), m),
        ("recursion", {"m": m}, lambda: verify_recursion(m, recursion_count, workers=workers), m),
    ]


def _run_limited(thunk, timeout):
    """Run ``thunk`` in a daemon thread; None if it does not finish in time."""
    box = {}

    def target():
        try:
            box["result"] = thunk()
        except BaseException as exc:  # re-raised in the caller
            box["error"] = exc

    t = threading.Thread(target=target, daemon=True)
    t.start()
    t.join(timeout)
    if t.is_alive():
        return None
    if "error" in box:
        raise box["error"]
    return box["result"]


def verify_all(g_max: int, time_budget: float | None = None, workers=1, oracle_n_max: int = 8) -> AggregateReport:
    if g_max < 3:
        raise ValueError("g_max must be at least 3")
    plan = [("oracles", {"n_max": oracle_n_max}, lambda: verify_oracles(oracle_n_max), oracle_n_max)]
    for g in range(3, g_max + 1):
        plan.extend(_checks_for(g, workers))
    agg = AggregateReport([], {"g_max": g_max, "time_budget": time_budget})
    t0 = time.perf_counter()
    out_of_time = False
    for idx, (label, query, thunk, degree) in enumerate(plan, 1):
        log.info("[%d/%d] %s %s", idx, len(plan), label, query)
        if degree > MAX_DEGREE:
            agg.reports.append(Report(label, query, skipped=True, note=f"degree {degree} exceeds {MAX_DEGREE}"))
            continue
        remaining = None if time_budget is None else time_budget - (time.perf_counter() - t0)
        if out_of_time or (remaining is not None and remaining <= 0):
            out_of_time = True
            agg.reports.append(Report(label, query, skipped=True, note="time budget exhausted"))
            continue
        result = thunk() if remaining is None else _run_limited(thunk, remaining)
        if result is None:
            out_of_time = True
            agg.reports.append(Report(label, query, skipped=True, note="time budget exhausted"))
            continue
        agg.reports.append(result)
    agg.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return agg

