"""Benchmark harness: wall-clock medians, throughput, and working-space
accounting.

Timing reports the median over an odd number of repetitions with garbage
collection paused.  The accounting allocator is tracemalloc: numpy and the
builders route their allocations through it, so the peak traced memory of a
build (with input and output buffers allocated outside the measured window)
is the extra working space.
"""

from __future__ import annotations

import gc
import statistics
import time
import tracemalloc
from dataclasses import dataclass

import numpy as np

from . import construct, oracle
from .errors import UsageError

ALGOS = ("plain", "succinct", "naive")
NAIVE_LIMIT = 10**6

_U32_LIMIT = 2**31


@dataclass
class BenchRow:
    input_name: str
    algo: str
    size_bytes: int
    median_seconds: float
    mib_per_s: float
    extra_bytes_per_symbol: float

    def csv(self) -> str:
        return (
            f"{self.input_name},{self.algo},{self.size_bytes},"
            f"{self.median_seconds:.6f},{self.mib_per_s:.3f},"
            f"{self.extra_bytes_per_symbol:.6f}"
        )


CSV_HEADER = "input,algo,bytes,median_seconds,mibs,extra_bytes_per_symbol"


def naive_lyndon_array(data: bytes):
    """Reference contender: next-smaller-suffix scan, lambda[i] = nss[i] - i."""
    nss = oracle.nss_bruteforce(data)
    return [nss[k] - (k + 1) for k in range(len(data))]


def measure_extra_memory(fn, *args, **kwargs):
    """(result, peak_extra_bytes) with allocations traced during fn only."""
    gc.collect()
    tracemalloc.start()
    tracemalloc.reset_peak()
    base, _ = tracemalloc.get_traced_memory()
    try:
        result = fn(*args, **kwargs)
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    return result, max(0, peak - base)


def _runner(algo: str, data: bytes, backend=None):
    n = len(data)
    if algo == "plain":
        dtype = np.uint32 if n < _U32_LIMIT else np.uint64
        buf = np.zeros(n + 1, dtype=dtype)
        return lambda: construct.build_plain(data, backend=backend, out=buf)
    if algo == "succinct":
        return lambda: construct.build_succinct(data, backend=backend)
    if algo == "naive":
        if n > NAIVE_LIMIT:
            raise UsageError(f"naive contender is restricted to n <= {NAIVE_LIMIT}")
        return lambda: naive_lyndon_array(data)
    raise UsageError(f"unknown algo {algo!r}; expected one of {', '.join(ALGOS)}")


def bench_one(
    input_name: str,
    data: bytes,
    algo: str,
    repetitions: int = 5,
    backend=None,
) -> BenchRow:
    if repetitions < 1 or repetitions % 2 == 0:
        raise UsageError("repetitions must be a positive odd number")
    n = len(data)
    run = _runner(algo, data, backend)
    _, extra = measure_extra_memory(run)  # warm-up doubles as the memory probe
    times = []
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(repetitions):
            t0 = time.perf_counter()
            run()
            times.append(time.perf_counter() - t0)
    finally:
        if gc_was_enabled:
            gc.enable()
    med = statistics.median(times)
    mibs = (n / 1048576) / med if med > 0 else float("inf")
    return BenchRow(
        input_name=input_name,
        algo=algo,
        size_bytes=n,
        median_seconds=med,
        mib_per_s=mibs,
        extra_bytes_per_symbol=extra / n if n else 0.0,
    )


def format_table(rows) -> str:
    head = f"{'input':<24} {'algo':<9} {'MiB':>9} {'median s':>10} {'MiB/s':>9} {'extra B/sym':>12}"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(
            f"{r.input_name:<24} {r.algo:<9} {r.size_bytes / 1048576:>9.2f} "
            f"{r.median_seconds:>10.4f} {r.mib_per_s:>9.2f} "
            f"{r.extra_bytes_per_symbol:>12.6f}"
        )
    return "\n".join(lines)
