"""Micro-registration: coalescing asynchronous video starts into shared streams.

Each viewer's request snaps forward to the next synchronization boundary
``k * sync_interval`` at or after its arrival, so nobody skips content and
nobody waits a full interval. One stream is sent per occupied boundary.

For arrivals strictly inside ``(0, window)`` at most
``ceil(window / sync_interval)`` boundaries can be occupied. A request at
exactly t = 0 rides the boundary that opens the window and may add one more.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import Unsupported

UNIFORM = "uniform"
POISSON = "poisson"
ARRIVAL_PROCESSES = (UNIFORM, POISSON)


class Policy(str, Enum):
    MICRO = "micro"
    DELAYED = "delayed"  # named only; no model exists


@dataclass(frozen=True)
class ViewerRequest:
    arrival: float  # seconds from window start


@dataclass(frozen=True)
class MicroRegConfig:
    stream_bitrate: float
    sync_interval: float = 5.0
    window: float = 1800.0
    rng_seed: int = 0
    policy: Policy = Policy.MICRO

    def __post_init__(self):
        if self.sync_interval <= 0 or self.window <= 0:
            raise ValueError("sync_interval and window must be positive")
        if self.stream_bitrate <= 0:
            raise ValueError("stream_bitrate must be positive")

    @property
    def slot_count(self) -> int:
        return math.ceil(self.window / self.sync_interval)


@dataclass(frozen=True)
class AggregationResult:
    active_streams: int
    assignments: tuple[int, ...]
    max_wait: float
    aggregate_bandwidth: float
    savings_vs_capacity: float | None = None


def generate_arrivals(n: int, window: float, process: str = UNIFORM,
                      seed: int = 0) -> list[ViewerRequest]:
    """Draw ``n`` request times in ``[0, window)``.

    ``poisson`` is a Poisson process conditioned on exactly ``n`` events:
    cumulative exponential gaps rescaled so ``n + 1`` gaps span the window.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if process not in ARRIVAL_PROCESSES:
        raise ValueError(f"unknown arrival process {process!r}")
    rng = np.random.default_rng(seed)
    if n == 0:
        return []
    if process == UNIFORM:
        times = rng.uniform(0.0, window, size=n)
    else:
        gaps = rng.exponential(1.0, size=n + 1)
        times = np.cumsum(gaps)[:-1] / gaps.sum() * window
    # uniform() is half-open in theory; guard against rounding onto the end
    times = np.minimum(times, np.nextafter(window, 0.0))
    return [ViewerRequest(float(t)) for t in times]


def aggregate_streams(requests: Sequence[ViewerRequest], config: MicroRegConfig,
                      reference_capacity: float | None = None) -> AggregationResult:
    if config.policy is not Policy.MICRO:
        raise Unsupported(f"policy {config.policy.value!r} has no model")
    arrivals = np.fromiter((r.arrival for r in requests), dtype=float, count=len(requests))
    if np.any(arrivals < 0) or np.any(arrivals >= config.window):
        raise ValueError("arrivals must lie in [0, window)")
    if arrivals.size == 0:
        return AggregationResult(0, (), 0.0, 0.0,
                                 None if reference_capacity is None else 1.0)

    slots = np.ceil(arrivals / config.sync_interval).astype(np.int64)
    # a quotient rounded just below an integer must not start before arrival
    short = slots * config.sync_interval < arrivals
    slots[short] += 1
    waits = slots * config.sync_interval - arrivals

    active = int(np.unique(slots).size)
    bandwidth = active * config.stream_bitrate
    result = AggregationResult(
        active_streams=active,
        assignments=tuple(int(s) for s in slots),
        max_wait=float(waits.max()),
        aggregate_bandwidth=bandwidth,
    )
    if reference_capacity is not None:
        result = replace(result,
                         savings_vs_capacity=bandwidth_savings(result, reference_capacity))
    return result


def bandwidth_savings(result: AggregationResult, reference_capacity: float) -> float:
    """Signed fraction of ``reference_capacity`` left unused; negative means overflow."""
    if reference_capacity <= 0:
        raise ValueError("reference_capacity must be positive")
    return 1.0 - result.aggregate_bandwidth / reference_capacity


def simulate(n_viewers: int, config: MicroRegConfig, process: str = UNIFORM,
             reference_capacity: float | None = None) -> AggregationResult:
    requests = generate_arrivals(n_viewers, config.window, process, config.rng_seed)
    return aggregate_streams(requests, config, reference_capacity)
