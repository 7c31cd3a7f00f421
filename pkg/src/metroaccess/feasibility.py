"""Bandwidth demand of the broadband scenarios and the feasibility mesh."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .catalog import (
    CODECS,
    DEFAULT_SPLIT_CANDIDATES,
    GBPS,
    EncodingProfile,
    TechnologySpec,
    find_encoding,
    max_supported_split,
)
from .errors import ResolutionMismatch

# Models for the effect of non-functional technologies on aggregate demand.
STREAM_CAP = "stream_cap"
AGGREGATE_RATIO = "aggregate_ratio"
NO_EFFECT = "no_effect"
NONFUNC_MODELS = (STREAM_CAP, AGGREGATE_RATIO, NO_EFFECT)

# Constraint names reported by check_feasibility.
PER_LINE_LIMIT = "PerLineLimit"
AGGREGATE_CAPACITY = "AggregateCapacity"
SPLIT_UNSUPPORTED = "SplitUnsupported"

# Ratio observed between the paired energy columns of the extended prime
# time and 4K scenarios; no mechanism behind it is modeled.
EXTENDED_PRIME_TIME_RATIO = 0.46875


@dataclass(frozen=True)
class Scenario:
    """A broadband demand scenario for a (sub-)metro area.

    ``stream_cap`` overrides the slot count of the stream-cap model, e.g. with
    the active stream count measured by the micro-registration simulator.
    """

    id: str
    homes: int
    channels_per_home: float
    reserved_internet: float
    video_class: str
    required_split: int
    arrival_window: float = 1800.0
    nonfunc_model: str = NO_EFFECT
    sync_interval: float = 5.0
    demand_ratio: float = 1.0
    stream_cap: int | None = None
    split_override: Mapping[str, int] = field(default_factory=dict)
    description: str = ""

    def __post_init__(self):
        if self.homes < 1:
            raise ValueError(f"{self.id}: homes must be >= 1")
        if self.channels_per_home <= 0:
            raise ValueError(f"{self.id}: channels_per_home must be positive")
        if self.reserved_internet < 0:
            raise ValueError(f"{self.id}: reserved_internet must be >= 0")
        if self.nonfunc_model not in NONFUNC_MODELS:
            raise ValueError(f"{self.id}: unknown nonfunc_model {self.nonfunc_model!r}")
        if not 0 < self.demand_ratio <= 1:
            raise ValueError(f"{self.id}: demand_ratio must be in (0, 1]")
        if self.sync_interval <= 0 or self.arrival_window <= 0:
            raise ValueError(f"{self.id}: sync_interval and arrival_window must be positive")

    def effective_split(self, tech_label: str) -> int:
        return self.split_override.get(tech_label, self.required_split)


@dataclass(frozen=True)
class Enhancements:
    nonfunc: bool
    codec: str

    def __post_init__(self):
        if self.codec not in CODECS:
            raise ValueError(f"unknown codec {self.codec!r}")


@dataclass(frozen=True)
class FeasibilityCell:
    feasible: bool
    per_home_demand: float
    aggregate_demand: float
    violated_constraints: tuple[str, ...] = ()


def builtin_scenarios() -> list[Scenario]:
    small_pon_split = {"Tb": 128, "Tc": 128}
    return [
        Scenario("Sc1", homes=1000, channels_per_home=1.0, reserved_internet=0.0,
                 video_class="HD", required_split=1024, arrival_window=1800.0,
                 nonfunc_model=STREAM_CAP, sync_interval=5.0,
                 description="Prime time with one OTT video"),
        Scenario("Sc2", homes=256, channels_per_home=1.85, reserved_internet=1.0,
                 video_class="HD", required_split=256, nonfunc_model=NO_EFFECT,
                 split_override=small_pon_split,
                 description="VoIP + IPTV + Internet"),
        Scenario("Sc3", homes=256, channels_per_home=1.85, reserved_internet=0.0,
                 video_class="HD", required_split=256, nonfunc_model=AGGREGATE_RATIO,
                 demand_ratio=EXTENDED_PRIME_TIME_RATIO, split_override=small_pon_split,
                 description="Extended prime time"),
        Scenario("Sc4", homes=256, channels_per_home=1.85, reserved_internet=0.0,
                 video_class="4K", required_split=256, nonfunc_model=AGGREGATE_RATIO,
                 demand_ratio=EXTENDED_PRIME_TIME_RATIO, split_override=small_pon_split,
                 description="4K content"),
    ]


def per_home_demand(scenario: Scenario, encoding: EncodingProfile) -> float:
    if encoding.resolution != scenario.video_class:
        raise ResolutionMismatch(
            f"{scenario.id} carries {scenario.video_class} video, got {encoding.resolution}")
    return encoding.bitrate * scenario.channels_per_home + scenario.reserved_internet


def active_stream_slots(scenario: Scenario) -> int:
    """Number of concurrent streams left under the stream-cap model."""
    if scenario.stream_cap is not None:
        return min(scenario.homes, scenario.stream_cap)
    return min(scenario.homes, math.ceil(scenario.arrival_window / scenario.sync_interval))


def aggregate_demand(scenario: Scenario, encoding: EncodingProfile, enh: Enhancements) -> float:
    per_home = per_home_demand(scenario, encoding)
    if not enh.nonfunc or scenario.nonfunc_model == NO_EFFECT:
        return scenario.homes * per_home
    if scenario.nonfunc_model == STREAM_CAP:
        return active_stream_slots(scenario) * per_home
    return scenario.homes * per_home * scenario.demand_ratio


def nonfunc_ratio(scenario: Scenario, encoding: EncodingProfile) -> float:
    """Aggregate demand with non-functional technologies over demand without."""
    with_nf = aggregate_demand(scenario, encoding, Enhancements(True, encoding.codec))
    without = aggregate_demand(scenario, encoding, Enhancements(False, encoding.codec))
    return with_nf / without


def check_feasibility(tech: TechnologySpec, scenario: Scenario, encoding: EncodingProfile,
                      enh: Enhancements,
                      split_candidates: Iterable[int] = DEFAULT_SPLIT_CANDIDATES,
                      ) -> FeasibilityCell:
    """Evaluate every constraint for one combination; all violations are kept.

    Capacity is checked against the whole scenario demand even when a split
    override shrinks the tree: the OLT still carries the area's traffic.
    """
    if encoding.codec != enh.codec:
        raise ValueError(f"encoding codec {encoding.codec} != enhancement codec {enh.codec}")
    per_home = per_home_demand(scenario, encoding)
    aggregate = aggregate_demand(scenario, encoding, enh)

    violated = []
    if tech.per_line_limit is not None and per_home > tech.per_line_limit:
        violated.append(PER_LINE_LIMIT)
    if aggregate > tech.ds_capacity:
        violated.append(AGGREGATE_CAPACITY)
    if not tech.is_copper:
        ceiling = max_supported_split(tech, split_candidates)
        if ceiling is None or scenario.effective_split(tech.label) > ceiling:
            violated.append(SPLIT_UNSUPPORTED)
    return FeasibilityCell(not violated, per_home, aggregate, tuple(violated))


MeshKey = tuple[str, str, str, bool]  # (tech, scenario, codec, nonfunc)


def select_encoding(encodings: Iterable[EncodingProfile], scenario: Scenario,
                    codec: str) -> EncodingProfile:
    """The best-performance (low grade) encoding for the scenario's video class."""
    return find_encoding(encodings, codec, scenario.video_class, "low")


def feasibility_matrix(techs: Sequence[TechnologySpec], scenarios: Sequence[Scenario],
                       encodings: Sequence[EncodingProfile],
                       split_candidates: Iterable[int] = DEFAULT_SPLIT_CANDIDATES,
                       ) -> dict[MeshKey, FeasibilityCell]:
    """Every technology x scenario x codec x non-functional state."""
    candidates = tuple(split_candidates)
    matrix = {}
    for s in scenarios:
        for codec in CODECS:
            enc = select_encoding(encodings, s, codec)
            for t in techs:
                for nf in (False, True):
                    matrix[(t.label, s.id, codec, nf)] = check_feasibility(
                        t, s, enc, Enhancements(nf, codec), candidates)
    return matrix


LOW_BANDWIDTH = "<40 Gbps"
HIGH_BANDWIDTH = ">40 Gbps"


@dataclass(frozen=True)
class EnhancementCounts:
    pairs: int
    baseline: int
    nonfunc_only: int
    hevc_only: int
    both: int


def technology_groups(techs: Iterable[TechnologySpec]) -> dict[str, list[str]]:
    groups = {LOW_BANDWIDTH: [], HIGH_BANDWIDTH: []}
    for t in techs:
        key = LOW_BANDWIDTH if t.ds_capacity < 40 * GBPS else HIGH_BANDWIDTH
        groups[key].append(t.label)
    return groups


def enhancement_summary(matrix: Mapping[MeshKey, FeasibilityCell],
                        groups: Mapping[str, Sequence[str]]) -> dict[str, EnhancementCounts]:
    """Count how often each enhancement turns an infeasible pair feasible.

    ``nonfunc_only`` counts (tech, scenario, codec) triples; the other flips
    count (tech, scenario) pairs measured from the AVC baseline.
    """
    scenarios = sorted({k[1] for k in matrix})
    ok = {k: c.feasible for k, c in matrix.items()}
    out = {}
    for name, labels in groups.items():
        pairs = [(t, s) for t in labels for s in scenarios]
        baseline = sum(ok[(t, s, "AVC", False)] for t, s in pairs)
        nonfunc_only = sum(
            not ok[(t, s, c, False)] and ok[(t, s, c, True)]
            for t, s in pairs for c in CODECS)
        hevc_only = sum(
            not ok[(t, s, "AVC", False)] and ok[(t, s, "HEVC", False)] for t, s in pairs)
        both = sum(
            not ok[(t, s, "AVC", False)] and ok[(t, s, "HEVC", True)] for t, s in pairs)
        out[name] = EnhancementCounts(len(pairs), baseline, nonfunc_only, hevc_only, both)
    return out
