"""Access technologies, video encodings and the optical reach model.

All bandwidths are in Mbps with binary prefixes (1 Gbps = 1024 Mbps); the
conversion only happens at the presentation layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import NotReachable, UnknownIdentifier

GBPS = 1024.0  # Mbps per Gbps
LOSS_PER_SPLIT_DOUBLING_DB = 3.5
DEFAULT_PATCH_MARGIN_DB = 3.0
DEFAULT_SPLIT_CANDIDATES = (64, 128, 256, 512, 1024)

# Copper plants have no split ceiling.
UNLIMITED = math.inf

COPPER = "copper"
PON = "pon"
CODECS = ("AVC", "HEVC")
RESOLUTIONS = ("HD", "4K")
GRADES = ("low", "high", "legacy")

# Budgets at or below this are treated as exhausted (reach exactly 0 km).
_BUDGET_EPS_DB = 1e-9


@dataclass(frozen=True)
class SplitPlan:
    """Per-level split factors of a multi-level passive tree."""

    levels: tuple[int, ...]

    def __post_init__(self):
        levels = tuple(int(s) for s in self.levels)
        if not levels:
            raise ValueError("a split plan needs at least one level")
        if any(s < 1 for s in levels):
            raise ValueError(f"split factors must be >= 1, got {levels}")
        object.__setattr__(self, "levels", levels)

    @property
    def total(self) -> int:
        return math.prod(self.levels)

    @classmethod
    def of(cls, split: SplitLike) -> SplitPlan:
        if isinstance(split, SplitPlan):
            return split
        if isinstance(split, int):
            return cls((split,))
        return cls(tuple(split))

    def __str__(self):
        return "(" + ", ".join(str(s) for s in self.levels) + ")"


SplitLike = Union[SplitPlan, int, Sequence[int]]


@dataclass(frozen=True)
class TechnologySpec:
    """One metro access technology.

    ``reach_split_limit`` is copper-only: the largest total split for which
    the fixed reach figure is quoted. ``per_line_limit`` of ``None`` means
    the per-home line is not a bottleneck.
    """

    label: str
    name: str
    kind: str
    ds_capacity: float
    us_capacity: float
    optical_budget: float | None = None
    attenuation: float | None = None
    patch_margin: float = DEFAULT_PATCH_MARGIN_DB
    per_line_limit: float | None = None
    fixed_reach: float | None = None
    reach_split_limit: int | None = None

    def __post_init__(self):
        if self.kind not in (COPPER, PON):
            raise ValueError(f"{self.label}: kind must be 'copper' or 'pon'")
        if self.ds_capacity <= 0 or self.us_capacity <= 0:
            raise ValueError(f"{self.label}: capacities must be positive")
        if self.kind == PON:
            if self.optical_budget is None or self.attenuation is None:
                raise ValueError(f"{self.label}: pon needs optical_budget and attenuation")
            if self.attenuation <= 0:
                raise ValueError(f"{self.label}: attenuation must be positive")
        elif self.fixed_reach is None:
            raise ValueError(f"{self.label}: copper needs fixed_reach")
        if self.per_line_limit is not None and self.per_line_limit <= 0:
            raise ValueError(f"{self.label}: per_line_limit must be positive")

    @property
    def is_copper(self) -> bool:
        return self.kind == COPPER


@dataclass(frozen=True)
class EncodingProfile:
    codec: str
    resolution: str
    grade: str
    bitrate: float

    def __post_init__(self):
        if self.codec not in CODECS:
            raise ValueError(f"unknown codec {self.codec!r}")
        if self.resolution not in RESOLUTIONS:
            raise ValueError(f"unknown resolution {self.resolution!r}")
        if self.grade not in GRADES:
            raise ValueError(f"unknown grade {self.grade!r}")
        if self.bitrate <= 0:
            raise ValueError("bitrate must be positive")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.codec, self.resolution, self.grade)


def builtin_catalog() -> list[TechnologySpec]:
    """The five reference technologies Ta..Te."""
    return [
        TechnologySpec("Ta", "OC-48", COPPER, 2.49 * GBPS, 2.49 * GBPS,
                       per_line_limit=7.0, fixed_reach=4.5, reach_split_limit=256),
        TechnologySpec("Tb", "GPON B+", PON, 2.5 * GBPS, 1.25 * GBPS,
                       optical_budget=28.0, attenuation=0.6),
        # GEM and BI sub-variants share every parameter.
        TechnologySpec("Tc", "40G TDM PON", PON, 40 * GBPS, 10 * GBPS,
                       optical_budget=31.0, attenuation=0.6),
        TechnologySpec("Td", "TWDM", PON, 40 * GBPS, 10 * GBPS,
                       optical_budget=35.0, attenuation=0.4),
        TechnologySpec("Te", "OFDM", PON, 40 * GBPS, 10 * GBPS,
                       optical_budget=34.5, attenuation=0.6),
    ]


def builtin_encodings() -> list[EncodingProfile]:
    return [
        EncodingProfile("AVC", "HD", "low", 6.0),
        EncodingProfile("HEVC", "HD", "high", 4.9),
        EncodingProfile("HEVC", "HD", "low", 3.0),
        EncodingProfile("AVC", "4K", "low", 16.0),
        EncodingProfile("HEVC", "4K", "high", 20.0),
        EncodingProfile("HEVC", "4K", "low", 8.0),
    ]


# Older HD figure used for the narrative aggregate numbers (5.14 / 2.68 Gbps).
LEGACY_HD_AVC = EncodingProfile("AVC", "HD", "legacy", 5.26)


def split_loss_db(split: SplitLike) -> float:
    """Total splitter loss, summed level by level."""
    plan = SplitPlan.of(split)
    return sum(LOSS_PER_SPLIT_DOUBLING_DB * math.log2(s) for s in plan.levels)


def reach_km(tech: TechnologySpec, split: SplitLike) -> float:
    """Maximum feeder distance for ``tech`` behind a split plan.

    Raises:
        NotReachable: the splitter losses use up the whole budget, or a
            copper plant is asked for a split beyond its quoted limit.
    """
    plan = SplitPlan.of(split)
    if tech.is_copper:
        if tech.reach_split_limit is not None and plan.total > tech.reach_split_limit:
            raise NotReachable(f"{tech.label}: no reach figure beyond S={tech.reach_split_limit}")
        return tech.fixed_reach
    budget = tech.optical_budget - tech.patch_margin - split_loss_db(plan)
    if budget <= _BUDGET_EPS_DB:
        raise NotReachable(f"{tech.label}: split {plan} leaves {budget:.2f} dB of budget")
    return budget / tech.attenuation


def max_supported_split(tech: TechnologySpec,
                        candidate_splits: Iterable[int] = DEFAULT_SPLIT_CANDIDATES):
    """Largest candidate total split with positive reach.

    Returns ``UNLIMITED`` for copper and ``None`` when no candidate reaches.
    """
    if tech.is_copper:
        return UNLIMITED
    best = None
    for s in sorted(candidate_splits):
        try:
            reach_km(tech, s)
        except NotReachable:
            continue
        best = s
    return best


def find_technology(techs: Iterable[TechnologySpec], label: str) -> TechnologySpec:
    for t in techs:
        if t.label == label:
            return t
    raise UnknownIdentifier(f"unknown technology {label!r}")


def find_encoding(encodings: Iterable[EncodingProfile], codec: str, resolution: str,
                  grade: str = "low") -> EncodingProfile:
    for e in encodings:
        if e.key == (codec, resolution, grade):
            return e
    raise UnknownIdentifier(f"no encoding for {codec}/{resolution}/{grade}")


@dataclass(frozen=True)
class ReachRow:
    tech: TechnologySpec
    reaches: tuple[float | None, ...] = field(default=())


TABLE1_SPLITS = (SplitPlan((8, 8)), SplitPlan((8, 16)), SplitPlan((16, 16)), SplitPlan((32, 16)))


def reach_table(techs: Iterable[TechnologySpec],
                splits: Sequence[SplitPlan] = TABLE1_SPLITS) -> list[ReachRow]:
    """Reach for every technology at every split; ``None`` marks not reachable."""
    rows = []
    for t in techs:
        cells = []
        for s in splits:
            try:
                cells.append(reach_km(t, s))
            except NotReachable:
                cells.append(None)
        rows.append(ReachRow(t, tuple(cells)))
    return rows
