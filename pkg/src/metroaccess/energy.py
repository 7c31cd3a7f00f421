"""Differential power and per-Gb energy of the optical access technologies.

Two routes lead to the short-form coefficients ``E = A / BW_D + B``:

* the built-in coefficient table, used for every reproduced figure, and
* :func:`derive_coefficients`, which collapses the full per-home power
  expression for a parameter-complete :class:`PowerParams`.

Burst transmission is modeled as duty-cycled port sharing: the stream is
sent at ``bw_burst`` for a fraction ``bw_stream / bw_burst`` of the time and
the ONU sits in a quasi-off state, drawing nothing, between bursts.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Mapping, Sequence

from .catalog import CODECS, GBPS, EncodingProfile, TechnologySpec
from .errors import MissingParams
from .feasibility import (
    MeshKey,
    Scenario,
    feasibility_matrix,
    nonfunc_ratio,
    per_home_demand,
    select_encoding,
)

GB_IN_MB = 1024.0  # 1 Gb expressed in Mb
OLT_CORRECTION_SPLIT = 40.0

WH_PER_J = 0.000278
J_PER_KCAL_TH = 4184.0
J_PER_BTU = 1055.06

ENERGY_UNITS = ("J", "Wh", "kcal", "BTU")


def convert_energy(joules: float, unit: str) -> float:
    if unit == "J":
        return joules
    if unit == "Wh":
        return joules * WH_PER_J
    if unit == "kcal":
        return joules / J_PER_KCAL_TH
    if unit == "BTU":
        return joules / J_PER_BTU
    raise ValueError(f"unknown energy unit {unit!r}")


@dataclass(frozen=True)
class PowerParams:
    """Inputs of the differential power model for one technology.

    The ONU term interpolates linearly between two anchors: ``p_onu00`` at
    ``onu_anchor_low`` Mbps and ``p_onu00 + onu_step`` at ``onu_anchor_high``
    Mbps. Fields left as ``None`` raise :class:`MissingParams` when needed.
    """

    p_olt_port: float | None = None
    p_olt_user: float | None = None
    p_onu00: float | None = None
    n_s0: int | None = None
    n_h0: float | None = None
    p_delta_olt0: float | None = None
    onu_anchor_low: float = 100.0
    onu_anchor_high: float = GBPS
    onu_step: float = 1.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None and v < 0:
                raise ValueError(f"{f.name} must be >= 0")
        if self.onu_anchor_high <= self.onu_anchor_low:
            raise ValueError("onu_anchor_high must exceed onu_anchor_low")

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise MissingParams("missing power parameters: " + ", ".join(missing))


# ONU zero-offset power and the split serving both 100 Mbps and 1 Gbps.
BUILTIN_ONU_PARAMS = {
    "Tb": PowerParams(p_onu00=8.0, n_s0=64),
    "Tc": PowerParams(p_onu00=13.0, n_s0=64),
    "Td": PowerParams(p_onu00=12.0, n_s0=256),
    "Te": PowerParams(p_onu00=19.0, n_s0=128),
}


@dataclass(frozen=True)
class EnergyCoefficients:
    a_delta: float  # W*Mb
    b_delta: float  # J

    def __post_init__(self):
        if self.a_delta < 0 or self.b_delta < 0:
            raise ValueError("energy coefficients must be >= 0")


def builtin_coefficients() -> dict[str, EnergyCoefficients]:
    """Short-form coefficients at N_s = 256; copper is not modeled."""
    return {
        "Tb": EnergyCoefficients(9228.0, 0.0312),
        "Tc": EnergyCoefficients(14480.0, 0.3751),
        "Td": EnergyCoefficients(13531.0, 1.2810),
        "Te": EnergyCoefficients(21368.0, 4.2286),
    }


def n_active_homes(n_s: float, bw_max: float, bw_d: float) -> float:
    """Homes served simultaneously; fractional results are kept."""
    if bw_d <= 0:
        raise ValueError("bw_d must be positive")
    return min(n_s, bw_max / bw_d)


def _onu_bracket(params: PowerParams) -> float:
    lo, hi, step = params.onu_anchor_low, params.onu_anchor_high, params.onu_step
    span = hi - lo
    return params.p_onu00 + hi * step / span + (-lo * step) / span


def _olt_correction_power(params: PowerParams, bw_d: float) -> float:
    span = params.onu_anchor_high - params.onu_anchor_low
    return (params.n_h0 * params.p_delta_olt0 * bw_d / span) * (
        1.0 / OLT_CORRECTION_SPLIT - 1.0 / params.n_s0)


_ALL_POWER_FIELDS = ("p_olt_port", "p_olt_user", "p_onu00", "n_s0", "n_h0", "p_delta_olt0")


def power_per_home(params: PowerParams, tech: TechnologySpec, bw_d: float, n_s: float) -> float:
    """Differential electrical power per active home, in W."""
    params.require(*_ALL_POWER_FIELDS)
    n_h = n_active_homes(n_s, tech.ds_capacity, bw_d)
    olt = (params.p_olt_port + n_h * params.p_olt_user) / n_h
    onu = _onu_bracket(params) * n_s / n_h
    return olt + onu + _olt_correction_power(params, bw_d)


def energy_per_gb_full(params: PowerParams, tech: TechnologySpec, bw_d: float,
                       n_s: float) -> float:
    """Energy for 1 Gb of download from the full power expression, in J."""
    return power_per_home(params, tech, bw_d, n_s) * GB_IN_MB / bw_d


def derive_coefficients(params: PowerParams, tech: TechnologySpec, n_s: float
                        ) -> EnergyCoefficients:
    """Collapse the full expression into (A, B), assuming N_h = N_s.

    Valid wherever the tree fan-out, not capacity, limits the active homes,
    i.e. for ``bw_d <= tech.ds_capacity / n_s``.
    """
    params.require(*_ALL_POWER_FIELDS)
    a = GB_IN_MB * (params.p_olt_port / n_s + params.p_olt_user + _onu_bracket(params))
    span = params.onu_anchor_high - params.onu_anchor_low
    b = GB_IN_MB * params.n_h0 * params.p_delta_olt0 / span * (
        1.0 / OLT_CORRECTION_SPLIT - 1.0 / params.n_s0)
    return EnergyCoefficients(a, b)


def energy_per_gb(coeffs: EnergyCoefficients, bw_d: float) -> float:
    if bw_d <= 0:
        raise ValueError("bw_d must be positive")
    return coeffs.a_delta / bw_d + coeffs.b_delta


def per_video_second(e_per_gb: float, bitrate: float) -> float:
    """Energy per second of video watched at ``bitrate`` Mbps."""
    if bitrate <= 0:
        raise ValueError("bitrate must be positive")
    return e_per_gb / (GB_IN_MB / bitrate)


def burst_energy_per_gb(coeffs: EnergyCoefficients, bw_burst: float, bw_stream: float) -> float:
    """Per-Gb energy when a stream is pushed in bursts at ``bw_burst``.

    Only transmission time is charged; the quasi-off gaps are free.
    """
    if not bw_burst >= bw_stream > 0:
        raise ValueError("need bw_burst >= bw_stream > 0")
    duty = bw_stream / bw_burst
    return duty * (coeffs.a_delta / bw_burst + coeffs.b_delta)


@dataclass(frozen=True)
class EnergyCell:
    """One cell of the energy table; ``energy`` is None when not applicable."""

    feasible: bool
    per_home_demand: float
    energy: float | None


def energy_matrix(coeffs: Mapping[str, EnergyCoefficients],
                  techs: Sequence[TechnologySpec], scenarios: Sequence[Scenario],
                  encodings: Sequence[EncodingProfile], **mesh_kwargs,
                  ) -> dict[MeshKey, EnergyCell]:
    """Per-Gb energy for every mesh cell.

    With non-functional technologies the continuous-stream energy is scaled by
    the scenario's demand reduction ratio. Infeasible cells, and technologies
    without coefficients, carry no energy value.
    """
    feas = feasibility_matrix(techs, scenarios, encodings, **mesh_kwargs)
    out = {}
    for s in scenarios:
        for codec in CODECS:
            enc = select_encoding(encodings, s, codec)
            bw_d = per_home_demand(s, enc)
            ratio = nonfunc_ratio(s, enc)
            for t in techs:
                c = coeffs.get(t.label)
                for nf in (False, True):
                    key = (t.label, s.id, codec, nf)
                    ok = feas[key].feasible
                    value = None
                    if ok and c is not None:
                        value = energy_per_gb(c, bw_d) * (ratio if nf else 1.0)
                    out[key] = EnergyCell(ok, bw_d, value)
    return out
