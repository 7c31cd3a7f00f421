"""Model inputs: built-in data, optionally overridden by a JSON config file.

Entries are matched by key (technology label, encoding codec/resolution/grade,
scenario id, technology label for coefficients and power parameters). A
matching entry is updated field by field; a new key extends the built-ins and
must then be complete.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .catalog import (
    DEFAULT_SPLIT_CANDIDATES,
    EncodingProfile,
    TechnologySpec,
    builtin_catalog,
    builtin_encodings,
    find_technology,
)
from .energy import BUILTIN_ONU_PARAMS, EnergyCoefficients, PowerParams, builtin_coefficients
from .errors import ConfigError, UnknownIdentifier
from .feasibility import Scenario, builtin_scenarios

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ModelData:
    technologies: tuple[TechnologySpec, ...]
    encodings: tuple[EncodingProfile, ...]
    scenarios: tuple[Scenario, ...]
    split_candidates: tuple[int, ...] = DEFAULT_SPLIT_CANDIDATES
    coefficients: dict[str, EnergyCoefficients] = field(default_factory=dict)
    power_params: dict[str, PowerParams] = field(default_factory=dict)

    @classmethod
    def builtin(cls) -> ModelData:
        return cls(
            technologies=tuple(builtin_catalog()),
            encodings=tuple(builtin_encodings()),
            scenarios=tuple(builtin_scenarios()),
            coefficients=builtin_coefficients(),
            power_params=dict(BUILTIN_ONU_PARAMS),
        )

    def technology(self, label: str) -> TechnologySpec:
        return find_technology(self.technologies, label)

    def scenario(self, scenario_id: str) -> Scenario:
        for s in self.scenarios:
            if s.id == scenario_id:
                return s
        raise UnknownIdentifier(f"unknown scenario {scenario_id!r}")


def load_schema() -> dict:
    text = resources.files("metroaccess").joinpath("data/config.schema.json").read_text()
    return json.loads(text)


def _merge(existing: list, key_of, entries: list[dict], build, what: str) -> list:
    out = list(existing)
    index = {key_of(x): i for i, x in enumerate(out)}
    for entry in entries:
        key = key_of(entry)
        try:
            if key in index:
                i = index[key]
                out[i] = dataclasses.replace(out[i], **entry)
            else:
                index[key] = len(out)
                out.append(build(**entry))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{what} {key}: {exc}") from exc
    return out


def _tech_key(t):
    return t["label"] if isinstance(t, dict) else t.label


def _enc_key(e):
    if isinstance(e, dict):
        return (e["codec"], e["resolution"], e["grade"])
    return e.key


def _scenario_key(s):
    return s["id"] if isinstance(s, dict) else s.id


def apply_config(base: ModelData, cfg: dict) -> ModelData:
    """Validate ``cfg`` against the schema and merge it into ``base``."""
    try:
        jsonschema.validate(cfg, load_schema())
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config invalid at {path}: {exc.message}") from exc

    techs = _merge(list(base.technologies), _tech_key, cfg.get("technologies", []),
                   TechnologySpec, "technology")
    encs = _merge(list(base.encodings), _enc_key, cfg.get("encodings", []),
                  EncodingProfile, "encoding")
    scens = _merge(list(base.scenarios), _scenario_key, cfg.get("scenarios", []),
                   Scenario, "scenario")

    coeffs = dict(base.coefficients)
    for label, c in cfg.get("coefficients", {}).items():
        coeffs[label] = EnergyCoefficients(**c)

    power = dict(base.power_params)
    for label, p in cfg.get("power_params", {}).items():
        try:
            power[label] = dataclasses.replace(power.get(label, PowerParams()), **p)
        except ValueError as exc:
            raise ConfigError(f"power_params {label}: {exc}") from exc

    splits = tuple(sorted(cfg.get("split_candidates", base.split_candidates)))
    return ModelData(tuple(techs), tuple(encs), tuple(scens), splits, coeffs, power)


def load_config(path: str | Path | None) -> ModelData:
    """Built-in model data, overridden by the JSON file at ``path`` if given."""
    base = ModelData.builtin()
    if path is None:
        return base
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return apply_config(base, cfg)
