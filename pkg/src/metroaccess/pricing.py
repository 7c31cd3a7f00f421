"""Best Practice Delta Factor (BPDF) electricity tariff.

An operator running practice A needs ``e_a`` kWh per service where the best
practice B needs 1 kWh. The excess is billed at a rate that itself grows
with the excess, so the energy bill is quadratic in the gap. A license fee
paid to the holder of practice B shrinks the effective gap. The service
price is normalized to $1, which bounds the fee to [0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BelowBaseline

SERVICE_PRICE = 1.0  # $ per service; fees are expressed relative to it

BOUNDARY = "boundary"
INTERIOR = "interior"


@dataclass(frozen=True)
class PricingParams:
    e_a: float
    k: float
    c_elec: float
    fee: float = 0.0

    def __post_init__(self):
        if self.e_a < 1:
            raise BelowBaseline(f"e_a={self.e_a} is below the best-practice baseline of 1 kWh")
        if self.k <= 0:
            raise ValueError("k must be positive")
        if self.c_elec < 0:
            raise ValueError("c_elec must be >= 0")
        if not 0 <= self.fee < SERVICE_PRICE:
            raise ValueError("fee must lie in [0, 1)")

    @property
    def delta(self) -> float:
        return delta(self.e_a)


def delta(e_a: float) -> float:
    """Excess consumption over the best practice, in kWh."""
    if e_a < 1:
        raise BelowBaseline(f"e_a={e_a} is below the best-practice baseline of 1 kWh")
    return e_a - 1.0


def fee_adjusted_delta(k: float, delta_value: float, fee: float) -> float:
    return delta_value / (1.0 + k * fee / SERVICE_PRICE)


def bpdf_rate(k: float, delta_value: float, c_elec: float) -> float:
    """Skewed price per excess kWh.

    The caller chooses whether ``delta_value`` is the plain or the
    fee-adjusted gap.
    """
    return k * delta_value * c_elec


def _differential(k: float, d: float, c_elec: float, fee: float) -> float:
    return k * d * d / (1.0 + k * fee / SERVICE_PRICE) * c_elec


def total_cost(params: PricingParams) -> float:
    """Energy bill per service: baseline kWh at the plain rate plus the skewed excess."""
    return params.c_elec + _differential(params.k, params.delta, params.c_elec, params.fee)


def holder_objective(params: PricingParams) -> float:
    """Net revenue per service for the best-practice holder.

    The holder collects the fee and all of the differential BPDF revenue.
    """
    return params.fee + _differential(params.k, params.delta, params.c_elec, params.fee)


@dataclass(frozen=True)
class FeeOptimum:
    fee_star: float
    j_star: float
    interior_critical_point: float | None
    diagnosis: str


def stationary_fee(k: float, delta_value: float, c_elec: float) -> float:
    """Root of dJ/df. J is convex in the fee, so this is where J is smallest."""
    return (k * delta_value * math.sqrt(c_elec) - 1.0) / k


def objective_on_grid(k: float, delta_value: float, c_elec: float, fees: np.ndarray) -> np.ndarray:
    return fees + k * delta_value**2 / (1.0 + k * fees / SERVICE_PRICE) * c_elec


def fee_grid(grid_step: float) -> np.ndarray:
    """Multiples of ``grid_step`` in [0, 1); the top point is 1 - grid_step when it divides 1."""
    if grid_step <= 0 or grid_step >= SERVICE_PRICE:
        raise ValueError("grid_step must lie in (0, 1)")
    n = int(math.floor(SERVICE_PRICE / grid_step + 1e-9))
    return np.arange(n) * grid_step


def optimize_fee(k: float, delta_value: float, c_elec: float,
                 grid_step: float = 1e-4) -> FeeOptimum:
    """Grid-search the holder's best fee on [0, 1 - grid_step].

    The analytic stationary point is reported alongside when it falls in
    (0, 1); being a minimum, it never wins, and the optimum sits on an end of
    the fee range. Ties go to the smaller fee.
    """
    if k <= 0 or delta_value < 0 or c_elec < 0:
        raise ValueError("need k > 0, delta >= 0, c_elec >= 0")
    fees = fee_grid(grid_step)
    j = objective_on_grid(k, delta_value, c_elec, fees)
    i = int(np.argmax(j))  # first maximum, i.e. smallest fee on ties
    crit = stationary_fee(k, delta_value, c_elec)
    interior = crit if 0 < crit < SERVICE_PRICE else None
    diagnosis = BOUNDARY if i in (0, fees.size - 1) else INTERIOR
    return FeeOptimum(float(fees[i]), float(j[i]), interior, diagnosis)
