"""Acceptance suite: one PASS/FAIL line per criterion, at the stated tolerances.

Run ``pytest tests/test_acceptance.py -v`` to see the verdict lines.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from metroaccess.catalog import SplitPlan, reach_km
from metroaccess.energy import burst_energy_per_gb, energy_matrix, energy_per_gb, per_video_second
from metroaccess.errors import NotReachable
from metroaccess.feasibility import (
    HIGH_BANDWIDTH,
    LOW_BANDWIDTH,
    enhancement_summary,
    feasibility_matrix,
    technology_groups,
)
from metroaccess.microreg import MicroRegConfig, simulate
from metroaccess.pricing import (
    PricingParams,
    objective_on_grid,
    optimize_fee,
    total_cost,
)
from metroaccess.reports import render, table4


@pytest.fixture
def verdict(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        assert ok, detail
    return emit


def test_criterion_1_reach_table(model, table1_fixture, verdict):
    start = time.perf_counter()
    splits = [SplitPlan(tuple(s)) for s in table1_fixture["splits"]]
    numeric = na = 0
    bad = []
    for label, printed in table1_fixture["rows"].items():
        tech = model.technology(label)
        for plan, want in zip(splits, printed):
            if want is None:
                na += 1
                try:
                    got = reach_km(tech, plan)
                    bad.append(f"{label}@{plan}: expected N/A, got {got:.2f}")
                except NotReachable:
                    pass
                continue
            numeric += 1
            try:
                got = reach_km(tech, plan)
            except NotReachable:
                bad.append(f"{label}@{plan}: expected {want}, got N/A")
                continue
            if abs(got - want) > 0.1 + 1e-9:
                bad.append(f"{label}@{plan}: expected {want}, got {got:.2f}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1.0
    verdict(1, ok, f"{numeric} numeric + {na} N/A cells, {len(bad)} off "
                   f"{bad} in {elapsed:.3f} s")


def test_criterion_2_feasibility_mesh(model, table3_fixture, verdict):
    start = time.perf_counter()
    mesh = feasibility_matrix(model.technologies, model.scenarios, model.encodings,
                              model.split_candidates)
    elapsed = time.perf_counter() - start
    cells = 0
    bad = []
    for scen, by_codec in table3_fixture.items():
        for codec, by_tech in by_codec.items():
            for label, marks in by_tech.items():
                for nf, want in zip((False, True), marks):
                    cells += 1
                    got = mesh[(label, scen, codec, nf)].feasible
                    if got != want:
                        bad.append((label, scen, codec, nf))
    ok = cells == 80 and not bad and elapsed < 1.0
    verdict(2, ok, f"{cells} cells, {len(bad)} mismatches {bad} in {elapsed:.3f} s")


def test_criterion_3_enhancement_summary(model, verdict):
    mesh = feasibility_matrix(model.technologies, model.scenarios, model.encodings,
                              model.split_candidates)
    summary = enhancement_summary(mesh, technology_groups(model.technologies))
    lo, hi = summary[LOW_BANDWIDTH], summary[HIGH_BANDWIDTH]
    text = render(table4(model), "md")
    ok = ((lo.baseline, lo.pairs, lo.both) == (0, 8, 6)
          and (hi.baseline, hi.pairs) == (9, 12)
          and hi.nonfunc_only == hi.hevc_only == hi.both == 0
          and "9/12" in text and "6/12" in text)
    verdict(3, ok, f"<40 Gbps baseline {lo.baseline}/{lo.pairs}, combined {lo.both}/{lo.pairs}; "
                   f">40 Gbps {hi.baseline}/{hi.pairs} with flips "
                   f"({hi.nonfunc_only}, {hi.hevc_only}, {hi.both}); report prints both counts")


def test_criterion_4_energy_matrix(model, table6_fixture, verdict):
    cells = energy_matrix(model.coefficients, model.technologies, model.scenarios,
                          model.encodings, split_candidates=model.split_candidates)
    checked = 0
    bad = []
    worst = 0.0
    for scen, by_codec in table6_fixture.items():
        for codec, row in by_codec.items():
            for label, marks in row.items():
                if label == "bw_d":
                    continue
                tol = 0.001 if label in ("Td", "Te") else 0.02
                for nf, want in zip((False, True), marks):
                    got = cells[(label, scen, codec, nf)].energy
                    if want is None:
                        if got is not None:
                            bad.append(f"{label}/{scen}/{codec}/nf={nf}: expected infeasible")
                        continue
                    checked += 1
                    if got is None:
                        bad.append(f"{label}/{scen}/{codec}/nf={nf}: computed infeasible")
                        continue
                    rel = abs(got - want) / want
                    worst = max(worst, rel)
                    if rel > tol:
                        bad.append(f"{label}/{scen}/{codec}/nf={nf}: {got:.1f} vs {want} "
                                   f"({rel:.1%})")
    # per-second conversion of the published per-Gb figures
    sec_avc = per_video_second(1317.9, 6.0)
    sec_hevc = per_video_second(2635.5, 3.0)
    for name, v in (("AVC", sec_avc), ("HEVC", sec_hevc)):
        if abs(v - 7.72) / 7.72 > 0.005:
            bad.append(f"{name} per-second {v:.3f} vs 7.72")
    verdict(4, not bad, f"{checked} numeric cells, worst {worst:.2%}; "
                        f"{sec_avc:.3f}/{sec_hevc:.3f} J/s; problems {bad}")


def test_criterion_5_burst_mode(model, verdict):
    coeffs = model.coefficients["Tc"]
    bw_stream = 5.55  # Sc3 HEVC per-home demand
    burst = burst_energy_per_gb(coeffs, 11.1, bw_stream)
    burst_sec = per_video_second(burst, 3.0)
    cont_avc_sec = per_video_second(energy_per_gb(coeffs, 11.1), 6.0)
    ratio = cont_avc_sec / burst_sec
    ok = abs(burst_sec - 1.93) / 1.93 <= 0.02 and abs(ratio - 4.0) / 4.0 <= 0.03
    verdict(5, ok, f"burst {burst_sec:.3f} J/s (target 1.93), ratio {ratio:.3f} (target 4.0)")


def test_criterion_6_microregistration(verdict):
    hits = 0
    slowest = 0.0
    saving = None
    for seed in range(100):
        cfg = MicroRegConfig(stream_bitrate=5.0, sync_interval=5.0, window=1800.0,
                             rng_seed=seed)
        start = time.perf_counter()
        res = simulate(5000, cfg, "uniform", 2.49 * 1024)
        slowest = max(slowest, time.perf_counter() - start)
        hits += res.active_streams == 360
        if seed == 0:
            saving = res.savings_vs_capacity
    ok = hits >= 99 and abs(saving - 0.29) <= 0.01 and slowest < 1.0
    verdict(6, ok, f"360 streams in {hits}/100 seeds, saving {saving:.2%}, "
                   f"slowest run {slowest:.3f} s")


def test_criterion_7_pricing_properties(verdict):
    problems = []
    for c in (0.05, 0.1, 0.3):
        for k in (0.5, 1.0, 4.0):
            if total_cost(PricingParams(e_a=1.0, k=k, c_elec=c, fee=0.25)) != c:
                problems.append(f"baseline cost k={k} c={c}")
    # dyadic inputs keep every operation exact, so equality is meaningful
    for d in (0.25, 0.5, 1.0, 2.0):
        p1 = PricingParams(e_a=1 + d, k=2.0, c_elec=0.125, fee=0.5)
        p2 = PricingParams(e_a=1 + 2 * d, k=2.0, c_elec=0.125, fee=0.5)
        if total_cost(p2) - 0.125 != 4 * (total_cost(p1) - 0.125):
            problems.append(f"quadratic scaling d={d}")
    step = 1e-3
    sweeps = 0
    for k in (0.5, 2.0, 8.0):
        for d in (0.25, 1.0, 3.0):
            for c in (0.05, 0.12, 0.4):
                sweeps += 1
                opt = optimize_fee(k, d, c, step)
                top = 1.0 - step
                j_lo, j_hi = objective_on_grid(k, d, c, np.array([0.0, top]))
                analytic = 0.0 if j_lo >= j_hi else top
                if abs(opt.fee_star - analytic) > step + 1e-12:
                    problems.append(f"argmax k={k} d={d} c={c}: {opt.fee_star} vs {analytic}")
    verdict(7, not problems, f"baseline, exact quadratic scaling and {sweeps} argmax "
                             f"sweeps; problems {problems}")


SUITE = [
    ["catalog"],
    ["reach", "--tech", "Td", "--split", "32", "16"],
    ["table", "1"], ["table", "3"], ["table", "4"], ["table", "5"], ["table", "6"],
    ["table", "6", "--units", "Wh"],
    ["whatif", "--tech", "Td", "--scenario", "Sc3", "--codec", "HEVC", "--nonfunc"],
    ["microreg-sim", "--viewers", "5000"],
    ["microreg-sim", "--viewers", "1000", "--process", "poisson"],
    ["pricing", "--ea", "2", "--k", "1", "--c", "0.1", "--optimize"],
]


def _run_suite():
    out = []
    for args in SUITE:
        proc = subprocess.run(
            [sys.executable, "-m", "metroaccess.cli", *args, "--format", "json", "--seed", "7"],
            capture_output=True, check=False)
        out.append(proc.stdout)
    return out


def test_criterion_8_determinism(verdict):
    first, second = _run_suite(), _run_suite()
    same = [a == b for a, b in zip(first, second)]
    nonempty = all(first)
    verdict(8, all(same) and nonempty,
            f"{sum(same)}/{len(SUITE)} JSON reports byte-identical across two runs")
