"""Command-line front end.

Exit codes: 0 success (or feasible what-if), 1 infeasible what-if,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .catalog import GBPS, SplitPlan, max_supported_split, reach_km
from .config import ModelData, load_config
from .energy import ENERGY_UNITS, convert_energy, energy_per_gb, per_video_second
from .errors import MetroAccessError, NotReachable, UnknownIdentifier
from .feasibility import (
    Enhancements,
    check_feasibility,
    nonfunc_ratio,
    select_encoding,
)
from .microreg import ARRIVAL_PROCESSES, MicroRegConfig, Policy, simulate
from .pricing import (
    PricingParams,
    bpdf_rate,
    fee_adjusted_delta,
    holder_objective,
    optimize_fee,
    total_cost,
)
from .reports import (
    FORMATS,
    TABLE_IDS,
    build_table,
    catalog_report,
    energy_decimals,
    render,
    render_record,
)

DEFAULT_SEED = 2015
EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE = 0, 1, 2


def _global_options() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand.
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", default=argparse.SUPPRESS, metavar="PATH",
                   help="JSON file overriding the built-in model data")
    p.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    p.add_argument("--units", choices=ENERGY_UNITS, default=argparse.SUPPRESS,
                   help="energy presentation unit")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                   help=f"simulator seed (default {DEFAULT_SEED})")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = argparse.ArgumentParser(
        prog="metroaccess", parents=[common],
        description="Metro access planning: reach, feasibility, energy and BPDF pricing.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("catalog", parents=[common], help="list technologies and encodings")

    p = sub.add_parser("reach", parents=[common], help="maximum reach for a split plan")
    p.add_argument("--tech", required=True)
    p.add_argument("--split", type=int, nargs="+", required=True, metavar="S_l",
                   help="per-level split factors, e.g. --split 8 16")

    p = sub.add_parser("table", parents=[common], help="reproduce a reference table")
    p.add_argument("table_id", type=int, choices=TABLE_IDS)

    p = sub.add_parser("whatif", parents=[common], help="evaluate a single combination")
    p.add_argument("--tech", required=True)
    p.add_argument("--scenario", required=True)
    p.add_argument("--codec", required=True)
    p.add_argument("--nonfunc", action=argparse.BooleanOptionalAction, default=False,
                   help="enable non-functional technologies")

    p = sub.add_parser("microreg-sim", parents=[common], help="simulate micro-registration")
    p.add_argument("--viewers", type=int, default=5000)
    p.add_argument("--window", type=float, default=1800.0)
    p.add_argument("--interval", type=float, default=5.0)
    p.add_argument("--bitrate", type=float, default=5.0)
    p.add_argument("--capacity", type=float, default=2.49 * GBPS,
                   help="reference capacity in Mbps")
    p.add_argument("--process", choices=ARRIVAL_PROCESSES, default="uniform")
    p.add_argument("--policy", choices=[x.value for x in Policy], default=Policy.MICRO.value)

    p = sub.add_parser("pricing", parents=[common], help="BPDF tariff and fee optimization")
    p.add_argument("--ea", type=float, required=True, help="kWh per service with practice A")
    p.add_argument("--k", type=float, required=True, help="intensity factor K")
    p.add_argument("--c", type=float, required=True, help="electricity price, $/kWh")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--fee", type=float, default=0.0, help="license fee, $ per service")
    g.add_argument("--optimize", action="store_true", help="search the holder's best fee")
    p.add_argument("--grid", type=float, default=1e-4, help="fee grid step")
    return parser


def cmd_catalog(model: ModelData, args) -> tuple[str, int]:
    return render(catalog_report(model), args.format), EXIT_OK


def cmd_reach(model: ModelData, args) -> tuple[str, int]:
    tech = model.technology(args.tech)
    plan = SplitPlan(tuple(args.split))
    try:
        d = round(reach_km(tech, plan), 2)
    except NotReachable:
        d = None
    record = {"tech": tech.label, "split": list(plan.levels), "total_split": plan.total,
              "reach_km": d, "reachable": d is not None}
    summary = [f"{tech.label} at S={plan}: "
               + ("not reachable" if d is None else f"{d} km")]
    return render_record(record, args.format, summary), EXIT_OK


def cmd_table(model: ModelData, args) -> tuple[str, int]:
    return render(build_table(model, args.table_id, args.units), args.format), EXIT_OK


def cmd_whatif(model: ModelData, args) -> tuple[str, int]:
    tech = model.technology(args.tech)
    scenario = model.scenario(args.scenario)
    if args.codec not in ("AVC", "HEVC"):
        raise UnknownIdentifier(f"unknown codec {args.codec!r}")
    enc = select_encoding(model.encodings, scenario, args.codec)
    cell = check_feasibility(tech, scenario, enc, Enhancements(args.nonfunc, args.codec),
                             model.split_candidates)

    nd = energy_decimals(args.units)
    e_gb = e_sec = None
    coeffs = model.coefficients.get(tech.label)
    if cell.feasible and coeffs is not None:
        joules = energy_per_gb(coeffs, cell.per_home_demand)
        if args.nonfunc:
            joules *= nonfunc_ratio(scenario, enc)
        e_gb = round(convert_energy(joules, args.units), nd)
        e_sec = round(convert_energy(per_video_second(joules, enc.bitrate), args.units), nd + 1)

    ceiling = max_supported_split(tech, model.split_candidates)
    record = {
        "tech": tech.label,
        "scenario": scenario.id,
        "codec": enc.codec,
        "bitrate_mbps": enc.bitrate,
        "nonfunc": args.nonfunc,
        "feasible": cell.feasible,
        "violated_constraints": list(cell.violated_constraints),
        "per_home_demand_mbps": round(cell.per_home_demand, 2),
        "aggregate_demand_mbps": round(cell.aggregate_demand, 2),
        "ds_capacity_mbps": round(tech.ds_capacity, 2),
        "required_split": None if tech.is_copper else scenario.effective_split(tech.label),
        "max_supported_split": "unlimited" if tech.is_copper else ceiling,
        "units": args.units,
        "energy_per_gb": e_gb,
        "energy_per_video_second": e_sec,
    }
    verdict = "feasible" if cell.feasible else (
        "infeasible: " + ", ".join(cell.violated_constraints))
    summary = [f"{tech.label} / {scenario.id} / {enc.codec} / "
               f"{'w/' if args.nonfunc else 'w/o'} non-func.: {verdict}"]
    if e_gb is not None:
        summary.append(f"energy: {e_gb} {args.units} per Gb, {e_sec} {args.units} per video second")
    return (render_record(record, args.format, summary),
            EXIT_OK if cell.feasible else EXIT_INFEASIBLE)


def cmd_microreg(model: ModelData, args) -> tuple[str, int]:
    config = MicroRegConfig(stream_bitrate=args.bitrate, sync_interval=args.interval,
                            window=args.window, rng_seed=args.seed,
                            policy=Policy(args.policy))
    result = simulate(args.viewers, config, args.process, args.capacity)
    record = {
        "viewers": args.viewers,
        "window_s": args.window,
        "interval_s": args.interval,
        "bitrate_mbps": args.bitrate,
        "process": args.process,
        "seed": args.seed,
        "active_streams": result.active_streams,
        "slot_bound": config.slot_count,
        "max_wait_s": round(result.max_wait, 4),
        "aggregate_bandwidth_mbps": round(result.aggregate_bandwidth, 2),
        "aggregate_bandwidth_gbps": round(result.aggregate_bandwidth / GBPS, 3),
        "reference_capacity_mbps": round(args.capacity, 2),
        "savings": round(result.savings_vs_capacity, 4),
    }
    s = result.savings_vs_capacity
    tail = (f"{s:.1%} below capacity" if s >= 0
            else f"exceeds capacity by {-s:.1%}")
    summary = [
        f"{args.viewers} requests over {args.window:g} s, {args.interval:g} s sync interval: "
        f"{result.active_streams} active streams",
        f"aggregate {record['aggregate_bandwidth_gbps']} Gbps vs "
        f"{args.capacity / GBPS:.2f} Gbps: {tail}",
    ]
    return render_record(record, args.format, summary), EXIT_OK


def cmd_pricing(model: ModelData, args) -> tuple[str, int]:
    base = PricingParams(e_a=args.ea, k=args.k, c_elec=args.c, fee=args.fee)
    fee_star = diagnosis = crit = None
    params = base
    if args.optimize:
        opt = optimize_fee(args.k, base.delta, args.c, args.grid)
        fee_star, diagnosis, crit = opt.fee_star, opt.diagnosis, opt.interior_critical_point
        params = PricingParams(e_a=args.ea, k=args.k, c_elec=args.c, fee=opt.fee_star)
    d_bp = fee_adjusted_delta(params.k, params.delta, params.fee)
    record = {
        "e_a": params.e_a,
        "k": params.k,
        "c_elec": params.c_elec,
        "fee": round(params.fee, 6),
        "delta": round(params.delta, 6),
        "delta_bp": round(d_bp, 6),
        "bpdf_rate": round(bpdf_rate(params.k, d_bp, params.c_elec), 6),
        "total_cost": round(total_cost(params), 6),
        "objective": round(holder_objective(params), 6),
        "fee_star": None if fee_star is None else round(fee_star, 6),
        "interior_critical_point": None if crit is None else round(crit, 6),
        "diagnosis": diagnosis,
    }
    summary = [f"energy cost per service ${record['total_cost']} at fee ${record['fee']}; "
               f"holder revenue ${record['objective']}"]
    if args.optimize:
        summary.append(f"best fee ${record['fee_star']} ({diagnosis} optimum; the objective is "
                       "convex in the fee, so any stationary point is a minimum)")
    return render_record(record, args.format, summary), EXIT_OK


COMMANDS = {
    "catalog": cmd_catalog,
    "reach": cmd_reach,
    "table": cmd_table,
    "whatif": cmd_whatif,
    "microreg-sim": cmd_microreg,
    "pricing": cmd_pricing,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("config", None), ("format", "md"), ("units", "J"),
                          ("seed", DEFAULT_SEED)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        model = load_config(args.config)
        out, code = COMMANDS[args.command](model, args)
    except (MetroAccessError, ValueError) as exc:
        print(f"metroaccess: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
