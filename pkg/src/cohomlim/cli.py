"""Command-line interface.

Exit codes: 0 when every assertion holds, 1 when a mathematical check
fails, 2 for input or validation errors, 3 when a budget or size cap is
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .config import parse_config
from .errors import BudgetError, ConfigError, ValidationError
from .filtrations import chain_from_orders, derived_tower, filtration_tower, verify_presentation
from .h1 import enumerate_z1, enumerate_z1_bruteforce, h1
from .hn import h_n, orbit_n, stab_n, z_n
from .limits import resolve_budget
from .systems import (
    EVENLY_CONTINUOUS_NOTE,
    cohomology_tower,
    exact_sequence_check,
    lim1,
    lim1_tower,
    theta_1,
    theta_n,
)
from .torsors import classify_torsors
from .verify import verify_all

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _budget(args, cfg):
    if args.budget is not None:
        return resolve_budget(args.budget)
    return resolve_budget(cfg.budget)


def cmd_validate(args, cfg):
    result = {
        "groups": {k: g.order for k, g in sorted(cfg.groups.items())},
        "actions": {
            k: {"g": a.g.order, "a": a.a.order, "abelian": a.a.is_abelian(), "trivial": a.is_trivial()}
            for k, a in sorted(cfg.actions.items())
        },
        "systems": {k: [o.a.order for o in s.objects] for k, s in sorted(cfg.systems.items())},
        "filtrations": {k: f.orders for k, (_, f, _) in sorted(cfg.filtrations.items())},
    }
    return True, result, []


def cmd_h1(args, cfg):
    act = cfg.action(args.action)
    budget = _budget(args, cfg)
    z1 = enumerate_z1(act, budget)
    h = h1(act, z1=z1)
    result = h.to_json()
    ok = True
    if args.oracle:
        brute = enumerate_z1_bruteforce(act, budget)
        ok = brute == z1
        result["oracle_agrees"] = ok
    return ok, result, []


def cmd_hn(args, cfg):
    act = cfg.action(args.action)
    budget = _budget(args, cfg)
    c = h_n(act, args.n, budget)
    result = c.to_json()
    ok = c.z_size == c.h_size * c.b_size
    if args.oracle:
        checks = {}
        if args.n >= 1:
            total = act.a.order ** (act.g.order ** (args.n - 1))
            zprev = z_n(act, args.n - 1, budget)
            orbit_ok = all(
                len(orbit_n(r, budget)) * len(stab_n(r, budget)) == total and stab_n(r, budget) == zprev
                for r in c.reps
            )
            checks["orbit_stabilizer"] = orbit_ok
        if args.n == 1:
            h = h1(act, budget, oracle=True)
            checks["nonabelian_agreement"] = {
                frozenset(x.values for x in cls) for cls in h.classes
            } == {frozenset(s) for s in c.classes()}
        result["oracle"] = checks
        ok = ok and all(checks.values())
    return ok, result, []


def cmd_torsors(args, cfg):
    act = cfg.action(args.action)
    budget = _budget(args, cfg)
    z1 = enumerate_z1(act, budget)
    h = h1(act, z1=z1)
    result = {"z1_size": len(z1), "h1_size": len(h)}
    ok = True
    if args.classify:
        res = classify_torsors(act, z1, h)
        result["classes"] = [
            {"size": len(cls), "rep": list(rep.values)} for cls, rep in zip(res["classes"], res["reps"])
        ]
        result["agrees_with_h1"] = res["agrees_with_h1"]
        ok = res["agrees_with_h1"] and len(res["classes"]) == len(h)
    return ok, result, []


def cmd_theta(args, cfg):
    sys_ = cfg.system(args.system)
    budget = _budget(args, cfg)
    r = theta_n(sys_, args.n, budget) if args.n is not None else theta_1(sys_, budget, args.oracle)
    return r.ok, r.to_json(), []


def cmd_lim1(args, cfg):
    sys_ = cfg.system(args.system)
    budget = _budget(args, cfg)
    if args.i is None:
        r = lim1_tower(sys_, budget)
        return r.trivial, {"tower": "coefficients", **r.to_json()}, []
    levels, maps = cohomology_tower(sys_, args.i - 1, budget)
    r = lim1([lv.group for lv in levels], maps, budget)
    return r.trivial, {"tower": f"H^{args.i - 1}", **r.to_json()}, []


def cmd_exactness(args, cfg):
    r = exact_sequence_check(cfg.system(args.system), args.i, _budget(args, cfg))
    return r["exact"], r, []


def _tower_summary(t):
    order = t.tower_order()
    return {
        "levels": [t.objects[r].a.order for r in order],
        "transitions": [list(t.phi(order[i], order[i + 1]).image) for i in range(len(order) - 1)],
    }


def cmd_derived_tower(args, cfg):
    act = cfg.action(args.action)
    t = derived_tower(act, name=args.action)
    result = _tower_summary(t)
    ok = True
    if args.verify:
        rep = verify_presentation(act, t, budget=_budget(args, cfg))
        result["verify"] = rep
        ok = rep["ok"]
    return ok, result, []


def cmd_present(args, cfg):
    act = cfg.action(args.action)
    spec = args.chain.strip()
    if spec == "derived":
        t = derived_tower(act, name=args.action)
    elif spec.startswith("orders="):
        orders = [int(x) for x in spec[len("orders="):].split(",") if x]
        t = filtration_tower(act, chain_from_orders(act.a, orders), name=args.action)
    else:
        raise ValidationError(detail=f"--chain must be 'derived' or 'orders=a,b,...', got {spec!r}")
    degrees = (args.n,) if args.n is not None else ()
    rep = verify_presentation(act, t, degrees=degrees, budget=_budget(args, cfg))
    return rep["ok"], {**_tower_summary(t), "verify": rep}, []


def cmd_verify_all(args, cfg):
    rep = verify_all(cfg, seed=args.seed, budget=args.budget)
    return rep["ok"], rep, rep["warnings"]


COMMANDS = {
    "validate": cmd_validate,
    "h1": cmd_h1,
    "hn": cmd_hn,
    "torsors": cmd_torsors,
    "theta": cmd_theta,
    "lim1": cmd_lim1,
    "exactness": cmd_exactness,
    "derived-tower": cmd_derived_tower,
    "present": cmd_present,
    "verify-all": cmd_verify_all,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", help="config file (YAML or JSON)")
    common.add_argument("--format", choices=["json", "table"], default=None)
    common.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    common.add_argument("--budget", type=int, default=None, help="enumeration budget")
    common.add_argument("--deterministic", action="store_true", help="omit timing from reports")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="cohomlim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="parse and validate a config")
    p = sub.add_parser("h1", parents=[common], help="nonabelian H^1 as an orbit set")
    p.add_argument("--action", required=True)
    p = sub.add_parser("hn", parents=[common], help="abelian H^n")
    p.add_argument("--action", required=True)
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("torsors", parents=[common], help="torsors and their isomorphism classes")
    p.add_argument("--action", required=True)
    p.add_argument("--classify", action="store_true")
    p = sub.add_parser("theta", parents=[common], help="comparison map on an inverse system")
    p.add_argument("--system", required=True)
    p.add_argument("--n", type=int, default=None, help="abelian degree (default: nonabelian H^1)")
    p = sub.add_parser("lim1", parents=[common], help="lim^1 of a tower")
    p.add_argument("--system", required=True)
    p.add_argument("--i", type=int, default=None, help="use the tower H^(i-1)(G, A_k)")
    p = sub.add_parser("exactness", parents=[common], help="lim^1 / comparison exact-sequence check")
    p.add_argument("--system", required=True)
    p.add_argument("--i", type=int, required=True)
    p = sub.add_parser("derived-tower", parents=[common], help="tower along the derived series")
    p.add_argument("--action", required=True)
    p.add_argument("--verify", action="store_true")
    p = sub.add_parser("present", parents=[common], help="presentation of A as a limit of quotients")
    p.add_argument("--action", required=True)
    p.add_argument("--chain", required=True, help="'orders=8,4,2,1' or 'derived'")
    p.add_argument("--n", type=int, default=None, help="also compare abelian degree n")
    sub.add_parser("verify-all", parents=[common], help="run every invariant suite")
    return parser


def _table(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj, key=str):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, sort_keys=True, default=str)}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            if isinstance(v, dict):
                lines.append(f"{pad}- [{i}]")
                lines.extend(_table(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v, sort_keys=True, default=str)}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def render(report, fmt) -> str:
    if fmt == "table":
        return "\n".join(_table(report))
    return json.dumps(report, sort_keys=True, indent=2, default=str)


def vars_echo(args):
    return {k: v for k, v in sorted(vars(args).items()) if v is not None and v is not False}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    fmt = args.format
    try:
        cfg = parse_config(args.config)
        fmt = fmt or cfg.format
        ok, result, warnings = COMMANDS[args.command](args, cfg)
    except (ValidationError, ConfigError, OSError) as e:
        print(render({"command": vars_echo(args), "error": str(e), "ok": False}, fmt or "json"))
        return EXIT_INPUT
    except BudgetError as e:
        print(render({"command": vars_echo(args), "error": str(e), "ok": False}, fmt or "json"))
        return EXIT_BUDGET
    report = {
        "command": vars_echo(args),
        "ok": ok,
        "result": result,
        "notes": [EVENLY_CONTINUOUS_NOTE],
        "warnings": warnings,
    }
    if not args.deterministic:
        report["timing_seconds"] = round(time.perf_counter() - start, 4)
    print(render(report, fmt))
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
