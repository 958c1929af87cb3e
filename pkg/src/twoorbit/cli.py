"""Command-line drivers for the verification workflows.

Exit codes: 0 when every result passed or was skipped, 1 on a verification
diff, 2 on unparseable or out-of-range input, 3 on a numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .bounds import BoundsError, check_affine_p_bound, check_pgl_order_bound, check_sn_bounds, sweep
from .catalog.spec import SpecError, parse_group_spec
from .classes import class_table
from .genus0 import GenusError, TupleType, anchor_matches, enumerate_genus0_types, search_genus0_systems
from .group import GroupError
from .monodromy import (
    DegenerateFunctionError,
    MonodromyConfig,
    MonodromyError,
    NumericalError,
    ParseError,
    RationalFunction,
    fiber_at_infinity,
    monodromy,
    verify_bundled,
)
from .twocycle import (
    load_kl_manifest,
    load_skip_manifest,
    marggraf_coprime_check,
    rank_check,
    two_cycle_pairs,
    verify_kl_row,
)

SCHEMA = 1
EXIT_OK, EXIT_DIFF, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _status(results: list[dict]) -> str:
    states = [r["status"] for r in results]
    if "fail" in states:
        return "fail"
    if states and all(s == "skipped" for s in states):
        return "skipped"
    return "pass"


# two-cycle


def _two_cycle_result(spec: str, expected=None, seed: int = 0) -> dict:
    if expected is not None:
        row = verify_kl_row(spec, expected, seed)
        report, diff = row.report, row.diff()
    else:
        report, diff = two_cycle_pairs(parse_group_spec(spec), seed), {"missing": [], "unexpected": []}
    G = parse_group_spec(spec)
    out = report.to_dict()
    out["expected"] = None if expected is None else [list(p) for p in sorted(expected)]
    out["diff"] = diff
    coprime = marggraf_coprime_check(G, report)
    out["coprime_check"] = {"checked": [list(p) for p in coprime.checked], "contains_alternating": coprime.contains_alt, "ok": coprime.ok}
    out["rank"] = rank_check(G) if report.pairs and G.is_transitive() else None
    ok = not diff["missing"] and not diff["unexpected"] and coprime.ok
    out["status"] = "pass" if ok else "fail"
    return out


def cmd_two_cycle(args) -> tuple[dict, list[dict]]:
    rows = {r.spec: r for r in load_kl_manifest()}
    results = []
    if args.all_kl:
        for row in rows.values():
            results.append(_two_cycle_result(row.spec, row.expected, args.seed))
        for spec, reason in load_skip_manifest():
            results.append({"spec": spec, "status": "skipped", "reason": reason})
        inputs = {"all_kl": True}
    else:
        if not args.spec:
            raise InputError("give a group spec or --all-kl")
        spec = args.spec.strip()
        row = rows.get(spec)
        results.append(_two_cycle_result(spec, row.expected if row else None, args.seed))
        inputs = {"spec": spec}
    return inputs, results


# genus0


def cmd_genus0(args) -> tuple[dict, list[dict]]:
    G = parse_group_spec(args.spec)
    table = class_table(G, seed=args.seed)
    inputs = {"spec": args.spec, "anchor": args.anchor, "type": args.type, "rational_only": args.rational}
    try:
        hits = anchor_matches(table, args.anchor)
    except GenusError as exc:
        raise InputError(str(exc)) from exc
    if not hits:
        return inputs, [{"anchor": args.anchor, "status": "skipped", "reason": f"no class with cycle type {args.anchor}"}]
    results = []
    want = TupleType.parse(args.type) if args.type else None
    for idx in hits:
        entry = {"anchor": table[idx].label, "class": idx, "class_size": table[idx].size}
        if want is not None:
            found = search_genus0_systems(G, want, idx, limit=args.limit, seed=args.seed, full_group=not args.any_subgroup)
            entry.update(type=want.label, found=len(found), witnesses=[s.to_dict() for s in found])
        else:
            en = enumerate_genus0_types(G, idx, seed=args.seed, rational_only=args.rational, max_branch_points=args.max_branch_points, table=table)
            entry.update(
                budget=en.budget,
                group_order=en.group_order,
                full_types=sorted(t.label for t in en.full_types()),
                results=[r.to_dict() for r in en.results],
            )
        entry["status"] = "pass"
        results.append(entry)
    return inputs, results


# monodromy


def _config(args) -> MonodromyConfig:
    return MonodromyConfig(seed=args.seed, escalate=not args.no_escalate)


def cmd_monodromy(args) -> tuple[dict, list[dict]]:
    cfg = _config(args)
    if args.paper_examples:
        reports = verify_bundled(cfg, primary_only=args.primary_only)
        return {"paper_examples": True}, [r.to_dict() for r in reports]
    if not args.function:
        raise InputError("give a function or --paper-examples")
    g = RationalFunction.parse(args.function)
    desc = monodromy(g, cfg)
    out = desc.to_dict()
    out["infinity"] = fiber_at_infinity(g).to_dict()
    out["status"] = "pass"
    return {"function": args.function}, [out]


# bounds


def _pair(text: str, name: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"{name} expects two integers like 2,4; got {text!r}") from exc
    return a, b


def _bound_result(rep) -> dict:
    d = rep.to_dict()
    ok = rep.satisfied or rep.extra.get("known_exception", False)
    d["status"] = "pass" if ok else "fail"
    return d


def cmd_bounds(args) -> tuple[dict, list[dict]]:
    if args.landau is not None:
        return {"landau": args.landau}, [_bound_result(check_sn_bounds(args.landau))]
    if args.pgl is not None:
        m, q = _pair(args.pgl, "--pgl")
        return {"pgl": [m, q]}, [_bound_result(check_pgl_order_bound(m, q))]
    if args.affine is not None:
        m, p = _pair(args.affine, "--affine")
        return {"affine": [m, p]}, [_bound_result(check_affine_p_bound(m, p))]
    if args.sweep:
        return {"sweep": True}, [_bound_result(r) for r in sweep()]
    raise InputError("choose one of --landau, --pgl, --affine, --sweep")


# output


def _human(report: dict) -> str:
    lines = [f"{report['command']}: {report['status']}"]
    for r in report["results"]:
        lines.append("  " + _human_line(report["command"], r))
    if "wall_time" in report:
        lines.append(f"  wall time {report['wall_time']:.2f}s")
    return "\n".join(lines)


def _human_line(command: str, r: dict) -> str:
    st = r["status"]
    if st == "skipped":
        return f"[skipped] {r.get('spec') or r.get('anchor')}: {r.get('reason', '')}"
    if command == "two-cycle":
        pairs = " ".join(f"{{{a},{b}}}" for a, b in r["pairs"]) or "none"
        extra = "" if r["expected"] is None else f"  diff {r['diff']}" if st == "fail" else "  matches table"
        return f"[{st}] {r['spec']} (degree {r['degree']}): pairs {pairs}{extra}"
    if command == "genus0":
        if "full_types" in r:
            by_order: dict[int, list[str]] = {}
            for t in r["results"]:
                by_order.setdefault(t["generated_order"], []).append(f"{t['type']}x{t['count']}")
            parts = "; ".join(f"order {o}: " + " ".join(v) for o, v in sorted(by_order.items()))
            return f"[{st}] anchor {r['anchor']} (class {r['class']}), budget {r['budget']}: {parts or 'no systems'}"
        return f"[{st}] anchor {r['anchor']} (class {r['class']}), type {r['type']}: {r['found']} witness(es)"
    if command == "monodromy":
        res = r.get("result", r)
        name = r.get("label") or res["function"]
        types = ";".join(b["local_type"] for b in res["branch_points"])
        diff = f"  diffs {r['diffs']}" if r.get("diffs") else ""
        return f"[{st}] {name}: {len(res['branch_points'])} branch points, local types {types}, type {tuple(res['type'])}, group order {res['group_order']}, genus {res['genus']}{diff}"
    if command == "bounds":
        suffix = " (known exception)" if r["extra"].get("known_exception") and not r["satisfied"] else ""
        return f"[{st}] {r['name']} {r['params']}: exact {r['exact']}, bound {r['bound']:.6g}{suffix}"
    return json.dumps(r)


COMMANDS = {"two-cycle": cmd_two_cycle, "genus0": cmd_genus0, "monodromy": cmd_monodromy, "bounds": cmd_bounds}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized internals")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    parser = argparse.ArgumentParser(prog="two-orbit", description="Two-cycle elements, genus-0 systems and monodromy checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("two-cycle", parents=[common], help="elements with exactly two cycles")
    p.add_argument("spec", nargs="?")
    p.add_argument("--all-kl", action="store_true", help="run the bundled table manifest")

    p = sub.add_parser("genus0", parents=[common], help="genus-0 systems through an anchor class")
    p.add_argument("spec")
    p.add_argument("--anchor", required=True, help="cycle type like 6-6, 6-6#2, c14 or two-cycle")
    p.add_argument("--type", help="comma separated element orders; search witnesses of this type")
    p.add_argument("--rational", action="store_true", help="only rational classes")
    p.add_argument("--max-branch-points", type=int)
    p.add_argument("--limit", type=int, default=1, help="witnesses per type with --type")
    p.add_argument("--any-subgroup", action="store_true", help="accept systems generating a proper subgroup")

    p = sub.add_parser("monodromy", parents=[common], help="branch cycles of a rational function")
    p.add_argument("function", nargs="?")
    p.add_argument("--paper-examples", action="store_true", help="run the bundled explicit functions")
    p.add_argument("--primary-only", action="store_true")
    p.add_argument("--no-escalate", action="store_true", help="stay in double precision")

    p = sub.add_parser("bounds", parents=[common], help="element order bounds")
    p.add_argument("--landau", type=int)
    p.add_argument("--pgl")
    p.add_argument("--affine")
    p.add_argument("--sweep", action="store_true")
    return parser


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    report: dict = {"schema": SCHEMA, "command": args.command}
    try:
        inputs, results = COMMANDS[args.command](args)
    except (InputError, SpecError, ParseError, DegenerateFunctionError, BoundsError, GenusError, GroupError) as exc:
        return EXIT_INPUT, dict(report, status="error", error=str(exc), kind="input")
    except NumericalError as exc:
        return EXIT_NUMERIC, dict(report, status="error", error=str(exc), kind="numeric")
    except MonodromyError as exc:
        # internal consistency checks of the tracker
        return EXIT_DIFF, dict(report, status="error", error=str(exc), kind="consistency")
    report.update(inputs=inputs, results=results, status=_status(results))
    if args.timing:
        report["wall_time"] = round(time.perf_counter() - t0, 3)
    code = EXIT_DIFF if report["status"] == "fail" else EXIT_OK
    return code, report


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = run(argv)
    as_json = "--json" in argv
    if as_json:
        print(json.dumps(report, indent=2))
    elif report["status"] == "error":
        print(f"error: {report['error']}", file=sys.stderr)
    else:
        print(_human(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
