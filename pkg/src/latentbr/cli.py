"""Command line entry points: run a scenario file, or check postulate
conformance over seeded random instances.

Exit codes: 0 success, 1 conformance failures found, 2 validation error,
3 work-limit overflow.
"""

from __future__ import annotations

import argparse
import json
import sys

from .conformance import Bounds, find_observation_witnesses, run_suite
from .operators import WorkLimitExceeded
from .scenario import ScenarioError, load_scenario, run_report


def _cmd_run(args) -> int:
    try:
        scenario = load_scenario(args.file)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ScenarioError as e:
        print(f"error: {args.file}: {e}", file=sys.stderr)
        return 2
    try:
        report = run_report(scenario, work_limit=args.work_limit)
    except WorkLimitExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    for ev in report["events"]:
        flag = "" if ev["consistent"] else "  [inconsistent]"
        print(f"step {ev['step']}: {ev['op']} {ev['item']}{flag}")
        if ev["newly_visible"]:
            print(f"  visible: {', '.join(ev['newly_visible'])}")
        if args.trace:
            for t in ev["triggered"]:
                print(f"  trigger: {t['trigger']} -> {t['revealed']}  (via {t['triplet']})")
    final = report["final"]
    print("final: " + ("consistent" if final["consistent"] else "inconsistent"))
    print("  members: " + (", ".join(final["members"]) or "(tautologies only)"))
    if final["triplets"]["triggered"]:
        print("  triggered: " + "; ".join(final["triplets"]["triggered"]))
    if final["triplets"]["latent"]:
        print("  latent: " + "; ".join(final["triplets"]["latent"]))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
        print(f"wrote {args.json}")
    return 0


def _cmd_check(args) -> int:
    bounds = Bounds(atoms=args.atoms)
    try:
        report = run_suite(range(args.start_seed, args.start_seed + args.seeds),
                           bounds, work_limit=args.work_limit)
    except WorkLimitExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    doc = report.to_dict()
    if args.obs_budget:
        doc["observations"] = find_observation_witnesses(
            Bounds(atoms=min(args.atoms, 3)), budget=args.obs_budget,
            work_limit=args.work_limit)
    failures = report.failures()
    for name, stats in sorted(doc["postulates"].items()):
        print(f"{name}: pass={stats['pass']} fail={stats['fail']} "
              f"na={stats['not_applicable']} hit-rate={stats['antecedent_rate']}")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
        print(f"wrote {args.report}")
    if failures:
        print(f"FAIL: {', '.join(sorted(failures))}", file=sys.stderr)
        return 1
    print("all postulates pass where antecedents fire")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="latentbr",
                                     description="belief change with latent attributive beliefs")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario file")
    p_run.add_argument("file")
    p_run.add_argument("--json", help="write the trace/report as JSON")
    p_run.add_argument("--trace", action="store_true", help="print trigger chains")
    p_run.add_argument("--work-limit", type=int, default=None)
    p_run.set_defaults(func=_cmd_run)

    p_check = sub.add_parser("check", help="postulate conformance over random instances")
    p_check.add_argument("--seeds", type=int, default=200)
    p_check.add_argument("--start-seed", type=int, default=0)
    p_check.add_argument("--atoms", type=int, default=4)
    p_check.add_argument("--report", help="write the JSON report here")
    p_check.add_argument("--work-limit", type=int, default=200_000)
    p_check.add_argument("--obs-budget", type=int, default=0,
                         help="also search for observation witnesses")
    p_check.set_defaults(func=_cmd_check)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
