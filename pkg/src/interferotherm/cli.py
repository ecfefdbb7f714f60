"""Command-line front end.

Exit codes: 0 success, 1 parse or validation error, 2 domain error in at
least one row (the rows are still written).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from . import scenario as sc
from .errors import ParseError, ThermometryError, UnknownParameter
from .verify import run_checks


def _write(text, output, meta):
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    path.write_text(text)
    meta = dict(meta, version=__version__, created=datetime.now(timezone.utc).isoformat())
    Path(str(path) + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")


def _load(args):
    scen = sc.load(args.scenario)
    if args.override_regime:
        scen = sc.Scenario(**{**scen.__dict__, "override_regime": True})
    return scen


def _render(rows, fmt):
    return sc.to_json(rows) if fmt == "json" else sc.to_csv(rows)


def _meta(args, command):
    meta = {"command": command, "scenario": str(args.scenario)}
    if str(args.scenario) != "paper":
        try:
            meta["scenario_sha256"] = hashlib.sha256(Path(args.scenario).read_bytes()).hexdigest()
        except OSError:
            pass
    return meta


def cmd_eval(args):
    rows, failed = sc.evaluate(_load(args))
    _write(_render(rows, args.format), args.output, _meta(args, "eval"))
    return 2 if failed else 0


def cmd_sweep(args):
    scen = _load(args)
    rows, failed = sc.sweep(scen, args.vary, sc.parse_grid(args.grid))
    meta = _meta(args, "sweep")
    meta.update(vary=args.vary, grid=args.grid)
    _write(_render(rows, args.format), args.output, meta)
    return 2 if failed else 0


def cmd_verify(args):
    results = run_checks(args.level, args.tolerance_scale)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  value={r.value:.3e}  tol={r.tolerance:.1e}  ({r.seconds:.2f}s)")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def cmd_scenario_print(args):
    scen = _load(args)
    sys.stdout.write(sc.to_ini(scen))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="interferotherm", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def scenario_args(q, required=True):
        q.add_argument("--scenario", required=required, default="paper",
                       help="scenario file (INI or JSON), or 'paper' for the bundled one")
        q.add_argument("--override-regime", action="store_true",
                       help="allow approximate models outside their temperature regime")

    def output_args(q):
        q.add_argument("--output", help="write the table here instead of stdout")
        q.add_argument("--format", choices=("csv", "json"), default="csv")

    q = sub.add_parser("eval", help="evaluate every temperature in a scenario")
    scenario_args(q)
    output_args(q)
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("sweep", help="step one parameter over a grid")
    scenario_args(q)
    output_args(q)
    q.add_argument("--vary", required=True, help=f"one of {', '.join(sc.SWEEPABLE)}")
    q.add_argument("--grid", required=True, help="log:a:b:n, lin:a:b:n or v1,v2,...")
    q.set_defaults(func=cmd_sweep)

    q = sub.add_parser("verify", help="run the oracle self-checks")
    q.add_argument("level", nargs="?", choices=("fast", "full"), default="fast")
    q.add_argument("--tolerance-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("scenario-print", help="print the resolved scenario")
    scenario_args(q, required=False)
    q.set_defaults(func=cmd_scenario_print)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownParameter) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ThermometryError as exc:
        print(f"invalid scenario: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
