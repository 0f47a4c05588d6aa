"""Command-line interface: ``su11acs {state,scan,figure,check}``.

Exit codes: 0 success, 2 domain or normalizability error, 3 truncation not
certified, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import AcsError, DomainError, TruncationError
from .moments import k_moments
from .representation import Flavor, ReprIndex
from .states import AcsParams, export_state, solve_acs

log = logging.getLogger("su11acs")

_COMPLEX_FLAGS = ("z", "u", "v", "w")
_DEFAULT_K = {Flavor.BOSONIC_EVEN: 0.25, Flavor.BOSONIC_ODD: 0.75}


def _add_param_flags(p, defaults):
    p.add_argument("--k", type=float, default=None, help="Bargmann index (implied by bosonic flavors)")
    p.add_argument("--flavor", choices=[f.value for f in Flavor], default=defaults.get("flavor"))
    for name in _COMPLEX_FLAGS:
        for part in ("re", "im"):
            p.add_argument(f"--{name}-{part}", type=float, default=defaults.get(f"{name}_{part}"))
    p.add_argument("--trunc", type=int, default=None, metavar="N", help="truncation index")
    p.add_argument("--out", default=None, metavar="PATH")


def _repr_from_args(args):
    flavor = Flavor(args.flavor or Flavor.BOSONIC_EVEN)
    k = args.k if args.k is not None else _DEFAULT_K.get(flavor)
    if k is None:
        raise DomainError("--k is required for the abstract flavor")
    return ReprIndex(k, flavor)


def _params_from_args(args):
    vals = {}
    for name in _COMPLEX_FLAGS:
        vals[name] = complex(getattr(args, f"{name}_re") or 0.0, getattr(args, f"{name}_im") or 0.0)
    return AcsParams(vals["z"], vals["u"], vals["v"], vals["w"], _repr_from_args(args))


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_state(args):
    p = _params_from_args(args)
    state = solve_acs(p, args.trunc)
    report = k_moments(state)
    moments = json.dumps(report.to_dict(), indent=1) + "\n"
    if args.out is None:
        sys.stdout.write(json.dumps({"state": export_state(state, p), "moments": report.to_dict()}, indent=1) + "\n")
    else:
        out = Path(args.out)
        _write(json.dumps(export_state(state, p), indent=1) + "\n", out)
        _write(moments, out.with_suffix(".moments.json"))
    return 0


def cmd_scan(args):
    from .scan import ScanConfig, scan_csv

    if args.config is not None:
        base = ScanConfig.load(args.config)
    elif args.family is not None:
        base = None
    else:
        raise DomainError("scan needs --config or --family")
    fields = {}
    if base is not None:
        fields = dict(
            family=base.family, lo=base.lo, hi=base.hi, points=base.points,
            observables=base.observables, params=dict(base.params), trunc=base.trunc, output=base.output,
        )
    for key in ("family", "lo", "hi", "points", "trunc"):
        if getattr(args, key) is not None:
            fields[key] = getattr(args, key)
    if args.observables is not None:
        fields["observables"] = tuple(o.strip() for o in args.observables.split(",") if o.strip())
    if args.out is not None:
        fields["output"] = args.out
    params = fields.setdefault("params", {})
    for name in _COMPLEX_FLAGS:
        for part in ("re", "im"):
            val = getattr(args, f"{name}_{part}")
            if val is not None:
                params[f"{name}_{part}"] = val
    if args.k is not None:
        params["k"] = args.k
    for item in args.param or ():
        key, sep, val = item.partition("=")
        if not sep:
            raise DomainError(f"--param expects NAME=VALUE, got {item!r}")
        params[key.strip()] = float(val)
    missing = [k for k in ("family", "lo", "hi", "points") if k not in fields]
    if missing:
        raise DomainError(f"scan is missing {', '.join(missing)}")
    config = ScanConfig(**fields)
    _write(scan_csv(config), config.output)
    return 0


def cmd_figure(args):
    from .scan import figure_csv

    _write(figure_csv(args.which), args.out)
    return 0


def cmd_check(args):
    from .checks import CheckContext, format_report, run_checks

    only = None
    if args.only:
        only = {int(x) for x in args.only.split(",")}
    results = run_checks(CheckContext(args.trunc), only)
    _write(format_report(results), args.out)
    return 0 if all(r.passed for r in results) else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="su11acs", description="SU(1,1) algebraic coherent states")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="build one state and report its moments")
    _add_param_flags(p, {"flavor": "bosonic_even", "u_re": 1.0})
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("scan", help="sweep one parameter of a family and write CSV")
    _add_param_flags(p, {})
    p.add_argument("--config", metavar="PATH", help="INI scan configuration")
    p.add_argument("--family")
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--observables", help="comma-separated subset of q,p,X,Y,K1,K2,mandel_q,schrodinger")
    p.add_argument("--param", action="append", metavar="NAME=VALUE", help="family parameter override")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("figure", help="write the data behind figure 1 or 2 as CSV")
    p.add_argument("which", choices=["fig1", "fig2"])
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("check", help="run the acceptance suite")
    p.add_argument("--trunc", type=int, metavar="N", help="override every truncation")
    p.add_argument("--only", metavar="LIST", help="comma-separated criterion numbers")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (DomainError, TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except AcsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
