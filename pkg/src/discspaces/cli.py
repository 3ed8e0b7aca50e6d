"""Command line interface.

Subcommands ``norm``, ``fournier``, ``random``, ``lacunary`` and
``scenario {run,list}``.  Results go to stdout as JSON; scenario runs also
write CSV and JSON records to the output directory (``--out``, else the
``DISCSPACES_OUT`` environment variable, else ``./discspaces_out``).

Exit codes: 0 when everything passes, 1 when anything fails, 2 when nothing
fails but something is inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from .experiments import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    Scenario,
    output_dir,
    run_many,
    scenario_catalog,
)
from .families import FAMILIES, build
from .fournier import FournierInput, fournier_construct
from .measures import measure
from .norms import SpaceParams, space_norm
from .random_series import khinchine_extrapolated, khinchine_ratio, sample_signs

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}


def _emit(obj: dict) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True, default=_json_default)
    sys.stdout.write("\n")


def _json_default(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.bool_):
        return bool(x)
    raise TypeError(type(x))


def _combine(verdicts: Sequence[str]) -> int:
    if FAIL in verdicts:
        return EXIT[FAIL]
    if INCONCLUSIVE in verdicts:
        return EXIT[INCONCLUSIVE]
    return EXIT[PASS]


# -- norm ------------------------------------------------------------------------


def cmd_norm(args: argparse.Namespace) -> int:
    f = build(args.family, args.N, json.loads(args.params))
    out: dict = {"family": args.family, "N": args.N, "degree": f.degree}
    if args.space:
        space = SpaceParams.from_dict(json.loads(args.space))
        out["space"] = space.label()
        out["estimate"] = space_norm(f, space).to_dict()
    if args.quantity:
        out["quantities"] = measure(f, args.quantity)
    if not args.space and not args.quantity:
        out["quantities"] = measure(f, ["hinf", "hardy:2", "bloch"])
    _emit(out)
    return 0


# -- fournier --------------------------------------------------------------------


def cmd_fournier(args: argparse.Namespace) -> int:
    if args.input:
        with open(args.input) as fh:
            inp = FournierInput.from_dict(json.load(fh))
    else:
        inp = FournierInput(
            tuple((k + 1.0) ** -args.exponent for k in range(args.K + 1)),
            tuple(args.base**k for k in range(args.K + 1)),
        )
    psi, cert = fournier_construct(inp, samples=args.samples)
    out = {"input": inp.to_dict(), "certificate": cert.to_dict()}
    if args.dump:
        out["coefficients"] = psi.to_dict()
    _emit(out)
    return 0 if cert.passed() else 1


# -- random ----------------------------------------------------------------------


def cmd_random(args: argparse.Namespace) -> int:
    if args.mode == "signs":
        if args.t is not None:
            s = sample_signs(args.count, t=Fraction(args.t))
        else:
            s = sample_signs(args.count, seed=args.seed)
        _emit({"signs": s.signs.tolist(), "provenance": s.provenance, "measure_zero": s.measure_zero})
        return 0
    if args.mode == "khinchine":
        c = np.ones(args.length)
        out = {"p": args.p, "length": args.length}
        out["report"] = khinchine_ratio(c, args.p, args.trials, seed=args.seed).to_dict()
        if args.length > 20:
            out["exhaustive_bracket"] = sorted(khinchine_extrapolated(c, args.p))
        _emit(out)
        return 0
    # draws: a quantity of the randomized family, one value per draw
    params = json.loads(args.params)
    rows = []
    for i in range(args.draws):
        f = build(args.family, args.N, {**params, "seed": args.seed + i})
        rows.append({"draw": i, "seed": args.seed + i, **measure(f, args.quantity)})
    if args.csv:
        w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: f"{v:.12e}" if isinstance(v, float) else v for k, v in row.items()})
    else:
        _emit({"family": args.family, "N": args.N, "draws": rows})
    return 0


# -- lacunary --------------------------------------------------------------------


def cmd_lacunary(args: argparse.Namespace) -> int:
    """D^p_{p-1} seminorm of ``sum (k+shift)^-e z^(2^k)`` against ``sum |a_k|^p``."""
    params = {"exponent": args.exponent, "shift": args.shift, "kmin": args.kmin}
    rows = []
    for j in range(args.jmin, args.jmax + 1):
        f = build("gap_power", 2**j, params)
        name = f"dsemi:{args.p:g}:{args.p - 1:g}"
        m = measure(f, [name, f"coeffsum:{args.p:g}"])
        rows.append(
            {
                "N": 2**j,
                "seminorm_p": m[name],
                "coeff_sum": m[f"coeffsum:{args.p:g}"],
                "ratio": m[name] / m[f"coeffsum:{args.p:g}"],
            }
        )
    _emit({"p": args.p, "params": params, "rows": rows})
    return 0


# -- scenario --------------------------------------------------------------------


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _catalog(config: dict) -> list[Scenario]:
    extra = [Scenario.from_dict(d) for d in config.get("scenarios", [])]
    return scenario_catalog() + extra


def cmd_scenario_list(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    for s in _catalog(config):
        tag = " (exploratory)" if s.exploratory else ""
        print(f"{s.name}{tag}: {s.anchor}")
    return 0


def cmd_scenario_run(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    catalog = {s.name: s for s in _catalog(config)}
    names = args.name or ([args.scenario] if args.scenario else None) or config.get("scenario")
    if names is None:
        print("no scenario given", file=sys.stderr)
        return 1
    if isinstance(names, str):
        names = [names]
    if names == ["all"]:
        names = [n for n, s in catalog.items() if not s.exploratory]
    unknown = [n for n in names if n not in catalog]
    if unknown:
        print(f"unknown scenario(s): {', '.join(unknown)}", file=sys.stderr)
        return 1
    nmax = args.nmax if args.nmax is not None else config.get("nmax")
    seed = args.seed if args.seed is not None else config.get("seed")
    out = args.out if args.out is not None else config.get("out")
    records = run_many(
        [catalog[n] for n in names],
        workers=args.workers,
        nmax=nmax,
        seed=seed,
        out=str(output_dir(out)),
        write=True,
    )
    for r in records:
        print(f"{r.scenario}: {r.verdict} ({r.runtime:.1f}s) hash={r.config_hash[:12]}")
        for c in r.checks:
            if c["status"] != PASS:
                print(f"  {c['status']}: {c['quantity']} expected {c['expect']} observed {c['observed']}")
        if r.error:
            print(f"  error: {r.error}")
    return _combine([r.verdict for r in records])


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="discspaces", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", help="norms and seminorms of a named family")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("-N", type=int, default=256, help="truncation degree")
    p.add_argument("--params", default="{}", help="family parameters as JSON")
    p.add_argument("--space", help='space as JSON, e.g. {"kind": "Hardy", "p": 2}')
    p.add_argument("-q", "--quantity", action="append", help="quantity name, repeatable")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("fournier", help="build and certify the bounded gap construction")
    p.add_argument("-K", type=int, default=8)
    p.add_argument("--exponent", type=float, default=1.0, help="u_k = (k+1)^-exponent")
    p.add_argument("--base", type=int, default=4, help="n_k = base^k")
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--input", help='JSON file {"u": [...], "n": [...]}; overrides -K/--exponent/--base')
    p.add_argument("--dump", action="store_true", help="include the dense coefficients (n_K <= 2^20)")
    p.set_defaults(func=cmd_fournier)

    p = sub.add_parser("random", help="Rademacher signs, Khinchine ratios, randomized series")
    p.add_argument("mode", choices=["signs", "khinchine", "draws"])
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--t", help="Rademacher parameter, e.g. 1/3 or 0.3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--length", type=int, default=64)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--family", default="gap_power", choices=sorted(FAMILIES))
    p.add_argument("--params", default='{"exponent": 1.0}')
    p.add_argument("-N", type=int, default=1024)
    p.add_argument("--draws", type=int, default=5)
    p.add_argument("-q", "--quantity", action="append", default=None)
    p.add_argument("--csv", action="store_true", help="draws as CSV, one row per draw")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("lacunary", help="gap-series seminorm against the coefficient sum")
    p.add_argument("--exponent", type=float, default=1.0)
    p.add_argument("--shift", type=float, default=0.0)
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--jmin", type=int, default=4)
    p.add_argument("--jmax", type=int, default=12)
    p.set_defaults(func=cmd_lacunary)

    p = sub.add_parser("scenario", help="registered experiments")
    ssub = p.add_subparsers(dest="action", required=True)
    r = ssub.add_parser("run", help="run scenarios ('all' for the whole non-exploratory catalog)")
    r.add_argument("name", nargs="*")
    r.add_argument("--config", help="JSON configuration file")
    r.add_argument("--scenario")
    r.add_argument("--nmax", type=int)
    r.add_argument("--seed", type=int)
    r.add_argument("--out")
    r.add_argument("--workers", type=int, default=1)
    r.set_defaults(func=cmd_scenario_run)
    ls = ssub.add_parser("list", help="list scenarios with their anchors")
    ls.add_argument("--config")
    ls.set_defaults(func=cmd_scenario_list)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "mode", None) == "draws" and not args.quantity:
        args.quantity = ["hinf"]
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
