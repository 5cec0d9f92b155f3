"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or registry parse
error.  Output is plain text (``--format table``) or CSV; every numeric
field is printed exactly, so CSV output round-trips.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import dataclass

from .forms import TernaryForm, aut_count, enumerate_ternary_classes, repcount
from .genus import build_sgenus, genus_partition, mass_direct, mass_formula
from .identities import (RegistryError, eval_series, load_registry,
                         run_suite, verify_entry, verify_eta)
from .series import is_nonnegative
from .theta import named_function

ENV_REGISTRY = "THETAFORMS_REGISTRY"


@dataclass
class Config:
    terms: int = 500
    mmax: int = 10000
    limit: int = 1000
    registry: str = ""
    fmt: str = "table"
    jobs: int = 1


def _default_registry_file() -> str:
    from importlib.resources import files
    return str(files("thetaforms").joinpath("data/registry.txt"))


def load_config(path: str | None) -> Config:
    cfg = Config(registry=_default_registry_file())
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                key, _, value = line.partition("=")
                key, value = key.strip(), value.strip()
                if key in ("terms", "mmax", "limit", "jobs"):
                    setattr(cfg, key, int(value))
                elif key == "registry":
                    cfg.registry = value
                elif key == "format":
                    cfg.fmt = value
                else:
                    raise ValueError(f"unknown config key {key!r}")
    env = os.environ.get(ENV_REGISTRY)
    if env:
        cfg.registry = env
    return cfg


def _emit_rows(header, rows, fmt, out):
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    widths = [len(h) for h in header]
    rows = [tuple(str(c) for c in row) for row in rows]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
    for row in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _registry(cfg: Config):
    try:
        return load_registry(cfg.registry)
    except FileNotFoundError:
        print(f"registry file not found: {cfg.registry}", file=sys.stderr)
        raise SystemExit(2)
    except RegistryError as err:
        print(f"registry parse error: {err}", file=sys.stderr)
        raise SystemExit(2)


def _cmd_expand(cfg: Config, args) -> int:
    from .identities import _Parser, _tokenize
    tokens = _tokenize(args.func, 1, 0)
    parser = _Parser(tokens, "series", 1)
    try:
        node = parser.parse_expr()
        if parser.peek() is not None:
            raise parser.error("trailing tokens")
        value = eval_series(node, args.n)
    except (RegistryError, ValueError, KeyError) as err:
        print(f"cannot expand {args.func!r}: {err}", file=sys.stderr)
        return 2
    rows = [(i, c) for i, c in enumerate(value.coeffs)]
    _emit_rows(("exponent", "coefficient"), rows, cfg.fmt, sys.stdout)
    return 0


def _cmd_verify(cfg: Config, args) -> int:
    from .modeq import UnsupportedRadicand
    registry = _registry(cfg)
    if args.id not in registry:
        print(f"unknown identity {args.id!r}", file=sys.stderr)
        return 2
    try:
        result = verify_entry(registry[args.id], args.terms or cfg.terms,
                              args.mmax or cfg.mmax, args.limit or cfg.limit)
    except UnsupportedRadicand as err:
        print(f"{args.id}: unsupported by parametrization: {err}",
              file=sys.stderr)
        return 2
    _emit_rows(("name", "mode", "params", "verdict", "witness", "ms"),
               [result.row()], cfg.fmt, sys.stdout)
    return 0 if result.passed else 1


def _cmd_prove_eta(cfg: Config, args) -> int:
    registry = _registry(cfg)
    if args.id not in registry:
        print(f"unknown identity {args.id!r}", file=sys.stderr)
        return 2
    spec = registry[args.id]
    if spec.mode != "eta":
        print(f"{args.id} is not an eta entry", file=sys.stderr)
        return 2
    result, cert = verify_eta(spec)
    print(cert.render())
    return 0 if result.passed else 1


def _cmd_forms(cfg: Config, args) -> int:
    rows = []
    if args.genera:
        for i, record in enumerate(genus_partition(args.disc), start=1):
            for form in record.classes:
                rows.append((i, str(form), aut_count(form)))
        _emit_rows(("genus", "form", "aut"), rows, cfg.fmt, sys.stdout)
    else:
        for form in enumerate_ternary_classes(args.disc):
            rows.append((str(form), aut_count(form)))
        _emit_rows(("form", "aut"), rows, cfg.fmt, sys.stdout)
    return 0


def _cmd_repcount(cfg: Config, args) -> int:
    try:
        form = TernaryForm.from_string(args.form)
    except (ValueError, TypeError) as err:
        print(f"bad form literal: {err}", file=sys.stderr)
        return 2
    print(repcount(form, args.m))
    return 0


def _cmd_sgenus(cfg: Config, args) -> int:
    try:
        sg = build_sgenus(args.s)
    except ValueError as err:
        print(str(err), file=sys.stderr)
        return 2
    rows = []
    total = 0
    for i, record in enumerate(sg.tg, start=1):
        chars = " ".join(f"eps({p})={sg.eps[(i - 1, p)]:+d}" for p in sg.primes)
        md = mass_direct(record)
        mf = mass_formula(record, args.s)
        total += md
        rows.append((i, str(record), chars, md, mf))
    _emit_rows(("i", "classes", "characters", "mass", "mass_formula"),
               rows, cfg.fmt, sys.stdout)
    ok = total == args.s
    print(f"total mass {total} (predicted {args.s}): {'ok' if ok else 'MISMATCH'}")
    return 0 if ok else 1


def _cmd_positivity(cfg: Config, args) -> int:
    if args.s not in (3, 5, 7, 15):
        print("supported shifts: 3, 5, 7, 15", file=sys.stderr)
        return 2
    limit = args.limit or cfg.limit
    phi = named_function("phi", limit)
    phis = named_function("phi", limit, args.s)
    psi = named_function("psi", limit)
    value = psi * (phi * phi - phis * phis)
    ok, bad = is_nonnegative(value)
    if ok:
        print(f"nonnegative through exponent {limit - 1}")
        return 0
    print(f"negative coefficient at exponent {bad}")
    return 1


def _cmd_suite(cfg: Config, args) -> int:
    registry = _registry(cfg)
    results = run_suite(registry, args.terms or cfg.terms,
                        args.mmax or cfg.mmax, args.limit or cfg.limit,
                        jobs=args.jobs or cfg.jobs, registry_path=cfg.registry)
    _emit_rows(("name", "mode", "params", "verdict", "witness", "ms"),
               [r.row() for r in results], cfg.fmt, sys.stdout)
    passed = sum(1 for r in results if r.passed)
    failed = len(results) - passed
    print(f"{passed} passed / {failed} failed / {len(results)} total")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="thetaforms",
        description="Exact verification of theta-function and ternary "
                    "quadratic form identities.")
    top.add_argument("--registry", help="path to the identity registry")
    top.add_argument("--config", help="key=value configuration file")
    top.add_argument("--format", choices=("table", "csv"), default=None)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="print coefficients of a series expression")
    p.add_argument("--func", required=True)
    p.add_argument("--n", type=int, default=20)
    p.set_defaults(run=_cmd_expand)

    p = sub.add_parser("verify", help="verify one registry entry")
    p.add_argument("--id", required=True)
    p.add_argument("--terms", type=int)
    p.add_argument("--mmax", type=int)
    p.add_argument("--limit", type=int)
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("prove-eta", help="emit the proof certificate for an eta entry")
    p.add_argument("--id", required=True)
    p.set_defaults(run=_cmd_prove_eta)

    p = sub.add_parser("forms", help="list class representatives of a discriminant")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--genera", action="store_true")
    p.set_defaults(run=_cmd_forms)

    p = sub.add_parser("repcount", help="count representations of one integer")
    p.add_argument("--form", required=True, metavar="a,b,c,d,e,f")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(run=_cmd_repcount)

    p = sub.add_parser("sgenus", help="report the lifted-union genera for S")
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(run=_cmd_sgenus)

    p = sub.add_parser("positivity", help="scan psi(q)(phi(q)^2-phi(q^S)^2)")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.set_defaults(run=_cmd_positivity)

    p = sub.add_parser("suite", help="run every registry entry")
    p.add_argument("--terms", type=int)
    p.add_argument("--mmax", type=int)
    p.add_argument("--limit", type=int)
    p.add_argument("--jobs", type=int)
    p.set_defaults(run=_cmd_suite)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (OSError, ValueError) as err:
        print(f"bad configuration: {err}", file=sys.stderr)
        return 2
    if args.registry:
        cfg.registry = args.registry
    if args.format:
        cfg.fmt = args.format
    try:
        return args.run(cfg, args)
    except SystemExit as stop:
        return int(stop.code or 0)


if __name__ == "__main__":
    sys.exit(main())
