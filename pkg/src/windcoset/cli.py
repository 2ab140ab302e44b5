"""Command-line front end.

    windcoset [--config FILE] [--format json|table] [-v] COMMAND ...

Commands: charge, kac-table, character, string, verify, dump-rootsys.
A config file holds ``key = value`` lines named after the long flags of the
chosen command (``order = 12``, ``format = json``); flags on the command line win.
Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Dict, List, Optional, Sequence

from . import affine, coset, freudenthal, rootsys, virasoro
from .affine import AffineWeight, NotIntegrable, parse_weight
from .qseries import QSeries

log = logging.getLogger("windcoset")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _fmt_series(s: QSeries) -> str:
    return repr(s)[len("QSeries("):-1]


# -- input checks ----------------------------------------------------------------

def _algebra(text: str) -> str:
    label = text.strip().upper()
    if label not in rootsys.SUPPORTED:
        raise UsageError(f"unknown algebra {text!r}; choose from {', '.join(rootsys.SUPPORTED)}")
    return label


def _weight(algebra: str, text: str, level: Optional[int]) -> AffineWeight:
    """Parse and check the level condition before anything heavy runs."""
    try:
        w = parse_weight(algebra, text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if any(x < 0 for x in w.labels):
        raise NotIntegrable(f"{algebra} weight {text!r} has a negative Dynkin label")
    if level is not None and w.level != level:
        rs = rootsys.build(algebra)
        terms = " + ".join(f"{a}*{x}" for a, x in zip(rs.affine_comarks, w.labels))
        raise NotIntegrable(
            f"{algebra} weight {text!r} violates the level-{level} condition: "
            f"comark sum {terms} = {w.level}, not {level}")
    w.check_integrable()
    return w


def _finite_weight(algebra: str, text: str) -> tuple:
    rs = rootsys.build(algebra)
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"finite weight must be comma-separated integers, got {text!r}") from exc
    if len(out) != rs.rank:
        raise UsageError(f"{algebra} finite weights have {rs.rank} Dynkin labels, got {len(out)}")
    return out


def _order(value: int) -> int:
    if value < 0:
        raise UsageError("truncation order must be non-negative")
    return value


# -- commands -------------------------------------------------------------------------

def cmd_charge(args) -> tuple:
    g = _algebra(args.algebra)
    if args.k < 1 or args.j < 1:
        raise UsageError("k and j must be positive integers")
    ck = affine.sugawara_central_charge(g, args.k)
    cjk = affine.sugawara_central_charge(g, args.j * args.k)
    chat = affine.coset_central_charge(g, args.k, args.j)
    m = affine.unitary_index(chat)
    data = {"algebra": g, "k": args.k, "j": args.j, "c_k": str(ck), "c_jk": str(cjk),
            "coset_c": str(chat), "m": m, "prefactor": str(affine.branching_prefactor(g, args.k, args.j))}
    lines = [f"c({args.k}) = {ck}", f"c({args.j * args.k}) = {cjk}", f"c_hat = {chat}",
             f"m = {m}" if m is not None else "m = none (not in the unitary series)",
             f"prefactor = {data['prefactor']}"]
    return data, lines, EXIT_OK


def cmd_kac_table(args) -> tuple:
    if args.m < 3:
        raise UsageError("m must be at least 3")
    table = virasoro.kac_table(args.m)
    data = {"m": args.m, "c": str(virasoro.unitary_central_charge(args.m)),
            "rows": [[str(h) for h in row] for row in table]}
    width = max(len(str(h)) for row in table for h in row)
    head = "r\\s " + " ".join(f"{s:>{width}}" for s in range(1, args.m + 1))
    lines = [f"c = {data['c']}", head]
    for r, row in enumerate(table, start=1):
        lines.append(f"{r:>3} " + " ".join(f"{str(h):>{width}}" for h in row))
    return data, lines, EXIT_OK


def cmd_character(args) -> tuple:
    g = _algebra(args.algebra)
    w = _weight(g, args.weight, args.level)
    order = _order(args.order)
    ch = freudenthal.character(g, w.level, w, order)
    if args.normalization != "trace":
        ch = ch.renormalized(args.normalization)
    if args.mode == "z=1":
        s = affine.specialize(ch, "bfs" if args.orbit_method == "bfs" else "formula", args.orbit_cap)
        return {"algebra": g, "highest": list(w.labels), "mode": "z=1", "series": s.to_json()}, \
            [f"{g} {w.name()} (z=1): {_fmt_series(s)}"], EXIT_OK
    data = ch.to_json()
    rs = rootsys.build(g)
    lines = [f"{g} {w.name()} level {w.level}, {args.normalization} form"]
    for wt in sorted(ch.table, key=lambda x: (rs.norm(x), x)):
        lines.append(f"  {','.join(map(str, wt)):<20} {_fmt_series(ch.table[wt])}")
    return data, lines, EXIT_OK


def cmd_string(args) -> tuple:
    g = _algebra(args.algebra)
    w = _weight(g, args.weight, args.level)
    lam = _finite_weight(g, args.weight_lambda)
    order = _order(args.order)
    table = freudenthal.multiplicities(g, w.level, w, order)
    first = table.first_grade(lam)
    if first is None:
        raise freudenthal.EmptyString(f"weight {lam} does not occur in L({w.name()}) up to grade {order}")
    b = table.string_function(lam)
    coeffs = list(b.coeffs)
    data = {"algebra": g, "highest": list(w.labels), "weight": list(lam), "first_grade": first,
            "coefficients": coeffs}
    return data, [f"b[{w.name()}; {','.join(map(str, lam))}] from grade {first}: "
                  + " ".join(map(str, coeffs))], EXIT_OK


def cmd_dump_rootsys(args) -> tuple:
    g = _algebra(args.algebra)
    rs = rootsys.build(g)
    data = rs.to_json()
    lines = [f"{g}: rank {rs.rank}, dim {rs.dimension}, h = {rs.coxeter_number}, "
             f"h_dual = {rs.dual_coxeter_number}",
             "Cartan matrix:"] + ["  " + " ".join(f"{x:>2}" for x in row) for row in rs.cartan_matrix] + [
        f"affine comarks: {list(rs.affine_comarks)}",
        f"highest root: {list(rs.highest_root)}",
        f"positive roots: {len(rs.positive_roots)}"]
    return data, lines, EXIT_OK


def cmd_verify(args) -> tuple:
    cases = {c.algebra: c for c in coset.catalog()}
    wanted: List[str] = []
    identities: List[str] = list(args.identity or [])
    projections: List[str] = list(args.projection or [])
    if args.all:
        wanted = list(cases)
        identities = identities or list(coset.IDENTITIES)
        projections = projections or list(coset.PROJECTIONS)
    for name in args.case or []:
        label = _algebra(name)
        if label not in cases:
            raise UsageError(f"no branching case for {label}; cases are {', '.join(cases)}")
        if label not in wanted:
            wanted.append(label)
    if not (wanted or identities or projections):
        raise UsageError("nothing to verify: give --all, --case, --identity or --projection")
    if args.order is not None:
        _order(args.order)
    if args.mode is not None and args.mode not in coset.MODES:
        raise UsageError(f"mode must be one of {coset.MODES}")

    ok = True
    rows, lines = [], []
    for label in wanted:
        case = cases[label]
        for dec in case.decompositions:
            log.info("verifying %s %s", label, dec.parent)
            rep = coset.verify_branching(case, dec.parent, args.order, args.mode)
            ok = ok and rep.passed
            rows.append(rep.to_json())
            lines.append(f"{label:<3} {dec.parent:<3} {rep.mode:<6} grade {rep.verified_order}: "
                         f"{'PASS' if rep.passed else 'FAIL'}")
    checks = []
    if identities:
        unknown = [x for x in identities if x not in coset.IDENTITIES]
        if unknown:
            raise UsageError(f"unknown identity {unknown[0]!r}; choose from {', '.join(coset.IDENTITIES)}")
        for name in identities:
            kw = {}
            if args.order is not None:
                kw = {"ising_order": args.order} if name == "ising" else {"max_order": args.order}
            rep = coset.verify_e8_doubling(which=[name], **kw)
            ok = ok and rep.passed
            for c in rep.checks:
                checks.append(c.to_json())
                lines.append(f"E8  {c.name:<24} q^{c.verified_order}: {'PASS' if c.passed else 'FAIL'}")
    projs = []
    for name in projections:
        if name not in coset.PROJECTIONS:
            raise UsageError(f"unknown projection {name!r}; choose from {', '.join(coset.PROJECTIONS)}")
        rep = coset.verify_projection(cases["A1"], name)
        ok = ok and rep.passed
        projs.append(rep.to_json())
        lines.append(f"A1  projection {name:<13} -> {rep.child}: {'PASS' if rep.passed else 'FAIL'}")
    data = {"passed": ok, "rows": rows, "identities": checks, "projections": projs}
    return data, lines, EXIT_OK if ok else EXIT_FAIL


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="windcoset",
                                     description="Affine characters and winding-subalgebra coset branchings.")
    parser.add_argument("--config", help="key=value file supplying defaults for the command's flags")
    parser.add_argument("--format", choices=("json", "table"), default=None)
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("charge", help="Sugawara and coset central charges")
    p.add_argument("--algebra", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--j", type=int, default=2)
    p.set_defaults(func=cmd_charge)

    p = sub.add_parser("kac-table", help="conformal dimensions of the unitary minimal model m")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_kac_table)

    p = sub.add_parser("character", help="weight-resolved character of an integrable module")
    p.add_argument("--algebra", required=True)
    p.add_argument("--weight", required=True, help='affine labels "1,0" or "L0+L1"')
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--normalization", choices=affine.NORMALIZATIONS, default="trace")
    p.add_argument("--mode", choices=coset.MODES, default="full-z")
    p.add_argument("--orbit-method", choices=("formula", "bfs"), default="formula")
    p.add_argument("--orbit-cap", type=int, default=10 ** 7)
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("string", help="string function b^Lambda_lambda")
    p.add_argument("--algebra", required=True)
    p.add_argument("--weight", required=True, help="highest weight (affine labels or L-notation)")
    p.add_argument("--lambda", dest="weight_lambda", required=True, help="finite Dynkin labels")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--order", type=int, default=10)
    p.set_defaults(func=cmd_string)

    p = sub.add_parser("verify", help="check branching rules and E8 identities")
    p.add_argument("--all", action="store_true")
    p.add_argument("--case", action="append", help="algebra of a catalog case (repeatable)")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--mode", default=None, help="full-z or z=1")
    p.add_argument("--identity", action="append", help=f"one of {', '.join(coset.IDENTITIES)}")
    p.add_argument("--projection", action="append", help=f"one of {', '.join(coset.PROJECTIONS)}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dump-rootsys", help="Cartan matrix, roots and comarks")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_dump_rootsys)
    return parser


def read_config(path: str) -> Dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key = value")
            key, value = (x.strip() for x in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _apply_config(parser, sub_name: str, config: Dict[str, str]):
    """Fill every flag not given on the command line from the config."""
    subparser = parser._subparsers._group_actions[0].choices[sub_name]
    actions = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, value in config.items():
        if key in ("format", "verbose"):
            continue
        if key == "lambda":
            key = "weight_lambda"
        action = actions.get(key)
        if action is None:
            raise UsageError(f"config key {key!r} is not a flag of {sub_name}")
        if isinstance(action, argparse._StoreTrueAction):
            low = value.lower()
            if low not in _TRUE | _FALSE:
                raise UsageError(f"config key {key!r} needs a boolean, got {value!r}")
            defaults[key] = low in _TRUE
        elif isinstance(action, argparse._AppendAction):
            defaults[key] = [x.strip() for x in value.split(",") if x.strip()]
        else:
            try:
                defaults[key] = action.type(value) if action.type else value
            except ValueError as exc:
                raise UsageError(f"config key {key!r}: {exc}") from exc
            if action.choices and defaults[key] not in action.choices:
                raise UsageError(f"config key {key!r} must be one of {list(action.choices)}")
        action.required = False
    subparser.set_defaults(**defaults)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    commands = parser._subparsers._group_actions[0].choices   # argparse has no public accessor
    command = next((a for a in argv if a in commands), None)
    config: Dict[str, str] = {}
    try:
        if known.config:
            config = read_config(known.config)
        if config and command is not None:
            _apply_config(parser, command, config)
    except (UsageError, OSError) as exc:
        print(f"windcoset: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    fmt = args.format or config.get("format", "table")
    if fmt not in ("json", "table"):
        print(f"windcoset: error: format must be json or table, got {fmt!r}", file=sys.stderr)
        return EXIT_USAGE
    verbose = args.verbose or config.get("verbose", "").lower() in _TRUE
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False
    try:
        data, lines, code = args.func(args)
    except (UsageError, NotIntegrable, freudenthal.EmptyString, virasoro.OutOfKacTable,
            coset.TruncationTooShallow) as exc:
        print(f"windcoset: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        log.removeHandler(handler)
    if fmt == "json":
        print(_dump(data))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
