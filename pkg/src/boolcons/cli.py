"""Command-line interface.

Exit codes: 0 success, 1 verification failure (or an empty search without
--allow-empty), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import constructions as cons
from .analysis import analyze
from .anf_parser import table_from_anf_string
from .constructions import GeneralInstance
from .core import FunctionFamily, TruthTable, VectorialMap
from .errors import AnfSyntaxError, DimensionError, HexFormatError, PreconditionError, SpectrumError
from .search import SearchConfig, run_search
from .transforms import WalshSpectrum, fwht, fwht_inverse, mobius
from .walsh_theory import verify_lemma, verify_theorem

JOBS_ENV = "BOOLCONS_JOBS"
INPUT_ERRORS = (AnfSyntaxError, DimensionError, HexFormatError, PreconditionError, SpectrumError, ValueError, OSError)


class UsageError(Exception):
    pass


def _emit(args, record: dict) -> None:
    if args.format == "structured":
        print(json.dumps(record, sort_keys=True))
        return
    for key, value in record.items():
        if isinstance(value, list):
            value = " ".join(str(v) for v in value)
        elif isinstance(value, bool):
            value = str(value).lower()
        elif value is None:
            value = "none"
        print(f"{key}={value}")


def parse_table(value: str, n: int | None = None) -> TruthTable:
    """A hex truth table, or ``anf:<expr>`` (which needs the variable count)."""
    if value.startswith("anf:"):
        if n is None:
            raise UsageError(f"{value!r}: an ANF input needs an explicit variable count")
        return table_from_anf_string(value[4:], n)
    return TruthTable.from_hex(value, n)


def _single_input(args) -> TruthTable:
    if args.anf is not None:
        if args.table is not None:
            raise UsageError("give either a hex table or --anf, not both")
        if args.n is None:
            raise UsageError("--anf needs --n")
        return table_from_anf_string(args.anf, args.n)
    if args.table is None:
        raise UsageError("missing input: give a hex table or --anf EXPR --n N")
    return TruthTable.from_hex(args.table, args.n)


def _jobs(args) -> int:
    if args.jobs is not None:
        return args.jobs
    return int(os.environ.get(JOBS_ENV, "1"))


# -- subcommands -------------------------------------------------------------

def cmd_analyze(args) -> int:
    f = _single_input(args)
    _emit(args, {"n": f.n_vars, "table": f.to_hex(), **_report_fields(analyze(f))})
    return 0


def _report_fields(report) -> dict:
    rec = report.as_record()
    rec.pop("n_vars")
    return {
        "nonlinearity": rec["nonlinearity"],
        "bent": rec["is_bent"],
        "amplitude": rec["plateaued_amplitude"],
        "resiliency": rec["resiliency_order"],
        "degree": rec["degree"],
        "balanced": rec["is_balanced"],
    }


def cmd_fwht(args) -> int:
    if args.inverse:
        if args.table is None:
            raise UsageError("--inverse needs a comma-separated spectrum")
        values = [int(v) for v in args.table.replace(",", " ").split()]
        n = len(values).bit_length() - 1
        if len(values) != 1 << n:
            raise UsageError(f"spectrum length {len(values)} is not a power of two")
        f = fwht_inverse(WalshSpectrum(n, values))
        _emit(args, {"n": n, "table": f.to_hex()})
        return 0
    f = _single_input(args)
    _emit(args, {"n": f.n_vars, "spectrum": fwht(f).tolist()})
    return 0


def cmd_anf(args) -> int:
    f = _single_input(args)
    anf = mobius(f)
    _emit(args, {"n": f.n_vars, "table": f.to_hex(), "anf": str(anf), "degree": anf.degree})
    return 0


_CONSTRUCT_ARGS = {
    "direct": (["g"], ["h"]),
    "indirect": (["g", "g1"], ["h", "h1"]),
    "gen1": (["g", "g1", "g2"], ["h", "h1", "h2"]),
    "gen2": (["g", "g1", "g2", "g3"], ["h", "h1", "h2", "h3"]),
    "size3": (["g", "g1", "g2"], ["h0", "h1", "h2"]),
}

_BUILDERS = {
    "direct": cons.direct_sum,
    "indirect": cons.indirect_sum,
    "gen1": cons.gen1,
    "gen2": cons.gen2,
    "size3": cons.size3_sum,
}


def read_family(path: str, t: int | None = None) -> FunctionFamily:
    """One table per line, line i holding h_u for idx(u) = i."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    members = [parse_table(ln, t) for ln in lines if ln and not ln.startswith("#")]
    k = len(members).bit_length() - 1
    if k < 1 or len(members) != 1 << k:
        raise UsageError(f"family file needs 2^k lines (k >= 1), got {len(members)}")
    return FunctionFamily(members[0].n_vars, k, tuple(members))


def cmd_construct(args) -> int:
    if args.kind == "general":
        if args.g is None or args.F is None or args.family is None:
            raise UsageError("general needs --g, --F and --family")
        g = parse_table(args.g, args.s)
        coords = [parse_table(c, g.n_vars) for c in args.F.split(",")]
        H = read_family(args.family, args.t)
        inst = GeneralInstance(g, VectorialMap(g.n_vars, len(coords), tuple(coords)), H)
        f = cons.general_construct(inst)
        s = g.n_vars
    else:
        xs, ys = _CONSTRUCT_ARGS[args.kind]
        missing = [f"--{name}" for name in xs + ys if getattr(args, name) is None]
        if missing:
            raise UsageError(f"{args.kind} needs {' '.join(missing)}")
        x_tables = [parse_table(getattr(args, name), args.s) for name in xs]
        y_tables = [parse_table(getattr(args, name), args.t) for name in ys]
        f = _BUILDERS[args.kind](*x_tables, *y_tables)
        s = x_tables[0].n_vars
    record = {"n": f.n_vars, "s": s, "t": f.n_vars - s, "table": f.to_hex()}
    if args.analyze:
        record.update(_report_fields(analyze(f)))
    _emit(args, record)
    return 0


def _report_checks(args, checks, extra: dict) -> int:
    failed = [c for c in checks if not c.passed]
    if args.format == "structured":
        print(json.dumps({**extra, "passed": not failed, "checks": [c.as_record() for c in checks]},
                         sort_keys=True))
    else:
        for c in checks:
            line = f"{c.name}: {'PASS' if c.passed else 'FAIL'} checked={c.checked}"
            if c.witness:
                line += " witness=" + json.dumps(c.witness, sort_keys=True)
            print(line)
    return 1 if failed else 0


def cmd_verify_theorem(args) -> int:
    if args.trials == 0:
        print("warning: trials=0, nothing was checked", file=sys.stderr)
    checks = verify_theorem(args.s, args.t, args.k, args.trials, args.seed)
    return _report_checks(args, checks, {"s": args.s, "t": args.t, "k": args.k, "trials": args.trials, "seed": args.seed})


def cmd_verify_lemma(args) -> int:
    if args.trials == 0:
        print("warning: trials=0, nothing was checked", file=sys.stderr)
    checks = verify_lemma(args.n, args.trials, args.seed)
    return _report_checks(args, checks, {"n": args.n, "trials": args.trials, "seed": args.seed})


def _search_config(args) -> SearchConfig:
    data = {}
    if args.config:
        data = json.loads(Path(args.config).read_text())
        if not isinstance(data, dict):
            raise UsageError("search config must be a JSON object")
    overrides = {
        "s": args.s, "t": args.t, "k": args.k, "target": args.target, "target_param": args.param,
        "policy": args.policy, "seed": args.seed, "trials": args.trials,
        "g_pool": args.g_pool, "f_pool": args.f_pool, "h_pool": args.h_pool, "max_hits": args.max_hits,
    }
    data.update({key: value for key, value in overrides.items() if value is not None})
    for key in ("g_pool", "f_pool", "h_pool"):
        if isinstance(data.get(key), str) and "," in data[key]:
            data[key] = data[key].split(",")
    missing = [key for key in ("s", "t", "k") if key not in data]
    if missing:
        raise UsageError(f"search needs {', '.join('--' + m for m in missing)} (or a config file)")
    return SearchConfig.from_mapping(data)


def cmd_search(args) -> int:
    cfg = _search_config(args)
    out = open(args.output, "a") if args.output else None
    hits = 0
    try:
        for hit in run_search(cfg, jobs=_jobs(args)):
            hits += 1
            line = hit.to_json()
            if out:
                out.write(line + "\n")
            if args.format == "structured" or not out:
                print(line)
    finally:
        if out:
            out.close()
    print(f"hits={hits} trials={cfg.trials if cfg.policy == 'random' else 'exhaustive'}", file=sys.stderr)
    return 0 if hits or args.allow_empty else 1


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--jobs", type=int, default=None,
                        help=f"worker processes (default ${JOBS_ENV} or 1)")

    single = argparse.ArgumentParser(add_help=False)
    single.add_argument("table", nargs="?", help="hex truth table")
    single.add_argument("--anf", help="ANF expression such as 'x1*x2 + x3'")
    single.add_argument("--n", type=int, help="number of variables")

    parser = argparse.ArgumentParser(prog="boolcons", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common, single], help="cryptographic properties of a function")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("fwht", parents=[common, single], help="Walsh spectrum (or its inverse)")
    p.add_argument("--inverse", action="store_true",
                   help="read the positional argument as a comma-separated spectrum")
    p.set_defaults(func=cmd_fwht)

    p = sub.add_parser("anf", parents=[common, single], help="algebraic normal form of a function")
    p.set_defaults(func=cmd_anf)

    p = sub.add_parser("construct", parents=[common], help="build a function by a secondary construction",
                       description="Tables are hex strings or 'anf:<expr>' (then --s/--t give the sizes).")
    p.add_argument("kind", choices=("direct", "indirect", "gen1", "gen2", "size3", "general"))
    p.add_argument("--s", type=int, help="variables of the x part")
    p.add_argument("--t", type=int, help="variables of the y part")
    for name in ("g", "g1", "g2", "g3", "h", "h0", "h1", "h2", "h3"):
        p.add_argument(f"--{name}")
    p.add_argument("--F", help="comma-separated coordinate tables f1,...,fk (general only)")
    p.add_argument("--family", help="file with one h_u table per line (general only)")
    p.add_argument("--analyze", action="store_true", help="also report the properties of the result")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-theorem", parents=[common], help="check the Walsh formulas against FWHT")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("verify-lemma", parents=[common], help="check the disjoint-support lemma")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_lemma)

    p = sub.add_parser("search", parents=[common], help="seeded search for bent/plateaued/resilient functions")
    p.add_argument("--config", help="JSON file with SearchConfig fields")
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--target", choices=("bent", "plateaued", "resilient"))
    p.add_argument("--param", type=int, help="amplitude (plateaued) or minimum order (resilient)")
    p.add_argument("--policy", choices=("random", "exhaustive"))
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--g-pool", dest="g_pool", help="pool name or comma-separated hex tables")
    p.add_argument("--f-pool", dest="f_pool")
    p.add_argument("--h-pool", dest="h_pool")
    p.add_argument("--max-hits", dest="max_hits", type=int)
    p.add_argument("--output", help="append one JSON record per hit to this file")
    p.add_argument("--allow-empty", action="store_true", help="exit 0 even without hits")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, *INPUT_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
