"""Command-line front end: ``oddrank <command> [options]``.

Exit codes: 0 all checks pass, 1 usage error, 2 a verification failed,
3 a precision or oracle budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import durfee
from .arrays import LEPI_GAMMA, l2al_bounds, cd_arrays, extend, padic
from .errors import BudgetError, CoverageError, OddRankError
from .expr import Eta, ParseError, Product, evaluate, parse
from .products import EtaQuotient, check_modularity, cusp_count, cusp_orders
from .series import QSeries

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2, 3
SCHEMA = 1
PREC_ENV = "ODDRANK_PREC"


@dataclass
class RunConfig:
    command: str
    precision: int | None = None
    json: bool = False
    out: str | None = None
    seed: int = 0
    max_exponent: int = 60000
    max_oracle_n: int = durfee.MAX_ORACLE_N
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.precision is not None and self.precision < 1:
            raise ValueError("precision must be >= 1")
        if self.max_exponent < 1 or self.max_oracle_n < 1:
            raise ValueError("budgets must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _range(text: str) -> range:
    """``a..b`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a..b range, got {text!r}")


def _env_prec() -> int | None:
    raw = os.environ.get(PREC_ENV)
    if not raw:
        return None
    try:
        v = int(raw)
    except ValueError:
        raise SystemExit(f"{PREC_ENV} must be an integer, got {raw!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--out", metavar="FILE", help="also write the JSON report to FILE")
    common.add_argument("--seed", type=int, default=0, help="random seed for property checks")
    common.add_argument("--max-oracle-n", type=int, default=durfee.MAX_ORACLE_N)

    p = _Parser(prog="oddrank", description="Exact q-series checks for odd-rank congruences mod powers of 5.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("expand", parents=[common], help="q-expansion of an expression")
    s.add_argument("--expr", required=True)
    s.add_argument("--prec", type=int)

    s = sub.add_parser("verify", parents=[common], help="verify catalog identities")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", action="store_true")
    g.add_argument("--id", action="append", metavar="NAME")
    g.add_argument("--list", action="store_true", help="list catalog names")
    s.add_argument("--prec", type=int)
    s.add_argument("--jobs", type=int, default=1)

    s = sub.add_parser("congruence", parents=[common], help="check the main congruence family")
    s.add_argument("--alpha", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--via", choices=("oracle", "e"), default="e")

    s = sub.add_parser("oracle", parents=[common], help="odd Durfee symbol counts")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--modulus", type=int)

    s = sub.add_parser("arrays", parents=[common], help="discrete arrays and 5-adic valuations")
    s.add_argument("--family", required=True, choices=sorted(LEPI_GAMMA) + ["c", "d"])
    s.add_argument("--k", type=_range, default=_range("-4..0"))
    s.add_argument("--n", type=_range, default=_range("0..12"))
    s.add_argument("--alpha", type=int, default=4)
    s.add_argument("--valuations", action="store_true")

    s = sub.add_parser("cusps", parents=[common], help="orders of an eta-quotient at the cusps of Gamma_0(N)")
    s.add_argument("--eta", required=True)
    s.add_argument("--level", type=int, required=True)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    s.add_argument("--only", type=int, action="append", metavar="N")
    return p


# --- helpers --------------------------------------------------------------


def format_series(s: QSeries, per_line: int = 10) -> str:
    """``c*q^e`` terms, ``per_line`` to a line, then a precision footer."""
    terms = [f"{c}*q^{e}" for e, c in s.items() if c]
    lines = [", ".join(terms[i:i + per_line]) for i in range(0, len(terms), per_line)] or ["0"]
    lines.append(f"+ O(q^{s.precision})")
    return "\n".join(lines)


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    return x


def _emit(cfg: RunConfig, payload: dict, human: str) -> None:
    doc = _jsonable({"schema": SCHEMA, "command": cfg.command, **payload})
    text = json.dumps(doc, indent=2)
    print(text if cfg.json else human)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")


def parse_eta_quotient(text: str) -> EtaQuotient:
    """An expression built only from ``eta(d)`` factors, products, quotients and powers."""
    node = parse(text)
    pairs: dict[int, int] = {}

    def walk(n, k):
        if isinstance(n, Eta):
            pairs[n.d] = pairs.get(n.d, 0) + k
        elif isinstance(n, Product):
            for base, e in n.factors:
                walk(base, k * e)
        else:
            raise ParseError(f"{text!r} is not a pure eta-quotient")

    walk(node, 1)
    return EtaQuotient(pairs)


# --- commands -------------------------------------------------------------


def cmd_expand(cfg: RunConfig, args) -> int:
    prec = args.prec or cfg.precision or 20
    s = evaluate(args.expr, prec)
    payload = {"expr": args.expr, "precision": prec, "valuation": s.valuation,
               "coefficients": s.coefficients(s.valuation, prec)}
    _emit(cfg, payload, format_series(s))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    from .identities import CATALOG, verify, verify_all

    if args.list:
        names = list(CATALOG)
        _emit(cfg, {"names": names}, "\n".join(f"{n:<8} {CATALOG[n].anchor}" for n in names))
        return EXIT_OK
    prec = args.prec or cfg.precision
    if args.all:
        reports = verify_all(prec, args.jobs)
    else:
        unknown = [n for n in args.id if n not in CATALOG]
        if unknown:
            print(f"oddrank: error: unknown catalog entries {unknown}", file=sys.stderr)
            return EXIT_USAGE
        reports = [verify(n, prec) for n in args.id]
    ok = all(r.passed for r in reports)
    human = "\n".join(r.summary() for r in reports)
    human += f"\n{sum(r.passed for r in reports)}/{len(reports)} pass"
    _emit(cfg, {"pass": ok, "reports": [r.to_json() for r in reports]}, human)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_congruence(cfg: RunConfig, args) -> int:
    from .identities import check_congruence_e, check_theorem_main

    if args.via == "oracle":
        rep = check_theorem_main(args.alpha, args.count, cfg.max_oracle_n)
    else:
        rep = check_congruence_e(args.alpha, args.count)
    _emit(cfg, {"pass": rep.passed, "report": rep.to_json()},
          rep.summary() + f"  (mod {rep.details['modulus']}, {rep.details['count']} values)")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_oracle(cfg: RunConfig, args) -> int:
    if args.modulus:
        counts = {m: durfee.n0(m, args.modulus, args.n, cfg.max_oracle_n) for m in range(args.modulus)}
        human = "\n".join(f"N0({m},{args.modulus},{args.n}) = {c}" for m, c in counts.items())
        payload = {"n": args.n, "modulus": args.modulus, "counts": counts}
    else:
        hist = durfee.enumerate_ranks(args.n, cfg.max_oracle_n)
        human = "\n".join(f"rank {r:>4}: {c}" for r, c in hist.counts.items())
        human += f"\ntotal {hist.total}"
        payload = {"n": args.n, "ranks": hist.counts, "total": hist.total}
    _emit(cfg, payload, human)
    return EXIT_OK


def cmd_arrays(cfg: RunConfig, args) -> int:
    fam = args.family
    rows = []
    ok = True
    if fam in ("c", "d"):
        c, d = cd_arrays(args.alpha, max(args.n.stop - 1, 1))
        arr = c if fam == "c" else d
        for a in range(1, args.alpha + 1):
            for n in args.n:
                v = arr[a, n]
                row = {"alpha": a, "n": n, "value": v}
                if args.valuations:
                    bound = l2al_bounds(a, n)[0 if fam == "c" else 1]
                    row.update(pi=padic(v), bound=bound)
                    delta = 1 if a % 2 else 0
                    ok &= n < delta or padic(v) >= bound
                rows.append(row)
        key = "alpha"
    else:
        arr = extend(fam, args.k, max(100, args.n.stop))
        for k in args.k:
            for n in args.n:
                v = arr[k, n]
                row = {"k": k, "n": n, "value": v}
                if args.valuations:
                    bound = (5 * n - k + LEPI_GAMMA[fam]) // 3
                    row.update(pi=padic(v), bound=bound)
                    ok &= n < arr.lower_support(k) or padic(v) >= bound
                rows.append(row)
        key = "k"
    lines = []
    for r in rows:
        if r["value"] == 0 and not args.valuations:
            continue
        line = f"{fam}({r[key]},{r['n']}) = {r['value']}"
        if args.valuations:
            line += f"   pi = {r['pi']}  bound = {r['bound']}"
        lines.append(line)
    if args.valuations:
        lines.append("all bounds hold" if ok else "BOUND VIOLATED")
    _emit(cfg, {"family": fam, "pass": ok, "entries": rows}, "\n".join(lines) or "(all zero)")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cusps(cfg: RunConfig, args) -> int:
    eq = parse_eta_quotient(args.eta)
    modular, cert = check_modularity(eq, args.level)
    orders = cusp_orders(eq, args.level)
    counts = {c: cusp_count(c, args.level) for c in orders}
    total = sum(o * counts[c] for c, o in orders.items())
    lines = [f"{eq} on Gamma_0({args.level}): modular function {'yes' if modular else 'no'}"]
    for c, o in orders.items():
        lines.append(f"  cusp 1/{c} ({counts[c]} cusp{'s' if counts[c] > 1 else ''}): order {o}")
    lines.append(f"  total order {total}")
    payload = {"eta": str(eq), "level": args.level, "modular": modular,
               "certificate": cert, "orders": orders, "cusp_counts": counts, "total_order": total}
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def cmd_selftest(cfg: RunConfig, args) -> int:
    from .acceptance import run_all

    results = run_all(args.only)
    ok = all(r.passed for r in results)
    human = "\n".join(r.line() for r in results)
    human += f"\n{sum(r.passed for r in results)}/{len(results)} criteria pass"
    payload = {"pass": ok, "criteria": [
        {"number": r.number, "title": r.title, "pass": r.passed, "detail": r.detail,
         "seconds": round(r.seconds, 3)} for r in results]}
    _emit(cfg, payload, human)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "expand": cmd_expand,
    "verify": cmd_verify,
    "congruence": cmd_congruence,
    "oracle": cmd_oracle,
    "arrays": cmd_arrays,
    "cusps": cmd_cusps,
    "selftest": cmd_selftest,
}


_NEG_VALUE = re.compile(r"^-\d+(\.\.-?\d+)?$")


def _glue_negative_values(argv: list[str]) -> list[str]:
    # argparse takes "-5..10" for an option; rewrite "--k -5..10" as "--k=-5..10"
    out: list[str] = []
    for tok in argv:
        if out and out[-1] in ("--k", "--n", "--alpha", "--count") and _NEG_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = RunConfig(args.command, _env_prec(), args.json, args.out, args.seed,
                        max_oracle_n=args.max_oracle_n)
    except ValueError as exc:
        print(f"oddrank: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "prec", None) is not None and args.prec < 1:
        print("oddrank: error: --prec must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](cfg, args)
    except (BudgetError, CoverageError) as exc:
        print(f"oddrank: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, OddRankError, ValueError, KeyError) as exc:
        print(f"oddrank: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
