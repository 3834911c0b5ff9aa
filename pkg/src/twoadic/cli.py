"""Command-line interface.

Every invocation prints exactly one output record on stdout, either as an
aligned key/value table or, with ``--json``, as a single JSON object.

Exit codes: 0 ok, 2 bad input, 3 oracle budget exceeded, 4 precision
ceiling reached, 5 mathematical discrepancy.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from typing import Any

from . import config, moser, powersum, verify
from .powersum import OracleBudgetExceeded, PrecisionCeilingExceeded
from .valuation import v2

log = logging.getLogger("twoadic")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_PRECISION = 4
EXIT_DISCREPANCY = 5

AUTO_ORACLE_LIMIT = 4096


class Discrepancy(Exception):
    def __init__(self, detail: str, result: Any = None):
        super().__init__(detail)
        self.result = result


def parse_nat(text: str, name: str, minimum: int = 0) -> int:
    if not re.fullmatch(r"[0-9]+", text.strip()):
        raise ValueError(f"{name}: expected a nonnegative decimal integer, got {text!r}")
    value = int(text.strip())
    if value < minimum:
        raise ValueError(f"{name}: must be >= {minimum}, got {value}")
    return value


def _record(command: str, inputs: dict, result=None, status="ok", error_detail=None) -> dict:
    return {
        "command": command,
        "inputs": {k: str(v) for k, v in inputs.items()},
        "result": result,
        "status": status,
        "error_detail": error_detail,
    }


# ---------------------------------------------------------------- commands


def cmd_v2(args) -> Any:
    return v2(parse_nat(args.k, "k")).to_json()


def cmd_sum(args) -> Any:
    m = parse_nat(args.m, "m", 1)
    n = parse_nat(args.n, "n", 1)
    method = args.method
    if method == "auto":
        limit = min(AUTO_ORACLE_LIMIT, config.oracle_budget(args.oracle_budget))
        method = "oracle" if m <= limit else "doubling"
    if method == "oracle":
        value = powersum.oracle_sum(m, n, args.oracle_budget)
    else:
        value = powersum.doubling_sum(m, n)
    return {"value": str(value), "method_used": method}


def _v2_by(method: str, m: int, n: int, args):
    if method == "formula":
        return powersum.v2_closed_form(m, n)
    if method == "modular":
        return powersum.v2_modular(m, n, args.max_precision_bits)
    if method == "oracle":
        return v2(powersum.oracle_sum(m, n, args.oracle_budget))
    if method == "doubling":
        return v2(powersum.doubling_sum(m, n))
    raise ValueError(f"unknown method {method!r}")


def cmd_v2sum(args) -> Any:
    m = parse_nat(args.m, "m", 1)
    n = parse_nat(args.n, "n", 1)
    if args.method != "all":
        return _v2_by(args.method, m, n, args).to_json()

    methods = ["formula", "modular", "doubling"]
    skipped = []
    if m <= config.oracle_budget(args.oracle_budget):
        methods.append("oracle")
    else:
        skipped.append("oracle")
    values = {name: _v2_by(name, m, n, args) for name in methods}
    agree = len(set(values.values())) == 1
    result = {
        "valuation": values["formula"].to_json() if agree else None,
        "methods": {name: val.to_json() for name, val in values.items()},
        "skipped": skipped,
        "agree": agree,
    }
    if not agree:
        detail = ", ".join(f"{k}={v}" for k, v in values.items())
        raise Discrepancy(f"methods disagree at m={m}, n={n}: {detail}", result)
    return result


def cmd_sweep_verify(args) -> Any:
    m_max = parse_nat(args.m_max, "m_max", 1)
    n_max = parse_nat(args.n_max, "n_max", 1)
    res = verify.sweep_verify(m_max, n_max, jobs=args.jobs, budget=args.oracle_budget)
    out = res.to_json()
    if res.discrepancies:
        f = res.first
        raise Discrepancy(
            f"discrepancy at m={f.m}, n={f.n} ({f.method}): expected {f.expected}, got {f.got}",
            out,
        )
    return out


def cmd_moser_check(args) -> Any:
    c = moser.MoserCandidate(
        parse_nat(args.m, "m", 2), parse_nat(args.n, "n", 1), parse_nat(args.a, "a", 1)
    )
    return moser.check_candidate(c, args.oracle_budget)


def cmd_moser_search(args) -> Any:
    found = moser.search(
        parse_nat(args.m_max, "m_max", 2),
        parse_nat(args.n_max, "n_max", 1),
        budget=args.oracle_budget,
        verify_prunes=args.verify_prunes,
        jobs=args.jobs,
    )
    return {
        "candidates": [c.to_json() for c in found],
        "count": len(found),
        "all_m_odd": all(c.m % 2 == 1 for c in found),
    }


def cmd_moser_obstruction(args) -> Any:
    m = parse_nat(args.m, "m", 2)
    n = parse_nat(args.n, "n", 2)
    return moser.parity_obstruction(m, n).to_json()


# ------------------------------------------------------------------ output


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        if not value:
            rows.append((prefix, "{}"))
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, rows)
    elif isinstance(value, list):
        if not value:
            rows.append((prefix, "[]"))
        for i, v in enumerate(value):
            if isinstance(v, dict) and all(not isinstance(x, (dict, list)) for x in v.values()):
                rows.append((f"{prefix}[{i}]", " ".join(f"{k}={x}" for k, x in v.items())))
            else:
                _flatten(f"{prefix}[{i}]", v, rows)
    elif value is None:
        rows.append((prefix, "-"))
    elif isinstance(value, bool):
        rows.append((prefix, "true" if value else "false"))
    else:
        rows.append((prefix, str(value)))


def render_table(record: dict) -> str:
    rows = [("command", record["command"])]
    for k, v in record["inputs"].items():
        rows.append((f"input.{k}", v))
    _flatten("result", record["result"], rows)
    rows.append(("status", record["status"]))
    if record["error_detail"]:
        rows.append(("error", record["error_detail"]))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def emit(record: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(record, sort_keys=False))
    else:
        print(render_table(record))


# ------------------------------------------------------------------ parser


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False),
                        help="emit a JSON record instead of a table")
    parser.add_argument("--jobs", type=_positive, default=d(1), metavar="N",
                        help="worker processes for sweeps and searches")
    parser.add_argument("--oracle-budget", type=_positive, default=d(None), metavar="TERMS",
                        help=f"direct-summation term limit (env {config.ORACLE_BUDGET_ENV})")
    parser.add_argument("--max-precision-bits", type=_positive, default=d(None), metavar="BITS",
                        help=f"modular precision ceiling (env {config.MAX_PRECISION_BITS_ENV})")
    parser.add_argument("-v", "--verbose", action="store_true", default=d(False),
                        help="debug logging on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twoadic", description="2-adic valuations of power sums 1^n + ... + m^n."
    )
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("v2", parents=[common], help="2-adic valuation of an integer")
    p.add_argument("k")
    p.set_defaults(func=cmd_v2, inputs=("k",))

    p = sub.add_parser("sum", parents=[common], help="exact power sum S_n(m)")
    p.add_argument("m")
    p.add_argument("n")
    p.add_argument("--method", choices=["oracle", "doubling", "auto"], default="auto")
    p.set_defaults(func=cmd_sum, inputs=("m", "n", "method"))

    p = sub.add_parser("v2sum", parents=[common], help="2-adic valuation of S_n(m)")
    p.add_argument("m")
    p.add_argument("n")
    p.add_argument("--method", choices=["formula", "modular", "oracle", "doubling", "all"],
                   default="formula")
    p.set_defaults(func=cmd_v2sum, inputs=("m", "n", "method"))

    p = sub.add_parser("sweep-verify", parents=[common],
                       help="cross-check all valuation routes on a grid")
    p.add_argument("m_max")
    p.add_argument("n_max")
    p.set_defaults(func=cmd_sweep_verify, inputs=("m_max", "n_max"))

    p = sub.add_parser("moser", parents=[common],
                       help="generalized Erdos-Moser equation tools")
    msub = p.add_subparsers(dest="moser_command", required=True)
    q = msub.add_parser("check", parents=[common], help="test 1^n+...+(m-1)^n == a*m^n")
    q.add_argument("m")
    q.add_argument("n")
    q.add_argument("a")
    q.set_defaults(func=cmd_moser_check, inputs=("m", "n", "a"), name="moser check")
    q = msub.add_parser("search", parents=[common], help="bounded search for solutions")
    q.add_argument("m_max")
    q.add_argument("n_max")
    q.add_argument("--verify-prunes", action="store_true",
                   help="exactly re-check every pair discarded by the parity obstruction")
    q.set_defaults(func=cmd_moser_search, inputs=("m_max", "n_max"), name="moser search")
    q = msub.add_parser("obstruction", parents=[common], help="parity obstruction for even m")
    q.add_argument("m")
    q.add_argument("n")
    q.set_defaults(func=cmd_moser_obstruction, inputs=("m", "n"), name="moser obstruction")
    return parser


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    command = getattr(args, "name", args.command)
    inputs = {k: getattr(args, k) for k in args.inputs}

    code = EXIT_OK
    try:
        record = _record(command, inputs, args.func(args))
    except Discrepancy as exc:
        code = EXIT_DISCREPANCY
        record = _record(command, inputs, exc.result, "error", str(exc))
    except moser.FalsePrune as exc:
        code = EXIT_DISCREPANCY
        record = _record(command, inputs, None, "error", str(exc))
    except OracleBudgetExceeded as exc:
        code = EXIT_BUDGET
        record = _record(command, inputs, None, "error", str(exc))
    except PrecisionCeilingExceeded as exc:
        code = EXIT_PRECISION
        record = _record(command, inputs, None, "error", str(exc))
    except ValueError as exc:
        code = EXIT_PARSE
        record = _record(command, inputs, None, "error", str(exc))
    if code:
        log.error("%s", record["error_detail"])
    emit(record, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
