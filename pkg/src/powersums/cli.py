"""Command-line front end: ``psum <command> ...``.

Output is JSON with ``--json`` (sorted keys, integers as decimal strings)
or aligned ``key: value`` text. Exit status: 0 success, 1 domain error,
2 usage error. Budgets fall back to ``PSUM_*`` environment variables and
then to library defaults.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .arith import FactorizationIncomplete, parse_natural, ratio_to_json
from .congruence import (
    SEARCH_BUDGET,
    closed_prime_fixpoint,
    closed_squarefree_fixpoint,
    pseudoperfect_report,
    search_pseudoperfect,
    special_set,
)
from .density import (
    DEFAULT_PRIME_COUNT,
    DEFAULT_TAIL_CUTOFF,
    IE_NODE_BUDGET,
    DensityInfeasible,
    EmptySolutionSet,
    InclusionExclusionBudget,
    complement_moduli,
    density_bounds,
    empirical_density,
    primitive_reduce,
    render_decimal,
    theoretical_lower_bound,
)
from .nq import (
    ENUMERATION_BUDGET,
    ORACLE_BUDGET,
    NotWeakPseudoperfect,
    compute_nQ,
    enumerate_NQ,
    membership_fast,
    membership_oracle,
    nq_profile,
)
from .powersum import (
    NAIVE_K_BUDGET,
    OracleScaleExceeded,
    power_sum_fast_mod,
    power_sum_naive_mod,
)

log = logging.getLogger("powersums")

ENV_PREFIX = "PSUM_"
DEFAULTS = {
    "oracle_k_budget": NAIVE_K_BUDGET,
    "oracle_qn_budget": ORACLE_BUDGET,
    "sieve_limit": ENUMERATION_BUDGET,
    "search_budget": SEARCH_BUDGET,
    "ie_node_budget": IE_NODE_BUDGET,
    "prime_count": DEFAULT_PRIME_COUNT,
    "tail_cutoff": DEFAULT_TAIL_CUTOFF,
}

DOMAIN_ERRORS = (
    ValueError,
    ArithmeticError,
    EmptySolutionSet,
    NotWeakPseudoperfect,
    DensityInfeasible,
    InclusionExclusionBudget,
    OracleScaleExceeded,
    FactorizationIncomplete,
)


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    command: str
    parameters: dict
    result: object
    timing_ms: int = 0
    provenance: dict = field(default_factory=dict)

    def to_json(self, with_timing: bool = False) -> str:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "result": self.result,
            "provenance": self.provenance,
        }
        if with_timing:
            payload["timing_ms"] = self.timing_ms
        return json.dumps(_canonical(payload), sort_keys=True, indent=2)


def _canonical(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return ratio_to_json(obj)
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, dict):
        return {str(k): _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_canonical(v) for v in items]
    return str(obj)


def _config(args, name: str) -> int:
    value = getattr(args, name, None)
    if value is not None:
        return value
    env = os.environ.get(ENV_PREFIX + name.upper())
    if env is not None:
        try:
            return parse_natural(env)
        except ValueError:
            raise UsageError(f"environment variable {ENV_PREFIX + name.upper()}={env!r} is not a natural number")
    return DEFAULTS[name]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage().rstrip()}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--timing", action="store_true", help="include timing_ms in JSON output")
    nat = parse_natural

    parser = _Parser(prog="psum", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("powersum", parents=[common], help="S_m(k) mod modulus")
    p.add_argument("--m", type=nat, required=True)
    p.add_argument("--k", type=nat, required=True)
    p.add_argument("--mod", type=nat, required=True)
    p.add_argument("--method", choices=["fast", "naive"], default="fast")
    p.add_argument("--oracle-k-budget", type=nat, dest="oracle_k_budget")

    pp = sub.add_parser("pseudoperfect", parents=[common], help="pseudoperfect numbers")
    pps = pp.add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = pps.add_parser("check", parents=[common])
    c.add_argument("--n", type=nat, required=True)
    s = pps.add_parser("search", parents=[common])
    s.add_argument("--limit", type=nat, required=True)
    s.add_argument("--weak", action="store_true")
    s.add_argument("--search-budget", type=nat, dest="search_budget")

    cl = sub.add_parser("closure", parents=[common], help="closure fixpoints")
    cls = cl.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("primes", "squarefree"):
        x = cls.add_parser(name, parents=[common])
        x.add_argument("--limit", type=nat, required=True)

    ss = sub.add_parser("special-set", parents=[common], help="m <= limit with S_m(m) ≡ 1 (mod m)")
    ss.add_argument("--limit", type=nat, required=True)

    nq = sub.add_parser("nq", parents=[common], help="the sets N_Q")
    nqs = nq.add_subparsers(dest="action", required=True, parser_class=_Parser)
    m = nqs.add_parser("member", parents=[common])
    m.add_argument("--q", type=nat, required=True)
    m.add_argument("--n", type=nat, required=True)
    m.add_argument("--oracle", action="store_true", help="also evaluate the defining congruence")
    m.add_argument("--oracle-qn-budget", type=nat, dest="oracle_qn_budget")
    pr = nqs.add_parser("profile", parents=[common])
    pr.add_argument("--q", type=nat, required=True)
    en = nqs.add_parser("enumerate", parents=[common])
    en.add_argument("--q", type=nat, required=True)
    en.add_argument("--limit", type=nat, required=True)
    en.add_argument("--sieve-limit", type=nat, dest="sieve_limit")

    de = sub.add_parser("density", parents=[common], help="density of N_Q")
    des = de.add_subparsers(dest="action", required=True, parser_class=_Parser)
    b = des.add_parser("bounds", parents=[common])
    b.add_argument("--q", type=nat, required=True)
    b.add_argument("--primes", type=nat, dest="prime_count")
    b.add_argument("--tail-cutoff", type=nat, dest="tail_cutoff")
    b.add_argument("--tail-method", choices=["per-divisor", "per-prime"], default="per-divisor")
    b.add_argument("--ie-node-budget", type=nat, dest="ie_node_budget")
    e = des.add_parser("empirical", parents=[common])
    e.add_argument("--q", type=nat, required=True)
    e.add_argument("--limit", type=nat, required=True)
    e.add_argument("--sieve-limit", type=nat, dest="sieve_limit")
    mo = des.add_parser("moduli", parents=[common])
    mo.add_argument("--q", type=nat, required=True)
    mo.add_argument("--primes", type=nat, dest="prime_count")
    mo.add_argument("--raw", action="store_true", help="skip primitive reduction")
    tl = des.add_parser("theoretical-lower", parents=[common])
    tl.add_argument("--q", type=nat, required=True)
    tl.add_argument("--y", type=nat, help="default: max(286, q*nQ)")

    st = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    st.add_argument("--only", type=nat, action="append", help="criterion number (repeatable)")
    return parser


def _run(args) -> tuple[object, dict, dict]:
    """Return (result payload, parameters, defaults used)."""
    cmd = args.command
    action = getattr(args, "action", None)
    used: dict = {}

    def cfg(name):
        used[name] = _config(args, name)
        return used[name]

    if cmd == "powersum":
        params = {"m": args.m, "k": args.k, "mod": args.mod, "method": args.method}
        if args.method == "naive":
            value = power_sum_naive_mod(args.m, args.k, args.mod, budget=cfg("oracle_k_budget"))
        else:
            if args.k != args.mod:
                raise ValueError("the fast path evaluates S_m(k) mod k only; pass --mod equal to --k")
            value = power_sum_fast_mod(args.m, args.k)
        return value, params, used

    if cmd == "pseudoperfect":
        if action == "check":
            r = pseudoperfect_report(args.n)
            return (
                {"n": r.n, "is_primary": r.is_primary, "is_weak": r.is_weak, "witness_sum": r.witness_sum},
                {"n": args.n},
                used,
            )
        hits = search_pseudoperfect(args.limit, weak=args.weak, budget=cfg("search_budget"))
        return hits, {"limit": args.limit, "weak": args.weak}, used

    if cmd == "closure":
        fn = closed_prime_fixpoint if action == "primes" else closed_squarefree_fixpoint
        return sorted(fn(args.limit)), {"limit": args.limit}, used

    if cmd == "special-set":
        return special_set(args.limit), {"limit": args.limit}, used

    if cmd == "nq":
        if action == "member":
            v = membership_fast(args.q, args.n)
            out = {
                "member": v.member,
                "failing_condition": v.failing_condition.value if v.failing_condition else None,
                "witness": v.witness,
            }
            if args.oracle:
                out["oracle"] = membership_oracle(args.q, args.n, budget=cfg("oracle_qn_budget"))
            return out, {"q": args.q, "n": args.n, "oracle": args.oracle}, used
        if action == "profile":
            pr = nq_profile(args.q)
            out = {"nQ": pr.nQ, "empty": pr.empty, "witness": pr.witness, "min_element": pr.min_element}
            return out, {"q": args.q}, used
        hits = enumerate_NQ(args.q, args.limit, budget=cfg("sieve_limit"))
        return hits, {"q": args.q, "limit": args.limit}, used

    if cmd == "density":
        if action == "bounds":
            b = density_bounds(
                args.q,
                cfg("prime_count"),
                cfg("tail_cutoff"),
                node_budget=cfg("ie_node_budget"),
                tail_method=args.tail_method,
            )
            return b.to_json(), {"q": args.q, "tail_method": args.tail_method}, used
        if action == "empirical":
            nq_budget = cfg("sieve_limit")
            if args.limit > nq_budget:
                raise ValueError(f"limit {args.limit} exceeds the sieve budget {nq_budget}")
            value = empirical_density(args.q, args.limit)
            out = {"density": ratio_to_json(value), "decimal": render_decimal(value, "down", 10)}
            return out, {"q": args.q, "limit": args.limit}, used
        if action == "moduli":
            fam = complement_moduli(args.q, cfg("prime_count"))
            if not args.raw:
                fam = primitive_reduce(fam)
            prov = {str(t): [list(x) for x in fam.provenance[t]] for t in fam.moduli}
            return {"moduli": list(fam.moduli), "provenance": prov}, {"q": args.q, "raw": args.raw}, used
        nq = compute_nQ(args.q)
        y = args.y if args.y is not None else max(286, args.q * nq)
        value = theoretical_lower_bound(args.q, y)
        out = {
            "lower": ratio_to_json(value),
            "lower_decimal": render_decimal(value, "down"),
            "upper_trivial": ratio_to_json(Fraction(1, nq)),
            "upper_trivial_decimal": render_decimal(Fraction(1, nq), "up"),
        }
        return out, {"q": args.q, "y": y}, used

    if cmd == "selftest":
        from .acceptance import run

        results = []
        for r in run(set(args.only) if args.only else None):
            print(r.line(), file=sys.stderr, flush=True)
            results.append({"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail})
        return results, {"only": sorted(args.only) if args.only else None}, used

    raise UsageError(f"unknown command {cmd}")


def dispatch(argv) -> tuple[CommandResult | None, int]:
    """Parse ``argv`` and run it. Returns ``(result, exit_code)``; on error
    the result is ``None`` and the message goes to stderr."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as exc:
        print(f"psum: usage error: {exc}", file=sys.stderr)
        return None, 2
    except SystemExit as exc:  # --help / --version
        return None, int(exc.code or 0)

    start = time.perf_counter()
    try:
        payload, params, used = _run(args)
    except UsageError as exc:
        print(f"psum: usage error: {exc}", file=sys.stderr)
        return None, 2
    except DOMAIN_ERRORS as exc:
        print(f"psum: error: {exc}", file=sys.stderr)
        return None, 1
    elapsed = int((time.perf_counter() - start) * 1000)
    command = " ".join(x for x in (args.command, getattr(args, "action", None)) if x)
    result = CommandResult(
        command=command,
        parameters=params,
        result=payload,
        timing_ms=elapsed,
        provenance={"version": __version__, "config": used},
    )
    code = 0
    if args.command == "selftest" and not all(r["passed"] for r in payload):
        code = 1
    return result, code


def _text(result: CommandResult) -> str:
    lines = [f"command: {result.command}"]
    for k, v in sorted(result.parameters.items()):
        lines.append(f"  {k}: {_plain(v)}")
    payload = result.result
    if isinstance(payload, dict):
        width = max((len(k) for k in payload), default=0)
        for k in sorted(payload):
            lines.append(f"{k.ljust(width)} : {_plain(payload[k])}")
    elif isinstance(payload, list) and payload and isinstance(payload[0], dict):
        for row in payload:
            lines.append("  ".join(f"{k}={_plain(v)}" for k, v in row.items()))
    else:
        lines.append(f"result: {_plain(payload)}")
    return "\n".join(lines)


def _plain(v) -> str:
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        frac = Fraction(int(v["num"]), int(v["den"]))
        return f"{v['num']}/{v['den']} (~{float(frac):.10g})"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_plain(x) for x in v) + "]"
    return str(v)


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("PSUM_LOG_LEVEL", "WARNING"), stream=sys.stderr)
    argv = sys.argv[1:] if argv is None else argv
    result, code = dispatch(argv)
    if result is not None:
        print(result.to_json(with_timing="--timing" in argv) if "--json" in argv else _text(result))
        print(f"psum: {result.command} took {result.timing_ms} ms", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
