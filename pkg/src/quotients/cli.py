"""Command-line front end.

Exit codes: 0 for ok, 1 for a refuted outcome (a counterexample was found,
or a comparison came out false), 2 for usage, parse, or domain errors.
JSON reports have the fixed top-level fields `status`, `payload`,
`budget_used`, and `elapsed_ms`, serialized key-sorted and compact, so a
fixed invocation and config produce byte-identical output (pass
`--deterministic` to pin `elapsed_ms` to 0, e.g. for golden files).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import integers, messages, rationals
from .equiv import (
    CongruenceReport,
    EquivalenceReport,
    RespectMap,
    Verdict,
    check_equivalence,
    check_respects,
    check_respects2,
    lift1,
    respects2_via_commutativity,
)
from .errors import ParseError, QuotientError
from .messages import FreeMsg, freediscrim, freeleft, freenonces, freeright, msg_eq, normalize
from .sexpr import SAtom, SNode, parse_sexpr, parse_term, print_term

OK, REFUTED, ERROR = "ok", "refuted", "error"
_EXIT = {OK: 0, REFUTED: 1, ERROR: 2}

DEFAULT_BUDGET = 200
DEFAULT_BOUND = 5
CONFIG_ENV = "QUOTIENTS_CONFIG"


def _load_config() -> dict:
    """Defaults from the JSON file named by $QUOTIENTS_CONFIG, if any.
    Explicit flags always win over the file."""
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise QuotientError(f"cannot read config file {path!r}: {exc}")
    if not isinstance(cfg, dict):
        raise QuotientError(f"config file {path!r} must hold a JSON object")
    return cfg


def _config_nat_list(value, what: str) -> tuple[int, ...]:
    if (not isinstance(value, list) or not value
            or not all(isinstance(v, int) and v >= 0 for v in value)):
        raise QuotientError(f"config {what} must be a non-empty list of naturals")
    return tuple(value)


def _config_positive(value, what: str) -> int:
    if not isinstance(value, int) or value < 1:
        raise QuotientError(f"config {what} must be a positive integer")
    return value


def _resolve_config(args) -> None:
    cfg = _load_config()
    if getattr(args, "budget", ...) is None:
        args.budget = _config_positive(cfg.get("budget", DEFAULT_BUDGET), "budget")
    if getattr(args, "bound", ...) is None:
        args.bound = _config_positive(cfg.get("bound", DEFAULT_BOUND), "bound")
    if getattr(args, "keys", ...) is None:
        args.keys = _config_nat_list(cfg.get("keys", list(messages.DEFAULT_KEYS)), "keys")
    if getattr(args, "nonces", ...) is None:
        args.nonces = _config_nat_list(cfg.get("nonces", list(messages.DEFAULT_NONCES)), "nonces")


def _jsonable(x):
    if isinstance(x, FreeMsg):
        return print_term(x)
    if isinstance(x, Verdict):
        return str(x)
    if isinstance(x, frozenset):
        return sorted(x)
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    return x


def _report_dict(r: CongruenceReport | EquivalenceReport, name: str) -> dict:
    out = {"name": name, "verdict": str(r.verdict), "checked": r.checked}
    if isinstance(r, CongruenceReport):
        out["counterexample"] = _jsonable(r.counterexample)
        out["note"] = r.note
    else:
        out["law"] = r.law
        out["witness"] = _jsonable(r.witness)
    return out


def _emit(args, status: str, payload, budget_used: int, started: float) -> int:
    elapsed_ms = 0 if args.deterministic else int((time.perf_counter() - started) * 1000)
    if args.json:
        doc = {
            "status": status,
            "payload": _jsonable(payload),
            "budget_used": budget_used,
            "elapsed_ms": elapsed_ms,
        }
        sys.stdout.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        _print_text(status, payload)
    return _EXIT[status]


def _print_text(status: str, payload) -> None:
    if isinstance(payload, dict) and "results" in payload:
        for item in payload["results"]:
            line = f"{item['name']}: {item['verdict']} (checked {item['checked']})"
            if item.get("counterexample") is not None:
                line += f" counterexample {_jsonable(item['counterexample'])}"
            if item.get("witness") is not None:
                line += f" witness {_jsonable(item['witness'])} law {item.get('law')}"
            if item.get("note"):
                line += f" [{item['note']}]"
            print(line)
        print(f"overall: {status}")
    elif isinstance(payload, dict):
        parts = [f"{k}={_jsonable(v)}" for k, v in sorted(payload.items())]
        print(f"{status}: " + " ".join(str(p) for p in parts))
    else:
        print(f"{status}: {_jsonable(payload)}")


def _parse_domain(text: str, what: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must be a comma-separated list of naturals")
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"{what} must be a comma-separated list of naturals")
    return values


# ---------------------------------------------------------------------------
# Expression evaluation (shared prefix syntax for the two number algebras)

def _eval_int(node: SNode):
    if isinstance(node, SAtom):
        if isinstance(node.value, int):
            return integers.from_native(node.value)
        raise ParseError(f"unknown integer atom {node.value!r}", node.offset)
    if not node.items or not isinstance(node.items[0], SAtom):
        raise ParseError("expected an operator after '('", node.open_offset)
    head = node.items[0]
    op, args = head.value, node.items[1:]

    def intarg(n: SNode) -> integers.QInt:
        value = _eval_int(n)
        if not isinstance(value, integers.QInt):
            offset = n.offset if isinstance(n, SAtom) else n.open_offset
            raise ParseError(f"{op} needs integer arguments", offset)
        return value

    def arity(k: int):
        if len(args) != k:
            raise ParseError(f"{op} takes {k} argument{'s' if k != 1 else ''}, got {len(args)}",
                             node.close_offset)

    if op == "+":
        arity(2)
        return integers.add(intarg(args[0]), intarg(args[1]))
    if op == "-":
        arity(2)
        return integers.add(intarg(args[0]), integers.neg(intarg(args[1])))
    if op == "*":
        arity(2)
        return integers.mul(intarg(args[0]), intarg(args[1]))
    if op == "neg":
        arity(1)
        return integers.neg(intarg(args[0]))
    if op == "nat":
        arity(1)
        return integers.to_nat(intarg(args[0]))
    if op == "le":
        arity(2)
        return integers.le(intarg(args[0]), intarg(args[1]))
    raise ParseError(f"unknown integer operator {op!r}", head.offset)


def _eval_rat(node: SNode):
    if isinstance(node, SAtom):
        if isinstance(node.value, int):
            return rationals.rat_from_native(node.value)
        raise ParseError(f"unknown rational atom {node.value!r}", node.offset)
    if not node.items or not isinstance(node.items[0], SAtom):
        raise ParseError("expected an operator after '('", node.open_offset)
    head = node.items[0]
    op, args = head.value, node.items[1:]

    def arity(k: int):
        if len(args) != k:
            raise ParseError(f"{op} takes {k} argument{'s' if k != 1 else ''}, got {len(args)}",
                             node.close_offset)

    if op == "+":
        arity(2)
        return rationals.rat_add(_eval_rat(args[0]), _eval_rat(args[1]))
    if op == "*":
        arity(2)
        return rationals.rat_mul(_eval_rat(args[0]), _eval_rat(args[1]))
    if op == "neg":
        arity(1)
        return rationals.rat_neg(_eval_rat(args[0]))
    if op == "inv":
        arity(1)
        return rationals.rat_inv(_eval_rat(args[0]))
    raise ParseError(f"unknown rational operator {op!r}", head.offset)


# ---------------------------------------------------------------------------
# Subcommand handlers

def _cmd_msg_nf(args, started: float) -> int:
    term = parse_term(args.term)
    nf = normalize(term)
    return _emit(args, OK, {"normal_form": print_term(nf)}, 0, started)


def _cmd_msg_eq(args, started: float) -> int:
    lhs, rhs = parse_term(args.lhs), parse_term(args.rhs)
    lnf, rnf = normalize(lhs), normalize(rhs)
    equal = lnf == rnf
    payload = {"equal": equal, "lhs_nf": print_term(lnf), "rhs_nf": print_term(rnf)}
    return _emit(args, OK if equal else REFUTED, payload, 0, started)


_MSG_FNS = {
    "nonces": (freenonces, messages.FREENONCES_MAP),
    "left": (freeleft, messages.FREELEFT_MAP),
    "right": (freeright, messages.FREERIGHT_MAP),
    "discrim": (freediscrim, messages.FREEDISCRIM_MAP),
}


def _cmd_msg_fn(args, started: float) -> int:
    fn, rmap = _MSG_FNS[args.function]
    term = parse_term(args.term)
    cert = check_respects(rmap, args.budget) if args.strict else None
    lifted = lift1(cert, rmap, strict=args.strict)
    result = lifted(messages.msg(term).cls)
    payload = {
        "function": args.function,
        "result": _jsonable(result),
        "certified": lifted.checked,
    }
    return _emit(args, OK, payload, cert.checked if cert else 0, started)


def _cmd_int_eval(args, started: float) -> int:
    value = _eval_int(parse_sexpr(args.expr))
    if isinstance(value, integers.QInt):
        payload = {"value": integers.to_native(value), "pair": list(value.pair)}
        return _emit(args, OK, payload, 0, started)
    if isinstance(value, bool):
        return _emit(args, OK if value else REFUTED, {"value": value}, 0, started)
    return _emit(args, OK, {"value": value}, 0, started)


def _cmd_rat_eval(args, started: float) -> int:
    value = _eval_rat(parse_sexpr(args.expr))
    return _emit(args, OK, {"num": value.num, "den": value.den}, 0, started)


def _plain_eq(a, b) -> bool:
    return a == b


def _run_suite(args) -> list[dict]:
    budget = args.budget
    if args.suite == "int-equivalence":
        return [_report_dict(check_equivalence(integers.intrel, budget), "intrel")]
    if args.suite == "int-congruence":
        return [
            _report_dict(check_respects(integers.NEG_MAP, budget), "neg"),
            _report_dict(check_respects(integers.NAT_MAP, budget), "nat"),
            _report_dict(check_respects2(integers.ADD_MAP, budget), "add"),
            _report_dict(check_respects2(integers.MUL_MAP, budget), "mul"),
            _report_dict(respects2_via_commutativity(integers.ADD_MAP, budget), "add/commutative"),
            _report_dict(respects2_via_commutativity(integers.MUL_MAP, budget), "mul/commutative"),
        ]
    if args.suite == "rat-congruence":
        return [
            _report_dict(check_respects(rationals.RAT_NEG_MAP, budget), "rat_neg"),
            _report_dict(check_respects2(rationals.RAT_ADD_MAP, budget), "rat_add"),
            _report_dict(check_respects2(rationals.RAT_MUL_MAP, budget), "rat_mul"),
        ]
    rel = messages.msg_relation(args.bound, args.keys, args.nonces)
    if args.suite == "msg-equivalence":
        return [_report_dict(check_equivalence(rel, budget), rel.name)]
    if args.suite == "msg-congruence":
        items = [
            ("freenonces", RespectMap(freenonces, rel, _plain_eq)),
            ("freeleft", RespectMap(freeleft, rel, msg_eq)),
            ("freeright", RespectMap(freeright, rel, msg_eq)),
            ("freediscrim", RespectMap(freediscrim, rel, _plain_eq)),
        ]
        if args.truncated_discrim:
            items.append(
                ("freediscrim_truncated",
                 RespectMap(messages.freediscrim_truncated, rel, _plain_eq))
            )
        return [_report_dict(check_respects(rmap, budget), name) for name, rmap in items]
    raise ParseError(f"unknown suite {args.suite!r}", 0)


def _cmd_check(args, started: float) -> int:
    results = _run_suite(args)
    verdicts = {item["verdict"] for item in results}
    if str(Verdict.REFUTED) in verdicts:
        status = REFUTED
    elif str(Verdict.NO_SAMPLES) in verdicts:
        status = ERROR
    else:
        status = OK
    payload = {"suite": args.suite, "results": results}
    return _emit(args, status, payload, sum(item["checked"] for item in results), started)


def _cmd_oracle_msgrel(args, started: float) -> int:
    labels = messages.closure_classes(args.bound, args.keys, args.nonces)
    sizes: dict[int, int] = {}
    for label in labels.values():
        sizes[label] = sizes.get(label, 0) + 1
    payload = {
        "bound": args.bound,
        "keys": list(args.keys),
        "nonces": list(args.nonces),
        "universe": len(labels),
        "classes": len(sizes),
        "pairs": sum(n * n for n in sizes.values()),
    }
    return _emit(args, OK, payload, 0, started)


# ---------------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--json", action="store_true", help="emit a JSON report")
    sub.add_argument("--deterministic", action="store_true",
                     help="pin elapsed_ms to 0 for byte-stable output")


def _add_domains(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--bound", type=int, default=None,
                     help=f"term-size bound for the message universe (default {DEFAULT_BOUND})")
    sub.add_argument("--keys", type=lambda s: _parse_domain(s, "--keys"),
                     default=None, help="key domain, e.g. 0,1 (the default)")
    sub.add_argument("--nonces", type=lambda s: _parse_domain(s, "--nonces"),
                     default=None, help="nonce domain, e.g. 0,1 (the default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quotients",
        description="Quotient constructions: normalize terms, evaluate quotient "
                    "arithmetic, and run bounded equivalence/congruence checks.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("msg-nf", help="normalize a message term")
    p.add_argument("term")
    _add_common(p)
    p.set_defaults(handler=_cmd_msg_nf)

    p = subs.add_parser("msg-eq", help="decide equality of two message terms")
    p.add_argument("lhs")
    p.add_argument("rhs")
    _add_common(p)
    p.set_defaults(handler=_cmd_msg_eq)

    p = subs.add_parser("msg-fn", help="apply a lifted message function")
    p.add_argument("function", choices=sorted(_MSG_FNS))
    p.add_argument("term")
    p.add_argument("--budget", type=int, default=None,
                   help=f"congruence-check budget (default {DEFAULT_BUDGET})")
    p.add_argument("--strict", dest="strict", action="store_true", default=True,
                   help="require a certified congruence check before lifting (default)")
    p.add_argument("--unchecked", dest="strict", action="store_false",
                   help="lift without a certificate; the report flags it")
    _add_common(p)
    p.set_defaults(handler=_cmd_msg_fn)

    p = subs.add_parser("int-eval", help="evaluate a prefix integer expression")
    p.add_argument("expr")
    _add_common(p)
    p.set_defaults(handler=_cmd_int_eval)

    p = subs.add_parser("rat-eval", help="evaluate a prefix rational expression")
    p.add_argument("expr")
    _add_common(p)
    p.set_defaults(handler=_cmd_rat_eval)

    p = subs.add_parser("check", help="run a bounded equivalence/congruence suite")
    p.add_argument("suite", choices=[
        "int-equivalence", "int-congruence", "rat-congruence",
        "msg-equivalence", "msg-congruence",
    ])
    p.add_argument("--budget", type=int, default=None,
                   help=f"check budget (default {DEFAULT_BUDGET})")
    p.add_argument("--truncated-discrim", action="store_true",
                   help="include the truncated discriminator negative test "
                        "in msg-congruence")
    _add_domains(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_check)

    p = subs.add_parser("oracle-msgrel", help="summarize the rule-closure oracle")
    _add_domains(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_oracle_msgrel)

    return parser


def main(argv: list[str] | None = None) -> int:
    started = time.perf_counter()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _resolve_config(args)
        return args.handler(args, started)
    except (ParseError, QuotientError) as exc:
        payload = {"error": str(exc)}
        if isinstance(exc, ParseError):
            payload["offset"] = exc.offset
        return _emit(args, ERROR, payload, 0, started)


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
