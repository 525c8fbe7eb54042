"""Command-line front door.

Every subcommand is deterministic in its inputs and prints either the text
rendering or JSON (--format).  Exit codes: 0 success, 1 domain errors,
2 usage errors (including malformed partitions and JSON).
"""

from __future__ import annotations

import argparse
import json
import sys

from .engine import check_conditions, limit_simples, system_from_json
from .errors import DomainError, ParseError
from .glpoly import (GlInftyObject, character, character_infty, gamma_n, gl_system, restrict,
                     ss_object_from_json, ss_object_to_json)
from .partitions import Partition
from .schur import kostka, schur_product
from .symfunc import CompatibleSequence, SymFunc, lift
from .symring import SCHUR, TruncatedSymElem, render_terms


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc}") from exc


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2))


def _cmd_lr(args) -> int:
    mu = Partition.from_text(args.mu)
    nu = Partition.from_text(args.nu)
    product = schur_product(mu, nu)
    result = SymFunc(SCHUR, dict(product.terms))
    if args.format == "json":
        _emit(result.to_json())
    else:
        print(result)
    return 0


def _cmd_kostka(args) -> int:
    lam = Partition.from_text(args.lam)
    mu = Partition.from_text(args.mu)
    print(kostka(lam, mu))
    return 0


def _parse_element(data):
    """Element JSON with an "n" field is a truncated element, without it a SymFunc."""
    if isinstance(data, dict) and "n" in data:
        return TruncatedSymElem.from_json(data)
    return SymFunc.from_json(data)


def _cmd_truncate(args) -> int:
    elem = _parse_element(_load_json(args.element))
    if isinstance(elem, SymFunc):
        result = elem.truncate_to(args.n)
    else:
        if args.n > elem.n:
            raise DomainError(f"cannot truncate from {elem.n} variables up to {args.n}")
        result = elem
        while result.n > args.n:
            result = result.truncate()
    if args.format == "json":
        _emit(result.to_json())
    else:
        print(result)
    return 0


def _cmd_lift(args) -> int:
    data = _load_json(args.provider)
    if not isinstance(data, dict) or not isinstance(data.get("prefix"), list):
        raise ParseError('provider file must be an object with a "prefix" list')
    prefix = [TruncatedSymElem.from_json(entry) for entry in data["prefix"]]
    if len(prefix) < args.bound + 2:
        raise DomainError(f"prefix holds {len(prefix)} elements, need {args.bound + 2}")
    result = lift(CompatibleSequence(lambda n: prefix[n], args.bound))
    if args.format == "json":
        _emit(result.to_json())
    else:
        print(result)
    return 0


def _cmd_limit_simples(args) -> int:
    if args.system != "gl":
        raise DomainError(f"unknown built-in system {args.system!r}")
    system = gl_system(args.horizon)
    simples = limit_simples(system, args.level, args.horizon)
    labels = []
    for simple in simples:
        (label,) = simple.anchor.mult
        labels.append(list(label.ident))
    if args.format == "json":
        _emit({"system": args.system, "level": args.level, "horizon": args.horizon,
               "anchor_index": system.witness(args.level), "labels": labels})
    else:
        for parts in labels:
            print(",".join(str(x) for x in parts) if parts else "0")
    return 0


def _cmd_check_system(args) -> int:
    system = system_from_json(_load_json(args.system))
    report = check_conditions(system, args.kmax, args.horizon)
    if args.format == "json":
        _emit(report)
    else:
        print(f"system {report['system']}: k_max={report['k_max']} horizon={report['horizon']}")
        for level in report["levels"]:
            bits = [
                f"k={level['k']}",
                f"condition1={'ok' if level['condition1_ok'] else 'FAIL'}",
                f"condition2={'ok N=' + str(level['n_injective']) if level['condition2_ok'] else 'FAIL'}",
                f"witness={'ok' if level['witness_bijective_ok'] else 'FAIL'}"
                f" (declared {level['declared_witness']})",
            ]
            print("  " + " ".join(bits))
    return 0


def _cmd_character(args) -> int:
    data = _load_json(args.object)
    if isinstance(data, dict) and "n" in data:
        result = character(ss_object_from_json(data))
    else:
        result = character_infty(GlInftyObject.from_json(data))
    if args.format == "json":
        _emit(result.to_json())
    else:
        print(result)
    return 0


def _cmd_verify_square(args) -> int:
    data = _load_json(args.object)
    if isinstance(data, dict) and "n" in data:
        obj = ss_object_from_json(data)
        if args.n is not None and args.n != obj.index:
            raise DomainError(f"object lives at n={obj.index}, not n={args.n}")
        if obj.index == 0:
            raise DomainError("no smaller floor to restrict to")
        ok = character(restrict(obj)) == character(obj).truncate()
    else:
        if args.n is None:
            raise ParseError("--n is required for an infinite-floor object")
        if args.n == 0:
            raise DomainError("need n >= 1 to form the square")
        m_obj = GlInftyObject.from_json(data)
        ok = (restrict(gamma_n(m_obj, args.n)) == gamma_n(m_obj, args.n - 1)
              and character(gamma_n(m_obj, args.n)).truncate()
              == character(gamma_n(m_obj, args.n - 1)))
    if args.format == "json":
        _emit({"pass": ok})
    else:
        print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _add_format(parser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="output rendering (default: text)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symlim",
        description="Exact symmetric-function and category-tower computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lr", help="Schur product of two partitions")
    p.add_argument("mu")
    p.add_argument("nu")
    _add_format(p)
    p.set_defaults(handler=_cmd_lr)

    p = sub.add_parser("kostka", help="Kostka number for a shape and a content")
    p.add_argument("lam")
    p.add_argument("mu")
    _add_format(p)
    p.set_defaults(handler=_cmd_kostka)

    p = sub.add_parser("truncate", help="truncate an element down to n variables")
    p.add_argument("element", help="element JSON file")
    p.add_argument("--n", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_truncate)

    p = sub.add_parser("lift", help="reconstruct a symmetric function from a prefix table")
    p.add_argument("--bound", type=int, required=True, help="declared degree bound")
    p.add_argument("--provider", required=True, help="JSON file with a prefix table")
    _add_format(p)
    p.set_defaults(handler=_cmd_lift)

    p = sub.add_parser("limit-simples", help="simple limit objects at a level")
    p.add_argument("--system", default="gl")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--horizon", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_limit_simples)

    p = sub.add_parser("check-system", help="coincidence-condition report for a system")
    p.add_argument("system", help="system presentation JSON file")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--horizon", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_check_system)

    p = sub.add_parser("character", help="Grothendieck class of an object")
    p.add_argument("object", help="object JSON file")
    _add_format(p)
    p.set_defaults(handler=_cmd_character)

    p = sub.add_parser("verify-square", help="check restriction/character compatibility")
    p.add_argument("object", help="object JSON file")
    p.add_argument("--n", type=int)
    _add_format(p)
    p.set_defaults(handler=_cmd_verify_square)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
