"""Command-line front end.

Exit codes are a stable contract: 0 success (or identity proved equal),
1 axiom violations or a refuted identity, 2 malformed input of any kind,
3 search or sweep out of budget, 4 the odd-characteristic guard.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys

from .expressions import ParseError, parse, parse_identity, variables
from .groups import MAX_CARRIER
from .files import check_structure, dump_structure, parse_structure, realize_structure
from .freealg import FREE_HEAP, FREE_TRUSS, normalize, prove_identity
from .groups import AbelianGroup
from .lie import (
    affebra_to_ternary,
    bracket_from_truss,
    derivations_lie_truss,
    retract_lie_ring,
    strengthen_bracket,
    ternary_to_affebra,
    validate_lie_affebra,
    validate_lie_ring,
    validate_lie_truss,
    validate_strong_jacobi,
)
from .reports import (
    BudgetError,
    CharacteristicTwoError,
    StructureError,
    ValidationFailure,
)
from .search import (
    SearchSpec,
    canonical_form,
    enumerate_lie_brackets,
    enumerate_rings,
    enumerate_trusses,
    reference_comparison,
)
from .truss import enumerate_derivations

OK, VIOLATIONS, MALFORMED, BUDGET, GUARD = 0, 1, 2, 3, 4


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _read_structure(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise StructureError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise StructureError(f"{path} is not valid JSON: {exc}") from exc
    return parse_structure(raw)


def _parse_group_spec(text: str) -> AbelianGroup:
    parts = text.replace(" ", "").split("x")
    orders = []
    for part in parts:
        match = re.fullmatch(r"[Zz](\d+)", part)
        if not match:
            raise StructureError(f"group spec {text!r} is not like 'Z2' or 'Z2xZ2'")
        orders.append(int(match.group(1)))
    if math.prod(orders) > MAX_CARRIER:
        raise BudgetError(f"group of order {math.prod(orders)} is out of search budget")
    return AbelianGroup.direct_product(orders)


def cmd_check(args) -> int:
    sf = _read_structure(args.file)
    report = check_structure(sf, strong=args.strong, collect_all=args.all)
    _emit(report.to_json())
    return OK if report.ok else VIOLATIONS


def _run_enumeration(args, up_to_iso: bool) -> int:
    group = _parse_group_spec(args.group)
    spec = SearchSpec(group=group, kind=args.kind, up_to_iso=False,
                      workers=args.jobs, allow_large=args.allow_large,
                      strategy=args.strategy)
    if args.kind == "truss":
        found = enumerate_trusses(spec)
    elif args.kind == "ring":
        found = enumerate_rings(spec)
    else:
        found = enumerate_lie_brackets(spec)
    canons = sorted({canonical_form(s) for s in found})
    summary = {"group": args.group, "kind": args.kind,
               "total": len(found), "classes": len(canons)}
    comparison = reference_comparison(group, args.kind, len(canons))
    if comparison is not None:
        summary.update(comparison)
    if up_to_iso or args.representatives:
        seen = set()
        reps = []
        for s in found:
            canon = canonical_form(s)
            if canon not in seen:
                seen.add(canon)
                reps.append(dump_structure(s))
        if args.limit is not None:
            reps = reps[: args.limit]
        summary["representatives"] = reps
    elif args.limit is not None:
        summary["structures"] = [dump_structure(s) for s in found[: args.limit]]
    _emit(summary)
    return OK


def cmd_enumerate(args) -> int:
    return _run_enumeration(args, up_to_iso=args.up_to_iso)


def cmd_classify(args) -> int:
    return _run_enumeration(args, up_to_iso=True)


def cmd_convert(args) -> int:
    sf = _read_structure(args.file)
    struct = realize_structure(sf)
    op = args.op
    needs_at = op in ("ternary-to-affebra", "retract-lie-ring", "strengthen")
    if needs_at and args.at is None:
        raise StructureError(f"--at is required for {op}")

    if op == "affebra-to-ternary":
        out = affebra_to_ternary(struct, force_char2=args.force_char2)
        if not args.force_char2:
            validate_lie_truss(out).require("conversion output failed validation")
    elif op == "ternary-to-affebra":
        out = ternary_to_affebra(struct, args.at)
        validate_lie_affebra(out).require("conversion output failed validation")
    elif op == "retract-lie-ring":
        out = retract_lie_ring(struct, args.at)
        validate_lie_ring(out).require("conversion output failed validation")
    elif op == "strengthen":
        out = strengthen_bracket(struct, args.at)
        validate_lie_truss(out).require("conversion output failed validation")
        validate_strong_jacobi(out).require("conversion output failed validation")
    elif op == "bracket-from-truss":
        out = bracket_from_truss(struct)
        validate_lie_truss(out).require("conversion output failed validation")
    elif op == "derivations":
        algebra = derivations_lie_truss(struct)
        validate_lie_truss(algebra.lie).require("conversion output failed validation")
        payload = dump_structure(algebra.lie)
        payload["derivation_maps"] = [[int(x) for x in row]
                                      for row in algebra.derivations]
        _emit(payload)
        return OK
    else:
        raise StructureError(f"unknown conversion {op!r}")
    _emit(dump_structure(out))
    return OK


def cmd_normalize(args) -> int:
    theory = args.theory
    expr = parse(args.expr)
    _check_vars(args, [expr])
    element = normalize(expr, theory)
    print(element.to_text())
    return OK


def cmd_prove(args) -> int:
    lhs, rhs = parse_identity(args.expr)
    _check_vars(args, [lhs, rhs])
    verdict = prove_identity(lhs, rhs, args.theory)
    if verdict.equal:
        print("EQUAL")
        return OK
    diff = {"*".join(k) if isinstance(k, tuple) else k: v
            for k, v in verdict.diff.items()}
    print("NOT-EQUAL " + json.dumps(diff, sort_keys=True))
    return VIOLATIONS


def _check_vars(args, exprs) -> None:
    if args.vars is None:
        return
    allowed = set(filter(None, args.vars.split(",")))
    used = set()
    for expr in exprs:
        used |= variables(expr)
    extra = used - allowed
    if extra:
        raise StructureError(f"variables {sorted(extra)} not in --vars")


def cmd_derivations(args) -> int:
    sf = _read_structure(args.file)
    truss = realize_structure(sf)
    maps = enumerate_derivations(truss)
    algebra = derivations_lie_truss(truss, maps)
    payload = dump_structure(algebra.lie)
    _emit({"count": int(maps.shape[0]),
           "maps": [[int(x) for x in row] for row in maps],
           "lie_truss": payload})
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heaptruss",
        description="Validate, convert, enumerate and prove identities for "
                    "finite heaps, trusses, affine spaces and ternary Lie brackets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a structure file")
    p.add_argument("file")
    p.add_argument("--strong", action="store_true",
                   help="also run the five-variable Jacobi sweep")
    p.add_argument("--all", action="store_true",
                   help="collect up to 100 witnesses instead of the first")
    p.set_defaults(fn=cmd_check)

    for name, fn in (("enumerate", cmd_enumerate), ("classify", cmd_classify)):
        p = sub.add_parser(name, help=f"{name} structures on a small group")
        p.add_argument("--group", required=True, help="e.g. Z2, Z4, Z2xZ2")
        p.add_argument("--kind", required=True, choices=["truss", "ring", "lie-truss"])
        p.add_argument("--up-to-iso", action="store_true")
        p.add_argument("--limit", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--allow-large", action="store_true")
        p.add_argument("--strategy", default="auto",
                       choices=["auto", "structured", "rows", "solved"])
        p.add_argument("--representatives", action="store_true")
        p.set_defaults(fn=fn)

    p = sub.add_parser("convert", help="apply a construction to a structure file")
    p.add_argument("file")
    p.add_argument("--op", required=True,
                   choices=["affebra-to-ternary", "ternary-to-affebra",
                            "retract-lie-ring", "strengthen",
                            "bracket-from-truss", "derivations"])
    p.add_argument("--at", type=int, default=None, help="basepoint / origin")
    p.add_argument("--force-char2", action="store_true")
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("normalize", help="normal form in a free theory")
    p.add_argument("expr")
    p.add_argument("--theory", default=FREE_HEAP, choices=[FREE_HEAP, FREE_TRUSS])
    p.add_argument("--vars", default=None)
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("prove", help="decide 'LHS == RHS' in a free theory")
    p.add_argument("expr")
    p.add_argument("--theory", default=FREE_TRUSS, choices=[FREE_HEAP, FREE_TRUSS])
    p.add_argument("--vars", default=None)
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("derivations", help="enumerate the derivations of a truss")
    p.add_argument("file")
    p.set_defaults(fn=cmd_derivations)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CharacteristicTwoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return GUARD
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET
    except ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(exc.report.to_json())
        return VIOLATIONS
    except (ParseError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
