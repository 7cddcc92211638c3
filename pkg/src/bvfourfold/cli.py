"""Command-line front end.  Every command prints one JSON document on stdout.

Exit codes: 0 success, 2 invalid input, 3 internal invariant violation.
Set BVFOURFOLD_PRETTY=1 to indent the output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import InvalidInput, InvariantViolation, UnsupportedConfiguration
from .exactmath import ProjPoint1, evaluate, vanishing_order
from .families import (
    PARAMETER_COUNT_NOTE,
    I5FamilyParams,
    TorsionFamilyParams,
    build_i5_family,
    build_torsion_family,
)
from .fourfold import assemble, full_report
from .hodge import bv_hodge, cross_check, dillies_hodge
from .linsys import fibration_targets
from .sextic import NodalSextic
from .weierstrass import WeierstrassK3, fiber_inventory, genus_trisection, i5_count

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 2, 3
PRETTY_ENV = "BVFOURFOLD_PRETTY"

HODGE_FORMULAS = {
    "closed_form": [
        "h11 = 5 + n + 2m",
        "h21 = 2(15 - n - m)",
        "h31 = 137 - 11n - 22m + 2nm",
        "h22 = 4(138 - 9n - 19m + 2nm)",
    ],
    "substitution": "(r1, a1, r2, a2) = (n+1, n+1, 2+2m, 2m)",
}


def dump(obj) -> str:
    pretty = os.environ.get(PRETTY_ENV, "") not in ("", "0")
    return json.dumps(obj, indent=2 if pretty else None, sort_keys=False, ensure_ascii=False)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from exc


def _trisection(W: WeierstrassK3):
    try:
        return genus_trisection(W)
    except UnsupportedConfiguration:
        return None


def inventory_report(W: WeierstrassK3) -> dict:
    inv = fiber_inventory(W)
    out = {"model": W.to_json(), "inventory": inv.to_json()}
    m = i5_count(inv)
    if m is not None:
        out["m"] = m
    genus = _trisection(W)
    if genus is not None:
        out["trisection_genus"] = genus
    return out


def cmd_hodge(args) -> dict:
    if args.general is not None:
        r1, a1, r2, a2 = args.general
        return {
            "input": {"r1": r1, "a1": a1, "r2": r2, "a2": a2},
            "hodge": dillies_hodge(r1, a1, r2, a2).to_json(),
        }
    if args.n is None or args.m is None:
        raise InvalidInput("hodge needs --n and --m, or --general r1 a1 r2 a2")
    diamond = bv_hodge(args.n, args.m)
    return {
        "input": {"n": args.n, "m": args.m},
        "hodge": diamond.to_json(),
        "cross_check": cross_check(args.n, args.m),
        "formulas": HODGE_FORMULAS,
    }


def cmd_family(args) -> dict:
    if args.kind == "i5":
        if args.params in (None, "zero"):
            params = I5FamilyParams.zero()
        else:
            params = I5FamilyParams.from_json(_read_json(args.params))
        W = build_i5_family(params)
        origin = ProjPoint1(0, 1)
        at_origin = next(st for st in W.strata if evaluate(st.factor, origin) == 0)
        out = {
            "family": "i5",
            "params": params.to_json(),
            "order_at_t0": vanishing_order(W.delta, origin),
            "type_at_t0": at_origin.ktype.name,
            "note": PARAMETER_COUNT_NOTE,
        }
    else:
        if args.params is not None:
            params = TorsionFamilyParams.from_json(_read_json(args.params))
        elif args.p1 is not None and args.p2 is not None:
            params = TorsionFamilyParams(args.p1, args.p2)
        else:
            raise InvalidInput("torsion family needs --p1 and --p2, or --params FILE")
        W = build_torsion_family(params)
        out = {"family": "torsion", "params": {"p1": str(params.p1), "p2": str(params.p2)}}
    out.update(inventory_report(W))
    if args.model_out:
        Path(args.model_out).write_text(dump(W.to_json()) + "\n")
    return out


def _classify_one(path: str) -> dict:
    try:
        return {"file": path, **inventory_report(WeierstrassK3.from_json(_read_json(path)))}
    except InvalidInput as exc:
        return {"file": path, "error": str(exc), "exit": EXIT_INVALID}
    except InvariantViolation as exc:
        return {"file": path, "error": str(exc), "exit": EXIT_INTERNAL}


def cmd_classify(args) -> tuple[dict, int]:
    if len(args.models) == 1:
        return inventory_report(WeierstrassK3.from_json(_read_json(args.models[0]))), EXIT_OK
    if args.jobs > 1 and len(args.models) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_classify_one, args.models))
    else:
        results = [_classify_one(p) for p in args.models]
    code = max(r.pop("exit", EXIT_OK) for r in results)
    return {"results": results}, code


def cmd_fourfold(args) -> dict:
    sextic = NodalSextic.from_json(_read_json(args.sextic))
    W = WeierstrassK3.from_json(_read_json(args.model))
    aux = _read_json(args.aux) if args.aux else None
    return full_report(assemble(sextic, W), args.variant, aux)


def cmd_linsys(args) -> dict:
    return {"n": args.n, "targets": [t.to_json() for t in fibration_targets(args.n)]}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bvfourfold", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hodge", help="Hodge numbers of the fourfold")
    p.add_argument("--n", type=int, help="number of nodes of the sextic (0..8)")
    p.add_argument("--m", type=int, help="number of I5 fibers (0..4)")
    p.add_argument("--general", type=int, nargs=4, metavar=("R1", "A1", "R2", "A2"))
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("family", help="build an elliptic K3 with I5 fibers")
    p.add_argument("kind", choices=("i5", "torsion"))
    p.add_argument("--params", help="'zero' (i5 only) or a JSON parameter file")
    p.add_argument("--p1")
    p.add_argument("--p2")
    p.add_argument("--model-out", help="write the Weierstrass model JSON here")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("classify", help="singular fibers of Weierstrass model files")
    p.add_argument("models", nargs="+")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("fourfold", help="full report for a sextic and a K3 model")
    p.add_argument("sextic")
    p.add_argument("model")
    p.add_argument("--variant", type=int, choices=(5, 6), help="also emit the n = 5 or n = 6 model")
    p.add_argument("--aux", help="JSON file with the auxiliary forms of the variant")
    p.set_defaults(func=cmd_fourfold)

    p = sub.add_parser("linsys", help="projective dimensions of the four linear systems")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_linsys)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
        code = EXIT_OK
        if isinstance(result, tuple):
            result, code = result
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(dump(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
