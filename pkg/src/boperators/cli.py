"""Batch front end: JSON files in, deterministic JSON (or text) reports out.

Exit codes: 0 success, 2 parse/validation errors, 3 precondition violations.
Identical inputs produce byte-identical output.
"""

import argparse
import json
import sys
from pathlib import Path

from .algebra import FiniteAlgebra, FiniteRing, companionability
from .basefield.gf import BaseField
from .basefield.rational import FunctionField
from .basefield.towers import Tower
from .errors import ParseError, ToolkitError, ValidationError
from .linear import SemilinearMap, dependency_constancy_check
from .operators import AlgebraBValue, OperatorSpec
from .scheme import (AffineVariety, adjunction_census, equalizer,
                     generic_fiber_test, kernel_check, prolong)


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ValidationError(f"no such file: {path}")
    except json.JSONDecodeError as ex:
        raise ParseError(f"invalid JSON in {path}: {ex.msg}",
                         line=ex.lineno, col=ex.colno)


def load_algebra(path):
    return FiniteAlgebra.from_dict(_load_json(path))


def load_ring(path):
    """A plain finite test ring: algebra schema without the augmentation."""
    data = _load_json(path)
    base = BaseField(data["p"], data.get("k_deg", 1), data.get("k_min_poly"))

    def gf(v):
        return base.from_int(v) if isinstance(v, int) else base.elem(v)

    names = data.get("basis") or [f"b{i}" for i in range(data["dim"])]
    mul = [[[gf(c) for c in entry] for entry in row] for row in data["mul"]]
    unit = [gf(c) for c in data["unit"]]
    return FiniteRing(base, names, mul, unit)


def load_operator(path):
    data = _load_json(path)
    algebra_ref = data["algebra"]
    if isinstance(algebra_ref, str):
        algebra_path = Path(path).parent / algebra_ref
        algebra = FiniteAlgebra.from_dict(_load_json(algebra_path))
    else:
        algebra = FiniteAlgebra.from_dict(algebra_ref)
    field = FunctionField(algebra.base, data.get("vars", ()))
    images = {}
    for var, coords in data.get("images", {}).items():
        if var not in field.vars:
            raise ValidationError(f"image given for unknown variable {var}")
        if len(coords) != algebra.dim:
            raise ValidationError(
                f"image of {var} needs {algebra.dim} components")
        if coords[0].strip() != var:
            raise ValidationError(
                f"component 0 of the image of {var} must be the string "
                f"{var!r}")
        images[var] = AlgebraBValue(
            algebra, [field.parse(s) for s in coords])
    missing = set(field.vars) - set(images)
    if missing:
        raise ValidationError(f"missing images for {sorted(missing)}")
    return OperatorSpec(algebra, field, images)


def load_variety(field, path):
    return AffineVariety.from_dict(field, _load_json(path))


def load_point(op, path):
    data = _load_json(path)
    base = op.field if isinstance(op.field, FunctionField) else op.field.base
    roots = data.get("tower", {}).get("roots", [])
    names = [r["name"] for r in roots]
    radicands = [base.parse(r["radicand"]) for r in roots]
    tower = Tower(base, names, radicands)
    values = {k: tower.parse(v) for k, v in data.get("values", {}).items()}
    return tower, values, data


def _emit(report, args):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.format == "text":
        lines = []
        for key in sorted(report):
            lines.append(f"{key}: {json.dumps(report[key], sort_keys=True)}")
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args):
    algebra = load_algebra(args.algebra)
    return companionability(algebra).to_dict()


def cmd_prolong(args):
    op = load_operator(args.operator)
    variety = load_variety(op.field, args.variety)
    tau = prolong(op, variety)
    return {
        "vars": list(tau.vars),
        "components": tau.component_strings(),
        "groebner": tau.ideal.generator_strings(),
        "trivial": tau.is_trivial(),
        "projection_vars": tau.projection_vars(),
    }


def cmd_equalizer(args):
    op = load_operator(args.operator)
    v = load_variety(op.field, args.variety)
    w = load_variety(op.field, args.subvariety)
    espace = equalizer(op, v, w)
    return {
        "ambient_vars": list(espace.vars),
        "equations": espace.equation_strings(),
        "identifications": espace.identification_strings(),
        "projection": {k: espace.projection[k] for k in sorted(
            espace.projection)},
    }


def cmd_kernel_check(args):
    op = load_operator(args.operator)
    v = load_variety(op.field, args.variety)
    w = load_variety(op.field, args.subvariety)
    return kernel_check(op, v, w).to_dict()


def cmd_fiber(args):
    op = load_operator(args.operator)
    tower, values, _ = load_point(op, args.point)
    if args.subvariety:
        # --variety V --subvariety W: fiber of the equalizer projection
        v = load_variety(op.field, args.variety)
        w = load_variety(op.field, args.subvariety)
        return generic_fiber_test(op, w, values, tower, v_variety=v)
    # fiber of the prolongation of W over the embedded point
    w = load_variety(op.field, args.variety)
    return generic_fiber_test(op, w, values, tower)


def cmd_constants_check(args):
    op = load_operator(args.operator)
    data = _load_json(args.point)
    value = op.field.parse(data["value"])
    from .algebra import assumption_frobenius_vanishes
    constant = op.is_constant(value)
    root = value.pth_root()
    report = {"constant": constant, "pth_power": root is not None}
    if assumption_frobenius_vanishes(op.algebra):
        report["strictness_counterexample"] = constant and root is None
    else:
        report["strictness_counterexample"] = None
    return report


def cmd_lidi_check(args):
    op = load_operator(args.operator)
    data = _load_json(args.point)
    dim = data["dim"]
    if "matrix" in data:
        matrix = [[AlgebraBValue(op.algebra,
                                 [op.field.parse(s) for s in entry])
                   for entry in row] for row in data["matrix"]]
        dmap = SemilinearMap(op, dim, len(matrix), matrix)
    else:
        dmap = SemilinearMap.coordinatewise(op, dim)
    vectors = [[op.field.parse(s) for s in vec] for vec in data["vectors"]]
    return dependency_constancy_check(dmap, vectors)


def cmd_census(args):
    algebra = load_algebra(args.algebra)
    field = FunctionField(algebra.base, ())
    variety = load_variety(field, args.variety)
    ring = load_ring(args.ring)
    c_tensor, c_prolong = adjunction_census(algebra, variety, ring)
    return {
        "count_tensor_points": c_tensor,
        "count_prolongation_points": c_prolong,
        "equal": c_tensor == c_prolong,
    }


_COMMANDS = {
    "classify": (cmd_classify, ["algebra"]),
    "prolong": (cmd_prolong, ["operator", "variety"]),
    "equalizer": (cmd_equalizer, ["operator", "variety", "subvariety"]),
    "kernel-check": (cmd_kernel_check, ["operator", "variety", "subvariety"]),
    "fiber": (cmd_fiber, ["operator", "variety", "point"]),
    "constants-check": (cmd_constants_check, ["operator", "point"]),
    "lidi-check": (cmd_lidi_check, ["operator", "point"]),
    "census": (cmd_census, ["algebra", "variety", "ring"]),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="boperators",
        description="Exact toolkit for fields with operator structures: "
                    "classification, prolongation spaces, kernel criteria.")
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, required) in _COMMANDS.items():
        p = sub.add_parser(verb)
        for flag in ("algebra", "operator", "variety", "subvariety",
                     "point", "ring"):
            p.add_argument(f"--{flag}", required=flag in required)
        p.add_argument("--out")
        p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler, _ = _COMMANDS[args.verb]
    try:
        report = handler(args)
    except ToolkitError as ex:
        sys.stderr.write(f"error: {ex}\n")
        return ex.exit_code
    _emit(report, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
