"""Command-line front end: classification, automorphism generators, orbit
counts, table verification, quaternion conjugacy, and form tools, with JSON
reports (schema v1) and deterministic seeded runs.

Exit codes: 0 ok: 1 table row mismatch; 2 parse error; 3 dimension error;
4 degenerate kernel; 5 unsupported field for the command; 6 split algebra.
"""

import argparse
import json
import os
import sys
from importlib import resources

import jsonschema

from . import classify as cl
from . import exterior as ext
from . import forms
from . import heisenberg as hb
from . import linalg as la
from . import orbits as ob
from .fields import FieldError, Undecidable, make_field
from .linalg import Subspace
from .quaternion import QuatAlgebra, SplitAlgebraError

EXIT_TABLE_MISMATCH = 1
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_DEGENERATE = 4
EXIT_FIELD = 5
EXIT_SPLIT = 6


def _schema():
    with resources.files("heisenkern").joinpath("schemas/report-v1.json").open() as fh:
        return json.load(fh)


def load_subspace(F, blob):
    """Subspace from the JSON format {"field":..., "ambient":6, "basis":[[...]]}."""
    if isinstance(blob, str):
        blob = json.loads(blob)
    basis = blob.get("basis")
    if basis is None:
        raise ValueError("subspace JSON needs a 'basis' field")
    ambient = blob.get("ambient", 6)
    rows = []
    for row in basis:
        rows.append(tuple(F.parse(x) if isinstance(x, str) else F.coerce(x) for x in row))
    return Subspace(F, ambient, rows)


def dump_subspace(F, U):
    return {"field": F.spec, "ambient": U.ambient_dim,
            "basis": [[F.format(x) for x in row] for row in U.basis]}


def _read_input(arg):
    if arg is None:
        raise ValueError("--input is required")
    s = arg.strip()
    if s.startswith("{"):
        return json.loads(s)
    with open(s) as fh:
        return json.load(fh)


def _report(args, command, payload):
    out = {"schema": "v1", "command": command, "field": args.field,
           "config": {"seed": args.seed, "budget": args.budget,
                      "sample": args.sample}}
    out.update(payload)
    jsonschema.validate(out, _schema())
    return out


def _emit(args, report):
    if args.output == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _render_text(report)


def _render_text(rep):
    cmd = rep["command"]
    print(f"[{cmd}] field={rep['field']} seed={rep['config']['seed']}")
    if cmd == "classify":
        note = " (not reduced)" if rep.get("not_reduced") else ""
        print(f"label: {rep['label']}{note}")
        if rep.get("witness"):
            print("witness:", rep["witness"])
    elif cmd == "aut":
        print(f"label: {rep['label']}  predicate: {rep['predicate']}")
        if rep.get("group_order") is not None:
            print("group order:", rep["group_order"])
        print(f"{len(rep['generators'])} generators")
        for g in rep["generators"]:
            print("  ", g)
    elif cmd == "orbits":
        print(f"label: {rep['label']}  omega_v={rep['omega_v']} "
              f"omega_z={rep['omega_z']} omega={rep['omega']}")
    elif cmd == "verify-table":
        for r in rep["rows"]:
            mark = "pass" if r["pass"] else "FAIL"
            print(f"  {r['kernel_label']:16s} omega={r['omega']:2d} "
                  f"expected={r['expected']:2d}  {mark}")
        n = len(rep["rows"])
        print(f"{n} rows, {n} checked, {len(rep['failures'])} failures")
    elif cmd == "conj":
        if rep.get("conjugator"):
            print("a =", rep["conjugator"])
            print("verified:", rep["verified"])
        else:
            print("no conjugator:", rep.get("reason", ""))
    elif cmd == "forms":
        print(json.dumps(rep.get("result"), indent=2, sort_keys=True))


def cmd_classify(args):
    F = make_field(args.field)
    try:
        blob = _read_input(args.input)
        U = load_subspace(F, blob)
    except (ValueError, KeyError, json.JSONDecodeError, FieldError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_PARSE
    if U.dim == 0 or U.dim == 6:
        print("subspace dimension must be 1..5", file=sys.stderr)
        return EXIT_DIMENSION
    label = cl.classify_subspace(U)
    payload = {"label": label.serialize(F), "not_reduced": label.not_reduced,
               "witness": None}
    if F.is_finite and F.order <= 3 and args.witness:
        B = cl.find_witness(U, label if label.kind != "perp" else label.inner,
                            budget=args.budget)
        if B is not None:
            payload["witness"] = [[F.format(x) for x in row] for row in B]
    _emit(args, _report(args, "classify", payload))
    return 0


def cmd_aut(args):
    F = make_field(args.field)
    try:
        U = load_subspace(F, _read_input(args.input))
    except (ValueError, KeyError, json.JSONDecodeError, FieldError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_PARSE
    label = cl.classify_subspace(U)
    if label.not_reduced:
        print(f"kernel {label.serialize(F)} is not reduced; no automorphism "
              "description applies", file=sys.stderr)
        return EXIT_DEGENERATE
    gs = hb.sigma_generators(F, label)
    order = None
    if F.is_finite and F.order <= 3:
        order = len(ob.generated_group(F, gs.matrices))
    payload = {"label": label.serialize(F),
               "generators": [[[F.format(x) for x in row] for row in g]
                              for g in gs.matrices],
               "predicate": gs.provenance, "group_order": order}
    _emit(args, _report(args, "aut", payload))
    return 0


def cmd_orbits(args):
    F = make_field(args.field)
    if not F.is_finite:
        print("orbit enumeration requires a finite field", file=sys.stderr)
        return EXIT_FIELD
    try:
        U = load_subspace(F, _read_input(args.input))
    except (ValueError, KeyError, json.JSONDecodeError, FieldError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_PARSE
    label = cl.classify_subspace(U)
    if label.not_reduced:
        print("kernel is not reduced", file=sys.stderr)
        return EXIT_DEGENERATE
    ov, oz, om = ob.omega_counts(F, U, budget=args.budget)
    payload = {"label": label.serialize(F), "omega_v": ov, "omega_z": oz,
               "omega": om}
    _emit(args, _report(args, "orbits", payload))
    return 0


def cmd_verify_table(args):
    F = make_field(args.field)
    if not F.is_finite or F.order not in (2, 3, 4):
        print("verify-table supports gf:2, gf:3, gf:2^2", file=sys.stderr)
        return EXIT_FIELD
    rep = ob.verify_table(F, budget=args.budget)
    payload = {"rows": rep["rows"], "failures": rep["failures"]}
    _emit(args, _report(args, "verify-table", payload))
    return EXIT_TABLE_MISMATCH if rep["failures"] else 0


def cmd_conj(args):
    F = make_field(args.field)
    d = F.parse(args.d)
    c = F.parse(args.c)
    H = QuatAlgebra(F, d, c)
    try:
        if not H.is_division():
            print("split quaternion algebra: conjugacy by norm/trace fails there "
                  "(counterexample: [[0,-1],[1,2]] vs the identity)", file=sys.stderr)
            return EXIT_SPLIT
    except Undecidable as e:
        print(f"undecided: {e}", file=sys.stderr)
        return EXIT_FIELD
    v = tuple(F.parse(x) for x in args.v.split(","))
    x = tuple(F.parse(x) for x in args.x.split(","))
    try:
        a = H.conjugate_solver(v, x)
    except SplitAlgebraError:
        return EXIT_SPLIT
    if a is None:
        which = [name for name, same in (("norm", H.norm(v) == H.norm(x)),
                                         ("trace", H.trace(v) == H.trace(x)))
                 if not same]
        payload = {"conjugator": None, "verified": False,
                   "reason": " and ".join(which) + " differ"}
        _emit(args, _report(args, "conj", payload))
        return 0
    product = H.mul(H.mul(a, v), H.inv(a))
    payload = {"conjugator": H.format(a), "verified": product == x}
    _emit(args, _report(args, "conj", payload))
    return 0


def cmd_forms(args):
    F = make_field(args.field)
    if args.tool == "arf":
        q = forms.BinaryQForm(F, F.parse(args.a), F.parse(args.b), F.parse(args.dcoef))
        val = forms.arf_value(q)
        payload = {"result": {"arf_value": F.format(val),
                              "nontrivial_coset": not F.in_wp(val)}}
    elif args.tool == "hermitian":
        from .fields import QuadExtension
        L = F
        if not isinstance(L, QuadExtension):
            print("hermitian tool needs a quad:<base>:<t>,<d> field", file=sys.stderr)
            return EXIT_FIELD
        K = L.base
        g = forms.HermitianForm.diagonal(L, K.parse(args.a), K.parse(args.b))
        h = forms.HermitianForm.diagonal(L, K.parse(args.c2), K.parse(args.dcoef))
        eq = forms.hermitian_equivalent(g, h)
        payload = {"result": {"equivalent": eq}}
    else:
        print("unknown forms tool", file=sys.stderr)
        return EXIT_PARSE
    _emit(args, _report(args, "forms", payload))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="heisenkern",
        description="reduced Heisenberg algebras over exact fields: classify "
                    "kernels, emit automorphism generators, verify orbit counts")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", required=True,
                       help="q | gf:p | gf:p^k[:c0,..,ck] | fp_t:p | quad:<base>:<t>,<d>")
        p.add_argument("--output", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=ob.DEFAULT_BUDGET)
        p.add_argument("--sample", type=int, default=None)

    p = sub.add_parser("classify", help="orbit label of a subspace")
    common(p)
    p.add_argument("--input", help="subspace JSON (inline or a file path)")
    p.add_argument("--witness", action="store_true",
                   help="also search a GL4 witness (gf:2 / gf:3)")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("aut", help="Sigma_beta generators for a kernel")
    common(p)
    p.add_argument("--input", help="subspace JSON (inline or a file path)")
    p.set_defaults(fn=cmd_aut)

    p = sub.add_parser("orbits", help="omega counts for a reduced kernel")
    common(p)
    p.add_argument("--input", help="subspace JSON (inline or a file path)")
    p.set_defaults(fn=cmd_orbits)

    p = sub.add_parser("verify-table", help="verify the orbit-count table by BFS")
    common(p)
    p.set_defaults(fn=cmd_verify_table)

    p = sub.add_parser("conj", help="quaternion conjugacy solver")
    common(p)
    p.add_argument("--d", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--v", required=True, help="4 comma-separated coordinates")
    p.add_argument("--x", required=True, help="4 comma-separated coordinates")
    p.set_defaults(fn=cmd_conj)

    p = sub.add_parser("forms", help="Arf / hermitian tools")
    common(p)
    p.add_argument("--tool", choices=("arf", "hermitian"), required=True)
    p.add_argument("--a", default="1")
    p.add_argument("--b", default="1")
    p.add_argument("--c2", default="1")
    p.add_argument("--dcoef", default="1")
    p.set_defaults(fn=cmd_forms)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except Undecidable as e:
        print(f"undecided: {e}", file=sys.stderr)
        return EXIT_FIELD
    except FieldError as e:
        print(f"field error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
