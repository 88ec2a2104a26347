"""Command-line interface.  Every run prints (or writes) one JSON report.

Exit codes: 0 success, 1 mathematical rejection (with witness),
2 input or schema error, 3 cost guard or inconclusive search.
"""
import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import (CostGuardExceeded, InconclusiveSearch, IncompleteAutList,
                     MathematicalRejection, PrecisionExhausted, RingMismatch, SchemaError)
from .guards import requested

EXIT_OK, EXIT_REJECTED, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3


class Rejected(Exception):
    """A check failed without raising: carries the partial result."""

    def __init__(self, result):
        super().__init__("rejected")
        self.result = result


def jsonable(obj):
    """Convert witnesses and results into plain JSON values."""
    from .algebra.core import AlgebraElement
    from .coeffs.witt import WittScalar
    from .serialize import element_to_json, witt_scalar_to_json

    if isinstance(obj, AlgebraElement):
        return {"element": element_to_json(obj)}
    if isinstance(obj, WittScalar):
        return {"witt": witt_scalar_to_json(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


# -- subcommands ---------------------------------------------------------------------


def _witt_arg(ring, text, name):
    if text is None:
        raise SchemaError(f"--{name} is required for this operation")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"--{name} is not JSON: {exc}") from None
    if isinstance(data, int) and not isinstance(data, bool):
        return ring.from_int(data)
    if not isinstance(data, list) or len(data) != ring.n:
        raise SchemaError(f"--{name} must list {ring.n} Witt components")
    comps = []
    for c in data:
        c = [c] if isinstance(c, int) else c
        if not isinstance(c, list) or len(c) != ring.deg or not all(
                isinstance(t, int) and 0 <= t < ring.p for t in c):
            raise SchemaError(f"--{name}: each component needs {ring.deg} digits in [0, {ring.p})")
        comps.append(c)
    return ring(comps)


def cmd_witt(args, guards):
    from .coeffs.polys import gen_witt_polys
    from .coeffs.witt import WittRing, padic_oracle
    from .serialize import witt_scalar_to_json as wj

    if args.p is None or args.n is None:
        raise SchemaError("witt needs --p and --n")
    modulus = None
    if args.modulus is not None:
        try:
            modulus = [int(c) for c in json.loads(args.modulus)]
        except (json.JSONDecodeError, TypeError, ValueError):
            raise SchemaError("--modulus must be a JSON list of integers") from None
    ring = WittRing.over(args.p, args.n, modulus)
    out = {"ring": ring.descriptor(), "op": args.op}
    if args.op == "polys":
        out.update(gen_witt_polys(ring.p, ring.n, guards.max_monomials).as_strings())
    elif args.op in ("add", "mul", "sub"):
        a, b = _witt_arg(ring, args.a, "a"), _witt_arg(ring, args.b, "b")
        c = {"add": a + b, "mul": a * b, "sub": a - b}[args.op]
        out.update({"a": wj(a), "b": wj(b), "result": wj(c)})
    elif args.op in ("neg", "inv", "teichmuller", "oracle"):
        a = _witt_arg(ring, args.a, "a")
        out["a"] = wj(a)
        if args.op == "neg":
            out["result"] = wj(-a)
        elif args.op == "inv":
            out["result"] = wj(a.inverse())
        elif args.op == "teichmuller":
            out["result"] = wj(ring([a.components[0]] + [0] * (ring.n - 1)))
        else:
            out["result"] = padic_oracle(a)
    elif args.op == "table":
        q = ring.field.q
        guards.check("max_candidates", q ** (2 * ring.n), "Witt table entries")
        elems = list(ring.elements())
        index = {e.codes: i for i, e in enumerate(elems)}
        out["elements"] = [wj(e) for e in elems]
        out["add"] = [[index[(x + y).codes] for y in elems] for x in elems]
        out["mul"] = [[index[(x * y).codes] for y in elems] for x in elems]
        if ring.deg == 1:
            out["padic"] = [padic_oracle(e) for e in elems]
    else:
        raise SchemaError(f"unknown witt operation {args.op!r}")
    return out


def cmd_algebra(args, guards):
    from .serialize import algebra_from_json, load

    A = algebra_from_json(load(args.file))
    guards.check("max_rank", A.rank, "algebra rank")
    out = {"valid": True, "rank": A.rank, "ring": A.ring.descriptor(),
           "commutative": A.is_commutative()}
    if args.h1:
        from .cohomology.cochains import h1_invariants

        out["h1"] = h1_invariants(A, guards=guards).to_json()
    return out


def cmd_morphism(args, guards):
    from .lifting import certified_precision
    from .morphisms import check_automorphism
    from .serialize import load, morphism_from_json

    M = morphism_from_json(load(args.file))
    guards.check("max_rank", M.source.rank, "algebra rank")
    cert = check_automorphism(M)
    out = {"certificate": cert.to_json(), "certified_precision": certified_precision(M),
           "precision": M.source.ring.n}
    if not cert:
        raise Rejected(out)
    return out


def cmd_lift(args, guards):
    from .lifting import LiftConfig, higman_lift, lift_agrees
    from .serialize import load, morphism_from_json

    doc = load(args.file)
    if isinstance(doc, dict) and doc.get("format") == "lift-job":
        if "morphism" not in doc:
            raise SchemaError("lift-job needs a morphism")
        beta = morphism_from_json(doc["morphism"])
        s = doc.get("s") if args.s is None else args.s
        target = doc.get("target_precision") if args.target_precision is None else args.target_precision
    else:
        beta = morphism_from_json(doc)
        s, target = args.s, args.target_precision
    if not isinstance(s, int):
        raise SchemaError("lift needs an integer depth --s")
    if target is None:
        target = beta.source.ring.n
    if not isinstance(target, int):
        raise SchemaError("target precision must be an integer")
    guards.check("max_rank", beta.source.rank, "algebra rank")
    trace = higman_lift(beta, LiftConfig(s, target))
    out = trace.to_json()
    out["agrees_with_input_mod"] = s + 1
    out["agrees"] = lift_agrees(trace, beta, s + 1)
    if not out["final_certified"]:
        raise Rejected(out)
    return out


def cmd_crossed(args, guards):
    from .crossed.params import normalize, validate_parameter_set
    from .crossed.product import build_crossed_product, condense_crossed, decondense
    from .serialize import (algebra_to_json, element_from_json, element_to_json, load,
                            parameter_set_from_json, parameter_set_to_json)

    doc = load(args.file)
    job = doc if isinstance(doc, dict) and doc.get("format") == "condense-job" else None
    if args.action == "condense" and job is None:
        raise SchemaError("crossed condense expects a condense-job document")
    try:
        P = parameter_set_from_json(job["parameter_set"] if job else doc)
    except (KeyError, TypeError):
        raise SchemaError("condense-job needs a parameter_set") from None
    guards.check("max_rank", P.R.rank * P.group.order, "crossed product rank")
    cert = validate_parameter_set(P)
    if not cert:
        raise Rejected({"parameter_set_valid": cert.to_json()})
    out = {"parameter_set_valid": cert.to_json()}
    if args.action == "normalize":
        Q, w = normalize(P)
        out["parameter_set"] = parameter_set_to_json(Q)
        out["witness"] = [element_to_json(x) for x in w]
        return out
    pres = build_crossed_product(P)
    check = pres.check()
    out["presentation"] = check.to_json()
    if args.action == "build":
        out["algebra"] = algebra_to_json(pres.algebra)
        out["grading"] = pres.grading
        if not check:
            raise Rejected(out)
        return out
    try:
        e = element_from_json(P.R, job["idempotent"])
    except KeyError:
        raise SchemaError("condense-job needs an idempotent") from None
    cc = condense_crossed(pres, e, guards, args.seed)
    out["corner_parameter_set"] = parameter_set_to_json(cc.presentation.params)
    out["units"] = [element_to_json(u) for u in cc.units]
    out["conjugators"] = [element_to_json(x) for x in cc.conjugators]
    if job.get("matrix_units") is not None:
        rows = job["matrix_units"]
        if not isinstance(rows, list) or not all(isinstance(r, list) and len(r) == len(rows)
                                                 for r in rows):
            raise SchemaError("matrix_units must be a square array of elements of R")
        units = [[pres.embed(element_from_json(P.R, x)) for x in row] for row in rows]
        _, _, dcert = decondense(cc, units)
        out["decondensation"] = dcert.to_json()
        if not dcert:
            raise Rejected(out)
    return out


def cmd_enumerate(args, guards):
    from .crossed.enumerate import enumerate_crossed_products
    from .morphisms import AlgebraMorphism, OLinearityData
    from .serialize import (algebra_from_json, element_from_json, group_from_json, load,
                            matrix_from_json)

    doc = load(args.file)
    if not isinstance(doc, dict) or doc.get("format") != "enumerate-job":
        raise SchemaError("enumerate expects an enumerate-job document")
    try:
        R = algebra_from_json(doc["R"])
        G = group_from_json(doc["group"])
    except KeyError as exc:
        raise SchemaError(f"enumerate-job is missing {exc}") from None
    auts = None
    if doc.get("aut_list") is not None:
        auts = [AlgebraMorphism(R, matrix_from_json(R.gr, m, R.rank, R.rank))
                for m in doc["aut_list"]]
    s_action = None
    if doc.get("s_action") is not None:
        s_action = OLinearityData.from_central_elements(
            [element_from_json(R, x) for x in doc["s_action"]])
    report = enumerate_crossed_products(R, G, s_action, auts, bool(doc.get("aut_complete", False)),
                                        guards, order_seed=args.seed)
    return report.to_json()


def cmd_fixture(args, guards):
    from .fixtures import emit_fixture, names

    if args.list or args.name is None:
        return {"fixtures": names()}
    return emit_fixture(args.name)


# -- driver --------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    common.add_argument("--max-rank", type=int)
    common.add_argument("--max-candidates", type=int)
    common.add_argument("--max-monomials", type=int)
    common.add_argument("--unit-samples", type=int)

    parser = argparse.ArgumentParser(prog="wittorders", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"wittorders {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("witt", parents=[common], help="Witt vector arithmetic")
    w.add_argument("--p", type=int)
    w.add_argument("--n", type=int)
    w.add_argument("--op", default="polys",
                   choices=["polys", "add", "sub", "mul", "neg", "inv", "teichmuller", "oracle",
                            "table"])
    w.add_argument("--modulus", help="JSON coefficient list of the residue field modulus")
    w.add_argument("--a", help="JSON Witt vector (list of components) or integer")
    w.add_argument("--b", help="second operand")
    w.set_defaults(func=cmd_witt)

    a = sub.add_parser("algebra", help="structure-constant algebras")
    asub = a.add_subparsers(dest="action", required=True)
    av = asub.add_parser("validate", parents=[common], help="check associativity and identity")
    av.add_argument("file")
    av.add_argument("--h1", action="store_true", help="also report H^1 invariant factors")
    av.set_defaults(func=cmd_algebra)

    m = sub.add_parser("morphism", help="algebra morphisms")
    msub = m.add_subparsers(dest="action", required=True)
    mc = msub.add_parser("check", parents=[common], help="certify an automorphism")
    mc.add_argument("file")
    mc.set_defaults(func=cmd_morphism)

    lp = sub.add_parser("lift", parents=[common], help="lift an automorphism to higher precision")
    lp.add_argument("file")
    lp.add_argument("--s", type=int)
    lp.add_argument("--target-precision", type=int)
    lp.set_defaults(func=cmd_lift)

    c = sub.add_parser("crossed", help="crossed products from parameter sets")
    csub = c.add_subparsers(dest="action", required=True)
    for action, text in (("build", "build and validate R * G"),
                         ("condense", "condense at an idempotent of R"),
                         ("normalize", "normalize a parameter set")):
        cp = csub.add_parser(action, parents=[common], help=text)
        cp.add_argument("file")
        cp.set_defaults(func=cmd_crossed)

    e = sub.add_parser("enumerate", parents=[common], help="classify crossed products R * G")
    e.add_argument("file")
    e.set_defaults(func=cmd_enumerate)

    f = sub.add_parser("fixture", parents=[common], help="emit a bundled fixture document")
    f.add_argument("name", nargs="?")
    f.add_argument("--list", action="store_true")
    f.set_defaults(func=cmd_fixture)
    return parser


def _error(exc):
    return {"type": type(exc).__name__, "message": str(exc),
            "witness": jsonable(getattr(exc, "witness", None))}


def run(argv=None):
    """Execute one job; returns (exit code, report dict)."""
    from .serialize import dumps

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_INPUT if exc.code else EXIT_OK), None
    header = {"tool": "wittorders", "version": __version__, "command": args.command,
              "action": getattr(args, "action", None), "seed": args.seed}
    report = {"header": header}
    code = EXIT_OK
    try:
        guards = requested(max_rank=args.max_rank, max_candidates=args.max_candidates,
                           max_monomials=args.max_monomials, unit_samples=args.unit_samples)
        header["guards"] = guards.as_dict()
        if args.command == "fixture" and args.name is not None and not args.list:
            report = args.func(args, guards)
        else:
            report["status"] = "ok"
            report["result"] = jsonable(args.func(args, guards))
    except Rejected as exc:
        code, report["status"], report["result"] = EXIT_REJECTED, "rejected", jsonable(exc.result)
    except MathematicalRejection as exc:
        code, report["status"], report["error"] = EXIT_REJECTED, "rejected", _error(exc)
    except (CostGuardExceeded, InconclusiveSearch, IncompleteAutList) as exc:
        code, report["status"], report["error"] = EXIT_UNDECIDED, "undecided", _error(exc)
    except (SchemaError, RingMismatch, PrecisionExhausted) as exc:
        code, report["status"], report["error"] = EXIT_INPUT, "input-error", _error(exc)
    except (KeyError, TypeError, ValueError) as exc:
        # malformed documents that slipped past the schema checks
        code, report["status"], report["error"] = EXIT_INPUT, "input-error", _error(exc)
    text = dumps(report)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"wittorders: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_INPUT, report
    else:
        sys.stdout.write(text)
    return code, report


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
