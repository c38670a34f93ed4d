"""Command-line interface.

Subcommands: solve, bounds, count, delta, fixtures.  Results go to stdout as
canonical JSON (or an aligned table with --emit table); errors go to stderr
with one exit code per error class: infeasible=2, negativity witness=3,
guard exceeded=4, schema violation=5, unbounded=6, dimension mismatch=7.
"""

import argparse
import sys
from fractions import Fraction

from .barvinok import count_lattice_points
from .errors import MipolyError, SchemaError
from .fixtures import an1_problem
from .intopt import bounds as compute_bounds
from .mixedopt import MixedProblem, build_grid_problem, solve_mixed
from .problemio import dump_json, parse_problem, problem_to_dict, rational_str


def _add_common(p):
    p.add_argument("problem", help="problem file (JSON)")
    p.add_argument("--emit", choices=("json", "table"), default="json")


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="mipoly",
        description="Exact approximate maximization of non-negative polynomials "
        "over mixed-integer points of polytopes.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the mixed-integer approximation scheme")
    _add_common(p)
    p.add_argument("--epsilon", help="override the file's epsilon (p/q)")
    p.add_argument("--backend", choices=("enumeration", "barvinok"), default="enumeration")

    p = sub.add_parser("bounds", help="power-sum bounds for the lattice problem")
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--backend", choices=("enumeration", "barvinok"), default="enumeration")

    p = sub.add_parser("count", help="count grid points of a refinement")
    _add_common(p)
    p.add_argument("--m", type=int, default=1, help="grid refinement (default 1)")

    p = sub.add_parser("delta", help="integral scaling constant of the polytope")
    _add_common(p)

    p = sub.add_parser("fixtures", help="emit a built-in problem family")
    fam = p.add_subparsers(dest="family", required=True)
    q = fam.add_parser("an1", help="quadratic-residue decision instance")
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--c", type=int, required=True)
    q.add_argument("--offset", type=int, help="override the computed offset K")
    return ap


def _emit(obj, mode, table_rows=None):
    if mode == "table" and table_rows is not None:
        widths = [max(len(str(r[i])) for r in table_rows) for i in range(len(table_rows[0]))]
        lines = ["  ".join(str(c).ljust(w) for c, w in zip(row, widths)) for row in table_rows]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(dump_json(obj))


def _cmd_solve(args):
    prob = parse_problem(args.problem)
    if args.epsilon is not None:
        try:
            eps = Fraction(args.epsilon)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"bad epsilon {args.epsilon!r}") from None
        prob = MixedProblem(prob.polyhedron, prob.objective, eps)
    sol = solve_mixed(prob, backend=args.backend)
    cert = {key: rational_str(v) for key, v in sol.certificate.items()}
    out = {
        "status": "ok",
        "x": [rational_str(c) for c in sol.x],
        "z": [int(c) for c in sol.z],
        "value": rational_str(sol.value),
        "value_float": float(sol.value),
        "epsilon": rational_str(prob.epsilon),
        "backend": args.backend,
        "certificate": cert,
    }
    rows = [("field", "value")] + sorted((k, v) for k, v in out.items() if k != "certificate")
    _emit(out, args.emit, rows)
    return 0


def _cmd_bounds(args):
    prob = parse_problem(args.problem)
    f_int, mult = prob.objective.clear_denominators()
    gp = build_grid_problem(
        MixedProblem(prob.polyhedron, f_int, prob.epsilon), 1
    )
    res = compute_bounds(gp.polytope, f_int, args.k, backend=args.backend)
    out = {
        "status": "ok",
        "k": res.k,
        "count": str(res.count),
        "multiplier": str(mult),
        "lower_kth_power": rational_str(res.lower_kth_power),
        "upper_kth_power": rational_str(res.upper_kth_power),
        "lower_bound_float": res.lower_float / mult,
        "upper_bound_float": res.upper_float / mult,
        "backend": args.backend,
    }
    rows = [
        ("k", "lower_kth_power", "upper_kth_power", "L_k", "U_k"),
        (
            res.k,
            out["lower_kth_power"],
            out["upper_kth_power"],
            out["lower_bound_float"],
            out["upper_bound_float"],
        ),
    ]
    _emit(out, args.emit, rows)
    return 0


def _cmd_count(args):
    prob = parse_problem(args.problem)
    f_int, _ = prob.objective.clear_denominators()
    gp = build_grid_problem(MixedProblem(prob.polyhedron, f_int, prob.epsilon), args.m)
    n = count_lattice_points(gp.polytope)
    out = {"status": "ok", "count": str(n), "m": str(args.m)}
    _emit(out, args.emit, [("m", "count"), (args.m, n)])
    return 0


def _cmd_delta(args):
    prob = parse_problem(args.problem)
    val = prob.polyhedron.compute_delta()
    out = {"status": "ok", "delta": str(val)}
    _emit(out, args.emit, [("delta",), (val,)])
    return 0


def _cmd_fixtures(args):
    prob, k_value = an1_problem(args.a, args.b, args.c, offset=args.offset)
    data = problem_to_dict(prob)
    data["note"] = (
        f"an1 a={args.a} b={args.b} c={args.c}: solvable iff the optimum equals {k_value}"
    )
    data["offset"] = str(k_value)
    sys.stdout.write(dump_json(data))
    return 0


_DISPATCH = {
    "solve": _cmd_solve,
    "bounds": _cmd_bounds,
    "count": _cmd_count,
    "delta": _cmd_delta,
    "fixtures": _cmd_fixtures,
}


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except MipolyError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
