"""Command-line front end.

Exit status: 0 for a definite answer, 2 when a budget ran out and the
verdict is ``unknown``, 1 for bad input.  ``--json`` prints one object with
a top-level ``"verdict"``; with fixed arguments the text is byte-identical
across runs (timings are only included with ``--timings``).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Callable

from . import io
from .catalog import CATALOG_LIST, UnknownAlgebraError, resolve
from .cpa import annihilates, verify
from .eqn import conjecture_scan, has_property_f, solve_grid, vector_json
from .errors import PreconditionError
from .exact import format_rational
from .freelie import build_free_nilpotent, witt_dimension
from .liealg import JacobiViolation, LieAlgebraTable, MalformedTableError, invariants
from .polysolve.groebner import Budget, Verdict
from .polysolve.solve import solve_cpa, variety_is_central

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2


class Result:
    def __init__(self, data: dict, lines: list[str], code: int = EXIT_OK):
        self.data = data
        self.lines = lines
        self.code = code


def load_algebra(ref: str) -> LieAlgebraTable:
    """A catalog identifier, or a path to an algebra JSON file."""
    path = Path(ref)
    if ref.endswith(".json") or path.is_file():
        if not path.is_file():
            raise io.MalformedFileError(f"no such file: {ref}")
        return io.algebra_from_json(io.load_json(path))
    return resolve(ref)


def _budget(args) -> Budget:
    return Budget(max_pairs=args.budget_spairs, max_seconds=args.budget_seconds)


def _names(t: LieAlgebraTable, vec) -> str:
    parts = []
    for k, c in sorted(vec.items()):
        coeff = "" if c == 1 else "-" if c == -1 else f"{format_rational(c)}*"
        parts.append(f"{coeff}{t.names[k]}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_dims(args) -> Result:
    if args.g < 1 or args.c < 1:
        raise PreconditionError("g and c must be positive")
    totals = [witt_dimension(args.g, c).total for c in range(1, args.c + 1)]
    top = witt_dimension(args.g, args.c)
    data = {
        "verdict": "ok",
        "g": args.g,
        "c": args.c,
        "totals": totals,
        "per_degree": top.per_degree,
        "dim": top.total,
        "center_dim": top.center,
    }
    lines = [
        f"dim F_{{{args.g},c}} for c = 1..{args.c}: " + ",".join(map(str, totals)),
        f"degree components of F_{{{args.g},{args.c}}}: " + ",".join(map(str, top.per_degree)),
        f"dim = {top.total}, center dim = {top.center}",
    ]
    return Result(data, lines)


def cmd_build(args) -> Result:
    pres = build_free_nilpotent(args.g, args.c)
    table = io.algebra_to_json(pres.table)
    if args.out:
        Path(args.out).write_text(io.dumps(table) + "\n")
    data = {"verdict": "ok", "algebra": table, "name": pres.table.name}
    lines = [f"F_{{{args.g},{args.c}}}: dim {pres.dim}, basis " + ", ".join(pres.table.names)]
    for (i, j), vec in sorted(pres.table.brackets.items()):
        lines.append(f"[{pres.table.names[i]}, {pres.table.names[j]}] = {_names(pres.table, vec)}")
    if args.out:
        lines.append(f"written to {args.out}")
    return Result(data, lines)


def cmd_info(args) -> Result:
    t = load_algebra(args.algebra)
    s = t.series
    inv = invariants(t)
    data = {
        "verdict": "ok",
        "name": t.name,
        "dim": t.dim,
        "names": list(t.names),
        "nilpotency_class": s.nilpotency_class,
        "lower_central_dims": [x.dim for x in s.lower_central],
        "derived_dims": [x.dim for x in s.derived],
        "center_dim": s.center.dim,
        "commutator_dim": s.commutator.dim,
        "is_stem": inv.is_stem,
        "z_ratio": format_rational(inv.z_ratio),
    }
    lines = [
        f"{t.name or args.algebra}: dim {t.dim}",
        f"basis: {', '.join(t.names)}",
        f"nilpotency class: {s.nilpotency_class if s.is_nilpotent else 'not nilpotent'}",
        "lower central series dims: " + ", ".join(str(x.dim) for x in s.lower_central),
        f"center dim {s.center.dim}, commutator dim {s.commutator.dim}, stem {inv.is_stem}",
        f"z = dim Z / dim g = {format_rational(inv.z_ratio)}",
    ]
    return Result(data, lines)


def cmd_cpa_verify(args) -> Result:
    t = load_algebra(args.algebra)
    p = io.product_from_json(io.load_json(args.product), t)
    rep = verify(p)

    def wit(w):
        if w is None:
            return None
        return {"indices": [i + 1 for i in w.indices], "residual": _names(t, w.residual)}

    data = {
        "verdict": "cpa" if rep.ok else "not_cpa",
        "symmetric": rep.axiom4_ok,
        "representation": rep.axiom5_ok,
        "derivation": rep.axiom6_ok,
        "symmetry_witness": wit(rep.axiom4_witness),
        "representation_witness": wit(rep.axiom5_witness),
        "derivation_witness": wit(rep.axiom6_witness),
        "is_complete": rep.is_complete,
        "is_central": rep.is_central,
        "gZ_is_zero": rep.gZ_is_zero,
        "gComm_is_zero": rep.gComm_is_zero,
    }
    lines = [f"CPA structure: {'yes' if rep.ok else 'no'}"]
    for label, ok, w in (
        ("symmetry", rep.axiom4_ok, rep.axiom4_witness),
        ("representation", rep.axiom5_ok, rep.axiom5_witness),
        ("derivation", rep.axiom6_ok, rep.axiom6_witness),
    ):
        tail = "" if ok else f" (first failure at {tuple(i + 1 for i in w.indices)}, residual {_names(t, w.residual)})"
        lines.append(f"  {label}: {'ok' if ok else 'fails'}{tail}")
    lines.append(f"complete {rep.is_complete}, central {rep.is_central}")
    lines.append(f"g.Z = 0: {rep.gZ_is_zero}, g.[g,g] = 0: {rep.gComm_is_zero}")
    return Result(data, lines)


def cmd_cpa_solve(args) -> Result:
    t = load_algebra(args.algebra)
    budget = _budget(args)
    v = solve_cpa(t, budget)
    res = variety_is_central(v, t.center, budget)
    data = {"verdict": res.verdict.value, "variety": v.to_json(), "centrality": res.to_json()}
    if res.witness is not None:
        data["centrality"]["witness_moves_center"] = not annihilates(res.witness, t.center)
    if args.export:
        Path(args.export).write_text(io.dumps(v.to_json()) + "\n")
    lines = [
        f"unknowns {v.ambient_unknowns}, free parameters {v.nparams}, "
        f"quadratic generators {len(v.quadratic)}, status {v.status}",
        f"all CPA structures central: {res.verdict.value} ({res.certificate})",
    ]
    if res.witness is not None:
        lines.append("non-central witness:")
        for (i, j), vec in sorted(res.witness.entries().items()):
            if i <= j:
                lines.append(f"  {t.names[i]} . {t.names[j]} = {_names(t, vec)}")
        lines.append(f"  moves the center: {data['centrality']['witness_moves_center']}")
    code = EXIT_UNKNOWN if res.verdict is Verdict.UNKNOWN else EXIT_OK
    return Result(data, lines, code)


def cmd_property_f(args) -> Result:
    t = load_algebra(args.algebra)
    rep = has_property_f(t, samples=args.samples, seed=args.seed)
    data = rep.to_json(t.dim)
    lines = [
        f"property F: {rep.verdict}",
        f"z = {format_rational(rep.z_ratio)}, below 1/3: {rep.obstructed}",
        f"pairs tested: {len(rep.pairs_tested)}, solution dims: {rep.solution_dims[:5]}"
        + (" ..." if len(rep.solution_dims) > 5 else ""),
    ]
    if rep.witness is not None:
        x, y = rep.witness_pair
        u, v, w = rep.witness
        lines.append(f"witness pair x = {_names(t, x)}, y = {_names(t, y)}")
        lines.append(f"non-central solution u = {_names(t, u)}, v = {_names(t, v)}, w = {_names(t, w)}")
    return Result(data, lines)


def cmd_grid(args) -> Result:
    t = load_algebra(args.algebra)
    g = solve_grid(t)
    verdict = "central" if g.all_central else "not_central"
    data = {
        "verdict": verdict,
        "generators": [vector_json(x, t.dim) for x in g.generators],
        "system": [g.rows, g.unknowns],
        "solution_dim": g.solution.dim,
        "central_dim": g.central_space.dim,
        "equals_central": g.equals_central,
    }
    lines = [
        f"grid system: {g.rows} equations in {g.unknowns} unknowns",
        f"solution dim {g.solution.dim}, central assignments dim {g.central_space.dim}",
        f"all solutions central: {g.all_central}, equal to the central assignments: {g.equals_central}",
    ]
    return Result(data, lines)


def cmd_conjecture(args) -> Result:
    rep = conjecture_scan(args.cmax, budget=_budget(args))
    data = {
        "verdict": "pass" if rep.passed else "fail",
        "classes": [c.to_json(args.timings) for c in rep.classes],
        "reading": rep.reading,
    }
    lines = []
    for c in rep.classes:
        row = (
            f"c={c.c:2d} dim={c.dim:4d} center={c.center_dim:3d} z={format_rational(c.z_ratio):>7s} "
            f"system={c.system_rows}x{c.system_unknowns} solutions={c.solution_dim} "
            f"property_F={c.property_f} central={'true' if c.central else 'false'}"
        )
        if c.base_case is not None:
            row += f" base_case={c.base_case}"
        if args.timings:
            row += f" ({c.seconds:.2f}s)"
        lines.append(row)
    lines.append(f"verdict: {data['verdict']}")
    return Result(data, lines)


def cmd_catalog(args) -> Result:
    data = {"verdict": "ok", "entries": [{"id": k, "description": d} for k, d in CATALOG_LIST]}
    return Result(data, [f"{k:14s} {d}" for k, d in CATALOG_LIST])


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON object")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled generating pairs")
    common.add_argument("--threads", type=int, default=1, help="accepted for compatibility; work is sequential")
    common.add_argument("--budget-spairs", type=int, default=Budget().max_pairs, help="S-pair cap")
    common.add_argument("--budget-seconds", type=float, default=None, help="wall-clock cap for Groebner work")
    common.add_argument("--timings", action="store_true", help="include timings (breaks byte-identical output)")

    parser = argparse.ArgumentParser(prog="cpalie", description="CPA structures on nilpotent Lie algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", parents=[common], help="Witt dimensions of F_{g,c}")
    p.add_argument("g", type=int)
    p.add_argument("c", type=int)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("build", parents=[common], help="bracket table of F_{g,c} on a Lyndon basis")
    p.add_argument("g", type=int)
    p.add_argument("c", type=int)
    p.add_argument("--out", help="write the algebra JSON here")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("info", parents=[common], help="invariants of an algebra")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("cpa-verify", parents=[common], help="check the CPA axioms for a product file")
    p.add_argument("algebra")
    p.add_argument("product")
    p.set_defaults(func=cmd_cpa_verify)

    p = sub.add_parser("cpa-solve", parents=[common], help="solve for all CPA structures and decide centrality")
    p.add_argument("algebra")
    p.add_argument("--export", help="write the solution variety JSON here")
    p.set_defaults(func=cmd_cpa_solve)

    p = sub.add_parser("property-f", parents=[common], help="pair-system test of property F")
    p.add_argument("algebra")
    p.add_argument("--samples", type=int, default=25, help="random pairs for non-free algebras")
    p.set_defaults(func=cmd_property_f)

    p = sub.add_parser("grid", parents=[common], help="grid system for three or more generators")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("conjecture", parents=[common], help="property F scan over F_{2,c}")
    p.add_argument("--cmax", type=int, required=True)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("catalog", parents=[common], help="catalog of named algebras")
    p.add_argument("action", choices=["list"])
    p.set_defaults(func=cmd_catalog)
    return parser


INPUT_ERRORS = (
    UnknownAlgebraError,
    io.MalformedFileError,
    MalformedTableError,
    JacobiViolation,
    PreconditionError,
    ValueError,
    OSError,
)


def main(argv: list[str] | None = None, out: Callable[[str], None] | None = None) -> int:
    write = out or (lambda s: sys.stdout.write(s + "\n"))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        result = args.func(args)
    except INPUT_ERRORS as exc:
        msg = str(exc) or type(exc).__name__
        if args.json:
            write(io.dumps({"verdict": "error", "error": msg}))
        else:
            sys.stderr.write(f"error: {msg}\n")
        return EXIT_INPUT
    if args.timings:
        result.data["seconds"] = round(time.perf_counter() - start, 3)
        result.lines.append(f"elapsed {time.perf_counter() - start:.2f}s")
    if args.json:
        write(io.dumps(result.data))
    else:
        for line in result.lines:
            write(line)
    return result.code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
