"""
Command-line surface.

Subcommands operate on the JSON documents of ``jsonio`` and print JSON to
stdout (deterministically ordered).  Errors are reported as machine-readable
JSON on stderr with exit codes: 0 success, 1 verification failure, 2 usage
error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import jsonio
from .braided import BraidedError, braid_check, is_diagonal, ybe_coefficient_system
from .dynkin import DynkinError, check_tau_symmetry, classify, gdd, render
from .fixtures import ALL_FIXTURE_IDS, run_all
from .jsonio import DocumentError
from .multsolve import InconsistentSystemError, MultSolveError, solve
from .nichols import BudgetError, graded_dims
from .permkit import PermutationError, parse_cycles
from .scalars import ScalarError, evaluate
from .solutions import (
    SolutionError,
    derived_solution,
    enum_near_racks,
    verify,
)
from .tequiv import (
    TEquivCertificate,
    TEquivError,
    instantiate_certificate,
    solve_tequiv,
    verify_certificate,
)

USAGE_ERROR = 2
VERIFY_FAIL = 1
BUDGET_EXCEEDED = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = USAGE_ERROR):
        super().__init__(message)
        self.code = code


def _load(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise CliError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise CliError(f"invalid JSON in {path}: {e}")


def _emit(doc: dict) -> None:
    sys.stdout.write(jsonio.dumps(doc))


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        import tomllib
    except ModuleNotFoundError:  # python 3.10
        import tomli as tomllib
    try:
        return tomllib.loads(Path(path).read_text())
    except FileNotFoundError:
        raise CliError(f"no such config file: {path}")
    except tomllib.TOMLDecodeError as e:
        raise CliError(f"invalid TOML in {path}: {e}")


def cmd_verify(args) -> int:
    s = jsonio.solution_from_doc(_load(args.file))
    report = verify(s)
    _emit(report.to_json_dict())
    return 0 if report.is_ybe else VERIFY_FAIL


def cmd_derive(args) -> int:
    s = jsonio.solution_from_doc(_load(args.file))
    derived, rack = derived_solution(s)
    _emit({
        "derived": jsonio.solution_to_doc(derived),
        "rack": jsonio.rack_to_doc(rack),
    })
    return 0


def cmd_enum_near_racks(args) -> int:
    rack = jsonio.rack_from_doc(_load(args.rackfile))
    enumeration = enum_near_racks(rack)
    _emit({
        "iso_classes": enumeration.iso_class_count,
        "raw_count": enumeration.raw_count,
        "taus": [str(s.tau) for s in enumeration.solutions],
        "representatives": [
            jsonio.solution_to_doc(s.base) for s in enumeration.representatives
        ],
    })
    return 0


def cmd_solve_coefficients(args) -> int:
    s = jsonio.solution_from_doc(_load(args.file))
    family = solve(ybe_coefficient_system(s))
    if args.conditions_only:
        _emit({"conditions": [str(c) for c in family.conditions]})
    else:
        _emit(family.to_json_dict())
    return 0


def _braided_from_args(args, doc):
    """A braided space from a document, optionally instantiated via --R."""
    if "R" in doc:
        b = jsonio.braided_from_doc(doc)
    else:
        # bare solution: solve the coefficient system and use the family
        s = jsonio.solution_from_doc(doc)
        family = solve(ybe_coefficient_system(s))
        m = s.size
        from .braided import BraidedSpace

        b = BraidedSpace(s, tuple(
            tuple(family.expr[f"x{m * (i - 1) + j}"] for j in range(1, m + 1))
            for i in range(1, m + 1)
        ))
    if args.R:
        values = jsonio.parse_assignments(args.R)
        if b.is_symbolic():
            from .braided import BraidedSpace

            b = BraidedSpace(b.solution, tuple(
                tuple(evaluate(sc, values) for sc in row) for row in b.R
            ))
    return b


def cmd_t_equiv(args) -> int:
    doc = _load(args.file)
    b = _braided_from_args(args, doc)
    result = solve_tequiv(b)
    if not isinstance(result, TEquivCertificate):
        _emit({"obstruction": str(result)})
        return VERIFY_FAIL
    out = result.to_json_dict()
    if args.branch:
        from .multsolve import same_condition_lattice
        from .scalars import parse_monomial

        expected = [parse_monomial(c) for c in args.branch]
        out["branch_matches"] = same_condition_lattice(result.conditions, expected)
    if args.at:
        values = jsonio.parse_assignments(args.at)
        inst = instantiate_certificate(result, values)
        report = verify_certificate(inst)
        out["verification"] = report.to_json_dict()
        _emit(out)
        return 0 if report.ok else VERIFY_FAIL
    _emit(out)
    return 0


def cmd_nichols(args) -> int:
    doc = _load(args.file)
    b = _braided_from_args(args, doc)
    if b.is_symbolic():
        raise CliError("graded dimensions need concrete scalars; pass --R")
    data = graded_dims(
        b, cutoff=args.cutoff, mode=args.mode, budget_dim=args.budget,
        prime_count=args.primes,
    )
    out = data.to_json_dict()
    out["series"] = data.series_text()
    _emit(out)
    return 0


def cmd_gdd(args) -> int:
    doc = _load(args.file)
    if "q" in doc:
        from .dynkin import gdd_from_q_table

        q = tuple(
            tuple(jsonio.parse_cyc_literal(v) for v in row) for row in doc["q"]
        )
        diagram = gdd_from_q_table(q)
    else:
        b = _braided_from_args(args, doc)
        diagram = gdd(b)
    if args.format == "json":
        _emit(jsonio.gdd_to_doc(diagram))
    else:
        sys.stdout.write(render(diagram, args.format))
    if args.tau:
        tau = parse_cycles(args.tau, diagram.n)
        if not check_tau_symmetry(diagram, tau):
            return VERIFY_FAIL
    return 0


def cmd_classify(args) -> int:
    diagram = jsonio.gdd_from_doc(_load(args.gddfile))
    labels = classify(diagram)
    _emit({"matches": [lab.to_json_dict() for lab in labels]})
    return 0


def cmd_fixtures(args) -> int:
    ids = args.id if args.id else None
    if ids:
        unknown = [i for i in ids if i not in ALL_FIXTURE_IDS]
        if unknown:
            raise CliError(f"unknown fixture ids: {', '.join(unknown)}")
    results = run_all(ids)
    failed = 0
    for r in results:
        sys.stdout.write(r.summary() + "\n")
        if not r.passed:
            failed += 1
            for name, ok, info in r.checks:
                if not ok:
                    sys.stdout.write(f"    failed check: {name} {info}\n")
    sys.stdout.write(
        f"{len(results) - failed}/{len(results)} fixtures passed\n"
    )
    return 0 if failed == 0 else VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nearrack",
        description="Finite Yang-Baxter solutions, twists, and Nichols diagnostics",
    )
    p.add_argument("--config", help="TOML file with budget defaults")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check a solution document")
    s.add_argument("file")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("derive", help="derived solution and rack")
    s.add_argument("file")
    s.set_defaults(fn=cmd_derive)

    s = sub.add_parser("enum-near-racks", help="compatible involutions of a rack")
    s.add_argument("rackfile")
    s.set_defaults(fn=cmd_enum_near_racks)

    s = sub.add_parser("solve-coefficients", help="solve the braid coefficient system")
    s.add_argument("file")
    s.add_argument("--conditions-only", action="store_true")
    s.set_defaults(fn=cmd_solve_coefficients)

    s = sub.add_parser("t-equiv", help="twist-equivalence certificate")
    s.add_argument("file")
    s.add_argument("--R", help="parameter assignments a=1,b=zeta3,...")
    s.add_argument("--branch", nargs="*", help="expected residual conditions")
    s.add_argument("--at", help="concrete point for certificate verification")
    s.set_defaults(fn=cmd_t_equiv)

    s = sub.add_parser("nichols", help="graded dimensions of the Nichols algebra")
    s.add_argument("file")
    s.add_argument("--R", help="parameter assignments a=1,b=zeta3,...")
    s.add_argument("--cutoff", type=int, default=None)
    s.add_argument("--mode", choices=("exact", "modular"), default="exact")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--primes", type=int, default=None)
    s.set_defaults(fn=cmd_nichols)

    s = sub.add_parser("gdd", help="generalized Dynkin diagram of a diagonal braiding")
    s.add_argument("file")
    s.add_argument("--R", help="parameter assignments")
    s.add_argument("--format", choices=("ascii", "dot", "json"), default="ascii")
    s.add_argument("--tau", help="check the diagram symmetry under this involution")
    s.set_defaults(fn=cmd_gdd)

    s = sub.add_parser("classify", help="match a diagram against the catalogue")
    s.add_argument("gddfile")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("fixtures", help="run the regression corpus")
    fsub = s.add_subparsers(dest="fixtures_command", required=True)
    fr = fsub.add_parser("run")
    fr.add_argument("--id", nargs="*", help="fixture ids (default: all)")
    fr.set_defaults(fn=cmd_fixtures)
    fl = fsub.add_parser("list")
    fl.set_defaults(fn=lambda args: (_emit({"fixtures": ALL_FIXTURE_IDS}), 0)[1])

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        budgets = config.get("budgets", {})
        # a flag left at its None default falls back to config, then built-ins
        if getattr(args, "cutoff", 0) is None:
            args.cutoff = int(budgets.get("cutoff", 8))
        if getattr(args, "budget", 0) is None:
            args.budget = int(budgets.get("budget_dim", 6000))
        if getattr(args, "primes", 0) is None:
            args.primes = int(budgets.get("prime_count", 2))
        return args.fn(args)
    except BudgetError as e:
        _err("budget", str(e), required=e.required, budget=e.budget)
        return BUDGET_EXCEEDED
    except CliError as e:
        _err("usage", str(e))
        return e.code
    except (DocumentError, PermutationError, ScalarError, MultSolveError,
            SolutionError, BraidedError, DynkinError, TEquivError,
            InconsistentSystemError) as e:
        _err(type(e).__name__, str(e))
        return USAGE_ERROR


def _err(kind: str, message: str, **extra) -> None:
    doc = {"error": kind, "message": message}
    doc.update(extra)
    sys.stderr.write(json.dumps(doc, sort_keys=True) + "\n")


if __name__ == "__main__":
    sys.exit(main())
