"""
JSON document formats for solutions, racks, braided spaces and diagrams.

Cycle-notation strings keep solution files human-diffable; scalars are stored
in a small literal grammar: rationals (``-2/3``), roots of unity (``zeta6``,
``zeta12^5``), products (``2*zeta3``) and sums of such terms, or monomial text
(``x1^2/(x4*x5)``) for symbolic tables.  Parsing and serialization round-trip
canonically.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Optional, Union

from .braided import BraidedSpace
from .dynkin import GDD
from .permkit import Permutation, parse_cycles, print_cycles
from .scalars import CycScalar, Monomial, parse_monomial
from .solutions import Rack, SetSolution, affine_rack, dihedral_rack, trivial_rack


class DocumentError(ValueError):
    pass


# ---------------------------------------------------------------------------
# scalar literals
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"^[+-]?[^+-]*(?:\^\([^)]*\))?")


def parse_cyc_literal(text: str) -> CycScalar:
    """Parse sums of rational multiples of roots of unity."""
    s = text.replace(" ", "")
    if not s:
        raise DocumentError("empty scalar literal")
    out = CycScalar.zero(1)
    pos = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        pos = 1
    while pos <= len(s) - 1 or pos == 0:
        nxt_plus = s.find("+", pos)
        nxt_minus = s.find("-", pos)
        ends = [e for e in (nxt_plus, nxt_minus) if e != -1]
        end = min(ends) if ends else len(s)
        term = s[pos:end]
        if not term:
            raise DocumentError(f"malformed scalar literal: {text!r}")
        out = out + sign * _parse_cyc_term(term)
        if end == len(s):
            break
        sign = -1 if s[end] == "-" else 1
        pos = end + 1
    return out


def _parse_cyc_term(term: str) -> CycScalar:
    acc = CycScalar.one(1)
    for factor in term.split("*"):
        m = re.fullmatch(r"zeta(\d+)(?:\^(\d+))?", factor)
        if m:
            n, k = int(m.group(1)), int(m.group(2) or 1)
            acc = acc * CycScalar.root_of_unity(n, k)
            continue
        m = re.fullmatch(r"(\d+)(?:/(\d+))?", factor)
        if m:
            acc = acc * CycScalar.from_rational(
                Fraction(int(m.group(1)), int(m.group(2) or 1))
            )
            continue
        raise DocumentError(f"bad scalar factor {factor!r}")
    return acc


def cyc_literal(value: CycScalar) -> str:
    return str(value).replace(" ", "")


def parse_assignments(text: str) -> dict[str, CycScalar]:
    """Parse ``a=1,e=zeta3,b=-1`` style command-line assignments."""
    out = {}
    for piece in text.split(","):
        if not piece.strip():
            continue
        name, _, val = piece.partition("=")
        if not val:
            raise DocumentError(f"assignment {piece!r} needs name=value")
        out[name.strip()] = parse_cyc_literal(val.strip())
    return out


# ---------------------------------------------------------------------------
# solutions and racks
# ---------------------------------------------------------------------------

def solution_to_doc(s: SetSolution, metadata: Optional[dict] = None) -> dict:
    common = s.common_tau()
    doc = {
        "size": s.size,
        "sigma": [print_cycles(p) for p in s.sigma],
        "tau": print_cycles(common) if common is not None
        else [print_cycles(p) for p in s.tau],
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def solution_from_doc(doc: dict) -> SetSolution:
    try:
        n = int(doc["size"])
        sigma = tuple(parse_cycles(c, n) for c in doc["sigma"])
        tau_field = doc["tau"]
    except (KeyError, TypeError) as e:
        raise DocumentError(f"solution document missing field: {e}")
    if isinstance(tau_field, str):
        t = parse_cycles(tau_field, n)
        tau = tuple(t for _ in range(n))
    else:
        tau = tuple(parse_cycles(c, n) for c in tau_field)
    return SetSolution(n, sigma, tau)


def rack_to_doc(r: Rack) -> dict:
    return {"size": r.size, "table": [list(row) for row in r.table]}


def rack_from_doc(doc: dict) -> Rack:
    if "table" in doc:
        table = tuple(tuple(int(v) for v in row) for row in doc["table"])
        return Rack(len(table), table)
    kind = doc.get("type")
    if kind == "dihedral":
        return dihedral_rack(int(doc["n"]))
    if kind == "affine":
        return affine_rack(int(doc["modulus"]), int(doc["unit"]))
    if kind == "trivial":
        return trivial_rack(int(doc["n"]))
    raise DocumentError("rack document needs a table or a known constructor type")


# ---------------------------------------------------------------------------
# braided spaces and diagrams
# ---------------------------------------------------------------------------

def braided_to_doc(b: BraidedSpace) -> dict:
    doc = solution_to_doc(b.solution)
    doc["mode"] = "monomial" if b.is_symbolic() else "cyclotomic"
    if doc["mode"] == "cyclotomic":
        doc["N"] = b.cyclotomic_order()
        doc["R"] = [[cyc_literal(sc) for sc in row] for row in b.R]
    else:
        doc["R"] = [[str(sc) for sc in row] for row in b.R]
    return doc


def braided_from_doc(
    doc: dict, symbol_orders: Optional[dict[str, int]] = None
) -> BraidedSpace:
    sol = solution_from_doc(doc)
    mode = doc.get("mode", "cyclotomic")
    rows = doc.get("R")
    if rows is None:
        raise DocumentError("braided document needs an R table")
    orders = dict(symbol_orders or {})
    orders.update({k: int(v) for k, v in doc.get("symbol_orders", {}).items()})
    if mode == "monomial":
        R = tuple(tuple(parse_monomial(sc, orders) for sc in row) for row in rows)
    else:
        R = tuple(tuple(parse_cyc_literal(sc) for sc in row) for row in rows)
    return BraidedSpace(sol, R)


def gdd_to_doc(g: GDD) -> dict:
    return g.to_json_dict()


def gdd_from_doc(doc: dict) -> GDD:
    try:
        vertices = tuple(parse_cyc_literal(v) for v in doc["vertices"])
        edges = tuple(
            (int(i), int(j), parse_cyc_literal(lab)) for i, j, lab in doc["edges"]
        )
    except (KeyError, TypeError) as e:
        raise DocumentError(f"diagram document missing field: {e}")
    return GDD(vertices, edges)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
