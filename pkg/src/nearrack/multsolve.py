"""
Solver for multiplicative equation systems over the units of an algebraically
closed field of characteristic zero.

A system is a list of rows ``prod_j u_j^(a_ij) = rhs_i`` with integer exponent
vectors over the unknowns and monomial right-hand sides in external symbols.
Solving is integer linear algebra on the exponent lattice: a Hermite-style
triangularisation (processing unknowns from the last to the first, so the
lexicographically earliest unknowns survive as free parameters) yields

* an expression for each dependent unknown as a monomial in the free ones,
* torsion conditions (rows like ``x2^3 = x1^3``) that constrain free unknowns
  without determining them,
* residual conditions on external symbols (from rows whose unknown part
  cancels entirely), and
* for inhomogeneous rows with pivot d > 1, tracked d-th roots together with a
  fresh root-of-unity symbol of order d covering all branches.

Smith normal form over arbitrary-precision integers supplies the canonical
invariants (free rank and torsion orders) and is exposed on its own.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .scalars import Monomial

SIGN_SYMBOL = "-1"  # pseudo-symbol of order 2 used in lattice reductions


class MultSolveError(ValueError):
    pass


class InconsistentSystemError(MultSolveError):
    """A row combination forces 1 = -1; carries the integer certificate."""

    def __init__(self, combo: dict[int, int], residue: Monomial):
        self.combo = dict(combo)
        self.residue = residue
        super().__init__(
            f"inconsistent system: row combination {self.combo} forces {residue} = 1"
        )


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SNFResult:
    D: tuple[tuple[int, ...], ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        out = []
        for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)):
            if self.D[i][i]:
                out.append(self.D[i][i])
        return tuple(out)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SNFResult:
    """U * A * V = D with D diagonal, d_i | d_(i+1), U and V unimodular."""
    A = [list(map(int, row)) for row in matrix]
    k = len(A)
    m = len(A[0]) if k else 0
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        if q:
            A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in A:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    def nearest_quotient(a: int, b: int) -> int:
        # b > 0; quotient minimizing |a - q*b|
        return (2 * a + b) // (2 * b)

    def diagonalize() -> int:
        t = 0
        while t < min(k, m):
            while True:
                # re-select the smallest nonzero magnitude as pivot each pass;
                # together with nearest-remainder division this keeps the
                # intermediate entries small
                pivot = None
                for i in range(t, k):
                    for j in range(t, m):
                        if A[i][j] and (
                            pivot is None
                            or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])
                        ):
                            pivot = (i, j)
                if pivot is None:
                    return t
                swap_rows(t, pivot[0])
                swap_cols(t, pivot[1])
                if A[t][t] < 0:
                    negate_row(t)
                for i in range(t + 1, k):
                    if A[i][t]:
                        add_row(i, t, nearest_quotient(A[i][t], A[t][t]))
                for j in range(t + 1, m):
                    if A[t][j]:
                        add_col(j, t, nearest_quotient(A[t][j], A[t][t]))
                if all(A[i][t] == 0 for i in range(t + 1, k)) and all(
                    A[t][j] == 0 for j in range(t + 1, m)
                ):
                    break
            t += 1
        return t

    r = diagonalize()
    # enforce the divisibility chain d_i | d_(i+1) by merging violating columns
    # and re-diagonalizing (each merge replaces d_i with gcd(d_i, d_j))
    while True:
        viol = next(
            (
                (i, j)
                for i in range(r)
                for j in range(i + 1, r)
                if A[j][j] % A[i][i]
            ),
            None,
        )
        if viol is None:
            break
        i, j = viol
        add_col(i, j, -1)  # col_i += col_j
        r = diagonalize()

    for i in range(min(k, m)):
        if A[i][i] < 0:
            negate_row(i)

    return SNFResult(
        tuple(tuple(row) for row in A),
        tuple(tuple(row) for row in U),
        tuple(tuple(row) for row in V),
    )


# ---------------------------------------------------------------------------
# integer lattices (membership, HNF reduction)
# ---------------------------------------------------------------------------

def _hnf_int_basis(gens: Iterable[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF basis of the lattice spanned by gens (leftmost pivots)."""
    basis: dict[int, list[int]] = {}  # lead index -> row
    pending = [list(map(int, g)) for g in gens if any(g)]
    while pending:
        row = pending.pop()
        while True:
            lead = next((i for i, v in enumerate(row) if v), None)
            if lead is None:
                break
            if lead not in basis:
                if row[lead] < 0:
                    row = [-v for v in row]
                basis[lead] = row
                break
            b = basis[lead]
            if abs(row[lead]) < abs(b[lead]):
                basis[lead], row = row, b
                if basis[lead][lead] < 0:
                    basis[lead] = [-v for v in basis[lead]]
                continue
            q = row[lead] // b[lead]
            row = [a - q * c for a, c in zip(row, b)]
    rows = [basis[k] for k in sorted(basis)]
    # reduce above-pivot entries
    for i in range(len(rows) - 1, -1, -1):
        lead_i = next(j for j, v in enumerate(rows[i]) if v)
        for a in range(i):
            q = rows[a][lead_i] // rows[i][lead_i]
            if q:
                rows[a] = [x - q * y for x, y in zip(rows[a], rows[i])]
    return rows


def in_lattice(vec: Sequence[int], basis_rows: Sequence[Sequence[int]]) -> bool:
    """Is vec in the integer row span of basis_rows (assumed HNF)?"""
    v = list(map(int, vec))
    for row in basis_rows:
        lead = next(j for j, x in enumerate(row) if x)
        if v[lead] % row[lead] == 0 and v[lead]:
            q = v[lead] // row[lead]
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def monomials_to_lattice(
    monos: Iterable[Monomial],
) -> tuple[list[str], list[list[int]], int]:
    """
    Encode monomials as integer vectors over their joint symbol set.

    Returns (symbols, vectors, scale): exponents are scaled by the lcm of all
    denominators; the sign sits on the pseudo-symbol ``-1``.  Order relations
    of root symbols are NOT included (callers add them as needed).
    """
    monos = list(monos)
    syms: set[str] = set()
    denom = 1
    for m in monos:
        for name, e in m.exps:
            syms.add(name)
            denom = denom * e.denominator // gcd(denom, e.denominator)
        if m.sign == -1:
            syms.add(SIGN_SYMBOL)
    symbols = sorted(syms)
    index = {s: i for i, s in enumerate(symbols)}
    vecs = []
    for m in monos:
        v = [0] * len(symbols)
        for name, e in m.exps:
            v[index[name]] = int(e * denom)
        if m.sign == -1:
            v[index[SIGN_SYMBOL]] = denom
        vecs.append(v)
    return symbols, vecs, denom


def is_identity_modulo(mono: Monomial, conditions: Iterable[Monomial] = ()) -> bool:
    """
    Does the monomial equal 1 given the conditions and the declared orders of
    its root-of-unity symbols?  Decided exactly as integer lattice membership.
    """
    conditions = list(conditions)
    if mono.is_identity():
        return True
    symbols, vecs, denom = monomials_to_lattice([mono] + conditions)
    target, gens = vecs[0], vecs[1:]
    # order relations: s^d = 1 for every declared root symbol, and (-1)^2 = 1
    orders: dict[str, int] = {}
    for m in [mono] + conditions:
        orders.update(m.symbol_orders)
    for i, s in enumerate(symbols):
        d = 2 if s == SIGN_SYMBOL else orders.get(s)
        if d:
            row = [0] * len(symbols)
            row[i] = d * denom
            gens.append(row)
    if not gens:
        return not any(target)
    return in_lattice(target, _hnf_int_basis(gens))


def same_condition_lattice(
    conds_a: Iterable[Monomial], conds_b: Iterable[Monomial]
) -> bool:
    """Do two condition lists generate the same constraints (mod symbol orders)?"""
    a, b = list(conds_a), list(conds_b)
    return all(is_identity_modulo(c, b) for c in a) and all(
        is_identity_modulo(c, a) for c in b
    )


def canonicalize_conditions(conds: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """
    A minimal deterministic generating set for the constraint lattice of the
    given conditions, reduced modulo the declared orders of root symbols.
    """
    conds = [c for c in conds if not c.is_identity()]
    if not conds:
        return ()
    symbols, vecs, denom = monomials_to_lattice(conds)
    orders: dict[str, int] = {}
    for c in conds:
        orders.update(c.symbol_orders)
    order_rows = []
    for i, s in enumerate(symbols):
        d = 2 if s == SIGN_SYMBOL else orders.get(s)
        if d:
            row = [0] * len(symbols)
            row[i] = d * denom
            order_rows.append(row)
    order_basis = _hnf_int_basis(order_rows) if order_rows else []
    full = _hnf_int_basis(vecs + order_rows)
    out = []
    for row in full:
        if order_basis and in_lattice(row, order_basis):
            continue
        exps: dict[str, Fraction] = {}
        sign = 1
        for i, s in enumerate(symbols):
            if not row[i]:
                continue
            if s == SIGN_SYMBOL:
                if Fraction(row[i], denom) % 2:
                    sign = -1
                continue
            exps[s] = Fraction(row[i], denom)
        out.append(Monomial._make(sign, exps, orders))
    return tuple(m for m in out if not m.is_identity())


# ---------------------------------------------------------------------------
# multiplicative systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultSystem:
    """Rows prod_j unknowns[j]^vec[j] = rhs, rhs a monomial in external symbols."""

    unknowns: tuple[str, ...]
    rows: tuple[tuple[tuple[int, ...], Monomial], ...]

    def __post_init__(self):
        for vec, _ in self.rows:
            if len(vec) != len(self.unknowns):
                raise MultSolveError(
                    f"row length {len(vec)} != {len(self.unknowns)} unknowns"
                )

    @staticmethod
    def build(
        unknowns: Sequence[str],
        rows: Iterable[tuple[Sequence[int], Monomial]],
    ) -> "MultSystem":
        seen = set()
        clean = []
        for vec, rhs in rows:
            key = (tuple(vec), rhs)
            if key in seen:
                continue
            seen.add(key)
            if not any(vec) and rhs.is_identity():
                continue
            clean.append((tuple(int(x) for x in vec), rhs))
        return MultSystem(tuple(unknowns), tuple(clean))

    def is_homogeneous(self) -> bool:
        return all(rhs.is_identity() for _, rhs in self.rows)

    def exponent_matrix(self) -> list[list[int]]:
        return [list(vec) for vec, _ in self.rows]

    def substitute(self, values: dict[str, Monomial]) -> list[Monomial]:
        """Residue rhs^-1 * prod values[u]^a per row (identity iff satisfied)."""
        out = []
        for vec, rhs in self.rows:
            acc = rhs.inverse()
            for name, a in zip(self.unknowns, vec):
                if a:
                    acc = acc * values[name] ** a
            out.append(acc)
        return out


@dataclass(frozen=True)
class SolutionFamily:
    """Complete parametrization of a MultSystem's solution set."""

    system: MultSystem
    free: tuple[str, ...]
    expr: dict[str, Monomial]
    conditions: tuple[Monomial, ...]
    eps_orders: dict[str, int]
    free_rank: int
    torsion_orders: tuple[int, ...]

    def substitution_residues(self) -> list[Monomial]:
        return self.system.substitute(self.expr)

    def verify_substitution(self) -> bool:
        """Every source row reduces to 1 given conditions and symbol orders."""
        conds = list(self.conditions)
        return all(
            is_identity_modulo(res, conds) for res in self.substitution_residues()
        )

    def to_json_dict(self) -> dict:
        return {
            "unknowns": list(self.system.unknowns),
            "free": list(self.free),
            "expr": {k: str(v) for k, v in sorted(self.expr.items())},
            "conditions": [str(c) for c in self.conditions],
            "torsion_symbols": dict(sorted(self.eps_orders.items())),
            "free_rank": self.free_rank,
            "torsion_orders": list(self.torsion_orders),
        }


@dataclass
class _Row:
    vec: list[int]
    rhs: Monomial
    combo: dict[int, int]

    def scaled_sub(self, other: "_Row", q: int) -> None:
        if not q:
            return
        self.vec = [a - q * b for a, b in zip(self.vec, other.vec)]
        self.rhs = self.rhs * other.rhs ** (-q)
        for k, v in other.combo.items():
            nv = self.combo.get(k, 0) - q * v
            if nv:
                self.combo[k] = nv
            else:
                self.combo.pop(k, None)

    def negate(self) -> None:
        self.vec = [-a for a in self.vec]
        self.rhs = self.rhs.inverse()
        self.combo = {k: -v for k, v in self.combo.items()}


def canonical_torsion_orders(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of the product of cyclic groups of the given orders."""
    orders = [d for d in orders if d > 1]
    if not orders:
        return ()
    snf = smith_normal_form([[d if i == j else 0 for j in range(len(orders))]
                             for i, d in enumerate(orders)])
    return tuple(d for d in snf.invariant_factors if d > 1)


def solve(system: MultSystem, mode: Optional[str] = None) -> SolutionFamily:
    """
    Solve a multiplicative system completely.

    mode "conditions" keeps torsion pivots as constraints among named free
    unknowns (the natural shape for homogeneous coefficient systems); mode
    "express" resolves every pivot into an expression, introducing tracked
    d-th roots and fresh root-of-unity symbols (the natural shape for twist
    systems).  The default picks "conditions" iff the system is homogeneous.
    """
    if mode is None:
        mode = "conditions" if system.is_homogeneous() else "express"
    if mode not in ("conditions", "express"):
        raise MultSolveError(f"unknown mode {mode!r}")

    m = len(system.unknowns)
    live = [_Row(list(vec), rhs, {i: 1}) for i, (vec, rhs) in enumerate(system.rows)]
    residues: list[_Row] = []
    unit_pivots: dict[int, _Row] = {}
    torsion_pivots: dict[int, _Row] = {}

    def sweep_zero_rows() -> None:
        nonlocal live
        keep = []
        for r in live:
            if any(r.vec):
                keep.append(r)
            elif not r.rhs.is_identity():
                residues.append(r)
        live = keep

    while True:
        # phase 1: Gauss-Jordan on unit entries, preferring to make the
        # highest-index unknowns dependent (so low-index ones stay free)
        while True:
            sweep_zero_rows()
            pick = None
            for c in range(m - 1, -1, -1):
                if c in unit_pivots:
                    continue
                cands = [r for r in live if abs(r.vec[c]) == 1]
                if cands:
                    pick = (c, min(cands, key=lambda r: sum(1 for v in r.vec if v)))
                    break
            if pick is None:
                break
            c, row = pick
            live.remove(row)
            if row.vec[c] < 0:
                row.negate()
            for other in live + list(unit_pivots.values()):
                if other.vec[c]:
                    other.scaled_sub(row, other.vec[c])
            unit_pivots[c] = row
        # phase 2: Hermite-reduce what is left (highest-index leads); any unit
        # pivot it surfaces goes back through phase 1
        basis: dict[int, _Row] = {}
        for row in live:
            while True:
                lead = next((cc for cc in range(m - 1, -1, -1) if row.vec[cc]), None)
                if lead is None:
                    if not row.rhs.is_identity():
                        residues.append(row)
                    break
                if lead not in basis:
                    if row.vec[lead] < 0:
                        row.negate()
                    basis[lead] = row
                    break
                b = basis[lead]
                if abs(row.vec[lead]) < abs(b.vec[lead]):
                    basis[lead], row = row, b
                    if basis[lead].vec[lead] < 0:
                        basis[lead].negate()
                    continue
                row.scaled_sub(b, row.vec[lead] // b.vec[lead])
        live = list(basis.values())
        if any(
            any(abs(v) == 1 for v in r.vec) for r in live
        ):
            continue
        torsion_pivots = {
            next(cc for cc in range(m - 1, -1, -1) if r.vec[cc]): r for r in live
        }
        break

    # normalize every row's entries at torsion pivot columns into [0, d)
    t_cols = sorted(torsion_pivots, reverse=True)
    for i, c in enumerate(t_cols):
        row = torsion_pivots[c]
        for c2 in t_cols[i + 1 :]:
            b = torsion_pivots[c2]
            row.scaled_sub(b, row.vec[c2] // b.vec[c2])
    for row in list(unit_pivots.values()) + residues:
        for c2 in t_cols:
            b = torsion_pivots[c2]
            row.scaled_sub(b, row.vec[c2] // b.vec[c2])

    # residual conditions / inconsistencies
    conditions: list[Monomial] = []
    for row in residues:
        res = row.rhs.inverse()  # row says 1 = rhs, i.e. rhs^-1 must be 1
        if res.is_identity():
            continue
        if not res.exps and res.sign == -1:
            raise InconsistentSystemError(row.combo, res)
        conditions.append(res)

    # classify pivots
    expr: dict[str, Monomial] = {}
    eps_orders: dict[str, int] = {}
    dependent: set[int] = set()
    torsion_conditions: list[Monomial] = []
    for c in sorted(torsion_pivots):  # triangular: tails sit at lower columns
        row = torsion_pivots[c]
        d = row.vec[c]
        name = system.unknowns[c]
        if mode == "conditions":
            cond = row.rhs.inverse()
            for j, a in enumerate(row.vec):
                if a:
                    cond = cond * Monomial.param(system.unknowns[j], a)
            torsion_conditions.append(cond)
            continue
        # expression: u_c = (rhs * prod_tail u_j^-a)^(1/d) * eps
        body = row.rhs
        for j, a in enumerate(row.vec):
            if a and j != c:
                uj = system.unknowns[j]
                body = body * expr.get(uj, Monomial.param(uj)) ** (-a)
        e = body ** Fraction(1, d)
        eps = f"eps_{name}"
        eps_orders[eps] = d
        e = e * Monomial.root(eps, d)
        expr[name] = e
        dependent.add(c)
    for c in sorted(unit_pivots):
        row = unit_pivots[c]
        name = system.unknowns[c]
        body = row.rhs
        for j, a in enumerate(row.vec):
            if a and j != c:
                uj = system.unknowns[j]
                body = body * expr.get(uj, Monomial.param(uj)) ** (-a)
        expr[name] = body
        dependent.add(c)

    free = tuple(
        system.unknowns[c] for c in range(m) if c not in dependent
    )
    for name in free:
        expr[name] = Monomial.param(name)

    conditions = list(torsion_conditions) + list(
        canonicalize_conditions(conditions)
    )

    snf = smith_normal_form(system.exponent_matrix()) if system.rows else None
    rank = snf.rank if snf else 0
    torsion = canonical_torsion_orders(snf.invariant_factors) if snf else ()

    family = SolutionFamily(
        system=system,
        free=free,
        expr=expr,
        conditions=tuple(conditions),
        eps_orders=eps_orders,
        free_rank=m - rank,
        torsion_orders=torsion,
    )
    if not family.verify_substitution():
        raise MultSolveError("internal error: family fails its own substitution check")
    return family
