"""
Twist-equivalence certificates for near-rack braided spaces.

For a near-rack braided space with involution tau and coefficients R, the
twist w_i -> z_i w_{tau(i)} intertwines the braiding with a rack-type
braiding exactly when the z_i satisfy

    z_i^2 = z_j * z_{sigma_i(tau(j))} * R[i][tau(j)] / R[tau(i)][j]

for every pair (i, j).  This module builds that multiplicative system,
solves it (symbolically over a coefficient family, or concretely), packages
the outcome as a machine-checkable certificate, and re-verifies certificates
by direct operator arithmetic.

The involutive case has a closed form, z_i = sqrt(R[i][tau(1)] / R[tau(i)][1])
up to one overall free scale; the square roots stay symbolic (fractional
exponents) until a caller picks branch values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .braided import (
    BraidedError,
    BraidedSpace,
    MonomialOperator,
    braid_check,
    braiding_operator,
    twist,
    twist_operator,
    _tensor2,
)
from .multsolve import (
    InconsistentSystemError,
    MultSystem,
    SolutionFamily,
    is_identity_modulo,
    solve,
)
from .permkit import Permutation
from .scalars import CycScalar, Monomial, ScalarError, as_cyc, evaluate, zeta
from .solutions import derived_solution

Scalar = Union[Monomial, CycScalar]


class TEquivError(ValueError):
    pass


def _near_rack_tau(b: BraidedSpace) -> Permutation:
    tau = b.solution.common_tau()
    if tau is None or not tau.is_involution():
        raise TEquivError("twist equivalence is built for near-rack solutions")
    return tau


def _z_name(i: int) -> str:
    return f"z{i}"


def z_system(b: BraidedSpace) -> MultSystem:
    """The |X|^2 twist equations as a multiplicative system in z_1..z_m."""
    tau = _near_rack_tau(b)
    if not b.is_symbolic():
        raise TEquivError("z_system needs symbolic coefficients; "
                          "solve_tequiv handles concrete spaces directly")
    m = b.dimension
    names = [_z_name(i) for i in range(1, m + 1)]
    rows = []
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            vec = [0] * m
            vec[i - 1] += 2
            vec[j - 1] -= 1
            vec[b.solution.sigma[i - 1](tau(j)) - 1] -= 1
            rhs = b.R[i - 1][tau(j) - 1] * b.R[tau(i) - 1][j - 1].inverse()
            rows.append((vec, rhs))
    return MultSystem.build(names, rows)


@dataclass(frozen=True)
class TEquivCertificate:
    """A (candidate) twist equivalence: z-scalars plus the twisted space."""

    base: BraidedSpace
    tau: Permutation
    z: tuple[Scalar, ...]
    derived: BraidedSpace
    conditions: tuple[Monomial, ...] = ()
    family: Optional[SolutionFamily] = None

    def is_symbolic(self) -> bool:
        return any(isinstance(s, Monomial) for s in self.z) or self.base.is_symbolic()

    def to_json_dict(self) -> dict:
        return {
            "base": self.base.to_json_dict(),
            "tau": str(self.tau),
            "z": [str(s) for s in self.z],
            "conditions": [str(c) for c in self.conditions],
            "derived": self.derived.to_json_dict(),
        }


@dataclass(frozen=True)
class TEquivObstruction:
    """Proof that no twist scalars exist: an inconsistent row combination."""

    combo: dict[int, int]
    residue: Monomial

    def __str__(self) -> str:
        return (
            f"no twist scalars: combining rows {self.combo} forces "
            f"{self.residue} = 1"
        )


def solve_tequiv(
    b: BraidedSpace,
) -> Union[TEquivCertificate, TEquivObstruction]:
    """
    Solve the twist system.  The result is a certificate (whose conditions
    list any residual constraints on coefficient parameters; empty means the
    equivalence is unconditional) or an obstruction witness.
    """
    tau = _near_rack_tau(b)
    if b.is_symbolic():
        sym = b
        back: Optional[dict] = None
    else:
        # name the concrete entries, solve symbolically, evaluate the z's
        m = b.dimension
        sym = BraidedSpace(
            b.solution,
            tuple(
                tuple(Monomial.param(f"R{i}_{j}") for j in range(1, m + 1))
                for i in range(1, m + 1)
            ),
        )
        back = {
            f"R{i}_{j}": as_cyc(b.R[i - 1][j - 1])
            for i in range(1, m + 1)
            for j in range(1, m + 1)
        }
    system = z_system(sym)
    try:
        family = solve(system, mode="express")
    except InconsistentSystemError as e:
        return TEquivObstruction(e.combo, e.residue)
    zs = tuple(family.expr[_z_name(i)] for i in range(1, sym.dimension + 1))
    if back is None:
        derived = twist(b, zs, tau)
        return TEquivCertificate(b, tau, zs, derived, tuple(family.conditions), family)
    # concrete: conditions must already hold numerically
    for cond in family.conditions:
        val = _evaluate_with_unit_roots(cond, back)
        if val != 1:
            return TEquivObstruction({}, cond)
    zc = tuple(_evaluate_with_unit_roots(zm, back) for zm in zs)
    derived = twist(b, zc, tau)
    return TEquivCertificate(b, tau, zc, derived, (), family)


def _evaluate_with_unit_roots(
    mono: Monomial, values: Mapping[str, CycScalar]
) -> CycScalar:
    """Evaluate, choosing principal roots of unity for fractional exponents
    and sending fresh torsion symbols to 1."""
    vals = dict(values)
    roots: dict[tuple[str, int], CycScalar] = {}
    for name, e in mono.exps:
        if name not in vals:
            # solver-introduced torsion symbol: principal branch
            vals[name] = CycScalar.one(1)
        if e.denominator > 1:
            base = vals[name]
            root = _root_of_unity_root(base, e.denominator)
            if root is None:
                raise TEquivError(
                    f"no cyclotomic {e.denominator}-th root available for {name} = {base}"
                )
            roots[(name, e.denominator)] = root
    return evaluate(mono, vals, roots)


def _root_of_unity_root(value: CycScalar, d: int) -> Optional[CycScalar]:
    """A d-th root when value is a root of unity (lifting the field)."""
    order = value.root_of_unity_order()
    if order is None:
        return None
    # value = zeta_order^k for some k; its principal d-th root is
    # zeta_{order*d}^k
    for k in range(order):
        if value == CycScalar.root_of_unity(order, k):
            return CycScalar.root_of_unity(order * d, k)
    return None


def involutive_z(
    b: BraidedSpace,
    scale: Optional[str] = "z1",
    conditions: Sequence[Monomial] = (),
) -> tuple[Monomial, ...]:
    """
    Closed-form twist scalars for an involutive near-rack braided space:
    z_i = sqrt(R[i][tau(1)] / R[tau(i)][1]), times an optional free scale.
    The substitution into the full twist system is re-checked symbolically.
    """
    tau = _near_rack_tau(b)
    if not all(s == tau for s in b.solution.sigma):
        raise TEquivError("closed form needs an involutive solution (sigma_x = tau)")
    if not b.is_symbolic():
        raise TEquivError("closed form is symbolic; instantiate afterwards")
    m = b.dimension
    zs = []
    for i in range(1, m + 1):
        ratio = b.R[i - 1][tau(1) - 1] * b.R[tau(i) - 1][0].inverse()
        z = ratio ** Fraction(1, 2)
        if scale:
            z = z * Monomial.param(scale)
        zs.append(z)
    zs = tuple(zs)
    system = z_system(b)
    values = {_z_name(i): zs[i - 1] for i in range(1, m + 1)}
    for res in system.substitute(values):
        if not is_identity_modulo(res, conditions):
            raise TEquivError(
                "closed form fails the twist system; the coefficient table "
                "does not satisfy the braid constraints"
            )
    return zs


def check_z_power_identities(
    z: Sequence[Monomial],
    tau: Permutation,
    conditions: Sequence[Monomial] = (),
) -> bool:
    """
    The power identities implied by the twist system: for tau-fixed i,
    z_i^(2m) = prod_j z_j^2; for every i, (z_i z_{tau(i)})^(2m) = prod_j z_j^4.
    """
    m = len(z)
    prod2 = Monomial.one()
    for s in z:
        prod2 = prod2 * s * s
    for i in range(1, m + 1):
        if tau(i) == i:
            lhs = z[i - 1] ** (2 * m)
            if not is_identity_modulo(lhs * prod2.inverse(), conditions):
                return False
        lhs = (z[i - 1] * z[tau(i) - 1]) ** (2 * m)
        if not is_identity_modulo(lhs * (prod2 * prod2).inverse(), conditions):
            return False
    return True


# ---------------------------------------------------------------------------
# certificate instantiation and verification
# ---------------------------------------------------------------------------

def instantiate_certificate(
    cert: TEquivCertificate,
    values: Mapping[str, Union[CycScalar, int, Fraction]],
    roots: Optional[Mapping[tuple[str, int], Union[CycScalar, int, Fraction]]] = None,
) -> TEquivCertificate:
    """
    Evaluate a symbolic certificate at concrete parameter values.  The values
    must satisfy the certificate's conditions; solver-introduced torsion
    symbols default to 1 unless assigned.
    """
    if not cert.is_symbolic():
        return cert
    roots = {k: as_cyc(v) for k, v in (roots or {}).items()}
    vals = {k: as_cyc(v) for k, v in values.items()}

    def ev(mono: Monomial) -> CycScalar:
        local = dict(vals)
        needed_roots = dict(roots)
        for name, e in mono.exps:
            if name not in local:
                local[name] = CycScalar.one(1)
            if e.denominator > 1 and (name, e.denominator) not in needed_roots:
                r = _root_of_unity_root(local[name], e.denominator)
                if r is None:
                    raise TEquivError(
                        f"supply a root for {name}^(1/{e.denominator})"
                    )
                needed_roots[(name, e.denominator)] = r
        return evaluate(mono, local, needed_roots)

    for cond in cert.conditions:
        if ev(cond) != 1:
            raise TEquivError(f"assignment violates condition {cond} = 1")
    base = BraidedSpace(
        cert.base.solution,
        tuple(tuple(ev(s) for s in row) for row in cert.base.R),
    )
    z = tuple(ev(s) for s in cert.z)
    derived = twist(base, z, cert.tau)
    return TEquivCertificate(base, cert.tau, z, derived, ())


@dataclass(frozen=True)
class CertificateReport:
    equations_ok: bool
    conjugations_ok: bool
    braid_ok: bool
    solution_ok: bool
    witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return (
            self.equations_ok
            and self.conjugations_ok
            and self.braid_ok
            and self.solution_ok
        )

    def to_json_dict(self) -> dict:
        return {
            "equations_ok": self.equations_ok,
            "conjugations_ok": self.conjugations_ok,
            "braid_ok": self.braid_ok,
            "solution_ok": self.solution_ok,
            "ok": self.ok,
            "witness": list(self.witness) if self.witness else None,
        }


def verify_certificate(cert: TEquivCertificate) -> CertificateReport:
    """
    Re-verify a concrete certificate by direct arithmetic:

    1. every twist equation holds;
    2. both one-sided conjugations of the braiding by the twist equal the
       derived braiding, as operators on V (x) V;
    3. the derived braiding satisfies the braid equation;
    4. the derived space's solution is the derived (rack-type) solution.
    """
    if cert.is_symbolic():
        raise TEquivError("verification is concrete; instantiate first")
    b, tau, z = cert.base, cert.tau, cert.z
    m = b.dimension
    witness = None

    equations_ok = True
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            lhs = as_cyc(z[i - 1]) ** 2
            rhs = (
                as_cyc(z[j - 1])
                * as_cyc(z[b.solution.sigma[i - 1](tau(j)) - 1])
                * as_cyc(b.R[i - 1][tau(j) - 1])
                * as_cyc(b.R[tau(i) - 1][j - 1]).inverse()
            )
            if lhs != rhs:
                equations_ok = False
                witness = witness or ("equation", i, j)

    phi = twist_operator(b, z)
    eye = MonomialOperator.identity(m, CycScalar.one(1))
    c = braiding_operator(b)
    left = _tensor2(phi.inverse(), eye) @ c @ _tensor2(phi, eye)
    right = _tensor2(eye, phi.inverse()) @ c @ _tensor2(eye, phi)
    ctilde = braiding_operator(cert.derived)
    conjugations_ok = left == right == ctilde
    if not conjugations_ok and witness is None:
        witness = ("conjugation",)

    braid_ok = braid_check(cert.derived)
    if not braid_ok and witness is None:
        witness = ("braid",)

    expected_solution, _ = derived_solution(b.solution)
    solution_ok = (
        cert.derived.solution.sigma == expected_solution.sigma
        and cert.derived.solution.tau == expected_solution.tau
    )
    if not solution_ok and witness is None:
        witness = ("solution",)

    return CertificateReport(equations_ok, conjugations_ok, braid_ok, solution_ok, witness)
