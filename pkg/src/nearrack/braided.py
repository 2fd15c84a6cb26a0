"""
Braided vector spaces of set-theoretic type.

Given a solution (X, r) with |X| = m and a table of nonzero coefficients R,
the braiding acts on basis tensors by

    c(w_i (x) w_j) = R[i][j] * w_{sigma_i(j)} (x) w_{tau_j(i)}.

Such maps are monomial operators (generalized permutation matrices): each
basis vector goes to a scalar multiple of a basis vector.  Everything in this
module composes and compares monomial operators exactly; scalars are either
Monomial (symbolic mode) or CycScalar / Fraction (concrete mode).

Basis tensors of V^(x)n are indexed by words (i1, ..., in) over [1, m],
flattened row-major (the leftmost tensor factor is the most significant
digit).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Callable, Optional, Sequence, Union

from .multsolve import MultSystem
from .scalars import CycScalar, Monomial, as_cyc
from .solutions import NearRackSolution, SetSolution, derived_solution, is_braid_solution
from .permkit import Permutation

Scalar = Union[Monomial, CycScalar]


class BraidedError(ValueError):
    pass


def _is_one(s: Scalar) -> bool:
    if isinstance(s, Monomial):
        return s.is_identity()
    return as_cyc(s) == 1


def _is_zero(s: Scalar) -> bool:
    return not isinstance(s, Monomial) and as_cyc(s).is_zero()


def _mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def _inv(s: Scalar) -> Scalar:
    return s.inverse() if isinstance(s, (Monomial, CycScalar)) else 1 / s


# ---------------------------------------------------------------------------
# monomial operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOperator:
    """e_j -> scalars[j] * e_{targets[j]} on a space of the given dimension."""

    dimension: int
    targets: tuple[int, ...]
    scalars: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.targets) != self.dimension or len(self.scalars) != self.dimension:
            raise BraidedError("operator tables must match the dimension")
        for s in self.scalars:
            if _is_zero(s):
                raise BraidedError("monomial operators need nonzero scalars")
        if sorted(self.targets) != list(range(self.dimension)):
            raise BraidedError("index map must be a bijection")

    @staticmethod
    def identity(dimension: int, one: Scalar = None) -> "MonomialOperator":
        one = Monomial.one() if one is None else one
        return MonomialOperator(
            dimension, tuple(range(dimension)), tuple(one for _ in range(dimension))
        )

    def __matmul__(self, other: "MonomialOperator") -> "MonomialOperator":
        """Operator composition self o other (apply other first)."""
        if self.dimension != other.dimension:
            raise BraidedError("dimension mismatch in composition")
        targets = tuple(self.targets[t] for t in other.targets)
        scalars = tuple(
            _mul(other.scalars[j], self.scalars[other.targets[j]])
            for j in range(self.dimension)
        )
        return MonomialOperator(self.dimension, targets, scalars)

    def inverse(self) -> "MonomialOperator":
        targets = [0] * self.dimension
        scalars: list[Scalar] = [None] * self.dimension  # type: ignore[list-item]
        for j, t in enumerate(self.targets):
            targets[t] = j
            scalars[t] = _inv(self.scalars[j])
        return MonomialOperator(self.dimension, tuple(targets), tuple(scalars))

    def __eq__(self, other):
        if not isinstance(other, MonomialOperator):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.targets == other.targets
            and all(a == b for a, b in zip(self.scalars, other.scalars))
        )

    __hash__ = None

    def is_identity(self) -> bool:
        return all(t == j for j, t in enumerate(self.targets)) and all(
            _is_one(s) for s in self.scalars
        )

    def apply_word(self, j: int) -> tuple[int, Scalar]:
        return self.targets[j], self.scalars[j]


def operator_on_positions(
    dim_per_factor: int,
    n_factors: int,
    position: int,
    pair_op: Callable[[int, int], tuple[int, int, Scalar]],
) -> MonomialOperator:
    """
    Lift a two-factor monomial map to V^(x)n acting on tensor positions
    (position, position+1), 1-based.  pair_op(a, b) returns (a', b', scalar)
    on 1-based letters.
    """
    m, n = dim_per_factor, n_factors
    if not 1 <= position <= n - 1:
        raise BraidedError(f"position {position} out of range for {n} factors")
    dim = m ** n
    targets = [0] * dim
    scalars: list[Scalar] = [None] * dim  # type: ignore[list-item]
    hi = m ** (n - position - 1)  # weight of the right letter of the pair
    for w in range(dim):
        rest, low = divmod(w, hi)
        rest, b = divmod(rest, m)
        rest, a = divmod(rest, m)
        a2, b2, s = pair_op(a + 1, b + 1)
        targets[w] = ((rest * m + (a2 - 1)) * m + (b2 - 1)) * hi + low
        scalars[w] = s
    return MonomialOperator(dim, tuple(targets), tuple(scalars))


# ---------------------------------------------------------------------------
# braided spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BraidedSpace:
    """A solution together with its coefficient table R[i-1][j-1]."""

    solution: SetSolution
    R: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        m = self.solution.size
        if len(self.R) != m or any(len(row) != m for row in self.R):
            raise BraidedError("coefficient table must be |X| x |X|")
        for row in self.R:
            for s in row:
                if _is_zero(s):
                    raise BraidedError("coefficients must be nonzero")

    @property
    def dimension(self) -> int:
        return self.solution.size

    def is_symbolic(self) -> bool:
        return any(isinstance(s, Monomial) for row in self.R for s in row)

    def coefficient(self, i: int, j: int) -> Scalar:
        return self.R[i - 1][j - 1]

    def pair_map(self) -> Callable[[int, int], tuple[int, int, Scalar]]:
        sol = self.solution

        def op(i: int, j: int):
            u, v = sol.r(i, j)
            return u, v, self.R[i - 1][j - 1]

        return op

    def c_i(self, n_factors: int, i: int) -> MonomialOperator:
        """The braiding acting on tensor positions (i, i+1) of V^(x)n."""
        return operator_on_positions(self.dimension, n_factors, i, self.pair_map())

    def cyclotomic_order(self) -> int:
        """Smallest N with all concrete coefficients in Q(zeta_N)."""
        if self.is_symbolic():
            raise BraidedError("symbolic coefficients have no cyclotomic order")
        order = 1
        for row in self.R:
            for s in row:
                o = as_cyc(s).order
                order = order * o // gcd(order, o)
        return order

    def to_json_dict(self) -> dict:
        from .permkit import print_cycles

        mode = "monomial" if self.is_symbolic() else "cyclotomic"
        return {
            "size": self.solution.size,
            "sigma": [print_cycles(p) for p in self.solution.sigma],
            "tau": [print_cycles(p) for p in self.solution.tau],
            "mode": mode,
            "R": [[str(s) for s in row] for row in self.R],
        }


def braided_space_from_unknowns(s: SetSolution, prefix: str = "x") -> BraidedSpace:
    """The fully symbolic braided space with R[i][j] = x_{m(i-1)+j}."""
    m = s.size
    R = tuple(
        tuple(Monomial.param(f"{prefix}{m * (i - 1) + j}") for j in range(1, m + 1))
        for i in range(1, m + 1)
    )
    return BraidedSpace(s, R)


def coefficient_names(m: int, prefix: str = "x") -> list[str]:
    """Unknown names x1..x_{m^2} in row-major (i, j) order."""
    return [f"{prefix}{k}" for k in range(1, m * m + 1)]


def ybe_coefficient_system(s: SetSolution, prefix: str = "x") -> MultSystem:
    """
    The multiplicative constraints on R making the braiding a braid-equation
    solution: one row per triple (i, j, k), with the unknown R_{a,b} named
    prefix{m(a-1)+b}.
    """
    if not is_braid_solution(s):
        raise BraidedError("coefficient system needs a braid-equation solution")
    m = s.size
    names = coefficient_names(m, prefix)

    def idx(a: int, b: int) -> int:
        return m * (a - 1) + (b - 1)

    def sig(a: int, b: int) -> int:
        return s.sigma[a - 1](b)

    def tau(a: int, b: int) -> int:
        # tau_b(a)
        return s.tau[b - 1](a)

    rows = []
    for i, j, k in itertools.product(range(1, m + 1), repeat=3):
        vec = [0] * (m * m)
        vec[idx(i, j)] += 1
        vec[idx(tau(i, j), k)] += 1
        vec[idx(sig(i, j), s.sigma[tau(i, j) - 1](k))] += 1
        vec[idx(j, k)] -= 1
        vec[idx(i, sig(j, k))] -= 1
        vec[idx(tau(i, sig(j, k)), tau(j, k))] -= 1
        rows.append((vec, Monomial.one()))
    return MultSystem.build(names, rows)


def braiding_operator(b: BraidedSpace) -> MonomialOperator:
    """The braiding as a monomial operator on V (x) V."""
    return b.c_i(2, 1)


def braid_check(b: BraidedSpace) -> bool:
    """Exact check of (c x id)(id x c)(c x id) = (id x c)(c x id)(id x c)."""
    if b.is_symbolic():
        raise BraidedError("braid_check needs concrete scalars; use the "
                           "coefficient system for symbolic verification")
    c1 = b.c_i(3, 1)
    c2 = b.c_i(3, 2)
    return c1 @ c2 @ c1 == c2 @ c1 @ c2


def satisfies_coefficient_system(
    b: BraidedSpace, conditions: Sequence[Monomial] = ()
) -> bool:
    """Does R lie in the braid coefficient variety (symbolically, modulo the
    given conditions, or concretely by direct evaluation)?"""
    from .multsolve import is_identity_modulo

    system = ybe_coefficient_system(b.solution)
    m = b.dimension
    values = {
        f"x{m * (i - 1) + j}": b.R[i - 1][j - 1]
        for i in range(1, m + 1)
        for j in range(1, m + 1)
    }
    if b.is_symbolic():
        return all(
            is_identity_modulo(res, conditions) for res in system.substitute(values)
        )
    for vec, _ in system.rows:
        acc = CycScalar.one(1)
        for name, a in zip(system.unknowns, vec):
            if a:
                acc = acc * as_cyc(values[name]) ** a
        if acc != 1:
            return False
    return True


def is_diagonal(b: BraidedSpace) -> Optional[tuple[tuple[Scalar, ...], ...]]:
    """The q-table when the braiding permutes nothing, else None."""
    m = b.dimension
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if b.solution.r(i, j) != (j, i):
                return None
    return b.R


def twist(
    b: BraidedSpace, z: Sequence[Scalar], tau: Optional[Permutation] = None
) -> BraidedSpace:
    """
    The rack-type braided space carried by the twist w_i -> z_i w_{tau(i)}:
    coefficients R'[i][j] = (z_j / z_i) * R[i][tau(j)] over the derived
    solution.
    """
    common = b.solution.common_tau()
    if common is None or not common.is_involution():
        raise BraidedError("twist is defined for near-rack solutions only")
    if tau is not None and tau != common:
        raise BraidedError("tau does not match the solution's involution")
    tau = common
    m = b.dimension
    if len(z) != m:
        raise BraidedError("need one z_i per basis vector")
    for s in z:
        if _is_zero(s):
            raise BraidedError("twist scalars must be nonzero")
    derived, _ = derived_solution(b.solution)
    R = tuple(
        tuple(
            _mul(_mul(z[j - 1], _inv(z[i - 1])), b.R[i - 1][tau(j) - 1])
            for j in range(1, m + 1)
        )
        for i in range(1, m + 1)
    )
    return BraidedSpace(derived, R)


def twist_operator(b: BraidedSpace, z: Sequence[Scalar]) -> MonomialOperator:
    """The monomial operator w_i -> z_i w_{tau(i)} on V."""
    common = b.solution.common_tau()
    if common is None:
        raise BraidedError("twist operator needs a near-rack solution")
    m = b.dimension
    return MonomialOperator(
        m,
        tuple(common(i) - 1 for i in range(1, m + 1)),
        tuple(z),
    )


def conjugation_agrees(b: BraidedSpace, z: Sequence[Scalar]) -> bool:
    """
    Exact check (concrete mode) that the two one-sided conjugations of the
    braiding by the twist coincide:
    (phi^-1 x id) c (phi x id) = (id x phi^-1) c (id x phi).
    """
    if b.is_symbolic():
        raise BraidedError("conjugation check needs concrete scalars")
    m = b.dimension
    phi = twist_operator(b, z)
    one = CycScalar.one(1)
    eye = MonomialOperator.identity(m, one)
    left = _tensor2(phi.inverse(), eye) @ braiding_operator(b) @ _tensor2(phi, eye)
    right = _tensor2(eye, phi.inverse()) @ braiding_operator(b) @ _tensor2(eye, phi)
    return left == right


def _tensor2(a: MonomialOperator, b: MonomialOperator) -> MonomialOperator:
    da, db = a.dimension, b.dimension
    dim = da * db
    targets = [0] * dim
    scalars: list[Scalar] = [None] * dim  # type: ignore[list-item]
    for i in range(da):
        for j in range(db):
            w = i * db + j
            targets[w] = a.targets[i] * db + b.targets[j]
            scalars[w] = _mul(a.scalars[i], b.scalars[j])
    return MonomialOperator(dim, tuple(targets), tuple(scalars))


def tensor_operators(ops: Sequence[MonomialOperator]) -> MonomialOperator:
    out = ops[0]
    for op in ops[1:]:
        out = _tensor2(out, op)
    return out
