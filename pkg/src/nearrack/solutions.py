"""
Finite set-theoretic solutions of the Yang-Baxter equation, racks, and
near-rack solutions.

A solution (X, r) on X = [1, n] is stored by its component permutations:
r(i, j) = (sigma_i(j), tau_j(i)).  A near-rack solution is one whose right
component is a single involution tau (the same for every j).  Racks are
stored as their full multiplication table, table[i-1][j-1] = i |> j.

Everything here is exhaustive finite checking and backtracking search; the
sets involved stay small (|X| <= 10 for the shipped constructions).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .permkit import Permutation, PermutationError, compose, from_cycles, identity, involutions


class SolutionError(ValueError):
    pass


class BranchError(SolutionError):
    """A piecewise-defined family was evaluated outside its printed branches."""


# ---------------------------------------------------------------------------
# core types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SetSolution:
    """r(i, j) = (sigma[i](j), tau[j](i)) on X = [1, size]."""

    size: int
    sigma: tuple[Permutation, ...]
    tau: tuple[Permutation, ...]

    def __post_init__(self):
        if self.size < 1:
            raise SolutionError("need a nonempty set")
        if len(self.sigma) != self.size or len(self.tau) != self.size:
            raise SolutionError("need one sigma_i and one tau_j per element")
        for p in (*self.sigma, *self.tau):
            if p.n != self.size:
                raise SolutionError("component permutation degree mismatch")

    def r(self, i: int, j: int) -> tuple[int, int]:
        return (self.sigma[i - 1](j), self.tau[j - 1](i))

    def r_inverse_table(self) -> dict[tuple[int, int], tuple[int, int]]:
        inv = {}
        for i in range(1, self.size + 1):
            for j in range(1, self.size + 1):
                inv[self.r(i, j)] = (i, j)
        if len(inv) != self.size * self.size:
            raise SolutionError("r is not bijective")
        return inv

    def common_tau(self) -> Optional[Permutation]:
        """The single right component, when all tau_j coincide."""
        first = self.tau[0]
        return first if all(t == first for t in self.tau) else None

    def relabel(self, phi: Permutation) -> "SetSolution":
        """The isomorphic solution carried along the bijection phi."""
        if phi.n != self.size:
            raise SolutionError("relabelling degree mismatch")
        n = self.size
        inv = phi.inverse()
        sigma = [None] * n
        tau = [None] * n
        for x in range(1, n + 1):
            sigma[phi(x) - 1] = compose(compose(phi, self.sigma[x - 1]), inv)
            tau[phi(x) - 1] = compose(compose(phi, self.tau[x - 1]), inv)
        return SetSolution(n, tuple(sigma), tuple(tau))


@dataclass(frozen=True)
class Rack:
    """Binary operation with bijective rows satisfying self-distributivity."""

    size: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.size
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise SolutionError("rack table must be square of the declared size")
        for i, row in enumerate(self.table, start=1):
            try:
                Permutation(row)
            except PermutationError:
                raise SolutionError(f"left translation of {i} is not a bijection")
        for i, j, k in itertools.product(range(1, n + 1), repeat=3):
            if self.op(i, self.op(j, k)) != self.op(self.op(i, j), self.op(i, k)):
                raise SolutionError(
                    f"self-distributivity fails at ({i},{j},{k})"
                )

    def op(self, i: int, j: int) -> int:
        return self.table[i - 1][j - 1]

    def phi(self, i: int) -> Permutation:
        """The left translation j -> i |> j."""
        return Permutation(self.table[i - 1])

    def as_solution(self) -> SetSolution:
        """The rack-type solution r(x, y) = (x |> y, x)."""
        n = self.size
        return SetSolution(
            n,
            tuple(self.phi(i) for i in range(1, n + 1)),
            tuple(identity(n) for _ in range(n)),
        )

    def relabel(self, phi: Permutation) -> "Rack":
        n = self.size
        table = [[0] * n for _ in range(n)]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                table[phi(i) - 1][phi(j) - 1] = phi(self.op(i, j))
        return Rack(n, tuple(tuple(row) for row in table))


@dataclass(frozen=True)
class NearRackSolution:
    """A solution whose right component is one involution tau != id."""

    base: SetSolution
    tau: Permutation

    def __post_init__(self):
        common = self.base.common_tau()
        if common is None or common != self.tau:
            raise SolutionError("right components are not the single given tau")
        if not self.tau.is_involution():
            raise SolutionError("tau must be an involution distinct from id")

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def sigma(self) -> tuple[Permutation, ...]:
        return self.base.sigma

    @staticmethod
    def from_parts(
        sigma: Sequence[Permutation], tau: Permutation
    ) -> "NearRackSolution":
        n = tau.n
        base = SetSolution(n, tuple(sigma), tuple(tau for _ in range(n)))
        return NearRackSolution(base, tau)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Report:
    is_ybe: bool
    involutive: bool
    rack_type: bool
    near_rack: bool
    fixed_pairs: tuple[tuple[int, int], ...]

    def to_json_dict(self) -> dict:
        return {
            "is_ybe": self.is_ybe,
            "involutive": self.involutive,
            "rack_type": self.rack_type,
            "near_rack": self.near_rack,
            "fixed_pairs": [list(p) for p in self.fixed_pairs],
        }


def is_braid_solution(s: SetSolution) -> bool:
    """Brute-force (r x id)(id x r)(r x id) = (id x r)(r x id)(id x r)."""
    n = s.size

    def r12(w):
        a, b = s.r(w[0], w[1])
        return (a, b, w[2])

    def r23(w):
        a, b = s.r(w[1], w[2])
        return (w[0], a, b)

    for w in itertools.product(range(1, n + 1), repeat=3):
        if r12(r23(r12(w))) != r23(r12(r23(w))):
            return False
    return True


def verify(s: SetSolution) -> Report:
    n = s.size
    ybe = is_braid_solution(s)
    involutive = all(
        s.r(*s.r(i, j)) == (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )
    rack_type = all(t.is_identity() for t in s.tau)
    common = s.common_tau()
    near_rack = ybe and common is not None and common.is_involution()
    fixed = tuple(
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if s.r(i, j) == (i, j)
    )
    return Report(ybe, involutive, rack_type, near_rack, fixed)


# ---------------------------------------------------------------------------
# derived solutions
# ---------------------------------------------------------------------------

def derived_rack(s: SetSolution) -> Rack:
    """The rack x |> y = tau_x sigma_{tau_y^{-1}(x)} (y) of a solution."""
    n = s.size
    tau_inv = [t.inverse() for t in s.tau]
    table = [
        [s.tau[x - 1](s.sigma[tau_inv[y - 1](x) - 1](y)) for y in range(1, n + 1)]
        for x in range(1, n + 1)
    ]
    return Rack(n, tuple(tuple(row) for row in table))


def derived_solution(s: SetSolution) -> tuple[SetSolution, Rack]:
    """The conjugated rack-type solution T r T^{-1} and its rack."""
    if not is_braid_solution(s):
        raise SolutionError("derived solution needs a braid-equation solution")
    rack = derived_rack(s)
    return rack.as_solution(), rack


def near_rack_from(rack: Rack, tau: Permutation) -> NearRackSolution:
    """
    The near-rack solution r(x, y) = (x |> tau(y), tau(x)) attached to a rack
    and a compatible involution.
    """
    n = rack.size
    if tau.n != n:
        raise SolutionError("tau degree does not match the rack")
    if not tau.is_involution():
        raise SolutionError("tau must be an involution distinct from id")
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            if tau(rack.op(tau(x), y)) != rack.op(x, tau(y)):
                raise SolutionError(
                    f"tau is incompatible with the rack at witness pair ({x},{y})"
                )
    sigma = tuple(
        Permutation(tuple(rack.op(x, tau(y)) for y in range(1, n + 1)))
        for x in range(1, n + 1)
    )
    out = NearRackSolution.from_parts(sigma, tau)
    assert derived_rack(out.base).table == rack.table
    return out


def compatible_involutions(rack: Rack) -> list[Permutation]:
    return [
        t
        for t in involutions(rack.size)
        if all(
            t(rack.op(t(x), y)) == rack.op(x, t(y))
            for x in range(1, rack.size + 1)
            for y in range(1, rack.size + 1)
        )
    ]


@dataclass(frozen=True)
class NearRackEnumeration:
    rack: Rack
    solutions: tuple[NearRackSolution, ...]
    representatives: tuple[NearRackSolution, ...]

    @property
    def raw_count(self) -> int:
        return len(self.solutions)

    @property
    def iso_class_count(self) -> int:
        return len(self.representatives)


def enum_near_racks(rack: Rack) -> NearRackEnumeration:
    """All near-rack solutions over the given rack table, with iso classes."""
    sols = tuple(near_rack_from(rack, t) for t in compatible_involutions(rack))
    reps: list[NearRackSolution] = []
    for s in sols:
        if not any(isomorphic(s.base, rep.base) for rep in reps):
            reps.append(s)
    return NearRackEnumeration(rack, sols, tuple(reps))


# ---------------------------------------------------------------------------
# isomorphism search
# ---------------------------------------------------------------------------

def isomorphic(s1: SetSolution, s2: SetSolution) -> Optional[Permutation]:
    """
    A bijection phi with (phi x phi) r1 = r2 (phi x phi), or None.

    Plain backtracking over images, pruning with sigma/tau cycle types and
    with partial consistency of the intertwining identity.
    """
    if s1.size != s2.size:
        raise SolutionError("isomorphism needs equal sizes")
    n = s1.size

    def profile(s: SetSolution, x: int):
        return (
            s.sigma[x - 1].cycle_type(),
            s.tau[x - 1].cycle_type(),
            s.sigma[x - 1](x) == x,
            s.r(x, x) == (x, x),
        )

    prof1 = [profile(s1, x) for x in range(1, n + 1)]
    prof2 = [profile(s2, x) for x in range(1, n + 1)]
    candidates = [
        [y for y in range(1, n + 1) if prof2[y - 1] == prof1[x - 1]]
        for x in range(1, n + 1)
    ]
    img = [0] * (n + 1)
    used = [False] * (n + 1)

    def consistent(x: int) -> bool:
        for a in range(1, n + 1):
            if not img[a]:
                continue
            for b in (x,):
                for i, j in ((a, b), (b, a)):
                    u, v = s1.r(i, j)
                    if img[u] and img[v]:
                        if s2.r(img[i], img[j]) != (img[u], img[v]):
                            return False
        return True

    def extend(x: int) -> bool:
        if x > n:
            return True
        for y in candidates[x - 1]:
            if used[y]:
                continue
            img[x] = y
            used[y] = True
            if consistent(x) and extend(x + 1):
                return True
            img[x] = 0
            used[y] = False
        return False

    if extend(1):
        phi = Permutation(tuple(img[1:]))
        assert s1.relabel(phi).sigma == s2.sigma and s1.relabel(phi).tau == s2.tau
        return phi
    return None


def rack_isomorphic(r1: Rack, r2: Rack) -> Optional[Permutation]:
    """A bijection phi with phi(x |> y) = phi(x) |> phi(y), or None."""
    if r1.size != r2.size:
        raise SolutionError("rack isomorphism needs equal sizes")
    return isomorphic(r1.as_solution(), r2.as_solution())


# ---------------------------------------------------------------------------
# rack constructors
# ---------------------------------------------------------------------------

def trivial_rack(n: int) -> Rack:
    return Rack(n, tuple(tuple(range(1, n + 1)) for _ in range(n)))


def dihedral_rack(n: int) -> Rack:
    """Z_n with i |> j = 2i - j, labels 1..n standing for residues (n ~ 0)."""
    def lab(v: int) -> int:
        v %= n
        return v if v else n

    return Rack(n, tuple(
        tuple(lab(2 * i - j) for j in range(1, n + 1)) for i in range(1, n + 1)
    ))


def affine_rack(m: int, u: int) -> Rack:
    """Z_m with a |> b = u*b + (1-u)*a; u must be a unit mod m."""
    from math import gcd

    if gcd(u % m, m) != 1:
        raise SolutionError(f"{u} is not invertible mod {m}")

    def lab(v: int) -> int:
        v %= m
        return v if v else m

    return Rack(m, tuple(
        tuple(lab(u * b + (1 - u) * a) for b in range(1, m + 1))
        for a in range(1, m + 1)
    ))


def conjugation_rack(elements: Sequence[Permutation]) -> Rack:
    """
    Conjugation x |> y = x y x^{-1} on an explicitly ordered, conjugation-closed
    list of permutations (the ordering fixes the labels 1..len(elements)).
    """
    elems = list(elements)
    index = {p.map: i + 1 for i, p in enumerate(elems)}
    if len(index) != len(elems):
        raise SolutionError("conjugation rack needs distinct elements")
    n = len(elems)
    table = []
    for x in elems:
        row = []
        xinv = x.inverse()
        for y in elems:
            z = compose(compose(x, y), xinv)
            if z.map not in index:
                raise SolutionError(f"conjugate {z} escapes the given element list")
            row.append(index[z.map])
        table.append(tuple(row))
    return Rack(n, tuple(table))


def conjugacy_class(rep: Permutation, group: Iterable[Permutation]) -> list[Permutation]:
    """The class of rep, ordered lexicographically by canonical cycle form."""
    seen = {rep.map}
    for g in group:
        z = compose(compose(g, rep), g.inverse())
        seen.add(z.map)
    return sorted((Permutation(t) for t in seen), key=lambda p: p.cycles())


# ---------------------------------------------------------------------------
# the two dihedral-related families
# ---------------------------------------------------------------------------

def k_family(n: int) -> SetSolution:
    """
    The piecewise solution on X = [1, 2n] attached to the dihedral rack of
    order 2n; a near-rack solution for n >= 2 (tau degenerates for n = 1).
    """
    if n < 1:
        raise SolutionError("need n >= 1")
    size = 2 * n

    def r(a: int, b: int) -> tuple[int, int]:
        if a == 1:
            return (b, 1)
        g, d = divmod(b + 2 * a - 2, size)
        e, f = divmod(2 * n + 1 - b + 2 * a - 2, size)
        if (a + b) % 2 == 0:
            if d == 0:
                return (size, size - a + 2)
            if d > 0:
                return (d, size - a + 2)
        else:
            if f == 0:
                return (1, size - a + 2)
            if f > 0:
                return (size + 1 - f, size - a + 2)
        raise BranchError(f"no printed branch covers the pair ({a},{b})")

    return _solution_from_map(size, r)


def n_family(n: int) -> SetSolution:
    """The piecewise solution on X = [1, 2n+1] attached to the dihedral rack
    of order 2n+1; a near-rack solution for every n >= 1."""
    if n < 1:
        raise SolutionError("need n >= 1")
    size = 2 * n + 1

    def right(a: int) -> int:
        return 2 * n - a + 2

    def R(gamma: int, a: int, b: int) -> tuple[int, int]:
        if b + gamma <= 2 * n + 1:
            return (b + gamma, right(a))
        if b + gamma == 2 * n + 2:
            return (2 * n + 1, right(a))
        if b + gamma >= 2 * n + 3:
            return (4 * n + 3 - gamma - b, right(a))
        raise BranchError(f"no printed branch covers ({a},{b})")

    def L(gamma: int, a: int, b: int) -> tuple[int, int]:
        if gamma < b:
            return (b - gamma, right(a))
        if b <= gamma <= b + 2 * n:
            return (gamma - b + 1, right(a))
        raise BranchError(f"no printed branch covers ({a},{b})")

    def r(a: int, b: int) -> tuple[int, int]:
        if a == n + 1:
            return (b, right(a))
        even = (a + b) % 2 == 0
        if a < n + 1:
            gamma = 2 * (n - a + 1)
            return L(gamma, a, b) if even else R(gamma, a, b)
        gamma = 2 * (a - n - 1)
        return L(gamma, a, b) if not even else R(gamma, a, b)

    return _solution_from_map(size, r)


def _solution_from_map(size: int, r) -> SetSolution:
    sig = []
    tau_img = [None] * size
    for a in range(1, size + 1):
        row = []
        for b in range(1, size + 1):
            u, v = r(a, b)
            row.append(u)
            if tau_img[a - 1] is None:
                tau_img[a - 1] = v
            elif tau_img[a - 1] != v:
                raise SolutionError("right component depends on the second argument")
        sig.append(Permutation(tuple(row)))
    tau = Permutation(tuple(tau_img))
    return SetSolution(size, tuple(sig), tuple(tau for _ in range(size)))


# ---------------------------------------------------------------------------
# metahomomorphism solutions on groups
# ---------------------------------------------------------------------------

def metahomo_solution(
    mult: Sequence[Sequence[int]], tau_map: Sequence[int]
) -> SetSolution:
    """
    The solution r(x, y) = (x y tau(x)^{-1}, tau(x)) on a finite group given by
    its multiplication table (1-based labels), valid iff
    tau(x y tau(x)^{-1}) = tau(x) tau(y) tau(tau(x))^{-1} for all x, y.
    """
    n = len(mult)
    if any(len(row) != n for row in mult) or len(tau_map) != n:
        raise SolutionError("multiplication table / tau size mismatch")

    def mul(a: int, b: int) -> int:
        return mult[a - 1][b - 1]

    ident = next(
        (e for e in range(1, n + 1) if all(mul(e, x) == x and mul(x, e) == x for x in range(1, n + 1))),
        None,
    )
    if ident is None:
        raise SolutionError("table has no identity element")
    inv = {}
    for a in range(1, n + 1):
        b = next((b for b in range(1, n + 1) if mul(a, b) == ident), None)
        if b is None or mul(b, a) != ident:
            raise SolutionError(f"element {a} has no inverse (not a group table)")
        inv[a] = b

    def tau(x: int) -> int:
        return tau_map[x - 1]

    for x in range(1, n + 1):
        for y in range(1, n + 1):
            lhs = tau(mul(mul(x, y), inv[tau(x)]))
            rhs = mul(mul(tau(x), tau(y)), inv[tau(tau(x))])
            if lhs != rhs:
                raise SolutionError(
                    f"metahomomorphism identity fails at witness pair ({x},{y})"
                )

    sigma = tuple(
        Permutation(tuple(mul(mul(x, y), inv[tau(x)]) for y in range(1, n + 1)))
        for x in range(1, n + 1)
    )
    tau_perm = Permutation(tuple(tau_map))
    return SetSolution(n, sigma, tuple(tau_perm for _ in range(n)))


# ---------------------------------------------------------------------------
# involutive classification
# ---------------------------------------------------------------------------

def involutive_representative(n: int, k: int) -> NearRackSolution:
    """r(i, j) = (tau(j), tau(i)) with tau = (1,2)(3,4)...(2k-1,2k)."""
    if not 1 <= k <= n // 2:
        raise SolutionError(f"need 1 <= k <= {n // 2}")
    tau = from_cycles(n, [(2 * i - 1, 2 * i) for i in range(1, k + 1)])
    return NearRackSolution.from_parts(tuple(tau for _ in range(n)), tau)


def involutive_near_racks(n: int) -> list[NearRackSolution]:
    """One representative per iso class of involutive near-rack solutions."""
    if n < 2:
        raise SolutionError("need |X| >= 2")
    return [involutive_representative(n, k) for k in range(1, n // 2 + 1)]


def search_constant_sigma_involutive(n: int) -> list[NearRackSolution]:
    """
    Exhaustive search over all solutions r(i, j) = (sigma(j), tau(i)) with a
    single sigma and involutive tau != id, keeping the involutive YBE ones and
    returning one representative per iso class.
    """
    reps: list[NearRackSolution] = []
    for tau in involutions(n):
        for sig_tab in itertools.permutations(range(1, n + 1)):
            sigma = Permutation(sig_tab)
            base = SetSolution(
                n, tuple(sigma for _ in range(n)), tuple(tau for _ in range(n))
            )
            rep = verify(base)
            if not (rep.is_ybe and rep.involutive and rep.near_rack):
                continue
            cand = NearRackSolution(base, tau)
            if not any(isomorphic(base, r.base) for r in reps):
                reps.append(cand)
    return reps
