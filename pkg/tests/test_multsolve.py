import itertools
import random
from fractions import Fraction

import pytest

from nearrack.multsolve import (
    InconsistentSystemError,
    MultSystem,
    canonical_torsion_orders,
    canonicalize_conditions,
    is_identity_modulo,
    same_condition_lattice,
    smith_normal_form,
    solve,
)
from nearrack.scalars import Monomial, parse_monomial


def exact_det(M):
    M = [list(row) for row in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[-1][-1]


def check_snf_postconditions(A):
    res = smith_normal_form(A)
    k, m = len(A), len(A[0])
    UA = [[sum(res.U[i][t] * A[t][j] for t in range(k)) for j in range(m)] for i in range(k)]
    UAV = [
        [sum(UA[i][t] * res.V[t][j] for t in range(m)) for j in range(m)]
        for i in range(k)
    ]
    assert all(UAV[i][j] == res.D[i][j] for i in range(k) for j in range(m))
    for i in range(k):
        for j in range(m):
            if i != j:
                assert res.D[i][j] == 0
    f = res.invariant_factors
    assert all(b % a == 0 for a, b in zip(f, f[1:]))
    assert abs(exact_det([list(r) for r in res.U])) == 1
    assert abs(exact_det([list(r) for r in res.V])) == 1


def test_snf_identity():
    assert smith_normal_form([[1, 0], [0, 1]]).invariant_factors == (1, 1)


def test_snf_diag_2_3():
    res = smith_normal_form([[2, 0], [0, 3]])
    assert res.invariant_factors == (1, 6)


def test_snf_rank_deficient():
    # the row lattice of [[4,6],[6,9]] is generated by (2,3), whose content
    # is 1, so the normal form is diag(1, 0)
    res = smith_normal_form([[4, 6], [6, 9]])
    assert res.invariant_factors == (1,)
    assert res.D[1][1] == 0
    check_snf_postconditions([[4, 6], [6, 9]])


def test_snf_500_random_matrices():
    rng = random.Random(20240801)
    for _ in range(400):
        k, m = rng.randint(1, 6), rng.randint(1, 6)
        A = [[rng.randint(-20, 20) for _ in range(m)] for _ in range(k)]
        check_snf_postconditions(A)
    for _ in range(100):
        A = [[rng.choice([0, 0, 2, 4, -6, 12, 30]) for _ in range(4)] for _ in range(4)]
        check_snf_postconditions(A)


def test_solve_single_torsion_unknown():
    fam = solve(MultSystem.build(["u"], [([2], Monomial.one())]))
    assert fam.free == ("u",)
    assert fam.free_rank == 0
    assert fam.torsion_orders == (2,)
    assert [str(c) for c in fam.conditions] == ["u^2"]
    assert fam.verify_substitution()


def test_solve_unit_pivot_preferred_over_torsion():
    # u1 * u2^2 = 1 has a free solution set; u1 should become dependent
    fam = solve(MultSystem.build(["u1", "u2"], [([1, 2], Monomial.one())]))
    assert fam.free == ("u2",)
    assert fam.torsion_orders == ()
    assert str(fam.expr["u1"]) == "u2^-2"


def test_solve_inconsistent_system():
    with pytest.raises(InconsistentSystemError) as exc:
        solve(MultSystem.build(["u"], [([0], Monomial.minus_one())]))
    assert exc.value.combo  # integer certificate names the offending rows


def test_solve_inhomogeneous_square_root():
    # z1^2 = a/e  ->  z1 = eps * (a/e)^(1/2)
    rhs = parse_monomial("a/e")
    fam = solve(MultSystem.build(["z1"], [([2], rhs)]), mode="express")
    z = fam.expr["z1"]
    assert z.exponents["a"] == Fraction(1, 2)
    assert z.exponents["e"] == Fraction(-1, 2)
    assert fam.eps_orders == {"eps_z1": 2}
    assert fam.verify_substitution()


def test_solve_residual_condition_on_externals():
    # 1 = x1/x2 cannot constrain the unknowns; it becomes a condition
    fam = solve(
        MultSystem.build(["z"], [([0], parse_monomial("x1/x2"))]), mode="express"
    )
    assert len(fam.conditions) == 1
    assert is_identity_modulo(parse_monomial("x1/x2"), fam.conditions)


def brute_force_count(system: MultSystem, m: int) -> int:
    count = 0
    k = len(system.unknowns)
    for assignment in itertools.product(range(m), repeat=k):
        ok = True
        for vec, rhs in system.rows:
            assert rhs.is_identity()
            if sum(a * e for a, e in zip(assignment, vec)) % m:
                ok = False
                break
        if ok:
            count += 1
    return count


def predicted_count(system: MultSystem, m: int) -> int:
    # |Hom(Z^k / rowlattice, mu_m)| from the invariant factors
    if not system.rows:
        return m ** len(system.unknowns)
    res = smith_normal_form(system.exponent_matrix())
    free = len(system.unknowns) - res.rank
    out = m ** free
    for d in res.invariant_factors:
        out *= __import__("math").gcd(d, m)
    return out


def test_solver_against_brute_force_counts():
    rng = random.Random(99)
    for _ in range(60):
        k = rng.randint(1, 3)
        rows = [
            ([rng.randint(-3, 3) for _ in range(k)], Monomial.one())
            for _ in range(rng.randint(1, 3))
        ]
        system = MultSystem.build([f"u{i}" for i in range(k)], rows)
        for m in (2, 3, 4):
            assert brute_force_count(system, m) == predicted_count(system, m)


def test_is_identity_modulo():
    c = parse_monomial("x1^3/x2^3")
    assert is_identity_modulo(parse_monomial("x1^6/x2^6"), [c])
    assert not is_identity_modulo(parse_monomial("x1/x2"), [c])
    eps = Monomial.root("eps", 3)
    assert is_identity_modulo(eps ** 3, [])
    assert is_identity_modulo(parse_monomial("x1/x2"), [parse_monomial("x1/x2") * eps, eps])
    # fractional exponents are scaled into an integer lattice
    assert is_identity_modulo(
        parse_monomial("x1^(1/2)/x2^(1/2)") ** 2, [parse_monomial("x1/x2")]
    )


def test_canonicalize_conditions():
    conds = [
        parse_monomial("x1^4/x2^4"),
        parse_monomial("x1/x2"),
        parse_monomial("x1^2/x2^2"),
    ]
    out = canonicalize_conditions(conds)
    assert len(out) == 1
    assert same_condition_lattice(out, [parse_monomial("x1/x2")])
    # conditions implied by declared symbol orders disappear
    q = Monomial.root("q", 3)
    assert canonicalize_conditions([q ** 3]) == ()
    assert [str(c) for c in canonicalize_conditions([q ** 2])] == ["q"]


def test_canonical_torsion_orders():
    assert canonical_torsion_orders([2, 3]) == (6,)
    assert canonical_torsion_orders([2, 4]) == (2, 4)
    assert canonical_torsion_orders([1, 1]) == ()
    assert canonical_torsion_orders([3, 4]) == (12,)


def test_substitution_check_is_automated():
    # every returned family re-substitutes into its source rows
    rng = random.Random(5)
    for _ in range(40):
        k = rng.randint(1, 4)
        rows = [
            ([rng.randint(-2, 2) for _ in range(k)], Monomial.one())
            for _ in range(rng.randint(1, 4))
        ]
        fam = solve(MultSystem.build([f"u{i}" for i in range(k)], rows))
        assert fam.verify_substitution()
