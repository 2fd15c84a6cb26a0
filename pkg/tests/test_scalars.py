import random
from fractions import Fraction

import pytest

from nearrack.nichols import element_of_order, primes_one_mod
from nearrack.scalars import (
    CycScalar,
    Monomial,
    ScalarError,
    cyclotomic_polynomial,
    evaluate,
    parse_monomial,
    zeta,
)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_root_relations():
    z3 = zeta(3)
    assert (z3 + z3 ** 2 + 1).is_zero()
    assert zeta(4) ** 2 == -1
    assert zeta(6, 2).is_primitive_root(3)
    assert zeta(6) ** 3 == -1
    assert zeta(2) == -1
    assert zeta(1) == 1


def test_cross_order_arithmetic():
    assert zeta(6, 2) == zeta(3)  # lift-based equality
    v = zeta(3) + zeta(4)
    assert v.order == 12
    assert (v - zeta(4)) == zeta(3)


def test_field_laws_random():
    rng = random.Random(3)
    for n in (3, 4, 5, 12):
        deg = len(cyclotomic_polynomial(n)) - 1
        for _ in range(25):
            coeffs = tuple(Fraction(rng.randint(-4, 4)) for _ in range(deg))
            a = CycScalar(n, coeffs)
            if a.is_zero():
                continue
            assert a * a.inverse() == 1
            b = CycScalar(
                n, tuple(Fraction(rng.randint(-4, 4)) for _ in range(deg))
            )
            assert (a + b) * (a + b) == a * a + 2 * a * b + b * b


def test_inverse_of_zero_raises():
    with pytest.raises(ScalarError):
        CycScalar.zero(3).inverse()


def test_order_detection():
    assert zeta(6, 2).root_of_unity_order() == 3
    assert (-zeta(3)).root_of_unity_order() == 6
    assert CycScalar.from_rational(1).root_of_unity_order() == 1
    assert CycScalar.from_rational(Fraction(3, 4)).root_of_unity_order() is None
    assert (zeta(5) + 1).root_of_unity_order() is None


def test_modular_image_is_ring_hom():
    # the map zeta -> (element of order N mod p) commutes with +, *, inverse
    rng = random.Random(11)
    N = 12
    p = primes_one_mod(N, 1)[0]
    w = element_of_order(N, p)
    deg = len(cyclotomic_polynomial(N)) - 1
    for _ in range(1000):
        a = CycScalar(N, tuple(Fraction(rng.randint(-9, 9)) for _ in range(deg)))
        b = CycScalar(N, tuple(Fraction(rng.randint(-9, 9)) for _ in range(deg)))
        fa, fb = a.evaluate_mod(p, w), b.evaluate_mod(p, w)
        assert (a + b).evaluate_mod(p, w) == (fa + fb) % p
        assert (a * b).evaluate_mod(p, w) == (fa * fb) % p
        if not a.is_zero() and fa:
            assert a.inverse().evaluate_mod(p, w) == pow(fa, -1, p)


# ---------------------------------------------------------------------------
# monomials
# ---------------------------------------------------------------------------

def x(name, e=1):
    return Monomial.param(name, e)


def test_monomial_cancellation():
    assert (x("x1") * x("x2").inverse()) * (x("x2") * x("x3")) == x("x1") * x("x3")


def test_monomial_rational_power_distributes():
    m = (x("x4") * x("x5") / x("x1") ** 2) ** Fraction(1, 3)
    assert m == x("x4", Fraction(1, 3)) * x("x5", Fraction(1, 3)) * x(
        "x1", Fraction(-2, 3)
    )


def test_root_symbol_refinement():
    q = Monomial.root("q", 4)
    half = q ** Fraction(1, 2)
    assert half * half == q
    assert q ** 4 == Monomial.one()
    # exponents of a root symbol live mod its order
    assert Monomial.root("q", 4, 9) == Monomial.root("q", 4, 1)
    assert (half ** 8).is_identity()


def test_fractional_power_of_sign_rejected():
    with pytest.raises(ScalarError):
        Monomial.minus_one() ** Fraction(1, 2)


def test_denominator_cap():
    with pytest.raises(ScalarError):
        x("a").pow(Fraction(1, 7), denominator_cap=6)
    assert x("a").pow(Fraction(1, 6), denominator_cap=6) == x("a", Fraction(1, 6))


def test_normalization_idempotent_and_group_laws():
    rng = random.Random(5)
    syms = ["a", "b", "c"]
    def rand_mono():
        m = Monomial.one() if rng.random() < 0.8 else Monomial.minus_one()
        for s in syms:
            m = m * Monomial.param(s, Fraction(rng.randint(-4, 4), rng.choice([1, 2, 3])))
        return m * Monomial.root("q", 6, rng.randint(0, 11))
    for _ in range(200):
        a, b, c = rand_mono(), rand_mono(), rand_mono()
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert (a * a.inverse()).is_identity()


def test_text_round_trip():
    for s in ["1", "-1", "x1", "-x1^(2/3)*x2^5", "x1^-1*x3^3*x4^-1"]:
        assert str(parse_monomial(s)) == s
    m = parse_monomial("(x1^2/(x4*x5))^(1/3)")
    assert m == (x("x1") ** 2 / (x("x4") * x("x5"))) ** Fraction(1, 3)
    q = parse_monomial("q^(2/3)*x9", {"q": 2})
    assert q.symbol_orders == {"q": 2}


def test_evaluate_homomorphism_and_roots():
    vals = {"x1": zeta(3), "x2": zeta(3), "q2": CycScalar.from_rational(-1)}
    a = x("x1") * x("x2").inverse()
    assert evaluate(a, vals) == 1
    b = Monomial.root("q2", 2, 2)
    assert evaluate(b, vals) == 1
    rng = random.Random(1)
    for _ in range(50):
        m1 = x("x1", rng.randint(-3, 3)) * x("x2", rng.randint(-3, 3))
        m2 = x("x1", rng.randint(-3, 3)) * x("x2", rng.randint(-3, 3))
        assert evaluate(m1 * m2, vals) == evaluate(m1, vals) * evaluate(m2, vals)


def test_evaluate_requires_assignment_and_roots():
    with pytest.raises(ScalarError):
        evaluate(x("a"), {})
    frac = x("a", Fraction(1, 3))
    with pytest.raises(ScalarError):
        evaluate(frac, {"a": CycScalar.one(1)})
    v = evaluate(frac, {"a": CycScalar.one(1)}, roots={("a", 3): zeta(3)})
    assert v == zeta(3)
    with pytest.raises(ScalarError):
        # supplied root does not cube to the assigned base value
        evaluate(frac, {"a": zeta(3)}, roots={("a", 3): CycScalar.one(1)})


def test_evaluate_rejects_zero_assignment():
    with pytest.raises(ScalarError):
        evaluate(x("a"), {"a": CycScalar.zero(1)})


def test_appendix_style_substitution():
    expr = parse_monomial("x3^3/(x1*x4)")
    vals = {"x1": CycScalar.one(1), "x3": CycScalar.one(1), "x4": CycScalar.one(1)}
    assert evaluate(expr, vals) == 1
