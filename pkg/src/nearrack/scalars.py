"""
Two scalar systems used by the braiding machinery.

``CycScalar`` is an exact element of the N-th cyclotomic field, stored in the
power basis 1, zeta, ..., zeta^(phi(N)-1) reduced modulo the N-th cyclotomic
polynomial, with Fraction coordinates.  Binary operations between values of
different orders lift both operands into the compositum Q(zeta_lcm).

``Monomial`` is a purely multiplicative symbolic scalar: a sign, a product of
root-of-unity symbols (each with a declared finite order), and a product of
formal parameters raised to exact rational exponents.  Monomials never carry
additive structure; they form a group under multiplication.

Root choices are explicit: a fractional exponent ``x^(1/d)`` denotes a chosen
d-th root, and ``evaluate`` demands the caller supply that root's value.  For
a root-of-unity symbol q of order m, ``q^(1/d)`` behaves as a fresh symbol of
order m*d whose d-th power is q; exponents of q are kept reduced mod m.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Optional, Union


class ScalarError(ValueError):
    """Arithmetic violation: zero inversion, undeclared symbol, bad root."""


# ---------------------------------------------------------------------------
# cyclotomic polynomials and field tables
# ---------------------------------------------------------------------------

def _poly_divmod(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials (remainder must vanish)
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        q, r = divmod(num[k + len(den) - 1], den[-1])
        assert r == 0
        out[k] = q
        for j, c in enumerate(den):
            num[k + j] -= q * c
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first."""
    if n < 1:
        raise ScalarError("cyclotomic order must be >= 1")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    # x^(deg+k) mod Phi_n for k = 0 .. deg-2, as rows of basis coordinates
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(-c) for c in phi[:-1]]  # x^deg
    rows.append(tuple(cur))
    for _ in range(deg - 2):
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        for j in range(deg):
            cur[j] -= top * phi[j]
        rows.append(tuple(cur))
    return tuple(rows)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise ScalarError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class CycScalar:
    """Exact element of Q(zeta_order), coordinates in the power basis."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        deg = euler_phi(self.order)
        if len(self.coeffs) != deg:
            raise ScalarError(
                f"need {deg} coordinates for order {self.order}, got {len(self.coeffs)}"
            )

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(value) -> "CycScalar":
        return CycScalar(1, (_as_fraction(value),))

    @staticmethod
    def zero(order: int = 1) -> "CycScalar":
        return CycScalar(order, tuple([Fraction(0)] * euler_phi(order)))

    @staticmethod
    def one(order: int = 1) -> "CycScalar":
        c = [Fraction(0)] * euler_phi(order)
        c[0] = Fraction(1)
        return CycScalar(order, tuple(c))

    @staticmethod
    def root_of_unity(n: int, k: int = 1) -> "CycScalar":
        """zeta_n^k, reduced into the power basis of Q(zeta_n)."""
        if n < 1:
            raise ScalarError("root order must be >= 1")
        k %= n
        deg = euler_phi(n)
        if k < deg:
            c = [Fraction(0)] * deg
            c[k] = Fraction(1)
            return CycScalar(n, tuple(c))
        # reduce x^k mod Phi_n
        out = CycScalar.one(n)
        z = CycScalar.root_of_unity(n, 1) if deg > 1 else CycScalar.one(n)
        if deg == 1:
            # Q(zeta_1)=Q(zeta_2)=Q: zeta_2 = -1
            val = Fraction(1) if n == 1 or k % n == 0 else Fraction(-1) ** k
            return CycScalar(n, (Fraction(val),))
        for _ in range(k):
            out = out * z
        return out

    # -- ring structure ------------------------------------------------------

    def lift(self, order: int) -> "CycScalar":
        """Embed into Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order:
            raise ScalarError(f"cannot lift order {self.order} into {order}")
        step = order // self.order
        z = CycScalar.root_of_unity(order, step)
        out = CycScalar.zero(order)
        power = CycScalar.one(order)
        for c in self.coeffs:
            if c:
                out = out + CycScalar(order, tuple(c * v for v in power.coeffs))
            power = power * z
        return out

    def _pair(self, other) -> tuple["CycScalar", "CycScalar"]:
        if isinstance(other, (int, Fraction)):
            other = CycScalar.from_rational(other)
        if not isinstance(other, CycScalar):
            return NotImplemented, NotImplemented  # type: ignore[return-value]
        if self.order == other.order:
            return self, other
        m = self.order * other.order // gcd(self.order, other.order)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return CycScalar(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        deg = len(a.coeffs)
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    conv[i + j] += x * y
        out = list(conv[:deg])
        table = _reduction_table(a.order)
        for k in range(deg, 2 * deg - 1):
            c = conv[k]
            if c:
                row = table[k - deg]
                for j in range(deg):
                    out[j] += c * row[j]
        return CycScalar(a.order, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ScalarError("inversion of zero")
        # extended Euclid in Q[x] against Phi_n
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = list(self.coeffs)

        def deg(p):
            d = len(p) - 1
            while d >= 0 and not p[d]:
                d -= 1
            return d

        def scale(p, c):
            return [x * c for x in p]

        def sub(p, q):
            out = [Fraction(0)] * max(len(p), len(q))
            for i, x in enumerate(p):
                out[i] += x
            for i, x in enumerate(q):
                out[i] -= x
            return out

        def shift(p, k):
            return [Fraction(0)] * k + list(p)

        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while deg(r1) > 0:
            q = [Fraction(0)] * (deg(r0) - deg(r1) + 1)
            rem = list(r0)
            while deg(rem) >= deg(r1):
                k = deg(rem) - deg(r1)
                c = rem[deg(rem)] / r1[deg(r1)]
                q[k] += c
                rem = sub(rem, shift(scale(r1, c), k))
            r0, r1 = r1, rem
            prod = [Fraction(0)] * (len(q) + len(s1))
            for i, x in enumerate(q):
                if x:
                    for j, y in enumerate(s1):
                        prod[i + j] += x * y
            s0, s1 = s1, sub(s0, prod)
        if deg(r1) != 0:
            raise ScalarError("element not invertible (shares a factor with Phi_n)")
        lead = r1[0]
        inv = [c / lead for c in s1]
        n = euler_phi(self.order)
        inv = (inv + [Fraction(0)] * n)[:n]
        return CycScalar(self.order, tuple(inv))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycScalar.from_rational(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return CycScalar.from_rational(other) * self.inverse()

    def __pow__(self, k: int) -> "CycScalar":
        if not isinstance(k, int):
            raise ScalarError("CycScalar powers must be integers")
        if k < 0:
            return self.inverse() ** (-k)
        out = CycScalar.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycScalar.from_rational(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # values of different orders may compare equal

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def is_one(self) -> bool:
        return self == CycScalar.one(1)

    def is_rational(self) -> Optional[Fraction]:
        if all(not c for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    # -- roots of unity ------------------------------------------------------

    def root_of_unity_order(self) -> Optional[int]:
        """Multiplicative order if finite, else None.

        Finite-order elements of Q(zeta_N) are exactly +-zeta_N^k, so the
        order divides lcm(2, N).
        """
        if self.is_zero():
            return None
        m = self.order if self.order % 2 == 0 else 2 * self.order
        if (self ** m) != CycScalar.one(1):
            return None
        d = 1
        while d <= m:
            if m % d == 0 and (self ** d) == CycScalar.one(1):
                return d
            d += 1
        return m

    def is_primitive_root(self, m: int) -> bool:
        """Decide membership in the set of primitive m-th roots of unity."""
        return self.root_of_unity_order() == m

    def evaluate_mod(self, p: int, zeta_image: int) -> int:
        """Image under zeta_order -> zeta_image in GF(p) (p a prime)."""
        acc = 0
        power = 1
        for c in self.coeffs:
            if c:
                den = c.denominator % p
                if den == 0:
                    raise ScalarError(f"prime {p} divides a denominator")
                acc = (acc + c.numerator * pow(den, -1, p) * power) % p
            power = (power * zeta_image) % p
        return acc % p

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        r = self.is_rational()
        if r is not None:
            return str(r)
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                z = f"zeta{self.order}" + (f"^{k}" if k > 1 else "")
                if c == 1:
                    parts.append(z)
                elif c == -1:
                    parts.append(f"-{z}")
                else:
                    parts.append(f"{c}*{z}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def zeta(n: int, k: int = 1) -> CycScalar:
    return CycScalar.root_of_unity(n, k)


ScalarLike = Union[CycScalar, int, Fraction]


def as_cyc(x: ScalarLike) -> CycScalar:
    return x if isinstance(x, CycScalar) else CycScalar.from_rational(x)


# ---------------------------------------------------------------------------
# symbolic monomials
# ---------------------------------------------------------------------------

def _mod_order(e: Fraction, order: int) -> Fraction:
    # reduce into [0, order)
    return e - (e / order).__floor__() * order


@dataclass(frozen=True)
class Monomial:
    """sign * prod(root symbols^e) * prod(parameters^e), exponents in Q."""

    sign: int = 1
    exps: tuple[tuple[str, Fraction], ...] = ()
    orders: tuple[tuple[str, int], ...] = ()  # orders of the root symbols present

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ScalarError("sign must be +1 or -1")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def one() -> "Monomial":
        return Monomial()

    @staticmethod
    def minus_one() -> "Monomial":
        return Monomial(sign=-1)

    @staticmethod
    def param(name: str, exp=1) -> "Monomial":
        return Monomial._make(1, {name: _as_fraction(exp)}, {})

    @staticmethod
    def root(name: str, order: int, exp=1) -> "Monomial":
        """A declared root-of-unity symbol of the given multiplicative order."""
        if order < 1:
            raise ScalarError(f"order of {name} must be >= 1")
        return Monomial._make(1, {name: _as_fraction(exp)}, {name: order})

    @staticmethod
    def _make(sign: int, exps: Mapping[str, Fraction], orders: Mapping[str, int]) -> "Monomial":
        clean: dict[str, Fraction] = {}
        kept_orders: dict[str, int] = {}
        for name, e in exps.items():
            e = _as_fraction(e)
            if name in orders:
                e = _mod_order(e, orders[name])
            if e:
                clean[name] = e
                if name in orders:
                    kept_orders[name] = orders[name]
        return Monomial(
            sign,
            tuple(sorted(clean.items())),
            tuple(sorted(kept_orders.items())),
        )

    # -- views ---------------------------------------------------------------

    @property
    def exponents(self) -> dict[str, Fraction]:
        return dict(self.exps)

    @property
    def symbol_orders(self) -> dict[str, int]:
        return dict(self.orders)

    def symbols(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.exps)

    def is_identity(self) -> bool:
        return self.sign == 1 and not self.exps

    def is_torsion_constant(self) -> bool:
        """True when every present symbol has finite declared order."""
        declared = dict(self.orders)
        return all(name in declared for name, _ in self.exps)

    # -- group ops -------------------------------------------------------------

    def _merged_orders(self, other: "Monomial") -> dict[str, int]:
        out = dict(self.orders)
        for name, d in other.orders:
            if out.get(name, d) != d:
                raise ScalarError(f"conflicting orders declared for {name}")
            out[name] = d
        return out

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        exps = dict(self.exps)
        for name, e in other.exps:
            exps[name] = exps.get(name, Fraction(0)) + e
        return Monomial._make(self.sign * other.sign, exps, self._merged_orders(other))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def inverse(self) -> "Monomial":
        return Monomial._make(self.sign, {n: -e for n, e in self.exps}, dict(self.orders))

    def __pow__(self, r) -> "Monomial":
        return self.pow(r)

    def pow(self, r, denominator_cap: Optional[int] = None) -> "Monomial":
        """Raise to an exact rational power.

        A non-integer power of the sign -1 has no declared root symbol and is
        rejected.  denominator_cap bounds the resulting exponent denominators
        (a guard against runaway root refinement).
        """
        r = _as_fraction(r)
        if self.sign == -1 and r.denominator != 1:
            raise ScalarError("fractional power of -1 requires a declared root symbol")
        sign = self.sign if r.numerator % 2 == 1 and r.denominator == 1 else 1
        exps = {}
        for name, e in self.exps:
            ne = e * r
            if denominator_cap is not None and ne.denominator > denominator_cap:
                raise ScalarError(
                    f"exponent denominator {ne.denominator} for {name} exceeds cap {denominator_cap}"
                )
            exps[name] = ne
        return Monomial._make(sign, exps, dict(self.orders))

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.sign == other.sign and self.exps == other.exps

    def __hash__(self):
        return hash((self.sign, self.exps))

    # -- text form ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self.exps:
            return "1" if self.sign == 1 else "-1"
        parts = []
        for name, e in self.exps:
            if e == 1:
                parts.append(name)
            elif e.denominator == 1:
                parts.append(f"{name}^{e.numerator}")
            else:
                parts.append(f"{name}^({e.numerator}/{e.denominator})")
        body = "*".join(parts)
        return body if self.sign == 1 else f"-{body}"

    __repr__ = __str__


def parse_monomial(text: str, orders: Optional[Mapping[str, int]] = None) -> Monomial:
    """Parse the text form produced by ``str(Monomial)`` (also accepts '/')."""
    orders = dict(orders or {})
    text = text.replace(" ", "")
    if not text:
        raise ScalarError("empty monomial text")
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:]

    # split into factor groups at top-level '*' and '/' (parens may wrap whole
    # groups or fractional exponents)
    groups: list[tuple[str, bool]] = []  # (chunk, inverted)
    depth, start, inv = 0, 0, False
    for pos, ch in enumerate(text + "*"):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "*/" and depth == 0:
            chunk = text[start:pos]
            if chunk:
                groups.append((chunk, inv))
            inv = ch == "/"
            start = pos + 1
    if depth != 0:
        raise ScalarError(f"unbalanced parentheses in {text!r}")

    def fully_wrapped(chunk: str) -> bool:
        if not (chunk.startswith("(") and chunk.endswith(")")):
            return False
        d = 0
        for pos, ch in enumerate(chunk):
            d += ch == "("
            d -= ch == ")"
            if d == 0:
                return pos == len(chunk) - 1
        return False

    def close_paren(chunk: str) -> int:
        d = 0
        for pos, ch in enumerate(chunk):
            d += ch == "("
            d -= ch == ")"
            if d == 0:
                return pos
        return -1

    out = Monomial(sign=sign)
    for chunk, inverted in groups:
        if fully_wrapped(chunk):
            inner = parse_monomial(chunk[1:-1], orders)
        elif chunk.startswith("(") and chunk[close_paren(chunk) + 1 :].startswith("^"):
            # a parenthesized group raised to a power: (...)^(a/b)
            stop = close_paren(chunk)
            base = parse_monomial(chunk[1:stop], orders)
            e = Fraction(chunk[stop + 2 :].strip("()"))
            inner = base ** e
        else:
            if chunk == "1":
                continue
            name, _, etxt = chunk.partition("^")
            e = Fraction(etxt.strip("()")) if etxt else Fraction(1)
            if not name.isidentifier():
                raise ScalarError(f"bad symbol {name!r} in monomial text")
            if name in orders:
                inner = Monomial.root(name, orders[name], e)
            else:
                inner = Monomial.param(name, e)
        out = out * (inner.inverse() if inverted else inner)
    return out


# ---------------------------------------------------------------------------
# evaluation into a cyclotomic field
# ---------------------------------------------------------------------------

def evaluate(
    mono: Monomial,
    values: Mapping[str, ScalarLike],
    roots: Optional[Mapping[tuple[str, int], ScalarLike]] = None,
) -> CycScalar:
    """
    Evaluate a monomial, sending each symbol to its assigned field value.

    Every symbol occurring in ``mono`` must be assigned.  A symbol with a
    fractional exponent k/d additionally needs ``roots[(name, d)]``: the chosen
    d-th root of its value (checked against values[name] when given).  Root
    symbols must evaluate to roots of unity of the declared order's divisor.
    """
    roots = dict(roots or {})
    out = CycScalar.one(1)
    declared = dict(mono.orders)
    for name, e in mono.exps:
        if e.denominator == 1:
            if name not in values:
                raise ScalarError(f"missing assignment for {name}")
            base = as_cyc(values[name])
            if base.is_zero():
                raise ScalarError(f"{name} assigned zero (scalars must be units)")
            val = base ** e.numerator
        else:
            key = (name, e.denominator)
            if key not in roots:
                raise ScalarError(
                    f"missing root assignment for {name}^(1/{e.denominator})"
                )
            root_val = as_cyc(roots[key])
            if name in values and root_val ** e.denominator != as_cyc(values[name]):
                raise ScalarError(
                    f"supplied root for {name}^(1/{e.denominator}) does not match {name}"
                )
            val = root_val ** e.numerator
        if name in declared:
            d = declared[name]
            check = val if e.denominator > 1 else as_cyc(values[name])
            o = check.root_of_unity_order()
            if o is None or (e.denominator == 1 and d % o != 0):
                raise ScalarError(
                    f"{name} declared of order {d} but assigned a value of order {o}"
                )
        out = out * val
    if mono.sign == -1:
        out = -out
    return out


def evaluate_table(
    table: Iterable[Iterable[Monomial]],
    values: Mapping[str, ScalarLike],
    roots: Optional[Mapping[tuple[str, int], ScalarLike]] = None,
) -> tuple[tuple[CycScalar, ...], ...]:
    return tuple(tuple(evaluate(m, values, roots) for m in row) for row in table)
