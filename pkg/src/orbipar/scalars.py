"""Exact scalar arithmetic: rationals, rationals mod 1, and cyclotomic fields.

Rationals are ``fractions.Fraction`` (always lowest terms, positive
denominator).  A ``FractionalWeight`` is a rational carrying a mod-1
convention: residues in [0,1) for torus weights, signed representatives in
(-1,1) for eigenvalue exponents.  ``Cyclotomic`` models Q(zeta_M) as
Q[x]/(Phi_M(x)), so every root of unity, and hence every eigenvalue of a
finite-order group element, is represented exactly and equality is a
coefficient comparison.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import gcd

from .errors import DenominatorNotDividing, IncompatibleOrders, MalformedInput

Rational = Fraction


def rational(x) -> Fraction:
    """Coerce ints, Fractions, and 'p/q' strings to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad rational {x!r}: {exc}") from None
    raise MalformedInput(f"bad rational {x!r}")


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


class Convention(enum.Enum):
    ZERO_ONE = "zero_one"
    SIGNED = "signed"


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def normalize_weight(x, convention: Convention = Convention.ZERO_ONE) -> "FractionalWeight":
    """Canonical representative of x mod 1.

    ZERO_ONE lands in [0,1).  SIGNED keeps the sign of x: nonnegative inputs
    land in [0,1), negative inputs in (-1,0], matching the usual split of
    eigenvalue exponents into beta < 0 versus 0 <= beta < 1.  Idempotent.
    """
    x = rational(x)
    r = _mod1(x)
    if convention is Convention.SIGNED and x < 0 and r != 0:
        r -= 1
    return FractionalWeight(r, convention)


class FractionalWeight:
    """A rational weight together with its mod-1 representative convention."""

    __slots__ = ("value", "convention")

    def __init__(self, value, convention: Convention = Convention.ZERO_ONE):
        value = rational(value)
        if convention is Convention.ZERO_ONE:
            if not (0 <= value < 1):
                raise MalformedInput(f"{value} outside [0,1)")
        else:
            if not (-1 < value < 1):
                raise MalformedInput(f"{value} outside (-1,1)")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "convention", convention)

    def __setattr__(self, name, val):
        raise AttributeError("FractionalWeight is immutable")

    def congruent(self, other) -> bool:
        """Weights are congruent iff their difference is an integer."""
        other = other.value if isinstance(other, FractionalWeight) else rational(other)
        return (self.value - other).denominator == 1

    def __eq__(self, other):
        if isinstance(other, FractionalWeight):
            return self.value == other.value and self.convention == other.convention
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.convention))

    def __lt__(self, other):
        return self.value < other.value

    def __repr__(self):
        return f"FractionalWeight({self.value}, {self.convention.value})"


# -- polynomial helpers over Fraction (dense, lowest degree first) ----------

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a, b):
    """Division with remainder in Q[x]: a = q*b + r with deg r < deg b."""
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead
        if coef != 0:
            q[shift] = coef
            for i, bi in enumerate(b):
                a[shift + i] -= coef * bi
        a.pop()
    return _poly_trim(q), _poly_trim(a)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
           for i in range(n)]
    return _poly_trim(out)


def _poly_egcd_inverse(f, m):
    """Inverse of f modulo the monic polynomial m; m irreducible, f != 0 mod m."""
    # extended Euclid over Q[x], keeping s_i with s_i * f = r_i (mod m)
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(f))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    assert len(r0) == 1, "gcd with an irreducible modulus must be constant"
    c = r0[0]
    return [x / c for x in s0]


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def euler_phi(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


_CYCLOTOMIC_POLY_CACHE: dict[int, tuple] = {}


def cyclotomic_poly(M: int) -> tuple:
    """Coefficients of Phi_M, computed by dividing x^M - 1 by Phi_d for d|M, d<M."""
    if M in _CYCLOTOMIC_POLY_CACHE:
        return _CYCLOTOMIC_POLY_CACHE[M]
    p = [Fraction(-1)] + [Fraction(0)] * (M - 1) + [Fraction(1)]  # x^M - 1
    for d in _divisors(M):
        if d < M:
            p, rem = _poly_divmod(p, list(cyclotomic_poly(d)))
            assert not rem
    out = tuple(p)
    assert len(out) == euler_phi(M) + 1 and out[-1] == 1
    _CYCLOTOMIC_POLY_CACHE[M] = out
    return out


_POWER_TABLE_CACHE: dict[int, list] = {}


def _power_table(M: int):
    """x^k mod Phi_M for 0 <= k < 2*phi(M), as coefficient tuples."""
    if M in _POWER_TABLE_CACHE:
        return _POWER_TABLE_CACHE[M]
    phi = euler_phi(M)
    mod = list(cyclotomic_poly(M))
    table = []
    cur = [Fraction(1)]
    for _ in range(2 * phi):
        row = cur + [Fraction(0)] * (phi - len(cur))
        table.append(tuple(row[:phi]))
        cur = [Fraction(0)] + cur
        _, cur = _poly_divmod(cur, mod)
    _POWER_TABLE_CACHE[M] = table
    return table


class Cyclotomic:
    """An element of Q(zeta_M), stored reduced modulo Phi_M.

    The coefficient vector has length phi(M), so equality within one field is
    a tuple comparison; mixed-order operands are promoted to the lcm order
    first.  All values are immutable.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        phi = euler_phi(order)
        coeffs = tuple(rational(c) for c in coeffs)
        if len(coeffs) != phi:
            raise MalformedInput(
                f"cyclotomic of order {order} needs {phi} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, val):
        raise AttributeError("Cyclotomic is immutable")

    # -- construction --------------------------------------------------

    @classmethod
    def from_rational(cls, x, order: int = 1) -> "Cyclotomic":
        x = rational(x)
        coeffs = [x] + [Fraction(0)] * (euler_phi(order) - 1)
        return cls(order, coeffs)

    @classmethod
    def zero(cls, order: int = 1) -> "Cyclotomic":
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "Cyclotomic":
        return cls.from_rational(1, order)

    @classmethod
    def zeta_power(cls, order: int, k: int) -> "Cyclotomic":
        """zeta_order^k, reduced."""
        return cls(order, _reduce_exponent(order, k))

    # -- promotion ------------------------------------------------------

    def embed(self, new_order: int) -> "Cyclotomic":
        """Field embedding Q(zeta_M) -> Q(zeta_M') via zeta_M -> zeta_M'^(M'/M)."""
        if new_order % self.order != 0:
            raise IncompatibleOrders(f"{self.order} does not divide {new_order}")
        if new_order == self.order:
            return self
        step = new_order // self.order
        phi = euler_phi(new_order)
        acc = [Fraction(0)] * phi
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            row = _reduce_exponent(new_order, i * step)
            for j, r in enumerate(row):
                if r != 0:
                    acc[j] += c * r
        return Cyclotomic(new_order, acc)

    def _common(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.from_rational(other)
        M = self.order * other.order // gcd(self.order, other.order)
        return self.embed(M), other.embed(M)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        return Cyclotomic(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._common(other)
        return Cyclotomic(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, [c * other for c in self.coeffs])
        a, b = self._common(other)
        phi = len(a.coeffs)
        table = _power_table(a.order)
        acc = [Fraction(0)] * phi
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b.coeffs):
                if y == 0:
                    continue
                xy = x * y
                row = table[i + j]
                for k, r in enumerate(row):
                    if r != 0:
                        acc[k] += xy * r
        return Cyclotomic(a.order, acc)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in a cyclotomic field")
        inv = _poly_egcd_inverse(list(self.coeffs), list(cyclotomic_poly(self.order)))
        phi = euler_phi(self.order)
        inv = list(inv) + [Fraction(0)] * (phi - len(inv))
        return Cyclotomic(self.order, inv[:phi])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / rational(other))
        a, b = self._common(other)
        return a * b.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Cyclotomic.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __bool__(self):
        return not self.is_zero()

    def multiplicative_order(self):
        """Order as a root of unity, or None if the element is not one.

        Roots of unity in Q(zeta_M) form the cyclic group of order lcm(2, M),
        so trial exponentiation up to that bound is exhaustive.
        """
        L = self.order if self.order % 2 == 0 else 2 * self.order
        acc = self
        for d in range(1, L + 1):
            if acc.is_one():
                return d
            acc = acc * self
        return None

    def __repr__(self):
        return f"Cyclotomic({self.order}, {[str(c) for c in self.coeffs]})"


def _reduce_exponent(M: int, k: int):
    """Coefficients of x^k mod Phi_M."""
    k %= M
    table = _power_table(M)
    if k < len(table):
        return table[k]
    # k < M always, but phi(M) can be much smaller than M
    phi = euler_phi(M)
    mod = list(cyclotomic_poly(M))
    cur = [Fraction(0)] * k + [Fraction(1)]
    _, cur = _poly_divmod(cur, mod)
    cur = list(cur) + [Fraction(0)] * (phi - len(cur))
    return tuple(cur[:phi])


_ROOT_CACHE: dict[tuple, Cyclotomic] = {}


def root_of_unity(q, M: int | None = None) -> Cyclotomic:
    """e^{2 pi i q} as an element of Q(zeta_M); q must embed, i.e. M*q integral."""
    if isinstance(q, FractionalWeight):
        q = q.value
    q = rational(q)
    if M is None:
        M = q.denominator
    if (M * q).denominator != 1:
        raise DenominatorNotDividing(f"{M}*{q} is not an integer")
    k = int(M * q) % M
    key = (M, k)
    if key not in _ROOT_CACHE:
        _ROOT_CACHE[key] = Cyclotomic(M, _reduce_exponent(M, k))
    return _ROOT_CACHE[key]


def cyclotomic_embed(c: Cyclotomic, new_order: int) -> Cyclotomic:
    """Promote c along Q(zeta_M) -> Q(zeta_M'); requires M | M'."""
    return c.embed(new_order)


def working_order(*denominators: int) -> int:
    """lcm of the given orders/denominators; the ambient field for a computation."""
    M = 1
    for d in denominators:
        d = int(d)
        if d:
            M = M * d // gcd(M, d)
    return M
