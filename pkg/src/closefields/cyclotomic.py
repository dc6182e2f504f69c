"""Exact arithmetic in Q(zeta_M), plus square roots of primes via Gauss sums.

Elements are coefficient vectors over Q in the power basis of Q[x]/(Phi_M).
No floating point anywhere; equality is exact.  sqrt(p) is expressed inside
a suitable cyclotomic field (8 | M for p = 2, Gauss sums for odd p), so the
half-integer powers of q appearing in shifted zeta arguments stay exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def _qpoly_divmod(a, b):
    """Division with remainder over Q[x]; b need not be monic."""
    a = list(a)
    out = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        c = a[-1] * inv_lead
        shift = len(a) - len(b)
        out[shift] += c
        for i in range(len(b)):
            a[shift + i] -= c * b[i]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return out, a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(M):
    """Phi_M over Q as a tuple of Fractions (constant first)."""
    if M == 1:
        return (Fraction(-1), Fraction(1))
    poly = [Fraction(0)] * M + [Fraction(1)]
    poly[0] = Fraction(-1)  # x^M - 1
    for d in range(1, M):
        if M % d == 0:
            q, r = _qpoly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not r
            poly = q
    return tuple(poly)


class CyclotomicField:
    def __init__(self, M):
        self.M = M
        self.modulus = list(cyclotomic_polynomial(M))
        self.degree = len(self.modulus) - 1
        self._zeta_powers = self._power_table()

    def _power_table(self):
        # x^k mod Phi_M for 0 <= k < M
        table = []
        cur = [Fraction(1)]
        for _ in range(self.M):
            table.append(tuple(cur + [Fraction(0)] * (self.degree - len(cur))))
            cur = [Fraction(0)] + cur
            _, cur = _qpoly_divmod(cur, self.modulus)
            cur = list(cur) + [Fraction(0)] * max(0, 1 - len(cur))
        return table

    def zero(self):
        return CycElt(self, (Fraction(0),) * self.degree)

    def one(self):
        return self.from_rational(1)

    def from_rational(self, r):
        v = [Fraction(0)] * self.degree
        v[0] = Fraction(r)
        return CycElt(self, tuple(v))

    def zeta(self, k=1):
        """zeta_M^k."""
        return CycElt(self, self._zeta_powers[k % self.M])

    def root_of_unity(self, order, power=1):
        if self.M % order:
            raise ValueError("field lacks a root of order %d" % order)
        return self.zeta((self.M // order) * power)

    def sqrt_prime(self, p):
        """sqrt(p) as a cyclotomic element (fixed sign convention).

        p = 2 uses zeta_8 + zeta_8^(-1); odd p uses the quadratic Gauss sum
        g = sum_a (a|p) zeta_p^a with g^2 = (-1)^((p-1)/2) p, corrected by
        i = zeta_4 when p = 3 mod 4.
        """
        if p == 2:
            return self.root_of_unity(8) + self.root_of_unity(8, 7)
        g = self.zero()
        for a in range(1, p):
            g = g + self.root_of_unity(p, a).scale(_legendre(a, p))
        if p % 4 == 1:
            return g
        return self.root_of_unity(4) * g

    def sqrt_prime_power(self, p, f):
        """sqrt(p^f): rational when f is even, p^((f-1)/2) sqrt(p) otherwise."""
        if f % 2 == 0:
            return self.from_rational(p ** (f // 2))
        return self.sqrt_prime(p).scale(p ** ((f - 1) // 2))

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and self.M == other.M

    def __hash__(self):
        return hash(("CyclotomicField", self.M))

    def __repr__(self):
        return f"Q(zeta_{self.M})"


def _legendre(a, p):
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


class CycElt:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if other.field != self.field:
            raise ValueError("cyclotomic fields differ")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CycElt(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, r):
        return CycElt(self.field, tuple(a * Fraction(r) for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        deg = self.field.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        _, rem = _qpoly_divmod(prod, self.field.modulus)
        rem = list(rem) + [Fraction(0)] * (deg - len(rem))
        return CycElt(self.field, tuple(rem[:deg]))

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError
        # extended Euclid in Q[x] against Phi_M
        r0, r1 = list(self.field.modulus), list(self.coeffs)
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _qpoly_divmod(r0, r1)
            new_s = _poly_sub(s0, _poly_mul(q, s1))
            r0, s0 = r1, s1
            r1, s1 = r, new_s
        # r0 = gcd (a nonzero constant since Phi_M is irreducible over Q)
        assert len(r0) == 1 and r0[0] != 0
        c = 1 / r0[0]
        deg = self.field.degree
        out = [x * c for x in s0] + [Fraction(0)] * deg
        _, out = _qpoly_divmod(out, self.field.modulus)
        out = list(out) + [Fraction(0)] * (deg - len(out))
        return CycElt(self.field, tuple(out[:deg]))

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, CycElt):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.M, self.coeffs))

    def to_json(self):
        return {"M": self.field.M,
                "coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    @staticmethod
    def from_json(obj, field=None):
        field = field or CyclotomicField(obj["M"])
        return CycElt(field, tuple(Fraction(n, d) for n, d in obj["coeffs"]))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z^{i}" if i else f"{c}")
        return " + ".join(terms) if terms else "0"


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else Fraction(0)
        y = b[i] if i < len(b) else Fraction(0)
        out.append(x - y)
    while out and out[-1] == 0:
        out.pop()
    return out
