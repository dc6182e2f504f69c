"""Rational functions in X = q^(-s) with exact cyclotomic coefficients.

Normal form: value = X^shift * num(X) / den(X) with num, den coprime
polynomials of nonzero constant term and den monic; equality of normal forms
is equality of functions.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycElt, CyclotomicField


def _trim(coeffs):
    out = list(coeffs)
    while out and out[-1].is_zero():
        out.pop()
    return out


def _padd(zf, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zf.zero()
        y = b[i] if i < len(b) else zf.zero()
        out.append(x + y)
    return _trim(out)


def _pmul(zf, a, b):
    if not a or not b:
        return []
    out = [zf.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return _trim(out)


def _pdivmod(zf, a, b):
    a = _trim(a)
    b = _trim(b)
    assert b, "division by zero polynomial"
    inv_lead = b[-1].inv()
    quot = [zf.zero() for _ in range(max(0, len(a) - len(b) + 1))]
    rem = list(a)
    while len(_trim(rem)) >= len(b):
        rem = _trim(rem)
        c = rem[-1] * inv_lead
        shift = len(rem) - len(b)
        quot[shift] = quot[shift] + c
        for i in range(len(b)):
            rem[shift + i] = rem[shift + i] - c * b[i]
        rem.pop()
    return _trim(quot), _trim(rem)


def _pgcd(zf, a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _pdivmod(zf, a, b)
        a, b = b, r
    if a:
        lead_inv = a[-1].inv()
        a = [c * lead_inv for c in a]
    return a


class ZetaRational:
    """X^shift * num/den over a cyclotomic scalar field."""

    __slots__ = ("zf", "shift", "num", "den")

    def __init__(self, zf, num, den=None, shift=0):
        self.zf = zf
        num = _trim(list(num))
        den = _trim(list(den)) if den is not None else [zf.one()]
        if not den:
            raise ZeroDivisionError("zero denominator")
        # factor X powers out of num and den into the shift
        while num and num[0].is_zero():
            num.pop(0)
            shift += 1
        while den and den[0].is_zero():
            den.pop(0)
            shift -= 1
        if not num:
            self.shift, self.num, self.den = 0, [], [zf.one()]
            return
        g = _pgcd(zf, num, den)
        if len(g) > 1:
            num, _ = _pdivmod(zf, num, g)
            den, _ = _pdivmod(zf, den, g)
        lead = den[-1]
        if not (lead == zf.one()):
            inv = lead.inv()
            num = [c * inv for c in num]
            den = [c * inv for c in den]
        self.shift = shift
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(zf, c):
        c = c if isinstance(c, CycElt) else zf.from_rational(c)
        return ZetaRational(zf, [c])

    @staticmethod
    def monomial(zf, c, k):
        c = c if isinstance(c, CycElt) else zf.from_rational(c)
        return ZetaRational(zf, [c], shift=k)

    # -- arithmetic ----------------------------------------------------------

    def is_zero(self):
        return not self.num

    def __add__(self, other):
        zf = self.zf
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        s = min(self.shift, other.shift)
        a = [zf.zero()] * (self.shift - s) + self.num
        b = [zf.zero()] * (other.shift - s) + other.num
        num = _padd(zf, _pmul(zf, a, other.den), _pmul(zf, b, self.den))
        den = _pmul(zf, self.den, other.den)
        return ZetaRational(zf, num, den, s)

    def __neg__(self):
        return ZetaRational(self.zf, [(-c) for c in self.num], self.den, self.shift)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycElt)):
            other = ZetaRational.constant(self.zf, other if isinstance(other, CycElt)
                                          else self.zf.from_rational(other))
        return ZetaRational(self.zf, _pmul(self.zf, self.num, other.num),
                            _pmul(self.zf, self.den, other.den),
                            self.shift + other.shift)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError
        return ZetaRational(self.zf, self.den, self.num, -self.shift)

    def __truediv__(self, other):
        return self * other.inv()

    def __eq__(self, other):
        if not isinstance(other, ZetaRational):
            return NotImplemented
        return (self.zf == other.zf and self.shift == other.shift
                and self.num == other.num and self.den == other.den)

    def subst_c_over_X(self, c):
        """The function T -> c / X applied to self (exact composition)."""
        zf = self.zf
        # X^shift*num(X)/den(X) at X = c*X^-1:
        #   c^shift X^-shift * sum n_i c^i X^-i / sum d_j c^j X^-j
        n = len(self.num) - 1
        m = len(self.den) - 1
        top = [zf.zero()] * (n + 1)
        for i, a in enumerate(self.num):
            top[n - i] = a * _cpow(zf, c, i)
        bot = [zf.zero()] * (m + 1)
        for j, b in enumerate(self.den):
            bot[m - j] = b * _cpow(zf, c, j)
        shift = -self.shift - n + m
        return ZetaRational(zf, top, bot, shift) * ZetaRational.monomial(
            zf, _cpow(zf, c, self.shift), 0)

    def to_json(self):
        return {
            "M": self.zf.M,
            "shift": self.shift,
            "num": [c.to_json()["coeffs"] for c in self.num],
            "den": [c.to_json()["coeffs"] for c in self.den],
        }

    def __repr__(self):
        if self.is_zero():
            return "0"
        return f"X^{self.shift} * ({self.num}) / ({self.den})"


def _cpow(zf, c, k):
    out = zf.one()
    for _ in range(k):
        out = out * c
    return out
