"""Truncated local fields of both characteristics and their unramified extensions.

Elements are stored as Teichmuller digit vectors: x = sum_j [s_j] pi^j with
s_j in the residue field and [.] the Teichmuller lift ({0} union roots of
X^{q-1}-1).  Two models are supported behind one element type:

  * equal characteristic:  F = F_q((t)); digits are literal series
    coefficients and arithmetic is truncated polynomial arithmetic over k.
  * characteristic zero:   L determined by (p, f, e) with an Eisenstein
    uniformizer satisfying pi^e = p exactly; internal arithmetic happens in
    (Z/p^M)[x]/(m~)[pi]/(pi^e - p), a truncated unramified Witt ring, and
    digits are re-extracted as Teichmuller coordinates on demand.

Precision is tracked per element and silent truncation is an error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .residue import residue_field, subfield_embedding

INF = math.inf


class PrecisionError(ArithmeticError):
    """An operation would need digits beyond the guaranteed precision."""


class SpecError(ValueError):
    """Invalid field/extension/algebra parameters."""


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Field specs


@dataclass(frozen=True)
class FieldSpec:
    """A local field model: char p means F_q((t)), char 0 means pi^e = p."""

    characteristic: int  # p or 0
    p: int
    f: int
    e: int  # absolute ramification index; 1 in equal characteristic
    N: int  # default working precision (digits)
    uniformizer: str = "t"

    @property
    def q(self):
        return self.p**self.f

    @property
    def residue(self):
        return residue_field(self.p, self.f)

    @property
    def residue_degree(self):
        return self.f

    def engine(self):
        return _engine_for(self)

    def zero(self, prec=INF):
        return TruncatedElement(self, None, (), prec)

    def one(self, prec=None):
        prec = self.N if prec is None else prec
        return self.from_digits(0, (1,) + (0,) * (int(prec) - 1))

    def from_digits(self, valuation, digits):
        """Element sum_j [digits[j]] pi^(valuation+j); leading zeros are stripped."""
        digits = tuple(digits)
        lead = 0
        while lead < len(digits) and digits[lead] == 0:
            lead += 1
        if lead == len(digits):
            return self.zero(valuation + len(digits) if digits else INF)
        return TruncatedElement(self, valuation + lead, digits[lead:], None)

    def from_integer(self, n, prec=None):
        """The image of the rational integer n at precision prec (default N)."""
        prec = self.N if prec is None else prec
        eng = self.engine()
        return eng.from_integer(n, prec)

    def uniformizer_element(self, power=1, prec=None):
        prec = self.N if prec is None else prec
        return TruncatedElement(self, power, (1,) + (0,) * (prec - 1), None)

    def to_json(self):
        return {
            "char": self.characteristic,
            "p": self.p,
            "f": self.f,
            "e": self.e,
            "N": self.N,
        }

    @staticmethod
    def from_json(obj):
        return make_local_field(
            obj["char"], obj["p"], obj["f"], e=obj.get("e"), N=obj["N"]
        )


@dataclass(frozen=True)
class ExtSpec:
    """Unramified extension E of degree d; same uniformizer, residue F_{q^d}.

    sigma_power realizes the chosen generator of Gal(E/F) as a power of the
    residue q-Frobenius (x -> x^{q^sigma_power} on digits).
    """

    base: FieldSpec
    d: int
    sigma_power: int = 1

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def p(self):
        return self.base.p

    @property
    def f(self):
        return self.base.f * self.d

    @property
    def e(self):
        return self.base.e

    @property
    def N(self):
        return self.base.N

    @property
    def q(self):
        return self.p**self.f

    @property
    def residue(self):
        return residue_field(self.p, self.f)

    @property
    def uniformizer(self):
        return self.base.uniformizer

    def engine(self):
        return _engine_for(self)

    zero = FieldSpec.zero
    one = FieldSpec.one
    from_digits = FieldSpec.from_digits
    from_integer = FieldSpec.from_integer
    uniformizer_element = FieldSpec.uniformizer_element

    def embed(self, x):
        """Coerce an element of the base field into E (digit-wise embedding)."""
        if x.field == self:
            return x
        if x.field != self.base:
            raise SpecError("embed expects an element of the base field")
        table = subfield_embedding(self.p, self.base.f, self.f)
        if x.is_zeroish():
            return self.zero(x.abs_prec)
        return TruncatedElement(self, x.valuation, tuple(table[d] for d in x.digits), None)

    def descend(self, x):
        """Inverse of embed for Galois-fixed elements; errors if digits leave k_F."""
        if x.field != self:
            raise SpecError("descend expects an E-element")
        if x.is_zeroish():
            return self.base.zero(x.abs_prec)
        table = subfield_embedding(self.p, self.base.f, self.f)
        back = {img: i for i, img in enumerate(table)}
        try:
            digits = tuple(back[d] for d in x.digits)
        except KeyError:
            raise SpecError("element is not rational over the base field")
        return TruncatedElement(self.base, x.valuation, digits, None)


def make_local_field(characteristic, p, f, e=None, N=8, uniformizer=None):
    """Build a FieldSpec; deterministic in its arguments.

    characteristic 'p' (or the prime itself) selects F_q((t)); characteristic 0
    selects the Eisenstein model with pi^e = p.
    """
    if not _is_prime(p):
        raise SpecError(f"p={p} is not prime")
    if f < 1 or N < 1:
        raise SpecError("need f >= 1 and N >= 1")
    if characteristic in ("p", p):
        if e not in (None, 1):
            raise SpecError("ramification index is meaningless in equal characteristic")
        return FieldSpec(p, p, f, 1, N, uniformizer or "t")
    if characteristic == 0:
        if e is None or e < 1:
            raise SpecError("characteristic-0 model needs e >= 1")
        return FieldSpec(0, p, f, e, N, uniformizer or "pi")
    raise SpecError("characteristic must be 0 or p")


def unramified_extension(spec, d, sigma_power=1):
    if d < 1:
        raise SpecError("extension degree must be >= 1")
    base = spec.base if isinstance(spec, ExtSpec) else spec
    if isinstance(spec, ExtSpec):
        raise SpecError("towers of extensions are not supported; extend the base")
    return ExtSpec(base, d, sigma_power % d if d > 1 else 0)


# ---------------------------------------------------------------------------
# Elements


class TruncatedElement:
    """A local-field element at guaranteed finite precision.

    Nonzero: valuation v, digit tuple (leading digit nonzero); the element is
    known exactly modulo pi^(v + len(digits)).
    Zero-ish: valuation None; `zero_prec` a (absolute) precision a meaning
    "lies in P^a"; a = inf encodes the exact zero.
    """

    __slots__ = ("field", "valuation", "digits", "zero_prec")

    def __init__(self, field, valuation, digits, zero_prec):
        self.field = field
        self.valuation = valuation
        self.digits = digits
        self.zero_prec = zero_prec
        if valuation is not None:
            assert digits and digits[0] != 0

    # -- structure ---------------------------------------------------------

    def is_zeroish(self):
        return self.valuation is None

    def is_exact_zero(self):
        return self.valuation is None and self.zero_prec == INF

    @property
    def abs_prec(self):
        """Absolute precision: the element is known modulo P^abs_prec."""
        if self.valuation is None:
            return self.zero_prec
        return self.valuation + len(self.digits)

    @property
    def precision(self):
        """Number of guaranteed significant digits."""
        if self.valuation is None:
            return 0
        return len(self.digits)

    def val(self):
        """Valuation; +inf for zero-ish elements of certified depth."""
        if self.valuation is None:
            return INF
        return self.valuation

    def known_val(self):
        """Valuation as an int, or PrecisionError for a non-exact zero-ish element."""
        if self.valuation is not None:
            return self.valuation
        if self.zero_prec == INF:
            return INF
        raise PrecisionError("valuation undetermined: element is 0 mod P^%s" % self.zero_prec)

    def digit(self, j):
        """Teichmuller digit at pi^j (0 if below valuation); j must be < abs_prec."""
        if j >= self.abs_prec:
            raise PrecisionError("digit %d beyond absolute precision %s" % (j, self.abs_prec))
        if self.valuation is None or j < self.valuation:
            return 0
        return self.digits[j - self.valuation]

    def digit_window(self, lo, hi):
        """Digits at pi^lo .. pi^(hi-1) as a tuple (zeros below the valuation)."""
        return tuple(self.digit(j) for j in range(lo, hi))

    def truncate(self, abs_prec):
        """Forget digits at or above pi^abs_prec (never raises precision)."""
        if abs_prec > self.abs_prec:
            raise PrecisionError("cannot extend precision by truncation")
        if self.valuation is None:
            return TruncatedElement(self.field, None, (), abs_prec)
        if abs_prec <= self.valuation:
            return TruncatedElement(self.field, None, (), abs_prec)
        return TruncatedElement(
            self.field, self.valuation, self.digits[: abs_prec - self.valuation], None
        )

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, int):
            other = self.field.from_integer(other, max(1, min(self.precision, 64)) if not self.is_zeroish() else 8)
        if other.field != self.field:
            raise SpecError("operands live over different field specs")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return self.field.engine().add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return self.field.engine().neg(self)

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return self.field.engine().mul(self, other)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zeroish():
            raise ZeroDivisionError("inversion of (indistinguishable-from-)zero")
        return self.field.engine().inv(self)

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        r = self.field.one(max(1, self.precision if not self.is_zeroish() else 1))
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def shift(self, i):
        """Multiplication by pi^i (exact)."""
        if self.valuation is None:
            zp = self.zero_prec if self.zero_prec == INF else self.zero_prec + i
            return TruncatedElement(self.field, None, (), zp)
        return TruncatedElement(self.field, self.valuation + i, self.digits, None)

    def unit_part(self):
        """x * pi^(-v(x)); valuation-0 companion of a nonzero element."""
        if self.is_zeroish():
            raise ZeroDivisionError("zero-ish element has no unit part")
        return self.shift(-self.valuation)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncatedElement):
            return NotImplemented
        return (
            self.field == other.field
            and self.valuation == other.valuation
            and self.digits == other.digits
            and self.zero_prec == other.zero_prec
        )

    def __hash__(self):
        return hash((self.field, self.valuation, self.digits, self.zero_prec))

    def agrees(self, other, abs_prec):
        """Equality of the two elements modulo P^abs_prec (both must be known that far)."""
        other = self._coerce(other)
        diff = self - other
        if diff.abs_prec < abs_prec:
            raise PrecisionError("cannot compare at precision %s" % abs_prec)
        return diff.val() >= abs_prec

    # -- io --------------------------------------------------------------------

    def to_json(self):
        if self.valuation is None:
            return {"valuation": None, "digits": [],
                    "zero_prec": None if self.zero_prec == INF else self.zero_prec}
        k = self.field.residue
        return {
            "valuation": self.valuation,
            "digits": [list(k.coords(d)) for d in self.digits],
        }

    @staticmethod
    def from_json(field, obj):
        if obj["valuation"] is None:
            zp = obj.get("zero_prec")
            return field.zero(INF if zp is None else zp)
        k = field.residue
        digits = tuple(k.from_coords(tuple(c)) for c in obj["digits"])
        return field.from_digits(obj["valuation"], digits)

    def __repr__(self):
        if self.valuation is None:
            if self.zero_prec == INF:
                return "0"
            return f"O(pi^{self.zero_prec})"
        pi = self.field.uniformizer
        terms = []
        for j, d in enumerate(self.digits):
            if d:
                terms.append(f"[{d}]*{pi}^{self.valuation + j}")
        return " + ".join(terms) + f" + O({pi}^{self.abs_prec})"


def valuation(x):
    """v(x); +inf for the exact zero, PrecisionError for an uncertified near-zero."""
    if x.is_zeroish() and not x.is_exact_zero():
        raise PrecisionError("valuation of element only known to lie in P^%s" % x.zero_prec)
    return x.val()


def arith(op, x, y=None):
    """Dispatch {add, neg, mul, inv} as a single entry point."""
    if op == "add":
        return x + y
    if op == "neg":
        return -x
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inv()
    raise ValueError(f"unknown op {op!r}")


def frobenius_power(x, i=1):
    """Digit-wise sigma^i on an extension element: s_j -> s_j^{q^i}.

    Fixes base-rational elements; sigma is the residue q-Frobenius lift.
    """
    field = x.field
    if not isinstance(field, ExtSpec):
        return x
    if x.is_zeroish():
        return x
    k = field.residue
    step = field.base.f * (i % field.d)
    digits = tuple(k.frobenius(d, step) for d in x.digits)
    return TruncatedElement(field, x.valuation, digits, None)


def galois_apply(spec, x, j):
    """sigma_E^j for the chosen generator sigma_E = Frob^{sigma_power} of Gal(E/F)."""
    if not isinstance(spec, ExtSpec) or spec.d == 1:
        return x
    return frobenius_power(x, (spec.sigma_power * j) % spec.d)


# ---------------------------------------------------------------------------
# Engines


class CharPEngine:
    """F_q((t)) arithmetic: digits are series coefficients over k."""

    def __init__(self, spec):
        self.spec = spec
        self.k = spec.residue

    def from_integer(self, n, prec):
        # in characteristic p the integers land in the prime field
        a = n % self.spec.p
        if a == 0:
            return self.spec.zero(INF)
        return TruncatedElement(self.spec, 0, (a,) + (0,) * (prec - 1), None)

    def add(self, x, y):
        ap = min(x.abs_prec, y.abs_prec)
        if ap == INF:  # both exact zeros
            return self.spec.zero(INF)
        if x.is_zeroish() and y.is_zeroish():
            return self.spec.zero(ap)
        lo = min(x.val() if not x.is_zeroish() else ap, y.val() if not y.is_zeroish() else ap)
        if lo >= ap:
            return self.spec.zero(ap)
        n = int(ap - lo)
        k = self.k
        digs = [0] * n
        for j in range(n):
            a = x.digit(lo + j) if lo + j < x.abs_prec else 0
            b = y.digit(lo + j) if lo + j < y.abs_prec else 0
            digs[j] = k.add(a, b)
        return self.spec.from_digits(lo, digs) if any(digs) else self.spec.zero(ap)

    def neg(self, x):
        if x.is_zeroish():
            return x
        k = self.k
        return TruncatedElement(x.field, x.valuation, tuple(k.neg(d) for d in x.digits), None)

    def mul(self, x, y):
        if x.is_zeroish() or y.is_zeroish():
            vx = x.val() if not x.is_zeroish() else x.zero_prec
            vy = y.val() if not y.is_zeroish() else y.zero_prec
            return self.spec.zero(vx + vy)
        n = min(len(x.digits), len(y.digits))
        k = self.k
        out = [0] * n
        for i, a in enumerate(x.digits[:n]):
            if a:
                row = k.mul_table[a]
                for j in range(n - i):
                    b = y.digits[j]
                    if b:
                        out[i + j] = k.add(out[i + j], row[b])
        return TruncatedElement(self.spec, x.valuation + y.valuation, tuple(out), None)

    def inv(self, x):
        n = len(x.digits)
        k = self.k
        u = x.digits
        inv0 = k.inv(u[0])
        out = [inv0] + [0] * (n - 1)
        # series inversion: out satisfies u*out = 1 mod t^n
        for j in range(1, n):
            acc = 0
            for i in range(1, j + 1):
                if i < len(u) and u[i]:
                    acc = k.add(acc, k.mul(u[i], out[j - i]))
            out[j] = k.neg(k.mul(inv0, acc))
        return TruncatedElement(self.spec, -x.valuation, tuple(out), None)


class CharZeroEngine:
    """Eisenstein model pi^e = p over the truncated unramified Witt ring.

    Internal vectors: tuples of length e of Zq-elements, a Zq-element being a
    tuple of f ints modulo p^M.  Digits are Teichmuller coordinates.
    """

    def __init__(self, spec):
        self.spec = spec
        self.k = spec.residue
        self.p = spec.p
        self.f = spec.f
        self.e = spec.e
        # trivial monic lift of the residue irreducible (coefficients in 0..p-1)
        self.m_tilde = spec.residue.irreducible
        self._teich_cache = {}

    # -- Zq = (Z/p^M)[x]/(m~) ------------------------------------------------

    def _zq_add(self, a, b, pM):
        return tuple((x + y) % pM for x, y in zip(a, b))

    def _zq_neg(self, a, pM):
        return tuple((-x) % pM for x in a)

    def _zq_mul(self, a, b, pM):
        f = self.f
        prod = [0] * (2 * f - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    prod[i + j] = (prod[i + j] + ca * cb) % pM
        m = self.m_tilde
        for i in range(len(prod) - 1, f - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(f):
                    prod[i - f + j] = (prod[i - f + j] - c * m[j]) % pM
        return tuple(prod[:f])

    def _zq_from_int(self, n, pM):
        return (n % pM,) + (0,) * (self.f - 1)

    def _zq_residue(self, a):
        return self.k.from_coords(tuple(x % self.p for x in a))

    def teich(self, d, M):
        """Teichmuller lift of residue element d in Zq mod p^M."""
        key = (d, M)
        if key in self._teich_cache:
            return self._teich_cache[key]
        pM = self.p**M
        z = tuple(c % pM for c in self.k.coords(d))
        q = self.k.q  # Teichmuller lift: fixed point of x -> x^|k|
        for _ in range(M + 1):
            z = self._zq_pow(z, q, pM)
        self._teich_cache[key] = z
        return z

    def _zq_pow(self, a, n, pM):
        r = self._zq_from_int(1, pM)
        while n:
            if n & 1:
                r = self._zq_mul(r, a, pM)
            a = self._zq_mul(a, a, pM)
            n >>= 1
        return r

    # -- R = Zq[pi]/(pi^e - p) -------------------------------------------------

    def _r_zero(self):
        return tuple((0,) * self.f for _ in range(self.e))

    def _r_add(self, a, b, pM):
        return tuple(self._zq_add(x, y, pM) for x, y in zip(a, b))

    def _r_neg(self, a, pM):
        return tuple(self._zq_neg(x, pM) for x in a)

    def _r_mul(self, a, b, pM):
        e, f = self.e, self.f
        out = [[0] * f for _ in range(e)]
        for i, ca in enumerate(a):
            if any(ca):
                for j, cb in enumerate(b):
                    if any(cb):
                        prod = self._zq_mul(ca, cb, pM)
                        t = i + j
                        if t >= e:  # pi^e = p
                            t -= e
                            prod = tuple((self.p * c) % pM for c in prod)
                        cur = out[t]
                        out[t] = [(x + y) % pM for x, y in zip(cur, prod)]
        return tuple(tuple(row) for row in out)

    def _r_shift_pi(self, a, pM):
        """Multiply by pi."""
        last = a[-1]
        head = tuple((self.p * c) % pM for c in last)
        return (head,) + a[:-1]

    def _r_div_pi(self, a, pM):
        """Divide by pi; requires the constant Zq-coefficient divisible by p."""
        c0 = a[0]
        assert all(x % self.p == 0 for x in c0), "not divisible by pi"
        tail = tuple(x // self.p for x in c0)
        return a[1:] + (tail,)

    def _M_for(self, ndigits):
        return (ndigits + self.e - 1) // self.e + 2

    def _to_internal(self, digits, M):
        """sum_j teich(digits[j]) pi^j as an R-vector mod p^M."""
        pM = self.p**M
        acc = self._r_zero()
        zq0 = (0,) * self.f
        for j, d in enumerate(digits):
            if d:
                vec = (self.teich(d, M),) + (zq0,) * (self.e - 1)
                for _ in range(j):
                    vec = self._r_shift_pi(vec, pM)
                acc = self._r_add(acc, vec, pM)
        return acc

    def _extract_digits(self, vec, ndigits, M):
        """First ndigits Teichmuller digits of an internal vector."""
        pM = self.p**M
        out = []
        for _ in range(ndigits):
            d = self._zq_residue(vec[0])
            out.append(d)
            if d:
                t = self.teich(d, M)
                vec = self._r_add(vec, (self._zq_neg(t, pM),) + ((0,) * self.f,) * (self.e - 1), pM)
            vec = self._r_div_pi(vec, pM)
        return out

    # -- element ops -------------------------------------------------------------

    def from_integer(self, n, prec):
        if n == 0:
            return self.spec.zero(INF)
        M = self._M_for(prec)
        pM = self.p**M
        vec = (self._zq_from_int(n, pM),) + ((0,) * self.f,) * (self.e - 1)
        # valuation of n in this model: e * v_p(n)
        v = 0
        while n % self.p == 0:
            n //= self.p
            v += self.e
        for _ in range(v):
            vec = self._r_div_pi(vec, pM)
        digits = self._extract_digits(vec, prec, M)
        return self.spec.from_digits(v, digits)

    def add(self, x, y):
        ap = min(x.abs_prec, y.abs_prec)
        if ap == INF:
            return self.spec.zero(INF)
        if x.is_zeroish() and y.is_zeroish():
            return self.spec.zero(ap)
        lo = min(x.val() if not x.is_zeroish() else ap, y.val() if not y.is_zeroish() else ap)
        lo = int(min(lo, ap))
        if lo >= ap:
            return self.spec.zero(ap)
        n = int(ap - lo)
        M = self._M_for(n)
        pM = self.p**M
        xd = [x.digit(lo + j) if lo + j < x.abs_prec else 0 for j in range(n)]
        yd = [y.digit(lo + j) if lo + j < y.abs_prec else 0 for j in range(n)]
        vec = self._r_add(self._to_internal(xd, M), self._to_internal(yd, M), pM)
        digits = self._extract_digits(vec, n, M)
        return self.spec.from_digits(lo, digits) if any(digits) else self.spec.zero(ap)

    def neg(self, x):
        if x.is_zeroish():
            return x
        n = len(x.digits)
        M = self._M_for(n)
        pM = self.p**M
        vec = self._r_neg(self._to_internal(x.digits, M), pM)
        digits = self._extract_digits(vec, n, M)
        return self.spec.from_digits(x.valuation, digits)

    def mul(self, x, y):
        if x.is_zeroish() or y.is_zeroish():
            vx = x.val() if not x.is_zeroish() else x.zero_prec
            vy = y.val() if not y.is_zeroish() else y.zero_prec
            return self.spec.zero(vx + vy)
        n = min(len(x.digits), len(y.digits))
        M = self._M_for(n)
        pM = self.p**M
        vec = self._r_mul(self._to_internal(x.digits[:n], M), self._to_internal(y.digits[:n], M), pM)
        digits = self._extract_digits(vec, n, M)
        res = self.spec.from_digits(x.valuation + y.valuation, digits)
        if res.is_zeroish():
            return self.spec.zero(x.valuation + y.valuation + n)
        return res

    def inv(self, x):
        n = len(x.digits)
        M = self._M_for(n) + 1
        pM = self.p**M
        u = self._to_internal(x.digits, M)
        # Newton iteration z <- z(2 - uz), starting from the residue inverse
        z = self._to_internal([self.k.inv(x.digits[0])], M)
        two = self._r_add(self._to_internal([1], M), self._to_internal([1], M), pM)
        steps = max(1, math.ceil(math.log2(n)) + 2) if n > 1 else 2
        for _ in range(steps):
            uz = self._r_mul(u, z, pM)
            corr = self._r_add(two, self._r_neg(uz, pM), pM)
            z = self._r_mul(z, corr, pM)
        digits = self._extract_digits(z, n, M)
        return self.spec.from_digits(-x.valuation, digits)


_ENGINES = {}


def _engine_for(spec):
    key = spec
    if key not in _ENGINES:
        if spec.characteristic == 0:
            _ENGINES[key] = CharZeroEngine(spec)
        else:
            _ENGINES[key] = CharPEngine(spec)
    return _ENGINES[key]
