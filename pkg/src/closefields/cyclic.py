"""Cyclic division algebras D = (+) pi_D^i E with pi_D^d = pi_F.

The twisted commutation rule pi_D^(-1) e pi_D = sigma(e) holds for e in the
maximal unramified subfield E, where sigma = Frob^h generates Gal(E/F) and
gcd(h, d) = 1 pins the isomorphism class.  Elements are stored in left-normal
form x = sum_i pi_D^i e_i (powers of pi_D on the left), and valuations and
precisions are counted in P_D units: v_D(pi_D) = 1, v_D restricted to F is
d*v_F.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .localfield import (
    PrecisionError,
    SpecError,
    galois_apply,
    unramified_extension,
)
from .matrices import Matrix

INF = math.inf


@dataclass(frozen=True)
class AlgebraSpec:
    base: object  # FieldSpec
    d: int
    h: int  # sigma = Frob^h on E-digits

    @property
    def ext(self):
        return unramified_extension(self.base, self.d, sigma_power=self.h % self.d if self.d > 1 else 0)

    @property
    def q(self):
        return self.base.q

    def zero(self, prec=INF):
        E = self.ext
        return CyclicAlgebraElement(self, tuple(E.zero(_comp_prec(prec, i, self.d)) for i in range(self.d)))

    def one(self, prec=None):
        E = self.ext
        prec_e = None if prec is None else max(1, -(-prec // self.d))
        comps = [E.one(prec_e or E.N)] + [E.zero() for _ in range(self.d - 1)]
        return CyclicAlgebraElement(self, tuple(comps))

    def from_components(self, comps):
        E = self.ext
        comps = tuple(comps)
        if len(comps) != self.d:
            raise SpecError("need exactly d components")
        for c in comps:
            if c.field != E:
                raise SpecError("components must live over the unramified extension")
        return CyclicAlgebraElement(self, comps)

    def embed_ext(self, e):
        """E as the commutative subfield (component 0)."""
        E = self.ext
        comps = [e] + [E.zero() for _ in range(self.d - 1)]
        return CyclicAlgebraElement(self, tuple(comps))

    def embed_base(self, x):
        return self.embed_ext(self.ext.embed(x))

    def uniformizer_element(self, power=1, prec=None):
        """pi_D^power."""
        return self.one(prec).shift_pi(power)

    def from_pi_digits(self, valuation, digits):
        """Element sum_j [digits[j]] pi_D^(valuation + j) from P_D-adic Teichmuller digits."""
        E = self.ext
        comps_digits = [{} for _ in range(self.d)]
        for j, s in enumerate(digits):
            midx = valuation + j
            i = midx % self.d
            k = (midx - i) // self.d
            comps_digits[i][k] = s
        comps = []
        for i in range(self.d):
            dd = comps_digits[i]
            if not dd:
                comps.append(E.zero(_comp_prec(valuation + len(digits), i, self.d)))
                continue
            kmin = min(dd)
            kmax_known = _comp_prec(valuation + len(digits), i, self.d)
            window = [dd.get(k, 0) for k in range(kmin, kmax_known)]
            comps.append(E.from_digits(kmin, window))
        return CyclicAlgebraElement(self, tuple(comps))

    def pi_digit_monomial(self, t, digit, abs_prec):
        """[digit] * pi_D^t known modulo P_D^abs_prec (zero-padded)."""
        return self.from_pi_digits(t, (digit,) + (0,) * max(0, abs_prec - t - 1))

    def to_json(self):
        base = self.base.to_json()
        base.update({"d": self.d, "h": self.h})
        return base

    @staticmethod
    def from_json(obj):
        from .localfield import make_local_field

        base = make_local_field(obj["char"], obj["p"], obj["f"], e=obj.get("e"), N=obj["N"])
        return make_algebra(base, obj["d"], obj["h"])


def _comp_prec(abs_prec_D, i, d):
    """E-absolute-precision of component i given P_D absolute precision."""
    if abs_prec_D == INF:
        return INF
    return -(-(abs_prec_D - i) // d)  # ceil((abs - i)/d)


def make_algebra(base, d, h=1):
    """Central division algebra of degree d over base; requires gcd(h, d) = 1."""
    if d < 1:
        raise SpecError("degree must be >= 1")
    if math.gcd(h, d) != 1:
        raise SpecError("gcd(h, d) = %d != 1: sigma = Frob^h does not generate Gal(E/F)"
                        % math.gcd(h, d))
    return AlgebraSpec(base, d, h % d if d > 1 else 0)


class CyclicAlgebraElement:
    """x = sum_{i<d} pi_D^i e_i with e_i in E; immutable."""

    __slots__ = ("algebra", "components")

    def __init__(self, algebra, components):
        self.algebra = algebra
        self.components = tuple(components)

    # -- valuation & precision (P_D units) -----------------------------------

    def val(self):
        d = self.algebra.d
        v = INF  # from components with known valuation
        bound = INF  # weakest certification among zero-ish components
        for i, e in enumerate(self.components):
            if e.is_zeroish():
                if not e.is_exact_zero():
                    bound = min(bound, d * e.zero_prec + i)
            else:
                v = min(v, d * e.val() + i)
        if v <= bound:
            return v
        raise PrecisionError("valuation undetermined at available precision")

    def lies_in_power(self, c):
        """Certified membership in P_D^c (PrecisionError if undecidable)."""
        d = self.algebra.d
        for i, e in enumerate(self.components):
            t = -(-(c - i) // d)
            if e.is_zeroish():
                if e.zero_prec < t:
                    raise PrecisionError("cannot certify membership in P_D^%d" % c)
            elif e.val() < t:
                return False
        return True

    def known_val(self):
        v = self.val()
        if v == INF and not self.is_exact_zero():
            raise PrecisionError("valuation undetermined")
        return v

    @property
    def abs_prec(self):
        d = self.algebra.d
        return min(d * e.abs_prec + i for i, e in enumerate(self.components))

    def is_zeroish(self):
        return all(e.is_zeroish() for e in self.components)

    def is_exact_zero(self):
        return all(e.is_exact_zero() for e in self.components)

    def truncate(self, abs_prec_D):
        d = self.algebra.d
        comps = []
        for i, e in enumerate(self.components):
            target = _comp_prec(abs_prec_D, i, d)
            comps.append(e.truncate(min(target, e.abs_prec)))
        return CyclicAlgebraElement(self.algebra, comps)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        return CyclicAlgebraElement(
            self.algebra, tuple(a + b for a, b in zip(self.components, other.components))
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclicAlgebraElement(self.algebra, tuple(-a for a in self.components))

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def _coerce(self, other):
        if isinstance(other, int):
            other = self.algebra.embed_base(self.algebra.base.from_integer(other))
        if isinstance(other, CyclicAlgebraElement):
            if other.algebra != self.algebra:
                raise SpecError("elements live over different algebras")
            return other
        raise TypeError(type(other))

    def __mul__(self, other):
        other = self._coerce(other)
        alg = self.algebra
        d, ext = alg.d, alg.ext
        out = [ext.zero() for _ in range(d)]
        for i, a in enumerate(self.components):
            if a.is_exact_zero():
                continue
            for j, b in enumerate(other.components):
                if b.is_exact_zero():
                    continue
                term = galois_apply(ext, a, j) * b  # pi^i a pi^j b = pi^(i+j) sigma^j(a) b
                t = i + j
                if t >= d:
                    t -= d
                    term = term.shift(1)  # pi_D^d = pi_F
                out[t] = out[t] + term
        return CyclicAlgebraElement(alg, tuple(out))

    __rmul__ = __mul__

    def shift_pi(self, k):
        """Left multiplication by pi_D^k (exact, any integer k)."""
        x = self
        alg = self.algebra
        d = alg.d
        if d == 1:
            return CyclicAlgebraElement(alg, (x.components[0].shift(k),))
        step = 1 if k >= 0 else -1
        for _ in range(abs(k)):
            comps = list(x.components)
            if step == 1:
                last = comps[d - 1].shift(1)  # pi * pi^(d-1) e = pi_F e
                comps = [last] + comps[: d - 1]
            else:
                first = comps[0].shift(-1)
                comps = comps[1:] + [first]
            x = CyclicAlgebraElement(alg, comps)
        return x

    def shift_pi_right(self, k):
        """Right multiplication by pi_D^k: twists components by sigma^k."""
        alg = self.algebra
        twisted = CyclicAlgebraElement(
            alg, tuple(galois_apply(alg.ext, e, k) for e in self.components)
        )
        return twisted.shift_pi(k)

    def galois(self, j):
        """Componentwise sigma^j (conjugation of the E-coordinates)."""
        alg = self.algebra
        return CyclicAlgebraElement(
            alg, tuple(galois_apply(alg.ext, e, j) for e in self.components)
        )

    def inv(self):
        if self.is_zeroish():
            raise ZeroDivisionError("inversion of (indistinguishable-from-)zero")
        alg = self.algebra
        v = self.known_val()
        u = self.shift_pi(-v)  # unit part: pi^-v * x
        prec = u.abs_prec
        if prec < 1:
            raise PrecisionError("no guaranteed digits left for inversion")
        e0 = u.components[0]
        z = alg.embed_ext(alg.ext.from_digits(0, (alg.ext.residue.inv(e0.digit(0)),)
                                              + (0,) * (max(1, _comp_prec(prec, 0, alg.d)) - 1)))
        two = alg.one(int(prec)) + alg.one(int(prec))
        steps = max(2, math.ceil(math.log2(max(2, prec))) + 2)
        for _ in range(steps):
            z = (z * (two - u * z)).truncate(prec)
        check = (u * z).truncate(prec)
        if not check.agrees(alg.one(int(prec)), prec):
            raise PrecisionError("inverse iteration failed to certify")
        # x = pi^v u, so x^-1 = u^-1 pi^-v = z * pi^-v (right shift); z is
        # two-sided since the truncated ring is finite
        return z.shift_pi_right(-v)

    # -- comparisons / io -----------------------------------------------------

    def agrees(self, other, abs_prec_D):
        other = self._coerce(other)
        diff = self - other
        if diff.abs_prec < abs_prec_D:
            raise PrecisionError("cannot compare at P_D-precision %s" % abs_prec_D)
        return diff.lies_in_power(abs_prec_D)

    def __eq__(self, other):
        if not isinstance(other, CyclicAlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.components == other.components

    def __hash__(self):
        return hash((self.algebra, self.components))

    def pi_digit(self, midx):
        """Teichmuller digit at pi_D^midx."""
        d = self.algebra.d
        i = midx % d
        k = (midx - i) // d
        return self.components[i].digit(k)

    def pi_digit_window(self, lo, hi):
        return tuple(self.pi_digit(m) for m in range(lo, hi))

    def to_json(self):
        return {"components": [c.to_json() for c in self.components]}

    @staticmethod
    def from_json(algebra, obj):
        from .localfield import TruncatedElement

        comps = tuple(TruncatedElement.from_json(algebra.ext, c) for c in obj["components"])
        return CyclicAlgebraElement(algebra, comps)

    def __repr__(self):
        return "D(" + ", ".join(repr(c) for c in self.components) + ")"


def alg_mul(x, y):
    return x * y


def alg_inv(x):
    return x.inv()


def reduced_trace(x):
    """trd(x) = sum_i sigma^i(e_0); lands in the base field."""
    alg = x.algebra
    ext = alg.ext
    e0 = x.components[0]
    acc = ext.zero()
    for i in range(alg.d):
        acc = acc + galois_apply(ext, e0, i)
    return ext.descend(acc)


def as_algebra_matrix(M):
    """Coerce a single element or a matrix over F into a matrix over M_r(D)."""
    if isinstance(M, CyclicAlgebraElement):
        return Matrix(M.algebra, [[M]])
    if isinstance(M.ring, AlgebraSpec):
        return M
    spec = M.ring
    base = spec.base if hasattr(spec, "base") else spec
    alg = make_algebra(base, 1, 1)
    if hasattr(spec, "d") and spec.d != 1:
        raise SpecError("cannot reinterpret a proper extension matrix as M_r(D)")
    return Matrix(alg, [[alg.embed_base(e) if e.field == base else alg.embed_ext(e)
                         for e in row] for row in M.rows])


def psi_embed(M):
    """Unital algebra embedding M_r(D) -> M_n(E), n = rd.

    Per D-entry pi_D^k e the d x d block sends basis column j to row
    (j + k) mod d with value sigma^j(e), picking up a factor pi_F on the
    wrapped rows; this is the matrix of left multiplication on D = E^d and is
    multiplicative by construction.
    """
    M = as_algebra_matrix(M)
    alg = M.ring
    d, ext = alg.d, alg.ext
    r = M.n
    n = r * d
    out = Matrix.zero(ext, n)
    for I in range(r):
        for J in range(r):
            x = M.rows[I][J]
            for k, e in enumerate(x.components):
                if e.is_exact_zero():
                    continue
                for j in range(d):
                    i = (j + k) % d
                    val = galois_apply(ext, e, j)
                    if j + k >= d:
                        val = val.shift(1)  # pi_F
                    out.rows[I * d + i][J * d + j] = out.rows[I * d + i][J * d + j] + val
    return out


def charpoly(mat):
    """Characteristic polynomial det(X*I - mat) over a commutative ring.

    Returned constant-term-first, length n+1, computed by division-free
    cofactor expansion on X-polynomial entries.
    """
    ring = mat.ring
    n = mat.n
    # entries of X*I - mat as polynomial lists over the ring
    entries = [
        [
            [-mat.rows[i][j], ring.one()] if i == j else [-mat.rows[i][j]]
            for j in range(n)
        ]
        for i in range(n)
    ]
    from .truncpoly import poly_add, poly_mul, poly_neg, poly_trim

    def det(rows, cols):
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        i = rows[0]
        acc = []
        for idx, j in enumerate(cols):
            minor = det(rows[1:], cols[:idx] + cols[idx + 1:])
            term = poly_mul(ring, entries[i][j], minor)
            if idx % 2 == 1:
                term = poly_neg(ring, term)
            acc = poly_add(ring, acc, term)
        return acc

    coeffs = det(tuple(range(n)), tuple(range(n)))
    coeffs = list(coeffs) + [ring.zero()] * (n + 1 - len(coeffs))
    return coeffs


def reduced_charpoly(M):
    """Monic degree-n polynomial over F: charpoly of psi(M), coefficients descended."""
    M = as_algebra_matrix(M)
    alg = M.ring
    ext = alg.ext
    coeffs_E = charpoly(psi_embed(M))
    return [ext.descend(c) for c in coeffs_E]
