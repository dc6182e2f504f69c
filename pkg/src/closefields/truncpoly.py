"""Dense polynomial helpers over truncated local-field elements.

Polynomials are lists/tuples of TruncatedElements, constant term first.  Two
usage modes:

  * free precision: each coefficient keeps its own guaranteed precision
    (used for characteristic polynomials, resultants);
  * fixed ring O/P^m: pass cap=m, coefficients are read modulo P^m and
    results are truncated back to absolute precision m (used for the Hensel
    machinery, where O/P^m is the ambient ring rather than an approximation).
"""

from __future__ import annotations


def poly_trim(coeffs):
    """Drop trailing coefficients that are certified zero."""
    out = list(coeffs)
    while out and out[-1].is_exact_zero():
        out.pop()
    return out


def poly_add(spec, a, b, cap=None):
    n = max(len(a), len(b))
    z = spec.zero()
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else z
        y = b[i] if i < len(b) else z
        s = x + y
        out.append(s.truncate(cap) if cap is not None else s)
    return poly_trim(out)


def poly_neg(spec, a, cap=None):
    return [(-c).truncate(cap) if cap is not None else -c for c in a]


def poly_sub(spec, a, b, cap=None):
    return poly_add(spec, a, poly_neg(spec, b), cap)


def poly_mul(spec, a, b, cap=None):
    if not a or not b:
        return []
    out = [spec.zero() for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if ca.is_exact_zero():
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    if cap is not None:
        out = [c.truncate(cap) for c in out]
    return poly_trim(out)


def poly_scale(spec, a, s, cap=None):
    out = [s * c for c in a]
    if cap is not None:
        out = [c.truncate(cap) for c in out]
    return poly_trim(out)


def poly_shift(a, k, spec):
    """Multiply by X^k."""
    return [spec.zero()] * k + list(a)


def poly_divmod_monic(spec, a, d, cap=None):
    """Divide by a MONIC divisor d; exact in any ring."""
    assert d, "division by zero polynomial"
    lead = d[-1]
    assert not lead.is_zeroish() and lead.valuation == 0 and lead.digits[0] == 1 and all(
        x == 0 for x in lead.digits[1:]
    ) or _is_one(lead), "divisor must be monic"
    rem = list(a)
    dd = len(d) - 1
    quot = [spec.zero()] * max(0, len(a) - dd)
    while len(poly_trim(rem)) - 1 >= dd:
        rem = poly_trim(rem)
        c = rem[-1]
        shift = len(rem) - 1 - dd
        quot[shift] = quot[shift] + c
        for i in range(dd + 1):
            rem[shift + i] = rem[shift + i] - c * d[i]
            if cap is not None:
                rem[shift + i] = rem[shift + i].truncate(cap)
        rem.pop()
    if cap is not None:
        quot = [c.truncate(cap) for c in quot]
        rem = [c.truncate(cap) for c in rem]
    return poly_trim(quot), poly_trim(rem)


def _is_one(x):
    return (not x.is_zeroish()) and x.valuation == 0 and x.digits[0] == 1 and all(
        d == 0 for d in x.digits[1:]
    )


def poly_eval(spec, a, x):
    acc = spec.zero()
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_derivative(spec, a):
    out = []
    for i in range(1, len(a)):
        out.append(spec.from_integer(i, max(1, a[i].precision or 1)) * a[i])
    return poly_trim(out)


def poly_is_zero_mod(a, m):
    """All coefficients certified in P^m."""
    return all(c.abs_prec >= m and c.val() >= m for c in a)


def canonical_mod(x, m):
    """Digit window (0..m) of an integral element; hashable key for O/P^m."""
    return x.digit_window(0, m)


def poly_canonical_mod(a, m, degree=None):
    n = (degree + 1) if degree is not None else len(a)
    out = []
    for i in range(n):
        out.append(canonical_mod(a[i], m) if i < len(a) else (0,) * m)
    return tuple(out)


# --- polynomials over the residue field (ints), used by Hensel corrections


def kpoly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def kpoly_add(k, a, b):
    n = max(len(a), len(b))
    return kpoly_trim([k.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])


def kpoly_mul(k, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] = k.add(out[i + j], k.mul(ca, cb))
    return kpoly_trim(out)


def kpoly_divmod(k, a, d):
    d = kpoly_trim(d)
    assert d, "division by zero"
    inv_lead = k.inv(d[-1])
    rem = list(a)
    quot = [0] * max(0, len(a) - len(d) + 1)
    while len(kpoly_trim(rem)) >= len(d):
        rem = kpoly_trim(rem)
        c = k.mul(rem[-1], inv_lead)
        shift = len(rem) - len(d)
        quot[shift] = k.add(quot[shift], c)
        for i in range(len(d)):
            rem[shift + i] = k.sub(rem[shift + i], k.mul(c, d[i]))
        rem.pop()
    return kpoly_trim(quot), kpoly_trim(rem)


def kpoly_ext_gcd(k, a, b):
    """(g, s, t) with s*a + t*b = g over the residue field k."""
    r0, r1 = kpoly_trim(a), kpoly_trim(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = kpoly_divmod(k, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, kpoly_add(k, s0, kpoly_scale_neg(k, kpoly_mul(k, q, s1)))
        t0, t1 = t1, kpoly_add(k, t0, kpoly_scale_neg(k, kpoly_mul(k, q, t1)))
    if r0:
        lead_inv = k.inv(r0[-1])
        r0 = [k.mul(c, lead_inv) for c in r0]
        s0 = [k.mul(c, lead_inv) for c in s0]
        t0 = [k.mul(c, lead_inv) for c in t0]
    return r0, s0, t0


def kpoly_scale_neg(k, a):
    return [k.neg(c) for c in a]
