"""Lifting the distinguished unramified factor of X^(q^d - 1) - 1 to O/P^m.

X^(q^d-1) - 1 is separable over the residue field, so its factorization mod P
lifts uniquely level by level.  We lift the degree-d factor whose roots sit
above the canonical generator of F_{q^d}^* and its Frobenius orbit; the result
is the minimal polynomial over O/P^m of a primitive Teichmuller digit, and it
drives the extension-level transport between close fields.
"""

from __future__ import annotations

import itertools

from .residue import residue_field, subfield_embedding
from .truncpoly import (
    kpoly_divmod,
    kpoly_ext_gcd,
    kpoly_mul,
    kpoly_trim,
    poly_canonical_mod,
    poly_divmod_monic,
    poly_mul,
    poly_sub,
    poly_trim,
)


def residue_factor(spec, d):
    """The distinguished irreducible degree-d factor of X^(q^d-1)-1 over k_F.

    Coefficients are returned as k_F indices (constant term first, monic).
    It is the minimal polynomial of the canonical generator of F_{q^d}^*.
    """
    p, f = spec.p, spec.f
    kE = residue_field(p, f * d)
    kF = spec.residue
    g = kE.multiplicative_generator()
    # min poly over k_F: product of (X - g^(q^i)) in k_E[X]
    coeffs = [kE.neg(g), 1]
    q = spec.q
    root = g
    for _ in range(d - 1):
        root = kE.pow(root, q)
        coeffs = kpoly_mul(kE, coeffs, [kE.neg(root), 1])
    emb = subfield_embedding(p, f, f * d)
    back = {img: i for i, img in enumerate(emb)}
    try:
        return [back[c] for c in coeffs]
    except KeyError:  # pragma: no cover - orbit product is always k_F-rational
        raise AssertionError("factor coefficients failed to descend to k_F")


def _lift_kpoly(spec, coeffs, m):
    """Interpret residue-field coefficients as O/P^m elements (Teichmuller-lifted digit)."""
    out = []
    for c in coeffs:
        if c == 0:
            out.append(spec.zero(m))
        else:
            out.append(spec.from_digits(0, (c,) + (0,) * (m - 1)))
    return out


def _reduce_poly(spec, coeffs):
    """Residue reduction of a polynomial with integral coefficients."""
    out = []
    for c in coeffs:
        if c.is_zeroish() or c.val() >= 1:
            out.append(0)
        else:
            out.append(c.digit(0))
    return kpoly_trim(out)


def cyclotomic_like(spec, d, m):
    """X^(q^d - 1) - 1 with coefficients in O/P^m."""
    n = spec.q**d - 1
    one = spec.one(m)
    minus_one = -one
    coeffs = [minus_one] + [spec.zero(m)] * (n - 1) + [one]
    return coeffs


def hensel_lift_factor(spec, d, m):
    """Unique monic degree-d divisor of X^(q^d-1)-1 over O/P^m lifting residue_factor.

    Returns the coefficient list (constant first) of TruncatedElements at
    absolute precision m.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    k = spec.residue
    mbar = residue_factor(spec, d)
    P = cyclotomic_like(spec, d, m)
    Pbar = _reduce_poly(spec, P)
    vbar, rem = kpoly_divmod(k, Pbar, mbar)
    assert not rem, "residue factor must divide X^(q^d-1)-1"
    g, s, t = kpoly_ext_gcd(k, mbar, vbar)
    assert g == [1], "factors are coprime since X^(q^d-1)-1 is separable"
    # s*mbar + t*vbar = 1 over k
    M = _lift_kpoly(spec, mbar, m)
    V = _lift_kpoly(spec, vbar, m)
    for level in range(1, m):
        # defect Delta = (P - M*V) / pi^level, reduced mod P
        defect = poly_sub(spec, P, poly_mul(spec, M, V, cap=m), cap=m)
        if all(c.is_zeroish() or c.val() >= m for c in defect):
            break
        shifted = [c.shift(-level) for c in defect]
        dbar = _reduce_poly(spec, shifted)
        if not dbar:
            continue
        # solve U*vbar + W*mbar = dbar with deg U < d  (keeps M monic)
        u = kpoly_divmod(k, kpoly_mul(k, t, dbar), mbar)[1]
        num = kpoly_trim([k.sub(a, b) for a, b in itertools.zip_longest(
            dbar, kpoly_mul(k, u, vbar), fillvalue=0)])
        w, wr = kpoly_divmod(k, num, mbar)
        assert not wr
        U = [c.shift(level) for c in _lift_kpoly(spec, u, m - level)]
        W = [c.shift(level) for c in _lift_kpoly(spec, w, m - level)]
        M = _pad_add(spec, M, U, m)
        V = _pad_add(spec, V, W, m)
    check, rem = poly_divmod_monic(spec, P, M, cap=m)
    assert all(c.is_zeroish() or c.val() >= m for c in rem), "lift failed to divide"
    return M


def _pad_add(spec, a, b, m):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else spec.zero(m)
        y = b[i] if i < len(b) else spec.zero(m)
        out.append((x + y).truncate(m))
    return out


def all_monic_lift_candidates(spec, d, m):
    """Every monic degree-d polynomial over O/P^m (exhaustive oracle helper)."""
    k = spec.residue
    digit_space = list(itertools.product(range(k.q), repeat=m))
    one = spec.one(m)
    for tail in itertools.product(digit_space, repeat=d):
        coeffs = [spec.from_digits(0, digs) if any(digs) else spec.zero(m) for digs in tail]
        yield coeffs + [one]


def divides_mod(spec, divisor, dividend, m):
    """Whether monic `divisor` divides `dividend` in (O/P^m)[X]."""
    _, rem = poly_divmod_monic(spec, dividend, divisor, cap=m)
    return all(c.is_zeroish() or c.val() >= m for c in rem)


def lift_uniqueness_oracle(spec, d, m):
    """Brute-force enumeration of all monic degree-d divisors with the right reduction.

    Returns the list of canonical digit matrices of the survivors; the lifting
    proposition says there is exactly one.
    """
    target_bar = residue_factor(spec, d)
    P = cyclotomic_like(spec, d, m)
    found = []
    for cand in all_monic_lift_candidates(spec, d, m):
        if _reduce_poly(spec, cand) != kpoly_trim(target_bar):
            continue
        if divides_mod(spec, cand, P, m):
            found.append(poly_canonical_mod(cand, m, degree=d))
    return found
