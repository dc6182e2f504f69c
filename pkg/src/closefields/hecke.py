"""The level-l Hecke algebra H(G'; K^l): indicator basis and exact convolution.

A HeckeElement is a finitely supported map from double-coset keys to exact
rationals.  Convolution uses left-coset decompositions

    1_(W1) * 1_(W2) (x) = vol(K^l) * #{ i : g_i^(-1) x in W2 },
    W1 = disjoint union of g_i K^l,

with all volumes exact; total-mass accounting (sum of value * coset volume
must equal vol(W1) vol(W2)) both certifies completeness of the discovered
support and lets the product scan stop early.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .gld import (
    CeilingError,
    DoubleCosetKey,
    canonical_double_coset,
    coset_volume,
    diag_pi,
    enumerate_glr_residue,
    left_coset_transversal,
    lift_residue,
    serialize_residue,
    vol_K_level,
)
from .localfield import PrecisionError, SpecError
from .matrices import Matrix


class HeckeElement:
    """Finitely supported combination of double-coset indicators at level l."""

    def __init__(self, alg, l, terms=()):
        self.alg = alg
        self.l = l
        self.terms = []  # list of [DoubleCosetKey, Fraction]
        for key, coeff in terms:
            self.add_term(key, coeff)

    def add_term(self, key, coeff):
        coeff = Fraction(coeff)
        if coeff == 0:
            return
        if key.l != self.l:
            raise SpecError("key level does not match element level")
        for entry in self.terms:
            if entry[0].same_coset(key):
                entry[1] += coeff
                if entry[1] == 0:
                    self.terms.remove(entry)
                return
        self.terms.append([key, coeff])

    def coefficient(self, key):
        for k, c in self.terms:
            if k.same_coset(key):
                return c
        return Fraction(0)

    def support_bound(self):
        """Largest exponent spread present in the support."""
        best = 0
        for k, _ in self.terms:
            best = max(best, max(k.exponents) - min(k.exponents))
        return best

    def scaled(self, s):
        return HeckeElement(self.alg, self.l, [(k, c * Fraction(s)) for k, c in self.terms])

    def __add__(self, other):
        out = HeckeElement(self.alg, self.l, [(k, c) for k, c in self.terms])
        for k, c in other.terms:
            out.add_term(k, c)
        return out

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if (self.alg, self.l) != (other.alg, other.l):
            return False
        if len(self.terms) != len(other.terms):
            return False
        return all(other.coefficient(k) == c for k, c in self.terms)

    def is_zero(self):
        return not self.terms

    def total_mass(self):
        """Integral of the function: sum of coeff * vol(double coset)."""
        acc = Fraction(0)
        for k, c in self.terms:
            acc += c * coset_volume(self.alg, k.exponents, self.l)
        return acc

    def serialize(self, ceiling=200000):
        return {
            "l": self.l,
            "terms": sorted(
                (
                    {
                        "key": k.serialize(ceiling),
                        "num": c.numerator,
                        "den": c.denominator,
                    }
                    for k, c in self.terms
                ),
                key=lambda t: (t["key"]["exponents"], t["key"]["B"], t["key"]["C"]),
            ),
        }

    def __repr__(self):
        return "HeckeElement(l=%d, %d terms)" % (self.l, len(self.terms))


def h_fn(g, l):
    """h(g) = vol(K^l)^(-1) 1_(K^l g K^l)."""
    if isinstance(g, DoubleCosetKey):
        key = g
        alg = key.alg
    else:
        key = canonical_double_coset(g, l)
        alg = g.ring
    r = len(key.exponents)
    return HeckeElement(alg, l, [(key, 1 / vol_K_level(alg, r, l))])


def unit_element(alg, r, l):
    """The identity of the algebra: vol(K^l)^(-1) 1_(K^l)."""
    key = DoubleCosetKey(
        alg, l, (0,) * r,
        Matrix.identity(alg, r, prec=l * alg.d + 2),
        Matrix.identity(alg, r, prec=l * alg.d + 2),
    )
    return HeckeElement(alg, l, [(key, 1 / vol_K_level(alg, r, l))])


def diagonal_key(alg, exps, l, prec=None):
    r = len(exps)
    prec = prec or (l * alg.d + max(exps) - min(exps) + 4)
    eye = Matrix.identity(alg, r, prec=prec)
    return DoubleCosetKey(alg, l, tuple(exps), eye, eye.copy())


# ---------------------------------------------------------------------------
# Left-coset decompositions of double cosets


def decompose_left_cosets(key, work_prec=None):
    """K^l B~ A C~^(-1) K^l as a disjoint union of g_i K^l; returns the g_i.

    g_i = B u_i A C^(-1) with u_i the transversal of K^l cap A K^l A^(-1).
    Representatives only depend on residues mod P_D^(ld); lifts are
    zero-padded to work_prec.
    """
    alg = key.alg
    l = key.l
    ld = l * alg.d
    exps = key.exponents
    spread = max(exps) - min(exps)
    work_prec = work_prec or (ld + 2 * spread + 6)
    B = lift_residue(alg, _pad(serialize_residue(key.B, ld), work_prec), work_prec)
    C = lift_residue(alg, _pad(serialize_residue(key.C, ld), work_prec), work_prec)
    Cinv = C.inv()
    A = diag_pi(alg, exps, prec=work_prec)
    out = []
    for u in left_coset_transversal(alg, exps, l, work_prec):
        out.append(B * u * A * Cinv)
    return out


def _pad(digit_matrix, prec):
    return tuple(tuple(tuple(d) + (0,) * (prec - len(d)) for d in row) for row in digit_matrix)


class _CosetIndex:
    """Identify left K^l-cosets of group elements: coarse bucket + exact test."""

    def __init__(self, alg, l):
        self.alg = alg
        self.ld = l * alg.d
        self.buckets = {}  # bucket -> list of (matrix, inverse, payload)

    def bucket(self, x):
        v0 = x.min_val()
        shifted = x.map(lambda e: e.shift_pi(-v0))
        return (v0, serialize_residue(shifted, self.ld))

    def lookup(self, x):
        b = self.bucket(x)
        for rep, repinv, payload in self.buckets.get(b, ()):
            y = repinv * x
            if (y - Matrix.identity(self.alg, x.n)).all_entries_in_power(self.ld):
                return payload
        return None

    def insert(self, x, payload):
        b = self.bucket(x)
        self.buckets.setdefault(b, []).append((x, x.inv(), payload))


def convolve_basis(key1, key2, work_prec=None, ceiling=200000):
    """1_(W1) * 1_(W2) as {output key: value}; exact, mass-certified."""
    alg = key1.alg
    if (alg, key1.l) != (key2.alg, key2.l):
        raise SpecError("keys live at different levels/algebras")
    l = key1.l
    r = len(key1.exponents)
    if work_prec is None:
        s1 = max(key1.exponents) - min(key1.exponents)
        s2 = max(key2.exponents) - min(key2.exponents)
        # inverses and Cartan reduction of the products eat a few spreads
        work_prec = l * alg.d + 4 * (s1 + s2 + 1) + 8
    reps1 = decompose_left_cosets(key1, work_prec)
    reps2 = decompose_left_cosets(key2, work_prec)
    inv1 = [g.inv() for g in reps1]
    volK = vol_K_level(alg, r, l)
    target_mass = coset_volume(alg, key1.exponents, l) * coset_volume(alg, key2.exponents, l)
    found = []  # (key, value)
    acc = Fraction(0)
    seen = _CosetIndex(alg, l)
    n_checked = 0
    for gi, hj in itertools.product(reps1, reps2):
        if acc == target_mass:
            break
        x = gi * hj
        n_checked += 1
        if n_checked > ceiling:
            raise CeilingError("convolution product scan exceeded ceiling")
        if seen.lookup(x) is not None:
            continue
        seen.insert(x, True)
        key_x = canonical_double_coset(x, l)
        if any(k.same_coset(key_x) for k, _ in found):
            continue
        count = 0
        for gi_inv in inv1:
            y = gi_inv * x
            try:
                ky = canonical_double_coset(y, l)
            except PrecisionError:
                raise
            if ky.same_coset(key2):
                count += 1
        value = volK * count
        if value:
            found.append((key_x, value))
            acc += value * coset_volume(alg, key_x.exponents, l)
    if acc != target_mass:
        raise AssertionError(
            "convolution mass mismatch: found %s of %s" % (acc, target_mass))
    return found


def convolve(f1, f2, work_prec=None, ceiling=200000):
    """Exact convolution of two Hecke elements (bilinear over the basis)."""
    if (f1.alg, f1.l) != (f2.alg, f2.l):
        raise SpecError("operands live over different Hecke algebras")
    out = HeckeElement(f1.alg, f1.l)
    cache = []
    for k1, c1 in f1.terms:
        for k2, c2 in f2.terms:
            basis = None
            for (ck1, ck2, res) in cache:
                if ck1.same_coset(k1) and ck2.same_coset(k2):
                    basis = res
                    break
            if basis is None:
                basis = convolve_basis(k1, k2, work_prec, ceiling)
                cache.append((k1, k2, basis))
            for key, value in basis:
                out.add_term(key, value * c1 * c2)
    return out


# ---------------------------------------------------------------------------
# Basis enumeration and the generator family


def basis_keys_for_exponents(alg, exps, l, ceiling=200000):
    """All double-coset keys with Cartan exponents exps (the set T~)."""
    from .gld import enumerate_h_group

    ld = l * alg.d
    exps = tuple(exps)
    mats = enumerate_glr_residue(alg, len(exps), ld, ceiling)
    H = enumerate_h_group(alg, exps, l, ceiling)
    seen = set()
    out = []
    for bm, cm in itertools.product(mats, repeat=2):
        if (bm, cm) in seen:
            continue
        B = lift_residue(alg, bm, ld)
        C = lift_residue(alg, cm, ld)
        orbit = set()
        for (U, V) in H:
            orbit.add((serialize_residue(B * U, ld), serialize_residue(C * V, ld)))
        seen |= orbit
        key = DoubleCosetKey(alg, l, exps, lift_residue(alg, _pad(bm, ld + 4), ld + 4),
                             lift_residue(alg, _pad(cm, ld + 4), ld + 4))
        out.append(key)
    return out


def all_basis_keys(alg, r, l, exp_lo, exp_hi, ceiling=200000):
    """Keys for every nondecreasing exponent tuple with entries in [exp_lo, exp_hi]."""
    out = []
    for exps in itertools.combinations_with_replacement(range(exp_lo, exp_hi + 1), r):
        out.extend(basis_keys_for_exponents(alg, exps, l, ceiling))
    return out


def diagonal_factorization(alg, exps, l):
    """The generator-family factorization of a diagonal coset.

    For nondecreasing exponents a_1 <= ... <= a_r:
      a_1 >= 0:  A = A_0^(a_1) * prod_i A_i^(a_(i+1) - a_i)          (A_0 = pi Id)
      a_1 <  0:  A = A_(-1)^(-a_1) * prod_i A_i^(a_(i+1) - a_i)      (A_(-1) = pi^(-1) Id)
    where A_i has i zeros followed by ones.  Returns the list of exponent
    tuples whose product telescopes to exps.
    """
    exps = tuple(exps)
    r = len(exps)

    def A_i(i):
        return tuple([0] * i + [1] * (r - i))

    factors = []
    a1 = exps[0]
    if a1 >= 0:
        factors += [A_i(0)] * a1
    else:
        factors += [tuple([-1] * r)] * (-a1)
    for i in range(1, r):
        factors += [A_i(i)] * (exps[i] - exps[i - 1])
    return factors


def generator_family(alg, r, l, ceiling=200000):
    """{h(x) : x in s_F union {A_(-1), A_0, ..., A_r}} (A_r = Id is the unit)."""
    ld = l * alg.d
    out = []
    for bm in enumerate_glr_residue(alg, r, ld, ceiling):
        B = lift_residue(alg, _pad(bm, ld + 4), ld + 4)
        key = DoubleCosetKey(alg, l, (0,) * r, B,
                             Matrix.identity(alg, r, prec=ld + 4))
        out.append(h_fn(key, l))
    out.append(h_fn(diagonal_key(alg, tuple([-1] * r), l), l))
    for i in range(r + 1):
        exps = tuple([0] * i + [1] * (r - i))
        out.append(h_fn(diagonal_key(alg, exps, l), l))
    return out
