import itertools
import math
import random

import pytest

from closefields.localfield import (
    PrecisionError,
    SpecError,
    arith,
    frobenius_power,
    galois_apply,
    make_local_field,
    unramified_extension,
    valuation,
    TruncatedElement,
)

INF = math.inf


def F2t(N=6):
    return make_local_field("p", 2, 1, N=N)


def F3t(N=6):
    return make_local_field("p", 3, 1, N=N)


def L2(e=4, N=4):
    return make_local_field(0, 2, 1, e=e, N=N)


def random_element(spec, rng, prec=None, min_val=0, max_val=2):
    prec = prec or spec.N
    v = rng.randint(min_val, max_val)
    digits = [rng.randrange(spec.residue.q) for _ in range(prec)]
    digits[0] = rng.randrange(1, spec.residue.q)
    return spec.from_digits(v, digits)


def test_make_local_field_validation():
    assert F2t().q == 2
    spec0 = L2()
    assert spec0.characteristic == 0 and spec0.e == 4
    with pytest.raises(SpecError):
        make_local_field("p", 4, 1)
    with pytest.raises(SpecError):
        make_local_field("p", 2, 1, e=3)
    with pytest.raises(SpecError):
        make_local_field(0, 2, 1)  # missing e
    # determinism / interchangeability
    assert F2t() == F2t()


def test_add_char2():
    F = F2t()
    t = F.uniformizer_element()
    z = t + t
    assert z.is_zeroish() and z.abs_prec == 7  # t known mod t^7, sum cancels


def test_char0_p_fold_sum_valuation():
    # 1+1+...+1 (p times) has valuation e in the Eisenstein model pi^e = p
    L = L2(e=4, N=8)
    one = L.one(8)
    s = L.zero()
    for _ in range(2):
        s = s + one
    assert s.val() == 4  # p = 2 = pi^4 * unit
    # and mod P^4 it is zero
    assert s.truncate(4).is_zeroish()


def test_char0_exact_relation_pi_e_equals_p():
    L = L2(e=4, N=8)
    pi = L.uniformizer_element(prec=8)
    two = L.from_integer(2, 8)
    assert (pi**4).agrees(two, 8)


def test_inv_geometric_series_char2():
    F = F2t()
    one_plus_t = F.from_digits(0, (1, 1, 0, 0))
    inv = one_plus_t.inv()
    assert inv.valuation == 0
    assert inv.digits == (1, 1, 1, 1)  # 1+t+t^2+t^3
    assert (inv * one_plus_t).agrees(F.one(4), 4)


@pytest.mark.parametrize("mk", [F2t, F3t, lambda: L2(e=3, N=6), lambda: make_local_field(0, 3, 1, e=2, N=6)])
def test_ring_axioms_sampled(mk):
    spec = mk()
    rng = random.Random(7)
    for _ in range(25):
        x = random_element(spec, rng, prec=4)
        y = random_element(spec, rng, prec=4)
        z = random_element(spec, rng, prec=4)
        ap = min((x + y).abs_prec, (y + z).abs_prec, (x + z).abs_prec) - 1
        assert ((x + y) + z).agrees(x + (y + z), min(((x + y) + z).abs_prec, (x + (y + z)).abs_prec))
        lhs = x * (y + z)
        rhs = x * y + x * z
        assert lhs.agrees(rhs, min(lhs.abs_prec, rhs.abs_prec))
        assert (x * y).agrees(y * x, (x * y).abs_prec)


@pytest.mark.parametrize("mk", [F2t, F3t, lambda: L2(e=3, N=6)])
def test_valuation_multiplicative(mk):
    spec = mk()
    rng = random.Random(11)
    for _ in range(40):
        x = random_element(spec, rng, prec=3, max_val=3)
        y = random_element(spec, rng, prec=3, max_val=3)
        assert (x * y).val() == x.val() + y.val()
        s = x + y
        assert s.val() >= min(x.val(), y.val())


def test_valuation_entry_points():
    F = F2t()
    t3 = F.uniformizer_element(3)
    assert valuation(t3) == 3
    assert valuation(F.zero()) == INF
    assert valuation(arith("inv", F.uniformizer_element(2))) == -2
    near_zero = F.uniformizer_element() + F.uniformizer_element()
    with pytest.raises(PrecisionError):
        valuation(near_zero)


def test_inv_roundtrip_char0():
    L = L2(e=4, N=6)
    rng = random.Random(3)
    for _ in range(15):
        x = random_element(L, rng, prec=5, max_val=2)
        xi = x.inv()
        assert xi.val() == -x.val()
        prod = x * xi
        assert prod.agrees(L.one(5), prod.abs_prec)


def test_unramified_extension_basics():
    F = F2t()
    E = unramified_extension(F, 2)
    assert E.residue.q == 4
    assert E.q == 4
    E1 = unramified_extension(F, 1)
    assert E1.d == 1
    with pytest.raises(SpecError):
        unramified_extension(E, 2)


def test_frobenius_on_F4_digits_exhaustive():
    F = F2t()
    E = unramified_extension(F, 2)
    k = E.residue
    # sigma = squaring on digits, order 2, fixes F-rational digits
    for a in range(1, 4):
        x = E.from_digits(0, (a, 3, 1))
        fx = frobenius_power(x, 1)
        assert fx.digits[0] == k.mul(a, a)
        assert frobenius_power(fx, 1) == x
    one = E.one(3)
    assert frobenius_power(one, 1) == one
    # fixes embedded base elements
    xF = F.from_digits(0, (1, 1, 1))
    assert frobenius_power(E.embed(xF), 1) == E.embed(xF)


def test_frobenius_order_sampled():
    F = F2t()
    E = unramified_extension(F, 2)
    rng = random.Random(5)
    for _ in range(50):
        x = random_element(E, rng, prec=4)
        assert frobenius_power(x, 2) == x


def test_galois_apply_uses_sigma_power():
    F = F3t()
    E = unramified_extension(F, 2, sigma_power=1)
    rng = random.Random(1)
    x = random_element(E, rng, prec=3)
    assert galois_apply(E, x, 1) == frobenius_power(x, 1)
    assert galois_apply(E, x, 2) == x


def test_embed_descend_roundtrip():
    F = F3t()
    E = unramified_extension(F, 2)
    rng = random.Random(2)
    for _ in range(10):
        x = random_element(F, rng, prec=4)
        up = E.embed(x)
        assert E.descend(up) == x
        # embedding is a ring hom on samples
        y = random_element(F, rng, prec=4)
        assert E.embed(x * y) == E.embed(x) * E.embed(y)
        assert E.embed(x + y) == E.embed(x) + E.embed(y)


def test_json_roundtrip_elements_and_specs():
    from closefields.localfield import FieldSpec

    for spec in (F2t(), L2(), make_local_field("p", 3, 2, N=5)):
        assert FieldSpec.from_json(spec.to_json()) == spec
        rng = random.Random(9)
        x = random_element(spec, rng, prec=4)
        assert TruncatedElement.from_json(spec, x.to_json()) == x
        z = spec.zero(3)
        assert TruncatedElement.from_json(spec, z.to_json()) == z


def test_teichmuller_digits_multiplicative_char0():
    # digits of a product of two Teichmuller units multiply in the residue field
    L = make_local_field(0, 3, 1, e=2, N=4)
    a = L.from_digits(0, (2,))
    b = L.from_digits(0, (2,))
    prod = a * b
    assert prod.digits[0] == 1  # 2*2 = 4 = 1 in F_3, Teichmuller multiplicativity
