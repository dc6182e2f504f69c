import pytest

from closefields.hensel import (
    cyclotomic_like,
    divides_mod,
    hensel_lift_factor,
    lift_uniqueness_oracle,
    residue_factor,
)
from closefields.localfield import make_local_field
from closefields.truncpoly import poly_canonical_mod


def test_residue_factor_known():
    F2 = make_local_field("p", 2, 1, N=6)
    assert residue_factor(F2, 1) == [1, 1]          # X - 1 = X + 1 over F_2
    assert residue_factor(F2, 2) == [1, 1, 1]       # X^2 + X + 1
    F3 = make_local_field("p", 3, 1, N=6)
    assert residue_factor(F3, 1) == [1, 1]          # X - 2 = X + 1 over F_3


def test_lift_d1_is_x_minus_one_char2():
    F2 = make_local_field("p", 2, 1, N=6)
    lifted = hensel_lift_factor(F2, 1, 3)
    assert len(lifted) == 2
    assert lifted[0].digit_window(0, 3) == (1, 0, 0)  # constant term -1 = 1


def test_lift_d2_charp_is_constant():
    # in equal characteristic the residue factorization lifts verbatim
    F2 = make_local_field("p", 2, 1, N=6)
    lifted = hensel_lift_factor(F2, 2, 3)
    assert poly_canonical_mod(lifted, 3, degree=2) == (
        (1, 0, 0), (1, 0, 0), (1, 0, 0))  # X^2+X+1


@pytest.mark.parametrize("p,e,d,m", [(2, 4, 2, 3), (3, 3, 2, 2), (2, 6, 1, 4), (3, 4, 1, 3)])
def test_lift_divides_char0(p, e, d, m):
    L = make_local_field(0, p, 1, e=e, N=max(m + 1, 4))
    lifted = hensel_lift_factor(L, d, m)
    assert lifted[-1].digits == tuple([1] + [0] * (lifted[-1].precision - 1))
    assert divides_mod(L, lifted, cyclotomic_like(L, d, m), m)


@pytest.mark.parametrize("p,d,m", [(2, 2, 3), (3, 2, 2), (2, 1, 3), (3, 1, 3)])
def test_uniqueness_oracle_charp(p, d, m):
    F = make_local_field("p", p, 1, N=6)
    survivors = lift_uniqueness_oracle(F, d, m)
    assert len(survivors) == 1
    assert survivors[0] == poly_canonical_mod(hensel_lift_factor(F, d, m), m, degree=d)


def test_uniqueness_oracle_char0_small():
    L = make_local_field(0, 2, 1, e=4, N=4)
    survivors = lift_uniqueness_oracle(L, 2, 2)
    assert len(survivors) == 1
    assert survivors[0] == poly_canonical_mod(hensel_lift_factor(L, 2, 2), 2, degree=2)
