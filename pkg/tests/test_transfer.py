import random

import pytest

from closefields.cyclic import make_algebra
from closefields.gld import canonical_double_coset, diag_pi
from closefields.hecke import diagonal_key, h_fn
from closefields.localfield import SpecError, make_local_field
from closefields.transfer import (
    kazhdan_bound,
    make_transfer_context,
    transfer_basis,
    transfer_hecke,
    verify_conjugation_containment,
    verify_level_compatibility,
    verify_transfer_hom,
)


def context(q=2, d=2, r=1, l=1, m=2, e=None, N=10):
    F = make_local_field("p", q, 1, N=N)
    L = make_local_field(0, q, 1, e=e or max(m, 4), N=N)
    return make_transfer_context(F, L, m, d, 1, r, l)


def test_context_validation():
    with pytest.raises(SpecError):
        context(l=3, m=2)
    F = make_local_field("p", 2, 1, N=8)
    L1 = make_local_field(0, 2, 1, e=1, N=8)
    with pytest.raises(Exception):
        make_transfer_context(F, L1, 2, 1, 1, 1, 1)  # e=1 not 2-close


def test_kazhdan_bound_examples():
    assert kazhdan_bound(1, [(0, 0)]) == 1
    assert kazhdan_bound(1, [(0, 1)], d=1) == 2
    assert kazhdan_bound(1, [(0, 2), (0, 1)], d=1) == 3
    assert kazhdan_bound(1, [(0, 1)], d=2) == 2
    assert kazhdan_bound(1, [(0, 2)], d=2) == 2


def test_conjugation_containment_at_bound():
    F = make_local_field("p", 2, 1, N=12)
    alg = make_algebra(F, 1, 1)
    for exps in [(0, 1), (0, 2)]:
        m = kazhdan_bound(1, [exps], 1)
        assert verify_conjugation_containment(alg, exps, 1, m)


def test_transfer_basis_identity_and_diagonal():
    ctx = context(q=2, d=1, r=2, l=1, m=2)
    alg_F, alg_L = ctx.alg_source, ctx.alg_target
    for exps in [(0, 0), (0, 1)]:
        k = diagonal_key(alg_F, exps, 1)
        kt = transfer_basis(ctx, k)
        assert kt.alg == alg_L
        assert kt.exponents == tuple(exps)
        # roundtrip F -> L -> F is the same coset
        back = transfer_basis(ctx, kt, reverse=True)
        assert back.same_coset(k)


def test_transfer_roundtrip_exhaustive_keys():
    ctx = context(q=2, d=1, r=2, l=1, m=2)
    from closefields.hecke import all_basis_keys

    for k in all_basis_keys(ctx.alg_source, 2, 1, 0, 1):
        back = transfer_basis(ctx, transfer_basis(ctx, k), reverse=True)
        assert back.same_coset(k)
        assert back.canonical() == k.canonical()


def test_transfer_hecke_linear():
    ctx = context(q=2, d=1, r=2, l=1, m=2)
    alg_F = ctx.alg_source
    f = h_fn(diagonal_key(alg_F, (0, 1), 1), 1).scaled(3)
    g = transfer_hecke(ctx, f)
    assert g.terms[0][1] == f.terms[0][1]
    assert g.alg == ctx.alg_target


def test_transfer_of_unit_is_unit():
    ctx = context(q=2, d=1, r=2, l=1, m=2)
    from closefields.hecke import unit_element

    one_F = unit_element(ctx.alg_source, 2, 1)
    one_L = unit_element(ctx.alg_target, 2, 1)
    assert transfer_hecke(ctx, one_F) == one_L


def test_level_compatibility():
    ctx = context(q=2, d=1, r=1, l=2, m=3, e=4)
    alg_F = ctx.alg_source
    key = diagonal_key(alg_F, (1,), 2)
    assert verify_level_compatibility(ctx, key)


def test_transfer_hom_same_field_identity():
    # trivially passes with the identity triple on one field
    F = make_local_field("p", 2, 1, N=10)
    ctx = make_transfer_context(F, F, 3, 1, 1, 1, 1)
    rep = verify_transfer_hom(ctx, support_range=(0, 1))
    assert rep["ok"] and rep["pairs_checked"] > 0


def test_transfer_hom_r1_d2():
    # the full rank-1 quaternion case against a characteristic-0 model
    ctx = context(q=2, d=2, r=1, l=1, m=2, e=4, N=10)
    rep = verify_transfer_hom(ctx, support_range=(0, 1))
    assert rep["volumes_ok"]
    assert rep["ok"], rep["failures"][:2]
    assert rep["pairs_checked"] == rep["basis_size"] ** 2


def test_transfer_hom_requires_bound():
    ctx = context(q=2, d=1, r=2, l=1, m=1, e=4)
    with pytest.raises(SpecError):
        verify_transfer_hom(ctx, support_range=(0, 1))
    # diagnostic mode runs anyway and reports
    rep = verify_transfer_hom(ctx, support_range=(0, 0), diagnostic=True)
    assert "failures" in rep
