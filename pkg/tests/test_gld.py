import itertools
import random
from fractions import Fraction

import pytest

from closefields.cyclic import make_algebra
from closefields.gld import (
    canonical_double_coset,
    cartan,
    coset_volume,
    diag_pi,
    enumerate_glr_residue,
    enumerate_h_group,
    glr_residue_order,
    h_membership,
    h_membership_lift_oracle,
    index_oracle,
    left_coset_transversal,
    lift_residue,
    mat_val,
    serialize_residue,
    vol_K_level,
)
from closefields.localfield import make_local_field
from closefields.matrices import Matrix


def setup_alg(q=2, d=1, N=10):
    F = make_local_field("p", q, 1, N=N)
    return F, make_algebra(F, d, 1)


def random_unit_matrix(alg, r, rng, prec=6):
    from closefields.gld import residue_invertible

    E = alg.ext
    while True:
        rows = []
        for i in range(r):
            row = []
            for j in range(r):
                digits = [rng.randrange(E.residue.q) for _ in range(prec * alg.d)]
                el = alg.from_pi_digits(0, digits)
                if el.is_zeroish():
                    el = alg.zero(prec * alg.d)
                row.append(el)
            rows.append(row)
        M = Matrix(alg, rows)
        if residue_invertible(M):
            return M


def random_gl(alg, r, rng, prec=6, max_exp=2):
    u1 = random_unit_matrix(alg, r, rng, prec)
    u2 = random_unit_matrix(alg, r, rng, prec)
    exps = sorted(rng.randint(0, max_exp) for _ in range(r))
    return u1 * diag_pi(alg, exps, prec=prec * alg.d) * u2, tuple(exps)


def test_mat_val():
    F, alg = setup_alg()
    assert mat_val(Matrix.identity(alg, 2, prec=4)) == 0
    A = diag_pi(alg, (1, 3), prec=6)
    assert mat_val(A) == 1
    rng = random.Random(3)
    for _ in range(100):
        M, _ = random_gl(alg, 2, rng, prec=4)
        Mp, _ = random_gl(alg, 2, rng, prec=4)
        assert mat_val(M * Mp) >= mat_val(M) + mat_val(Mp)


def test_cartan_diagonal_and_antidiagonal():
    F, alg = setup_alg()
    form = cartan(diag_pi(alg, (1, 3), prec=8))
    assert form.exponents == (1, 3)
    # [[0,1],[t,0]] has exponents (0,1)
    t = alg.embed_base(F.uniformizer_element(1, prec=6))
    one = alg.one(6)
    g = Matrix(alg, [[alg.zero(), one], [t, alg.zero()]])
    form = cartan(g)
    assert form.exponents == (0, 1)


@pytest.mark.parametrize("q,d,r", [(2, 1, 2), (3, 1, 2), (2, 2, 1), (2, 2, 2)])
def test_cartan_roundtrip_seeded(q, d, r):
    F, alg = setup_alg(q, d)
    rng = random.Random(100 * q + 10 * d + r)
    for _ in range(25):
        g, exps = random_gl(alg, r, rng, prec=6)
        form = cartan(g)
        assert form.exponents == tuple(d * 0 + e for e in exps) or form.exponents == exps
        recon = form.k1 * diag_pi(alg, form.exponents) * form.k2
        assert (g - recon).all_entries_in_power(form.witness_prec)
        assert form.witness_prec >= 4


def test_cartan_exponents_stable_under_K(q=2):
    F, alg = setup_alg(q, 1)
    rng = random.Random(17)
    for _ in range(20):
        g, _ = random_gl(alg, 2, rng, prec=6)
        u = random_unit_matrix(alg, 2, rng, prec=6)
        v = random_unit_matrix(alg, 2, rng, prec=6)
        assert cartan(u * g * v).exponents == cartan(g).exponents


def test_enumerate_gl2_f2():
    F, alg = setup_alg(2, 1)
    mats = enumerate_glr_residue(alg, 2, 1)
    assert len(mats) == 6  # |GL_2(F_2)|
    assert glr_residue_order(alg, 2, 1) == 6


def test_h_membership_identity_A():
    # A = Id: membership iff B^ = C^
    F, alg = setup_alg(2, 1)
    mats = enumerate_glr_residue(alg, 2, 1)
    for bm, cm in itertools.product(mats, repeat=2):
        B, C = lift_residue(alg, bm, 1), lift_residue(alg, cm, 1)
        assert h_membership(alg, (0, 0), 1, B, C) == (bm == cm)


def test_h_membership_vs_lift_oracle_36_pairs():
    # r=2, A=diag(1,pi), q=2, d=1, l=1: exhaustive agreement on GL_2(F_2)^2
    F, alg = setup_alg(2, 1)
    mats = enumerate_glr_residue(alg, 2, 1)
    exps = (0, 1)
    count = 0
    for bm, cm in itertools.product(mats, repeat=2):
        B, C = lift_residue(alg, bm, 1), lift_residue(alg, cm, 1)
        fast = h_membership(alg, exps, 1, B, C)
        slow = h_membership_lift_oracle(alg, exps, 1, B, C)
        assert fast == slow
        count += fast
    assert count == len(enumerate_h_group(alg, exps, 1)) == 4


def test_scalar_pairs_always_in_H():
    # central unit pairs (u Id, u Id) commute with every diagonal A
    F, alg = setup_alg(3, 1)
    for exps in [(0, 0), (0, 1), (0, 2), (1, 2)]:
        for u in range(1, 3):
            U = Matrix.identity(alg, 2, prec=2)
            M = U.map(lambda e: e * alg.embed_base(F.from_integer(u, 2)))
            assert h_membership(alg, exps, 1, M, M)


def test_double_coset_keys_partition_exhaustive():
    # q=2, r=2, d=1, l=1, A=diag(1,pi): keys partition {B A C^-1}
    F, alg = setup_alg(2, 1)
    mats = enumerate_glr_residue(alg, 2, 1)
    exps = (0, 1)
    A = diag_pi(alg, exps, prec=8)
    keys = []
    reps = []
    for bm, cm in itertools.product(mats, repeat=2):
        B = lift_residue(alg, [[d + (0,) * 7 for d in row] for row in bm], 8)
        C = lift_residue(alg, [[d + (0,) * 7 for d in row] for row in cm], 8)
        g = B * A * C.inv()
        key = canonical_double_coset(g, 1)
        keys.append(key)
        reps.append((bm, cm))
    # canonical serializations agree iff same_coset
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            same = keys[i].same_coset(keys[j])
            assert same == (keys[i].canonical() == keys[j].canonical())
    distinct = {k.canonical() for k in keys}
    # |T~| = |T| / |H| for this A
    H = enumerate_h_group(alg, exps, 1)
    assert len(distinct) == (len(mats) ** 2) // len(H) == 9


def test_key_invariant_under_Kl_multiplication():
    F, alg = setup_alg(2, 1)
    rng = random.Random(23)
    for _ in range(10):
        g, _ = random_gl(alg, 2, rng, prec=7)
        key = canonical_double_coset(g, 1)
        # u, u' in K^1 = 1 + M(P)
        def rand_k1():
            M = Matrix.identity(alg, 2, prec=7)
            for i in range(2):
                for j in range(2):
                    digs = [rng.randrange(2) for _ in range(4)]
                    M.rows[i][j] = M.rows[i][j] + alg.from_pi_digits(1, digs)
            return M
        g2 = rand_k1() * g * rand_k1()
        key2 = canonical_double_coset(g2, 1)
        assert key.same_coset(key2)
        assert key.canonical() == key2.canonical()


def test_in_Kl_gives_identity_key():
    F, alg = setup_alg(2, 1)
    M = Matrix.identity(alg, 2, prec=8)
    M.rows[0][1] = M.rows[0][1] + alg.from_pi_digits(1, (1, 0, 1))
    key = canonical_double_coset(M, 1)
    assert key.exponents == (0, 0)
    ident = canonical_double_coset(Matrix.identity(alg, 2, prec=8), 1)
    assert key.same_coset(ident)


def test_coset_volume_examples():
    F, alg = setup_alg(2, 1)
    volK1 = vol_K_level(alg, 2, 1)
    assert coset_volume(alg, (0, 0), 1) == volK1
    assert coset_volume(alg, (0, 1), 1) == 2 * volK1
    F3, alg22 = setup_alg(2, 2)
    volK1_d2 = vol_K_level(alg22, 2, 1)
    assert coset_volume(alg22, (0, 2), 1) == 16 * volK1_d2


@pytest.mark.parametrize("q,d,exps,expected", [
    (2, 1, (0, 0), 1),
    (2, 1, (0, 1), 2),
    (3, 1, (0, 1), 3),
    (2, 1, (0, 2), 4),
    (2, 2, (0, 1), 4),
])
def test_index_oracle_small(q, d, exps, expected):
    F, alg = setup_alg(q, d)
    assert index_oracle(alg, exps, 1) == expected


def test_index_oracle_r1():
    F, alg = setup_alg(2, 1)
    assert index_oracle(alg, (2,), 1) == 1


def test_transversal_matches_oracle():
    F, alg = setup_alg(2, 1)
    for exps in [(0, 0), (0, 1), (0, 2), (1, 2)]:
        trans = left_coset_transversal(alg, exps, 1)
        assert len(trans) == index_oracle(alg, exps, 1)
        # pairwise inequivalent: u^-1 u' not in A K^l A^-1 cap K^l
        from closefields.gld import _in_subgroup, _s_thresholds

        ld = alg.d
        s = max(exps) - min(exps)
        c = ld + s if s else ld + 1
        th = _s_thresholds(exps, ld)
        for i in range(len(trans)):
            for j in range(i + 1, len(trans)):
                quot = trans[i].inv() * trans[j]
                assert not _in_subgroup(quot.map(lambda e: e.truncate(min(e.abs_prec, c))), th, c)


def test_ball_inclusions_props():
    # M + M_r(P^(d(k - v(M^-1)))) subset K^k M K^k subset M + M_r(P^(d(k+v(M))))
    F, alg = setup_alg(2, 1)
    rng = random.Random(31)
    k = 2
    for _ in range(10):
        M, exps = random_gl(alg, 2, rng, prec=8)
        vM = mat_val(M)
        vMi = mat_val(M.inv())
        # inner: sample B in M_r(P^(k - vMi)), decompose M + B = M(1 + M^-1 B)
        depth = k - vMi
        B = Matrix(alg, [[alg.from_pi_digits(depth, [rng.randrange(2) for _ in range(3)])
                          for _ in range(2)] for _ in range(2)])
        w = Matrix.identity(alg, 2, prec=6) + M.inv() * B
        assert (w - Matrix.identity(alg, 2, prec=6)).all_entries_in_power(k)  # w in K^k
        recon = M * w
        assert (recon - (M + B)).all_entries_in_power(min(6, k + vM + 3))
        # outer: u M v - M lies in M_r(P^(k + vM))
        u = Matrix.identity(alg, 2, prec=8)
        v = Matrix.identity(alg, 2, prec=8)
        for i in range(2):
            for j in range(2):
                u.rows[i][j] = u.rows[i][j] + alg.from_pi_digits(k, [rng.randrange(2) for _ in range(3)])
                v.rows[i][j] = v.rows[i][j] + alg.from_pi_digits(k, [rng.randrange(2) for _ in range(3)])
        assert ((u * M * v) - M).all_entries_in_power(k + vM)


def test_serialize_key_roundtrippable():
    F, alg = setup_alg(2, 1)
    rng = random.Random(5)
    g, _ = random_gl(alg, 2, rng, prec=7)
    key = canonical_double_coset(g, 1)
    blob = key.serialize()
    assert blob["l"] == 1 and len(blob["exponents"]) == 2
    assert blob["B"] and blob["C"]
