import itertools
import random
from fractions import Fraction

import pytest

from closefields.cyclic import make_algebra
from closefields.gld import canonical_double_coset, diag_pi, vol_K_level
from closefields.hecke import (
    HeckeElement,
    all_basis_keys,
    basis_keys_for_exponents,
    convolve,
    diagonal_factorization,
    diagonal_key,
    generator_family,
    h_fn,
    unit_element,
)
from closefields.localfield import make_local_field
from closefields.matrices import Matrix


def setup(q=2, d=1, N=12):
    F = make_local_field("p", q, 1, N=N)
    return F, make_algebra(F, d, 1)


def test_h_of_identity_and_diagonal():
    F, alg = setup()
    one = unit_element(alg, 2, 1)
    assert len(one.terms) == 1
    assert one.terms[0][1] == 1 / vol_K_level(alg, 2, 1)
    hA = h_fn(diagonal_key(alg, (0, 1), 1), 1)
    assert hA.terms[0][0].exponents == (0, 1)


def test_h_of_group_element_matches_key():
    F, alg = setup()
    g = diag_pi(alg, (1, 2), prec=8)
    h = h_fn(g, 1)
    assert h.terms[0][0].exponents == (1, 2)


def test_unit_element_is_identity():
    F, alg = setup()
    rng = random.Random(7)
    one = unit_element(alg, 2, 1)
    for exps in [(0, 0), (0, 1), (1, 1), (0, 2)]:
        f = h_fn(diagonal_key(alg, exps, 1), 1)
        prod = convolve(f, one)
        assert prod == f
        prod2 = convolve(one, f)
        assert prod2 == f


@pytest.mark.parametrize("q,d,r", [(2, 1, 2), (2, 2, 1)])
def test_diagonal_identity_small(q, d, r):
    # h(A) * h(A') = h(AA') for nonnegative diagonal cosets
    F, alg = setup(q, d)
    tuples = list(itertools.combinations_with_replacement(range(0, 2), r))
    for e1, e2 in itertools.product(tuples, repeat=2):
        hA = h_fn(diagonal_key(alg, e1, 1), 1)
        hB = h_fn(diagonal_key(alg, e2, 1), 1)
        prod = convolve(hA, hB)
        esum = tuple(a + b for a, b in zip(e1, e2))
        expected = h_fn(diagonal_key(alg, esum, 1), 1)
        assert prod == expected, (e1, e2)


def test_sandwich_identity_hB_hA_hC():
    # h(B) * h(A) * h(C) = h(BAC) for B, C in K
    F, alg = setup(2, 1)
    from closefields.gld import enumerate_glr_residue, lift_residue
    from closefields.hecke import _pad

    mats = enumerate_glr_residue(alg, 2, 1)
    A = diag_pi(alg, (0, 1), prec=9)
    rng = random.Random(3)
    for _ in range(4):
        bm, cm = rng.choice(mats), rng.choice(mats)
        B = lift_residue(alg, _pad(bm, 9), 9)
        C = lift_residue(alg, _pad(cm, 9), 9)
        hB, hA, hC = h_fn(B, 1), h_fn(A, 1), h_fn(C, 1)
        lhs = convolve(convolve(hB, hA), hC)
        rhs = h_fn(B * A * C, 1)
        assert lhs == rhs


def test_associativity_sampled():
    F, alg = setup(2, 1)
    keys = [diagonal_key(alg, e, 1) for e in [(0, 0), (0, 1), (1, 1)]]
    h1, h2, h3 = (h_fn(k, 1) for k in keys)
    lhs = convolve(convolve(h1, h2), h3)
    rhs = convolve(h1, convolve(h2, h3))
    assert lhs == rhs


def test_convolution_bilinear():
    F, alg = setup(2, 1)
    f = h_fn(diagonal_key(alg, (0, 1), 1), 1)
    g = h_fn(diagonal_key(alg, (0, 0), 1), 1)
    s = convolve(f + g, f)
    assert s == convolve(f, f) + convolve(g, f)


def test_negative_exponents_inverse_uniformizer():
    # h(pi^-1 Id) * h(pi Id) = h(1)
    F, alg = setup(2, 1)
    h_minus = h_fn(diagonal_key(alg, (-1, -1), 1), 1)
    h_plus = h_fn(diagonal_key(alg, (1, 1), 1), 1)
    prod = convolve(h_minus, h_plus)
    volK = vol_K_level(alg, 2, 1)
    expected = unit_element(alg, 2, 1)
    assert prod == expected


def test_basis_keys_count_matches_T_mod_H():
    F, alg = setup(2, 1)
    from closefields.gld import enumerate_glr_residue, enumerate_h_group

    mats = enumerate_glr_residue(alg, 2, 1)
    for exps in [(0, 0), (0, 1)]:
        keys = basis_keys_for_exponents(alg, exps, 1)
        H = enumerate_h_group(alg, exps, 1)
        assert len(keys) == len(mats) ** 2 // len(H)
        # pairwise distinct cosets
        for i in range(len(keys)):
            for j in range(i + 1, len(keys)):
                assert not keys[i].same_coset(keys[j])


def test_group_algebra_of_K_mod_K1_exhaustive():
    # convolution restricted to K-supported functions = group algebra of K/K^1
    F, alg = setup(2, 1)
    from closefields.gld import enumerate_glr_residue, lift_residue
    from closefields.hecke import _pad

    mats = enumerate_glr_residue(alg, 2, 1)
    lifts = {bm: lift_residue(alg, _pad(bm, 8), 8) for bm in mats}
    volK = vol_K_level(alg, 2, 1)
    for bm, cm in itertools.product(mats, repeat=2):
        hB, hC = h_fn(lifts[bm], 1), h_fn(lifts[cm], 1)
        prod = convolve(hB, hC)
        expected = h_fn(lifts[bm] * lifts[cm], 1)
        assert prod == expected


def test_diagonal_factorization_formula():
    F, alg = setup(2, 1)
    assert diagonal_factorization(alg, (0, 2), 1) == [(0, 1), (0, 1)]
    assert diagonal_factorization(alg, (-1, 0), 1) == [(-1, -1), (0, 1)]
    assert diagonal_factorization(alg, (1, 1), 1) == [(1, 1)]  # A_0 = pi * Id
    # replay the factorization through convolution
    for exps in [(0, 1), (0, 2), (1, 2), (-1, 0)]:
        factors = diagonal_factorization(alg, exps, 1)
        acc = unit_element(alg, 2, 1)
        for fexp in factors:
            acc = convolve(acc, h_fn(diagonal_key(alg, fexp, 1), 1))
        assert acc == h_fn(diagonal_key(alg, exps, 1), 1), exps


def test_generator_family_covers_K_mod_K1():
    F, alg = setup(2, 1)
    gens = generator_family(alg, 2, 1)
    # 6 unit generators + A_-1 + A_0, A_1, A_2
    assert len(gens) == 6 + 1 + 3
    # closure of the unit generators spans all 6 classes of K/K^1
    unit_keys = [g.terms[0][0] for g in gens if g.terms[0][0].exponents == (0, 0)]
    assert len(unit_keys) == 6 + 1  # includes A_2 = Id
    reached = [unit_keys[0]]
    frontier = [unit_keys[0]]
    volK = vol_K_level(alg, 2, 1)
    while frontier:
        k = frontier.pop()
        for g in unit_keys:
            prod = convolve(h_fn(k, 1), h_fn(g, 1))
            newkey = prod.terms[0][0]
            if not any(newkey.same_coset(x) for x in reached):
                reached.append(newkey)
                frontier.append(newkey)
    assert len(reached) == 6


def test_serialize():
    F, alg = setup(2, 1)
    f = h_fn(diagonal_key(alg, (0, 1), 1), 1) + h_fn(diagonal_key(alg, (0, 0), 1), 1)
    blob = f.serialize()
    assert blob["l"] == 1 and len(blob["terms"]) == 2
    assert all("num" in t and "den" in t for t in blob["terms"])
