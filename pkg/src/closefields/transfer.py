"""Transfer of Hecke algebras between m-close fields.

The map is defined key-to-key on the double-coset basis: exponents pass
through unchanged and the residue pair (B~, C~) is transported by the digit
bijection.  At closeness level m >= the conjugation bound for the support,
transfer commutes with convolution; `verify_transfer_hom` checks that
exhaustively over a bounded support, computing both convolutions with fully
independent arithmetic on the two sides.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .closeness import ProximityTriple, make_proximity
from .cyclic import make_algebra
from .gld import DoubleCosetKey, coset_volume, serialize_residue, lift_residue
from .hecke import HeckeElement, all_basis_keys, convolve_basis, decompose_left_cosets, _pad
from .localfield import SpecError


@dataclass(frozen=True)
class TransferContext:
    triple: ProximityTriple
    d: int
    h: int
    r: int
    l: int

    @property
    def m(self):
        return self.triple.m

    @property
    def alg_source(self):
        return make_algebra(self.triple.source, self.d, self.h)

    @property
    def alg_target(self):
        return make_algebra(self.triple.target, self.d, self.h)

    def restriction(self, l):
        """The same context viewed at a lower level."""
        if l > self.l:
            raise SpecError("restriction must lower the level")
        return TransferContext(self.triple, self.d, self.h, self.r, l)


def make_transfer_context(source, target, m, d, h, r, l):
    """Validated context: requires l <= m and an m-close pair of fields."""
    if l > m:
        raise SpecError("level l=%d exceeds closeness m=%d" % (l, m))
    triple = make_proximity(source, target, m)
    return TransferContext(triple, d, h, r, l)


def transfer_basis(ctx, key, reverse=False):
    """zeta-bar on one basis indicator: same exponents, transported residues."""
    if key.l > ctx.m:
        raise SpecError("key level exceeds the closeness level")
    src_alg = ctx.alg_target if reverse else ctx.alg_source
    dst_alg = ctx.alg_source if reverse else ctx.alg_target
    if key.alg != src_alg:
        raise SpecError("key does not live over the context source")
    ld = key.l * ctx.d
    pad = ld + 4
    B = lift_residue(dst_alg, _pad(serialize_residue(key.B, ld), pad), pad)
    C = lift_residue(dst_alg, _pad(serialize_residue(key.C, ld), pad), pad)
    return DoubleCosetKey(dst_alg, key.l, key.exponents, B, C)


def transfer_hecke(ctx, f, reverse=False):
    """Linear extension of the basis transfer; coefficients pass through."""
    dst_alg = ctx.alg_source if reverse else ctx.alg_target
    return HeckeElement(dst_alg, f.l,
                        [(transfer_basis(ctx, k, reverse), c) for k, c in f.terms])


def kazhdan_bound(l, support_exponents, d=1):
    """Closeness level m making every K^l g K^l in the support K^m-conjugation-stable.

    g K^m g^(-1) subset K^l holds once m - l absorbs the exponent spread:
    m = l - v(A) - v(A^(-1)) in P_F units, i.e. l + ceil((a_r - a_1)/d).
    """
    worst = 0
    for exps in support_exponents:
        exps = tuple(exps)
        worst = max(worst, max(exps) - min(exps))
    return l + -(-worst // d)


def verify_conjugation_containment(alg, exps, l, m, samples=10, seed=0):
    """Directly check g K^m g^(-1) subset K^l for g = diag(pi^a) (sampled)."""
    import random

    from .matrices import Matrix

    rng = random.Random(seed)
    d = alg.d
    ld, md = l * d, m * d
    r = len(exps)
    from .gld import diag_pi

    A = diag_pi(alg, exps, prec=md + max(exps) - min(exps) + 4)
    Ainv = A.inv()
    for _ in range(samples):
        U = Matrix.identity(alg, r, prec=md + max(exps) - min(exps) + 4)
        for i in range(r):
            for j in range(r):
                digs = [rng.randrange(alg.ext.residue.q) for _ in range(4)]
                U.rows[i][j] = U.rows[i][j] + alg.from_pi_digits(md, digs)
        conj = A * U * Ainv
        if not (conj - Matrix.identity(alg, r)).all_entries_in_power(ld):
            return False
    return True


def verify_transfer_hom(ctx, support_range=(0, 1), diagnostic=False,
                        ceiling=200000, work_prec=None):
    """zeta(f1 * f2) = zeta(f1) * zeta(f2) for every pair of basis indicators.

    Basis keys run over all Cartan exponent tuples inside support_range; both
    convolutions are computed from scratch over their own field.  Returns a
    replayable report; raises on an out-of-bound context unless diagnostic.
    """
    lo, hi = support_range
    exp_tuples = list(itertools.combinations_with_replacement(range(lo, hi + 1), ctx.r))
    bound = kazhdan_bound(ctx.l, exp_tuples, ctx.d)
    if ctx.m < bound and not diagnostic:
        raise SpecError("context closeness m=%d below the required bound %d"
                        % (ctx.m, bound))
    t0 = time.time()
    alg_F = ctx.alg_source
    keys_F = all_basis_keys(alg_F, ctx.r, ctx.l, lo, hi, ceiling)
    keys_L = [transfer_basis(ctx, k) for k in keys_F]
    failures = []
    volume_checks = []
    for k_F, k_L in zip(keys_F, keys_L):
        n_F = len(decompose_left_cosets(k_F, work_prec))
        n_L = len(decompose_left_cosets(k_L, work_prec))
        vol_F = coset_volume(alg_F, k_F.exponents, ctx.l)
        vol_L = coset_volume(ctx.alg_target, k_L.exponents, ctx.l)
        ok = (n_F == n_L) and (vol_F == vol_L)
        volume_checks.append(ok)
        if not ok:
            failures.append({"kind": "volume", "exponents": list(k_F.exponents)})
    pairs = 0
    for (i, j) in itertools.product(range(len(keys_F)), repeat=2):
        pairs += 1
        prod_F = convolve_basis(keys_F[i], keys_F[j], work_prec, ceiling)
        prod_L = convolve_basis(keys_L[i], keys_L[j], work_prec, ceiling)
        lhs = HeckeElement(ctx.alg_target, ctx.l,
                           [(transfer_basis(ctx, k), v) for k, v in prod_F])
        rhs = HeckeElement(ctx.alg_target, ctx.l, prod_L)
        if lhs != rhs:
            failures.append({
                "kind": "hom",
                "pair": [i, j],
                "lhs": [(list(k.exponents), str(v)) for k, v in lhs.terms],
                "rhs": [(list(k.exponents), str(v)) for k, v in rhs.terms],
            })
    return {
        "params": {
            "p": ctx.triple.source.p,
            "f": ctx.triple.source.f,
            "e_target": getattr(ctx.triple.target, "e", None),
            "d": ctx.d, "h": ctx.h, "r": ctx.r, "l": ctx.l, "m": ctx.m,
            "support_range": list(support_range),
            "kazhdan_bound": bound,
            "diagnostic": diagnostic,
        },
        "basis_size": len(keys_F),
        "pairs_checked": pairs,
        "volumes_ok": all(volume_checks),
        "failures": failures,
        "ok": not failures,
        "elapsed": round(time.time() - t0, 3),
    }


def verify_level_compatibility(ctx, key_high):
    """Restriction: transferring at level l+1 then reducing equals reducing then
    transferring at level l (the commuting square on basis keys)."""
    if key_high.l < 2:
        raise SpecError("need a key at level >= 2")
    low = key_high.l - 1
    alg_F, alg_L = ctx.alg_source, ctx.alg_target
    ld_low = low * ctx.d

    def reduce_key(key, alg):
        pad = ld_low + 4
        B = lift_residue(alg, _pad(serialize_residue(key.B, ld_low), pad), pad)
        C = lift_residue(alg, _pad(serialize_residue(key.C, ld_low), pad), pad)
        return DoubleCosetKey(alg, low, key.exponents, B, C)

    ctx_high = TransferContext(ctx.triple, ctx.d, ctx.h, ctx.r, key_high.l)
    path1 = reduce_key(transfer_basis(ctx_high, key_high), alg_L)
    ctx_low = TransferContext(ctx.triple, ctx.d, ctx.h, ctx.r, low)
    path2 = transfer_basis(ctx_low, reduce_key(key_high, alg_F))
    return path1.same_coset(path2)
