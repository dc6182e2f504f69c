"""GL_r(D) at finite precision: Cartan decomposition, congruence subgroups,
double cosets, and exact volumes.

Conventions: K = GL_r(O_D), K^l = Id + M_r(P_D^(ld)); valuations of matrices
are minima of entry valuations in P_D units; diagonal Cartan representatives
A = diag(pi_D^(a_1), ..., pi_D^(a_r)) carry nondecreasing exponent tuples.
Double cosets K^l B~ A C~^(-1) K^l are keyed by the exponents plus the class
of the residue pair (B^, C^) modulo the relation group H_(l,A) of pairs
admitting lifts with BA = AC.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclic import CyclicAlgebraElement
from .localfield import PrecisionError, SpecError
from .matrices import Matrix

INF = math.inf


class CeilingError(RuntimeError):
    """An enumeration would exceed the configured ceiling."""


# ---------------------------------------------------------------------------
# Matrix valuation and Cartan decomposition


def mat_val(M):
    """Minimum of the entry valuations (P_D units); +inf for the zero matrix."""
    return M.min_val()


@dataclass
class CartanForm:
    exponents: tuple
    k1: Matrix
    k2: Matrix
    witness_prec: int  # k1 * diag(pi^a) * k2 = g mod P_D^witness_prec


def _elementary(ring, n, i, j, c, prec_hint=None):
    m = Matrix.identity(ring, n, prec=prec_hint)
    m.rows[i][j] = c
    return m


def cartan(g, target_prec=None):
    """Cartan decomposition g = k1 A k2 with k1, k2 in GL_r(O_D).

    Pivot rule: among entries of minimal valuation pick the smallest (row,
    column); eliminate by unit row/column operations.  Deterministic.
    """
    alg = g.ring
    n = g.n
    work = g.copy()
    k1 = Matrix.identity(alg, n)
    k2 = Matrix.identity(alg, n)

    for s in range(n):
        piv, pv = None, INF
        for i in range(s, n):
            for j in range(s, n):
                a = work.rows[i][j]
                if not a.is_zeroish() and a.val() < pv:
                    piv, pv = (i, j), a.val()
        for i in range(s, n):
            for j in range(s, n):
                a = work.rows[i][j]
                if a.is_zeroish() and not a.is_exact_zero() and a.abs_prec <= pv:
                    raise PrecisionError("pivot search inconclusive at available precision")
        if piv is None:
            raise PrecisionError("matrix not invertible at available precision")
        i0, j0 = piv
        if i0 != s:
            work.rows[s], work.rows[i0] = work.rows[i0], work.rows[s]
            # row swap = left mult by transposition; fold inverse (itself) into k1
            for r in range(n):
                k1.rows[r][s], k1.rows[r][i0] = k1.rows[r][i0], k1.rows[r][s]
        if j0 != s:
            for r in range(n):
                work.rows[r][s], work.rows[r][j0] = work.rows[r][j0], work.rows[r][s]
            k2.rows[s], k2.rows[j0] = k2.rows[j0], k2.rows[s]
        pivot = work.rows[s][s]
        pinv = pivot.inv()
        # clear the column below the pivot: row_i -= (g_is * pivot^-1) row_s
        for i in range(s + 1, n):
            a = work.rows[i][s]
            if a.is_exact_zero():
                continue
            c = a * pinv
            work.rows[i] = [x - c * y for x, y in zip(work.rows[i], work.rows[s])]
            # k1 <- k1 * (Id + c E_{i,s})
            for r in range(n):
                k1.rows[r][s] = k1.rows[r][s] + k1.rows[r][i] * c
        # clear the row right of the pivot: col_j -= col_s * (pivot^-1 g_sj)
        for j in range(s + 1, n):
            a = work.rows[s][j]
            if a.is_exact_zero():
                continue
            c = pinv * a
            for r in range(n):
                work.rows[r][j] = work.rows[r][j] - work.rows[r][s] * c
            # k2 <- (Id + c E_{s,j}) * k2
            k2.rows[s] = [x + c * y for x, y in zip(k2.rows[s], k2.rows[j])]

    # normalize diagonal entries to pure pi powers: fold units into k2
    exps = []
    for s in range(n):
        d = work.rows[s][s]
        a = d.known_val()
        exps.append(a)
        u = d.shift_pi(-a)  # unit: d = pi^a u ... careful, this is pi^-a d
        uinv = u.inv()
        # column op: col_s <- col_s * uinv makes the diagonal pi^a exactly;
        # k2 <- diag(..., u, ...) * k2
        for r in range(n):
            work.rows[r][s] = work.rows[r][s] * uinv
        k2.rows[s] = [u * x for x in k2.rows[s]]

    # sort exponents nondecreasing by a permutation on both sides
    order = sorted(range(n), key=lambda s: (exps[s], s))
    perm = Matrix(alg, [[alg.one() if order[i] == j else alg.zero() for j in range(n)]
                        for i in range(n)])
    # A_sorted = P A P^T with P the permutation; fold P^T into k1, P into k2
    exps_sorted = tuple(exps[s] for s in order)
    k1 = k1 * _transpose(perm)
    k2 = perm * k2
    A = diag_pi(alg, exps_sorted)
    recon = k1 * A * k2
    wp = min(min(e.abs_prec for e in row) for row in (g - recon).rows)
    ok_prec = int(wp) if wp != INF else (target_prec or g.ring.base.N)
    if not (g - recon).all_entries_in_power(ok_prec):
        raise AssertionError("cartan reconstruction failed")
    return CartanForm(exps_sorted, k1, k2, ok_prec)


def _transpose(m):
    return Matrix(m.ring, [[m.rows[j][i] for j in range(m.n)] for i in range(m.n)])


def diag_pi(alg, exps, prec=None):
    n = len(exps)
    return Matrix(alg, [
        [alg.uniformizer_element(exps[i], prec=prec) if i == j else alg.zero()
         for j in range(n)] for i in range(n)])


# ---------------------------------------------------------------------------
# Residue matrices mod P_D^c


def serialize_residue(M, c):
    """Digit matrix of an integral matrix modulo P_D^c (hashable)."""
    return tuple(tuple(e.pi_digit_window(0, c) for e in row) for row in M.rows)


def residue_invertible(M):
    """Invertibility over O_D/P_D^c = invertibility of the residue over k_E."""
    alg = M.ring
    k = alg.ext.residue
    n = M.n
    rows = [[M.rows[i][j].pi_digit(0) for j in range(n)] for i in range(n)]
    # Gaussian elimination over k_E
    for s in range(n):
        piv = None
        for i in range(s, n):
            if rows[i][s]:
                piv = i
                break
        if piv is None:
            return False
        rows[s], rows[piv] = rows[piv], rows[s]
        inv = k.inv(rows[s][s])
        rows[s] = [k.mul(inv, x) for x in rows[s]]
        for i in range(n):
            if i != s and rows[i][s]:
                cc = rows[i][s]
                rows[i] = [k.sub(x, k.mul(cc, y)) for x, y in zip(rows[i], rows[s])]
    return True


def lift_residue(alg, digit_matrix, c):
    """Lift a serialized digit matrix to an integral Matrix known mod P_D^c."""
    rows = []
    for drow in digit_matrix:
        row = []
        for digs in drow:
            el = alg.from_pi_digits(0, digs)
            if el.is_zeroish():
                el = alg.zero(c)
            row.append(el)
        rows.append(row)
    return Matrix(alg, rows)


def enumerate_glr_residue(alg, r, c, ceiling=200000):
    """All of GL_r(O_D/P_D^c) as digit matrices (exhaustive; guarded by ceiling)."""
    kq = alg.ext.residue.q
    per_entry = kq**c
    total = per_entry ** (r * r)
    if total > ceiling:
        raise CeilingError("GL enumeration of size %d exceeds ceiling %d" % (total, ceiling))
    digit_vectors = list(itertools.product(range(kq), repeat=c))
    out = []
    for flat in itertools.product(digit_vectors, repeat=r * r):
        dm = tuple(tuple(flat[i * r + j] for j in range(r)) for i in range(r))
        M = lift_residue(alg, dm, c)
        if residue_invertible(M):
            out.append(dm)
    return out


# ---------------------------------------------------------------------------
# The relation group H_(l,A) and double-coset keys


def conjugate_by_pi_power(x, a_i, a_j):
    """pi_D^(-a_i) x pi_D^(a_j) = pi_D^(a_j - a_i) sigma^(a_j)(x)."""
    return x.galois(a_j).shift_pi(a_j - a_i)


def h_membership(alg, exps, l, Bhat, Chat):
    """Whether (B^, C^) admits lifts B, C in GL_r(O_D) with B A = A C.

    Entrywise: b_ij pi^(a_j) = pi^(a_i) c_ij forces c_ij = pi^(-a_i) b_ij
    pi^(a_j); a lift exists iff v(b_ij) >= a_i - a_j is achievable and the
    determined digits of C^ match.
    """
    d = alg.d
    ld = l * d
    r = len(exps)
    for i in range(r):
        for j in range(r):
            delta = exps[i] - exps[j]
            b = Bhat.rows[i][j]
            c = Chat.rows[i][j]
            if delta > 0:
                need = min(delta, ld)
                if not b.truncate(need).lies_in_power(need):
                    return False
                if delta < ld:
                    det = conjugate_by_pi_power(b, exps[i], exps[j])
                    if not (c - det).truncate(ld - delta).lies_in_power(ld - delta):
                        return False
            else:
                det = conjugate_by_pi_power(b, exps[i], exps[j])
                if not (c - det).truncate(ld).lies_in_power(ld):
                    return False
    return True


def h_membership_lift_oracle(alg, exps, l, Bhat, Chat, ceiling=200000):
    """Brute-force version of h_membership: search lifts of B^ digit by digit.

    Enumerates all refinements of B^ modulo P_D^(ld+s), s the exponent spread,
    computes C = A^(-1) B A exactly and compares with C^ mod P_D^(ld).
    """
    d = alg.d
    ld = l * d
    r = len(exps)
    s = max(exps) - min(exps)
    if s == 0:
        # BA = AB requires exactly C = conjugate = B
        det = Matrix(alg, [[conjugate_by_pi_power(Bhat.rows[i][j], exps[i], exps[j])
                            for j in range(r)] for i in range(r)])
        return (Chat - det).all_entries_in_power(ld)
    kq = alg.ext.residue.q
    refinements = list(itertools.product(range(kq), repeat=s))
    if len(refinements) ** (r * r) > ceiling:
        raise CeilingError("lift oracle search too large")
    base_digits = serialize_residue(Bhat, ld)
    for flat in itertools.product(refinements, repeat=r * r):
        rows = []
        ok = True
        for i in range(r):
            row = []
            for j in range(r):
                digs = base_digits[i][j] + flat[i * r + j]
                el = alg.from_pi_digits(0, digs)
                if el.is_zeroish():
                    el = alg.zero(ld + s)
                delta = exps[i] - exps[j]
                if delta > 0 and not el.lies_in_power(min(delta, ld + s)):
                    ok = False
                    break
                row.append(el)
            if not ok:
                break
            rows.append(row)
        if not ok:
            continue
        B = Matrix(alg, rows)
        C = Matrix(alg, [[conjugate_by_pi_power(B.rows[i][j], exps[i], exps[j])
                          for j in range(r)] for i in range(r)])
        try:
            if (Chat - C).all_entries_in_power(ld):
                return True
        except PrecisionError:
            continue
    return False


_H_CACHE = {}


def enumerate_h_group(alg, exps, l, ceiling=200000):
    """All pairs (U, V) in H_(l,A) as lifted matrices (cached)."""
    key = (alg, tuple(exps), l, ceiling)
    if key in _H_CACHE:
        return _H_CACHE[key]
    d = alg.d
    ld = l * d
    r = len(exps)
    out = []
    for bm in enumerate_glr_residue(alg, r, ld, ceiling):
        B = lift_residue(alg, bm, ld)
        # quick v-constraint screen
        feasible = True
        for i in range(r):
            for j in range(r):
                delta = exps[i] - exps[j]
                if delta > 0 and not B.rows[i][j].lies_in_power(min(delta, ld)):
                    feasible = False
                    break
            if not feasible:
                break
        if not feasible:
            continue
        # determined part of C plus free digit refinements
        free_slots = []
        det_rows = []
        for i in range(r):
            row = []
            for j in range(r):
                delta = exps[i] - exps[j]
                det = conjugate_by_pi_power(B.rows[i][j], exps[i], exps[j])
                known = ld - delta if 0 < delta else ld
                known = max(0, min(ld, known))
                row.append((det, known))
                if known < ld:
                    free_slots.append((i, j, known))
            det_rows.append(row)
        kq = alg.ext.residue.q
        n_free = sum(ld - kn for (_, _, kn) in free_slots)
        if kq**n_free > ceiling:
            raise CeilingError("H enumeration too large")
        for refinement in itertools.product(range(kq), repeat=n_free):
            rows = []
            pos = 0
            ok = True
            for i in range(r):
                row = []
                for j in range(r):
                    det, known = det_rows[i][j]
                    digs = list(det.pi_digit_window(0, known)) if known > 0 else []
                    pad = ld - known
                    digs += list(refinement[pos:pos + pad])
                    pos += pad
                    el = alg.from_pi_digits(0, digs)
                    if el.is_zeroish():
                        el = alg.zero(ld)
                    row.append(el)
                rows.append(row)
            C = Matrix(alg, rows)
            if residue_invertible(C):
                out.append((B, C))
    _H_CACHE[key] = out
    return out


class DoubleCosetKey:
    """Level l, Cartan exponents, and a representative residue pair (B^, C^).

    Equality of keys is equality of double cosets, decided through the
    H-relation; `canonical()` produces the lexicographic minimum of the
    H-orbit for hashing/serialization (enumeration-guarded).
    """

    __slots__ = ("alg", "l", "exponents", "B", "C", "_canon")

    def __init__(self, alg, l, exponents, B, C):
        self.alg = alg
        self.l = l
        self.exponents = tuple(exponents)
        self.B = B
        self.C = C
        self._canon = None

    @property
    def ld(self):
        return self.l * self.alg.d

    def same_coset(self, other):
        if (self.alg, self.l, self.exponents) != (other.alg, other.l, other.exponents):
            return False
        # (B,C) ~ (B',C') iff (B^-1 B', C^-1 C') in H
        U = self.B.inv() * other.B
        V = self.C.inv() * other.C
        return h_membership(self.alg, self.exponents, self.l, U, V)

    def canonical(self, ceiling=200000):
        """Lex-min serialized orbit representative (B~, C~)."""
        if self._canon is None:
            ld = self.ld
            H = enumerate_h_group(self.alg, self.exponents, self.l, ceiling)
            best = None
            for (U, V) in H:
                cand = (serialize_residue(self.B * U, ld), serialize_residue(self.C * V, ld))
                if best is None or cand < best:
                    best = cand
            self._canon = best
        return self._canon

    def serialize(self, ceiling=200000):
        bkey, ckey = self.canonical(ceiling)
        return {
            "l": self.l,
            "exponents": list(self.exponents),
            "B": [[list(d) for d in row] for row in bkey],
            "C": [[list(d) for d in row] for row in ckey],
        }

    def __repr__(self):
        return f"DoubleCosetKey(l={self.l}, exps={self.exponents})"


def canonical_double_coset(g, l):
    """The double-coset key of g at level l: write g = B A C^(-1) via Cartan."""
    alg = g.ring
    ld = l * alg.d
    form = cartan(g)
    if form.witness_prec < ld:
        raise PrecisionError("witnesses only certified mod P_D^%d < %d"
                             % (form.witness_prec, ld))
    B = form.k1
    C = form.k2.inv()
    return DoubleCosetKey(alg, l, form.exponents, B, C)


# ---------------------------------------------------------------------------
# Volumes


def glr_residue_order(alg, r, l):
    """|GL_r(O_D / P_D^(ld))| by the standard filtration count."""
    Q = alg.ext.residue.q  # |k_E| = q^d
    ld = l * alg.d
    gl = 1
    for i in range(r):
        gl *= Q**r - Q**i
    return gl * Q ** (r * r * (ld - 1))


def vol_K_level(alg, r, l):
    """vol(K^l) under vol(K) = 1."""
    return Fraction(1, glr_residue_order(alg, r, l))


def coset_volume(alg, exps, l):
    """vol(K^l A K^l) = q^(d sum_{i<j}(a_j - a_i)) vol(K^l)."""
    exps = tuple(exps)
    if any(exps[i] > exps[i + 1] for i in range(len(exps) - 1)):
        raise SpecError("Cartan exponents must be nondecreasing")
    q, d = alg.base.q, alg.d
    total = sum(exps[j] - exps[i] for i in range(len(exps)) for j in range(i + 1, len(exps)))
    return Fraction(q) ** (d * total) * vol_K_level(alg, len(exps), l)


# ---------------------------------------------------------------------------
# The index oracle: brute-force count of K^l / (A K^l A^(-1) cap K^l)


def _s_thresholds(exps, ld):
    r = len(exps)
    return [[ld + max(0, exps[i] - exps[j]) for j in range(r)] for i in range(r)]


def _in_subgroup(M, thresholds, c):
    """Is 1+y (mod P^c) in the image of A K^l A^(-1) cap K^l? Entrywise digit test."""
    r = M.n
    alg = M.ring
    one = Matrix.identity(alg, r)
    for i in range(r):
        for j in range(r):
            y = M.rows[i][j] - (alg.one(int(c)) if i == j else alg.zero())
            t = min(thresholds[i][j], c)
            if not y.truncate(t).lies_in_power(t):
                return False
    return True


def _reduce_coset_rep(M, thresholds, ld, c):
    """Clear the digits of M - 1 at slots where the subgroup acts, ascending levels.

    Right-multiplying by 1 + [s] pi^t E_ij with t >= threshold(i,j) stays in
    the subgroup; corrections live strictly above level t, so one ascending
    pass yields the canonical free-digit form.
    """
    alg = M.ring
    r = M.n
    work = M
    for t in range(ld, c):
        for i in range(r):
            for j in range(r):
                if t < thresholds[i][j]:
                    continue
                y = work.rows[i][j] - (alg.one(int(c)) if i == j else alg.zero())
                s = y.pi_digit(t)
                if s:
                    neg = -alg.pi_digit_monomial(t, s, c + 1)
                    E = Matrix.identity(alg, r, prec=int(c + 1))
                    E.rows[i][j] = (E.rows[i][j] + neg) if i == j else neg
                    work = (work * E).map(lambda e: e.truncate(min(e.abs_prec, c)))
    return work


def index_oracle(alg, exps, l, ceiling=100000, crosscheck=True):
    """card(K^l / (A K^l A^(-1) cap K^l)) by Schreier-style coset BFS.

    Enumerates cosets over the residue ring at precision ld + spread via a
    canonical reduced form, and (crosscheck) certifies pairwise inequivalence
    of the discovered representatives by the exact membership test, so the
    count does not presuppose the volume formula.
    """
    exps = tuple(exps)
    d = alg.d
    ld = l * d
    s = max(exps) - min(exps)
    if s == 0:
        return 1
    c = ld + s
    thresholds = _s_thresholds(exps, ld)
    r = len(exps)
    kq = alg.ext.residue.q

    # generators of K^l mod K^(c-level): 1 + [basis digit] pi^t E_ij
    basis = [alg.ext.residue.from_coords(tuple(1 if kk == b else 0 for kk in range(alg.ext.residue.deg)))
             for b in range(alg.ext.residue.deg)]
    gens = []
    for i in range(r):
        for j in range(r):
            for t in range(ld, c):
                for u in basis:
                    G = Matrix.identity(alg, r, prec=c + 1)
                    G.rows[i][j] = G.rows[i][j] + alg.pi_digit_monomial(t, u, c + 1)
                    gens.append(G)

    start = Matrix.identity(alg, r, prec=c)
    start_form = serialize_residue(start, c)
    reps = {start_form: start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for G in gens:
            nxt = (cur * G).map(lambda e: e.truncate(min(e.abs_prec, c)))
            red = _reduce_coset_rep(nxt, thresholds, ld, c)
            form = serialize_residue(red, c)
            if form not in reps:
                if len(reps) >= ceiling:
                    raise CeilingError("coset BFS exceeded ceiling")
                reps[form] = red
                frontier.append(red)
    if crosscheck:
        mats = list(reps.values())
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                quot = mats[i].inv() * mats[j]
                assert not _in_subgroup(quot.map(lambda e: e.truncate(min(e.abs_prec, c))),
                                        thresholds, c), \
                    "distinct canonical forms fell into one coset"
    return len(reps)


def left_coset_transversal(alg, exps, l, work_prec=None):
    """Representatives u with K^l A K^l = disjoint union of u A K^l.

    The transversal is the free-digit normal form set: digits at slots
    (i, j, t), ld <= t < threshold(i, j).  Its validity is exactly what
    index_oracle certifies against the volume formula.
    """
    exps = tuple(exps)
    d = alg.d
    ld = l * d
    s = max(exps) - min(exps)
    r = len(exps)
    thresholds = _s_thresholds(exps, ld)
    c = ld + s if s else ld
    prec = int(work_prec if work_prec is not None else c + 1)
    slots = []
    for i in range(r):
        for j in range(r):
            for t in range(ld, min(thresholds[i][j], c)):
                slots.append((i, j, t))
    kq = alg.ext.residue.q
    out = []
    for assignment in itertools.product(range(kq), repeat=len(slots)):
        M = Matrix.identity(alg, r, prec=prec)
        for (slot, digit) in zip(slots, assignment):
            if digit:
                i, j, t = slot
                M.rows[i][j] = M.rows[i][j] + alg.pi_digit_monomial(t, digit, prec)
        out.append(M)
    return out
