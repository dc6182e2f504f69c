"""Closeness calculus for matrices and polynomial values across close fields.

Everything here quantifies one theme: if two fields are m-close for m large
enough (computed from valuations of the inputs), then polynomial expressions
in transported matrix entries stay k-close.  Bounds are returned as explicit
integers; companion verifiers sample the transported balls and check the
conclusions constructively, never from theory.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .closeness import ProximityTriple, is_close, lambda_apply, make_proximity
from .cyclic import CyclicAlgebraElement, reduced_charpoly
from .gld import cartan, diag_pi, mat_val
from .localfield import (
    INF,
    PrecisionError,
    SpecError,
    TruncatedElement,
    galois_apply,
    make_local_field,
)
from .matrices import Matrix


class IndeterminateError(ArithmeticError):
    """A separability/valuation decision is below the working precision."""


# ---------------------------------------------------------------------------
# Integer polynomials in matrix entries (and optionally the uniformizer)


class IntegerPolynomial:
    """Element of Z[X_11, ..., X_nn][t]; monomial dict {(exps, t_exp): coeff}.

    `exps` is a tuple of length nvars of nonnegative exponents; t stands for
    the uniformizer when the polynomial is evaluated.
    """

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        for key, c in (terms or {}).items():
            if c:
                self.terms[self._norm_key(key)] = self.terms.get(self._norm_key(key), 0) + c

    def _norm_key(self, key):
        if isinstance(key[0], tuple):
            exps, t = key
        else:
            exps, t = tuple(key), 0
        if len(exps) != self.nvars:
            raise ValueError("bad exponent tuple")
        return (tuple(exps), t)

    @staticmethod
    def variable(nvars, i):
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return IntegerPolynomial(nvars, {(exps, 0): 1})

    @staticmethod
    def constant(nvars, c):
        return IntegerPolynomial(nvars, {((0,) * nvars, 0): c})

    @staticmethod
    def t_var(nvars):
        return IntegerPolynomial(nvars, {((0,) * nvars, 1): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return IntegerPolynomial(self.nvars, out)

    def __neg__(self):
        return IntegerPolynomial(self.nvars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerPolynomial(self.nvars, {k: c * other for k, c in self.terms.items()})
        out = {}
        for (e1, t1), c1 in self.terms.items():
            for (e2, t2), c2 in other.terms.items():
                key = (tuple(a + b for a, b in zip(e1, e2)), t1 + t2)
                out[key] = out.get(key, 0) + c1 * c2
        return IntegerPolynomial(self.nvars, out)

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        """Total degree in the matrix variables (t not counted)."""
        return max((sum(e) for (e, _) in self.terms), default=0)

    def coefficient_split(self, p):
        """P = Q + pR with Q-coefficients in {1, ..., p-1}."""
        q_terms, r_terms = {}, {}
        for k, c in self.terms.items():
            cq = c % p
            cr = (c - cq) // p
            if cq:
                q_terms[k] = cq
            if cr:
                r_terms[k] = cr
        return (IntegerPolynomial(self.nvars, q_terms),
                IntegerPolynomial(self.nvars, r_terms))

    def monomials(self):
        """The monomial polynomials of P (unit coefficients)."""
        return [IntegerPolynomial(self.nvars, {k: 1}) for k in self.terms]

    def evaluate(self, values, pi_element, prec=None):
        """Value at X_i = values[i], t = pi_element; exact elementwise arithmetic."""
        spec = values[0].field if values else pi_element.field
        prec = prec or spec.N
        acc = spec.zero()
        for (exps, t_exp), c in sorted(self.terms.items()):
            term = spec.from_integer(c, prec)
            if term.is_exact_zero():
                continue
            for i, e in enumerate(exps):
                for _ in range(e):
                    term = term * values[i]
            for _ in range(t_exp):
                term = term * pi_element
            acc = acc + term
        return acc

    def to_json(self):
        return {
            "nvars": self.nvars,
            "terms": [
                {"exps": list(e), "t": t, "coeff": c}
                for (e, t), c in sorted(self.terms.items())
            ],
        }

    @staticmethod
    def from_json(obj):
        return IntegerPolynomial(
            obj["nvars"],
            {(tuple(t["exps"]), t["t"]): t["coeff"] for t in obj["terms"]},
        )


def matrix_entries(M):
    return [M.rows[i][j] for i in range(M.n) for j in range(M.ncols)]


def det_polynomial(n):
    """det as an IntegerPolynomial in n^2 entries (row-major)."""
    nv = n * n
    acc = IntegerPolynomial(nv)
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        term = IntegerPolynomial.constant(nv, sign)
        for i in range(n):
            term = term * IntegerPolynomial.variable(nv, i * n + perm[i])
        acc = acc + term
    return acc


def trace_polynomial(n):
    nv = n * n
    acc = IntegerPolynomial(nv)
    for i in range(n):
        acc = acc + IntegerPolynomial.variable(nv, i * n + i)
    return acc


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Matrix closeness and transported balls


def matrix_close(M, N, l, triple):
    """Componentwise closeness relative to the global minimum valuation."""
    if l > triple.m:
        raise SpecError("l exceeds the closeness level")
    try:
        vmin = M.min_val()
    except PrecisionError:
        raise
    if vmin == INF:
        return all(e.is_zeroish() and e.abs_prec >= l for row in N.rows for e in row)
    depth = l + int(vmin)
    for rowM, rowN in zip(M.rows, N.rows):
        for a, b in zip(rowM, rowN):
            img = zeta_element(triple, a, pad_to=depth + 1)
            diff = b - img
            if diff.is_zeroish():
                if diff.abs_prec < depth:
                    raise PrecisionError("cannot certify matrix closeness")
            elif diff.val() < depth:
                return False
    return True


def zeta_element(triple, x, pad_to=None):
    """Transport an element, zero-padding the non-canonical digits beyond m.

    The digit bijection is only canonical to m digits past the valuation;
    deeper digits of the image are a representative choice, fixed here as 0.
    """
    if x.is_zeroish():
        return (triple.target.zero(x.abs_prec) if not isinstance(x, CyclicAlgebraElement)
                else _zeta_algebra_zero(triple, x))
    if isinstance(x, CyclicAlgebraElement):
        return _zeta_algebra_element(triple, x, pad_to)
    y = lambda_apply(triple, x.truncate(min(x.abs_prec, x.valuation + triple.m)))
    if pad_to and y.abs_prec < pad_to:
        digits = y.digits + (0,) * int(pad_to - y.abs_prec)
        y = TruncatedElement(y.field, y.valuation, digits, None)
    return y


def _zeta_algebra_element(triple, x, pad_to=None):
    from .cyclic import make_algebra

    alg_src = x.algebra
    alg_dst = make_algebra(triple.target, alg_src.d, alg_src.h)
    ext_triple = ProximityTriple(triple.m, alg_src.ext, alg_dst.ext)
    comps = []
    for e in x.components:
        pt = None if pad_to is None else -(-pad_to // alg_src.d) + 1
        comps.append(zeta_element(ext_triple, e, pad_to=pt))
    return alg_dst.from_components(comps)


def _zeta_algebra_zero(triple, x):
    from .cyclic import make_algebra

    alg_dst = make_algebra(triple.target, x.algebra.d, x.algebra.h)
    return alg_dst.zero(x.abs_prec)


def zeta_matrix(triple, M, pad_to=None):
    """Componentwise transport of a matrix; ring follows the entry type."""
    first = M.rows[0][0]
    if isinstance(first, CyclicAlgebraElement):
        from .cyclic import make_algebra

        ring = make_algebra(triple.target, first.algebra.d, first.algebra.h)
    else:
        ring = triple.target
    return Matrix(ring, [[zeta_element(triple, e, pad_to) for e in row] for row in M.rows])


def sample_transported_ball(triple, M, m_level, rng, work_prec=None, pad_to=None):
    """A random element of zeta-bar(K^m M K^m): u * zeta(M) * v with u, v in K_L^m."""
    first = M.rows[0][0]
    d = first.algebra.d if isinstance(first, CyclicAlgebraElement) else 1
    img = zeta_matrix(triple, M, pad_to=pad_to)
    ring = img.ring
    wp = work_prec or (m_level * d + 8)
    n = M.n

    def rand_km():
        U = Matrix.identity(ring, n, prec=wp)
        in_algebra = hasattr(ring, "from_pi_digits")
        kq = ring.ext.residue.q if in_algebra else ring.residue.q
        for i in range(n):
            for j in range(n):
                digs = [rng.randrange(kq) for _ in range(4)]
                if in_algebra:
                    U.rows[i][j] = U.rows[i][j] + ring.from_pi_digits(m_level * d, digs)
                else:
                    U.rows[i][j] = U.rows[i][j] + ring.from_digits(m_level, digs)
        return U

    return rand_km() * img * rand_km()


# ---------------------------------------------------------------------------
# Bounds for polynomial values (characteristic-p coefficient wrap included)


@dataclass
class ProximityBoundReport:
    requested_k: int
    computed_m: int
    formula: str
    samples: list = field(default_factory=list)
    seed: int = 0

    @property
    def ok(self):
        return all(s.get("ok") for s in self.samples) if self.samples else True

    def to_json(self):
        return {
            "requested_k": self.requested_k,
            "computed_m": self.computed_m,
            "formula": self.formula,
            "seed": self.seed,
            "samples": self.samples,
            "ok": self.ok,
        }


def _min_monomial_valuation(P, values, pi_element, prec):
    best = INF
    for mono in P.monomials():
        v = mono.evaluate(values, pi_element, prec).val()
        best = min(best, v)
    return best


def poly_proximity_bound(P, M, k, pi_element=None):
    """Closeness level m with P(M) ~_k P(N) for all N in the transported ball.

    Unit-coefficient polynomials (no multiples of p) use
        m = k + v(P(M)) - min_s v(s(M)) - v(M) - v(M^(-1));
    in general P = Q + pR adds the wrap term k + v(P(M)) + max(0, -mu v(M)),
    mu the total degree of R, because the p-fold sum 1 + ... + 1 only has
    valuation >= m on the characteristic-0 side.
    """
    spec = M.rows[0][0].field
    p = spec.p
    pi_element = pi_element or spec.uniformizer_element(1, prec=spec.N)
    values = matrix_entries(M)
    prec = spec.N
    vP = P.evaluate(values, pi_element, prec).known_val()
    if vP == INF:
        raise SpecError("P(M) = 0: use poly_zero_bound")
    vM = mat_val(M)
    vMinv = mat_val(M.inv())
    Q, R = P.coefficient_split(p)
    vmin_mono = _min_monomial_valuation(Q, values, pi_element, prec)
    base = k + int(vP) - int(vmin_mono) - int(vM) - int(vMinv)
    if R.is_zero():
        return max(1, base), "unit-coefficients"
    mu = R.total_degree()
    wrap = k + int(vP) + max(0, -mu * int(vM))
    return max(1, base, wrap), "split-Q-plus-pR"


def poly_zero_bound(P, M, k, pi_element=None):
    """m such that v_L(P(N)) >= k on the transported ball, via Q = P + 1."""
    spec = M.rows[0][0].field
    pi_element = pi_element or spec.uniformizer_element(1, prec=spec.N)
    Q = P + IntegerPolynomial.constant(P.nvars, 1)
    m, formula = poly_proximity_bound(Q, M, k, pi_element)
    return m, "shift-by-one:" + formula


def verify_poly_proximity(P, M, k, m, samples=20, seed=0, expect_zero=False):
    """Sample N in the transported ball over a fresh m-close model and check.

    Also certifies the characteristic-p wrap: 1 + ... + 1 (p summands) has
    valuation >= m on the characteristic-0 side.
    """
    spec = M.rows[0][0].field
    rng = random.Random(seed)
    keep = max(k + 4, m + 2, spec.N)
    target = make_local_field(0, spec.p, spec.f, e=max(m, 1), N=keep + m + 4)
    triple = make_proximity(spec, target, m)
    report = ProximityBoundReport(k, m, "sampled", seed=seed)
    one = target.one(int(target.N))
    psum = target.zero()
    for _ in range(spec.p):
        psum = psum + one
    report.samples.append({
        "check": "p-fold-sum-valuation",
        "value": None if psum.is_zeroish() else int(psum.val()),
        "ok": bool(psum.is_zeroish() or psum.val() >= m),
    })
    pi_F = spec.uniformizer_element(1, prec=spec.N)
    pi_L = target.uniformizer_element(1, prec=int(target.N))
    valP = P.evaluate(matrix_entries(M), pi_F, spec.N)
    for idx in range(samples):
        N = sample_transported_ball(triple, M, m, rng, work_prec=keep + m, pad_to=keep + m)
        valN = P.evaluate(matrix_entries(N), pi_L, int(target.N))
        if expect_zero:
            ok = valN.is_zeroish() and valN.abs_prec >= k or (
                not valN.is_zeroish() and valN.val() >= k)
            got = None if valN.is_zeroish() else int(valN.val())
            report.samples.append({"check": "zero-depth", "sample": idx, "value": got, "ok": bool(ok)})
        else:
            depth = k + int(valP.val())
            img = zeta_element(triple, valP.truncate(min(valP.abs_prec, valP.val() + m)),
                               pad_to=depth + 1)
            diff = valN - img
            ok = (diff.is_zeroish() and diff.abs_prec >= depth) or (
                not diff.is_zeroish() and diff.val() >= depth)
            report.samples.append({"check": "k-close", "sample": idx, "ok": bool(ok)})
    return report


# ---------------------------------------------------------------------------
# Characteristic polynomials across close fields


def companion_matrix(spec_or_alg, coeffs, prec=None):
    """Companion matrix of a monic polynomial (constant term first)."""
    n = len(coeffs) - 1
    ring = spec_or_alg
    prec = prec or getattr(ring, "N", None)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == n - 1:
                row.append(-coeffs[i])
            elif i == j + 1:
                row.append(ring.one(prec))
            else:
                row.append(ring.zero())
        rows.append(row)
    return Matrix(ring, rows)


def charpoly_lift_params(P_coeffs, l):
    """(m, s) for conjugating close-charpoly elements into the transferred ball.

    s = l - v(M) - v(M^(-1)) for the companion matrix M of P; m = s.
    """
    spec = P_coeffs[-1].field
    M = companion_matrix(spec, P_coeffs)
    if not separability_check(P_coeffs):
        raise IndeterminateError("charpoly lifting needs a separable polynomial")
    if P_coeffs[0].is_zeroish():
        raise SpecError("companion matrix needs a nonzero constant term")
    s = l - int(mat_val(M)) - int(mat_val(M.inv()))
    return max(s, l, 1), max(s, 1)


def verify_charpoly_lift(P_coeffs, l, samples=10, seed=0):
    """Perturb P within s-closeness; the companion of the perturbation must land
    in K_L^l zeta(M) K_L^l, witnessed constructively via the inner ball bound."""
    spec = P_coeffs[-1].field
    m, s = charpoly_lift_params(P_coeffs, l)
    rng = random.Random(seed)
    keep = spec.N + m + 4
    target = make_local_field(0, spec.p, spec.f, e=m, N=keep)
    triple = make_proximity(spec, target, m)
    M = companion_matrix(spec, P_coeffs)
    Mimg = zeta_matrix(triple, M, pad_to=keep)
    vMinv = int(mat_val(Mimg.inv()))
    results = []
    for idx in range(samples):
        # s-close perturbation of the coefficient vector (global min valuation)
        vmin = min(int(c.val()) for c in P_coeffs if not c.is_zeroish())
        pert = []
        for c in P_coeffs[:-1]:
            noise = target.from_digits(s + vmin, [rng.randrange(spec.q) for _ in range(3)])
            pert.append(zeta_element(triple, c, pad_to=keep) + noise)
        pert.append(target.one(keep))
        comp = companion_matrix(target, pert)
        delta = comp - Mimg
        need = l - vMinv
        in_ball = delta.all_entries_in_power(need)
        ok = False
        if in_ball:
            w = Matrix.identity(target, M.n, prec=keep) + Mimg.inv() * delta
            ok = (w - Matrix.identity(target, M.n)).all_entries_in_power(l)
            recon = Mimg * w
            ok = ok and (recon - comp).all_entries_in_power(min(need + 2, keep - 2))
        results.append({"sample": idx, "in_ball": bool(in_ball), "witnessed": bool(ok)})
    report = ProximityBoundReport(l, m, "companion-ball", samples=results, seed=seed)
    return report


# -- inner forms: the U-matrix and transported reduced characteristic polynomials


def u_matrix(M):
    """The n x n E-matrix of Galois translates sigma^a(e^k_(I,J)) of the entries.

    Row index (a, I), column index (k, J), both in blocks of r: the entries of
    the splitting embedding of M are single monomials in these values (times
    the uniformizer on wrapped rows)."""
    from .cyclic import as_algebra_matrix

    M = as_algebra_matrix(M)
    alg = M.ring
    d, r = alg.d, M.n
    n = d * r
    ext = alg.ext
    rows = []
    for a in range(d):
        for I in range(r):
            row = []
            for kk in range(d):
                for J in range(r):
                    row.append(galois_apply(ext, M.rows[I][J].components[kk], a))
            rows.append(row)
    return Matrix(ext, rows)


def psi_structure_polynomials(r, d):
    """Charpoly coefficients of the splitting embedding as polynomials in the
    U-matrix entries and t = pi_F.

    Entry ((I,i), (J,j)) of the embedded matrix is u_((j,I),(k,J)) with
    k = (i - j) mod d, times t when i < j + k - d + 1 fails, i.e. when
    j + k >= d.  Returns [P_0, ..., P_n] with P_n = 1 (constant-first)."""
    n = r * d
    nv = n * n

    def uvar(a, I, kk, J):
        v = a * r + I
        w = kk * r + J
        return v * n + w

    entries = {}
    for I in range(r):
        for J in range(r):
            for i in range(d):
                for j in range(d):
                    kk = (i - j) % d
                    var = IntegerPolynomial.variable(nv, uvar(j, I, kk, J))
                    if j + kk >= d:
                        var = var * IntegerPolynomial.t_var(nv)
                    entries[(I * d + i, J * d + j)] = var

    # charpoly det(X Id - Psi) with X a formal second stage: build coefficients
    # by cofactor expansion over polynomials in X whose coefficients are
    # IntegerPolynomials.
    zero = IntegerPolynomial(nv)
    one = IntegerPolynomial.constant(nv, 1)

    def xpoly_add(a, b):
        out = [zero] * max(len(a), len(b))
        for i, c in enumerate(a):
            out[i] = out[i] + c
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return out

    def xpoly_mul(a, b):
        out = [zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return out

    mat = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            base = [-entries[(i, j)]]
            if i == j:
                base = base + [one]
            mat[i][j] = base

    def det(rows, cols):
        if len(rows) == 1:
            return mat[rows[0]][cols[0]]
        acc = [zero]
        for idx, j in enumerate(cols):
            minor = det(rows[1:], cols[:idx] + cols[idx + 1:])
            term = xpoly_mul(mat[rows[0]][j], minor)
            if idx % 2 == 1:
                term = [(-c) for c in term]
            acc = xpoly_add(acc, term)
        return acc

    coeffs = det(tuple(range(n)), tuple(range(n)))
    return coeffs + [one] * (n + 1 - len(coeffs))


def charpoly_transfer_bound(M, k):
    """Closeness level m: every sampled transported conjugate of M has reduced
    charpoly k-close (coefficientwise, vector convention) to that of M.

    Elements of the transported ball differ from the image of M by
    M_r(P_D^(dm + v_D(M))); telescoping each monomial of the coefficient
    polynomials turns that entrywise depth into a depth for the coefficient
    differences, and the p-multiple part of each polynomial needs the p-fold
    sum 1+...+1 to sit below P^m on the characteristic-0 side (wrap term).
    Works for singular U-matrices (no inverse of U is ever taken).
    """
    from .cyclic import as_algebra_matrix

    M = as_algebra_matrix(M)
    alg = M.ring
    d, r = alg.d, M.n
    ext = alg.ext
    U = u_matrix(M)
    pi_E = ext.uniformizer_element(1, prec=ext.N)
    polys = psi_structure_polynomials(r, d)
    uvals = matrix_entries(U)
    coeff_vals = [P.evaluate(uvals, pi_E, ext.N) for P in polys[:-1]]
    Nmin = min(int(c.val()) for c in coeff_vals if not c.is_zeroish())
    entry_vals = []
    for x in uvals:
        entry_vals.append(None if x.is_zeroish() else int(x.val()))
    vminU = min((v for v in entry_vals if v is not None), default=0)
    p = alg.base.p

    c_req = 1  # required absolute depth of entry differences (P_E units)
    wrap_req = 0
    for P, val in zip(polys[:-1], coeff_vals):
        # absolute depth the coefficient difference must reach
        if val.is_zeroish():
            D_h = k + Nmin
            P_eff = P + IntegerPolynomial.constant(P.nvars, 1)
        else:
            D_h = k + Nmin
            P_eff = P
        Q, R = P_eff.coefficient_split(p)
        for (exps, t_exp), _c in Q.terms.items():
            sumv, maxfac, has_zero = t_exp, 0, False
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                if entry_vals[i] is None:
                    has_zero = True
                else:
                    sumv += e * entry_vals[i]
                    maxfac = max(maxfac, entry_vals[i])
            if has_zero:
                c_req = max(c_req, D_h - sumv)
            else:
                c_req = max(c_req, D_h - (sumv - maxfac))
        if not R.is_zero():
            mu = R.total_degree()
            wrap_req = max(wrap_req, D_h + max(0, -mu * min(0, vminU)))

    vD_M = int(mat_val(M))
    # entry differences sit in P_E^(ceil((dm + v_D(M) - (d-1))/d)); solve >= c_req
    m_entries = -(-((d * c_req) - vD_M + d - 1) // d)
    return max(k, m_entries, wrap_req, 1)


def verify_charpoly_transfer(M, k, m, samples=10, seed=0):
    """Sample g' in the transported ball of M; reduced charpolys must be k-close."""
    from .cyclic import as_algebra_matrix

    M = as_algebra_matrix(M)
    alg = M.ring
    spec = alg.base
    rng = random.Random(seed)
    keep = spec.N + 2 * m + 6
    target = make_local_field(0, spec.p, spec.f, e=max(m, 1), N=keep)
    triple = make_proximity(spec, target, m)
    cp_F = reduced_charpoly(M)
    vecmin = min(int(c.val()) for c in cp_F if not c.is_zeroish())
    results = []
    for idx in range(samples):
        g = sample_transported_ball(triple, M, m, rng,
                                    work_prec=(keep - 2) * alg.d, pad_to=keep - 2)
        cp_L = reduced_charpoly(g)
        ok = True
        for cF, cL in zip(cp_F, cp_L):
            depth = k + vecmin
            if cF.is_exact_zero() or (cF.is_zeroish() and cF.abs_prec >= depth):
                good = cL.is_zeroish() and cL.abs_prec >= depth or (
                    not cL.is_zeroish() and cL.val() >= depth)
            else:
                img = zeta_element(triple, cF.truncate(min(cF.abs_prec, cF.val() + m)),
                                   pad_to=depth + 1)
                diff = cL - img
                good = (diff.is_zeroish() and diff.abs_prec >= depth) or (
                    not diff.is_zeroish() and diff.val() >= depth)
            ok = ok and good
        results.append({"sample": idx, "ok": bool(ok)})
    return ProximityBoundReport(k, m, "charpoly-sampled", samples=results, seed=seed)


# ---------------------------------------------------------------------------
# Element correspondence g <-> g'


def _poly_resultant(spec, a, b):
    """Resultant via the Sylvester matrix (division-free cofactor determinant)."""
    from .truncpoly import poly_trim

    a, b = list(a), list(b)
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        return spec.zero()
    size = da + db
    rows = []
    for i in range(db):
        row = [spec.zero()] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(da):
        row = [spec.zero()] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)

    def det(rs, cols):
        if not cols:
            return spec.one(4)
        if len(cols) == 1:
            return rs[0][cols[0]]
        acc = spec.zero()
        for idx, j in enumerate(cols):
            minor = det(rs[1:], cols[:idx] + cols[idx + 1:])
            term = rs[0][j] * minor
            if idx % 2 == 1:
                term = -term
            acc = acc + term
        return acc

    return det(rows, tuple(range(size)))


def separability_check(P_coeffs):
    """Separable iff Res(P, P') has a determined, finite valuation.

    A resultant that vanishes modulo the working precision is reported as
    indeterminate rather than inseparable.
    """
    spec = P_coeffs[-1].field
    from .truncpoly import poly_derivative, poly_trim

    deriv = poly_derivative(spec, list(P_coeffs))
    deriv = poly_trim(deriv)
    if not deriv:
        return False  # derivative identically zero: inseparable for sure
    res = _poly_resultant(spec, list(P_coeffs), deriv)
    if res.is_exact_zero():
        return False
    if res.is_zeroish():
        raise IndeterminateError(
            "resultant vanishes modulo P^%s: separability undecidable" % res.abs_prec)
    return True


def correspond(g, g_prime, l=None, triple=None):
    """g <-> g': equal (or l-close across a triple) separable reduced charpolys."""
    cp1 = reduced_charpoly(g) if isinstance(g, Matrix) else list(g)
    cp2 = reduced_charpoly(g_prime) if isinstance(g_prime, Matrix) else list(g_prime)
    if len(cp1) != len(cp2):
        return False
    if not separability_check(cp1):
        raise IndeterminateError("inseparable (or undecidable) characteristic polynomial")
    if not separability_check(cp2):
        raise IndeterminateError("inseparable (or undecidable) characteristic polynomial")
    if triple is None:
        prec = min(min(c.abs_prec for c in cp1), min(c.abs_prec for c in cp2))
        prec = int(min(prec, cp1[-1].field.N))
        return all(a.agrees(b, prec) for a, b in zip(cp1, cp2))
    if l is None:
        raise SpecError("cross-field correspondence needs a closeness level l")
    vecmin = min(int(c.val()) for c in cp1 if not c.is_zeroish())
    depth = l + vecmin
    for a, b in zip(cp1, cp2):
        if a.is_zeroish():
            if not (b.is_zeroish() and b.abs_prec >= depth or
                    (not b.is_zeroish() and b.val() >= depth)):
                return False
            continue
        img = zeta_element(triple, a.truncate(min(a.abs_prec, a.val() + triple.m)),
                           pad_to=depth + 1)
        diff = b - img
        if diff.is_zeroish():
            if diff.abs_prec < depth:
                raise PrecisionError("cannot certify correspondence at depth %d" % depth)
        elif diff.val() < depth:
            return False
    return True
