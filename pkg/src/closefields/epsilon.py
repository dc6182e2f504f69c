"""Rank-1 Godement-Jacquet machinery: additive/multiplicative characters,
exact zeta integrals as rational functions in X = q^(-s), epsilon factors and
conductors, and the cross-field epsilon' comparison.

Everything is exact: character values and Gauss sums live in Q(zeta_M), the
zeta integrals are finite shell sums plus a closed geometric tail, and the
epsilon factor is extracted by certified monomial factoring.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .cyclic import AlgebraSpec, make_algebra, reduced_trace
from .cyclotomic import CycElt, CyclotomicField
from .gld import vol_K_level
from .localfield import PrecisionError, SpecError
from .zfunc import ZetaRational


class StabilityError(ArithmeticError):
    """The zeta sum changed between two admissible shell levels."""


class NonMonomialError(ArithmeticError):
    """epsilon did not factor as c * X^m: implementation bug, hard failure."""


# ---------------------------------------------------------------------------
# Additive characters of conductor zero


@dataclass(frozen=True)
class AdditiveCharacter:
    """psi(x) = zeta_p ^ Tr_(k/F_p)(c_(-1)(x)) via Teichmuller digit extraction.

    Conductor 0: trivial on O, nontrivial on P^(-1).  In characteristic 0 the
    digit at pi^(-1) is additive on pi^(-N) O / O because carries jump e slots
    upward; the spec must satisfy e >= N.
    """

    spec: object

    def __post_init__(self):
        if self.spec.characteristic == 0 and self.spec.e < self.spec.N:
            raise SpecError("conductor-0 digit character needs e >= N in char 0")

    def exponent(self, x):
        """Tr(c_(-1)(x)) in Z/p (the zeta_p-exponent)."""
        if x.is_zeroish():
            if x.abs_prec < 0:
                raise PrecisionError("cannot read the pi^(-1) digit")
            return 0
        d = x.digit(-1) if x.abs_prec > -1 and x.valuation <= -1 else 0
        if x.valuation > -1:
            d = 0
        return self.spec.residue.char_trace(d) % self.spec.p

    def evaluate(self, x, zf):
        return zf.root_of_unity(self.spec.p, self.exponent(x))


def make_additive_char(spec):
    psi = AdditiveCharacter(spec)
    # conductor-0 sanity: trivial on O, nontrivial on pi^-1 units
    assert psi.exponent(spec.one(2)) == 0
    nontrivial = any(
        psi.exponent(spec.from_digits(-1, (u,))) != 0 for u in range(1, spec.residue.q)
    )
    assert nontrivial, "character is trivial on P^(-1)"
    return psi


# ---------------------------------------------------------------------------
# The unit group O_D^* mod (1 + P_D^c) and its character theory


class UnitClassGroup:
    """Finite group of unit residues of O_D^* modulo 1 + P_D^c, with the
    quotient by commutators and pi-conjugation twists (so its characters are
    exactly the unit restrictions of characters of D^*)."""

    def __init__(self, alg, c, ceiling=100000):
        self.alg = alg
        self.c = c
        kq = alg.ext.residue.q
        if kq**c > ceiling:
            raise SpecError("unit group enumeration above ceiling")
        self.tokens = []
        for digs in itertools.product(range(kq), repeat=c):
            if digs[0] != 0:
                self.tokens.append(digs)
        self._lift_cache = {}
        self._mul_cache = {}
        self.identity = self._token(self.alg.one(c + 2))
        # subgroup V: normal closure of commutators and u^(-1) sigma(u)
        gens = set()
        for t in self.tokens:
            u = self.lift(t)
            tw = self._token(u.inv() * u.galois(1))
            gens.add(tw)
        for a in self.tokens:
            for b in self.tokens:
                ua, ub = self.lift(a), self.lift(b)
                comm = self._token(ua.inv() * ub.inv() * ua * ub)
                gens.add(comm)
        self.V = self._subgroup_closure(gens)
        self.class_of = {}
        classes = {}
        for t in self.tokens:
            rep = min(self.mul(t, v) for v in self.V)
            self.class_of[t] = rep
            classes.setdefault(rep, []).append(t)
        self.classes = sorted(classes)

    def lift(self, token):
        if token not in self._lift_cache:
            el = self.alg.from_pi_digits(0, tuple(token) + (0,) * (self.c + 4))
            self._lift_cache[token] = el
        return self._lift_cache[token]

    def _token(self, el):
        return el.pi_digit_window(0, self.c)

    def mul(self, a, b):
        key = (a, b)
        if key not in self._mul_cache:
            self._mul_cache[key] = self._token(self.lift(a) * self.lift(b))
        return self._mul_cache[key]

    def _subgroup_closure(self, gens):
        closure = {self.identity}
        frontier = [self.identity]
        gens = set(gens) | {self.identity}
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in closure:
                    closure.add(y)
                    frontier.append(y)
        # normality at these sizes: conjugate and re-close
        changed = True
        while changed:
            changed = False
            for t in self.tokens:
                u = self.lift(t)
                uin = u.inv()
                for v in list(closure):
                    conj = self._token(uin * self.lift(v) * u)
                    if conj not in closure:
                        closure.add(conj)
                        changed = True
        return sorted(closure)

    # -- abelian quotient Q = U / V and its characters ------------------------

    def quotient_order(self):
        return len(self.classes)

    def quotient_mul(self, a, b):
        return self.class_of[self.mul(a, b)]

    def characters(self):
        """All homomorphisms Q -> mu_infinity as {class_token: exponent} with a
        common order; brute-force propagation over a greedy generating set."""
        classes = self.classes
        if len(classes) == 1:
            return [UnitCharacterTable(1, {classes[0]: 0})]
        # element orders
        def order_of(g):
            n, x = 1, g
            while x != self.class_of[self.identity]:
                x = self.quotient_mul(x, g)
                n += 1
            return n

        gens = []
        span = {self.class_of[self.identity]}
        for g in sorted(classes, key=lambda t: -order_of(t)):
            if g in span:
                continue
            gens.append(g)
            new_span = set(span)
            frontier = list(span)
            while frontier:
                x = frontier.pop()
                y = self.quotient_mul(x, g)
                if y not in new_span:
                    new_span.add(y)
                    frontier.append(y)
            span = new_span
            if len(span) == len(classes):
                break
        orders = [order_of(g) for g in gens]
        exponent = 1
        for o in orders:
            exponent = exponent * o // math.gcd(exponent, o)
        out = []
        for assignment in itertools.product(*[range(o) for o in orders]):
            table = {self.class_of[self.identity]: 0}
            ok = True
            frontier = [self.class_of[self.identity]]
            while frontier and ok:
                x = frontier.pop()
                for g, a, o in zip(gens, assignment, orders):
                    y = self.quotient_mul(x, g)
                    val = (table[x] + a * (exponent // o)) % exponent
                    if y in table:
                        if table[y] != val:
                            ok = False
                            break
                    else:
                        table[y] = val
                        frontier.append(y)
            if ok and len(table) == len(classes):
                out.append(UnitCharacterTable(exponent, table))
        out.sort(key=lambda ch: sorted(ch.table.items()))
        return out


@dataclass(frozen=True)
class UnitCharacterTable:
    order: int  # values are zeta_order ^ exponent
    table: object  # dict class-token -> exponent

    def is_trivial(self):
        return all(v == 0 for v in self.table.values())


class MultiplicativeCharacter:
    """A character of D^* (rank 1): unit-class values plus the value at pi_D.

    level l: trivial on 1 + P_D^(ld) (l >= 1) or on all of O_D^* (l = 0).
    """

    def __init__(self, alg, level, unit_table, pi_order=1, pi_power=0, group=None):
        self.alg = alg
        self.level = level
        self.unit_table = unit_table
        self.pi_order = pi_order
        self.pi_power = pi_power % pi_order
        self.group = group  # UnitClassGroup at level*d (None for level 0)

    @property
    def niv(self):
        """Minimal l with a K^l-fixed vector: triviality threshold."""
        if self.unit_table.is_trivial():
            return 0
        return self.level

    def unit_exponent(self, token):
        """Exponent of the value on a unit-class token (in Z/order)."""
        if self.group is None:
            return 0
        return self.unit_table.table[self.group.class_of[token]]

    def evaluate(self, g, zf):
        """chi(g) for g in D^*: chi(pi)^v * (unit class value)."""
        v = g.known_val()
        u = g.shift_pi(-v)
        val = (zf.root_of_unity(self.pi_order, (self.pi_power * v) % self.pi_order)
               if self.pi_order > 1 else zf.one())
        if self.group is not None:
            tok = u.pi_digit_window(0, self.group.c)
            val = val * zf.root_of_unity(self.unit_table.order,
                                         self.unit_exponent(tok))
        return val

    def scalar_orders(self):
        return (self.unit_table.order, self.pi_order)

    def describe(self):
        return {
            "level": self.level,
            "niv": self.niv,
            "unit_order": self.unit_table.order,
            "unit_table": {"".join(map(str, k)): v for k, v in sorted(self.unit_table.table.items())},
            "pi_order": self.pi_order,
            "pi_power": self.pi_power,
        }


def characters_of_level(alg, l, pi_values=((1, 0),), ceiling=100000):
    """All multiplicative characters of GL_1(D) of level <= l.

    The unit part runs over the characters of O_D^*/(1+P_D^(ld)) that extend
    to D^* (trivial on commutators and pi-conjugation twists); the value at
    the uniformizer is a free parameter, instantiated from pi_values
    (order, power) pairs.
    """
    if isinstance(alg, AlgebraSpec):
        pass
    else:
        alg = make_algebra(alg, 1, 1)
    out = []
    if l == 0:
        for (po, pp) in pi_values:
            out.append(MultiplicativeCharacter(alg, 0, UnitCharacterTable(1, {}),
                                               po, pp, None))
        return out
    group = UnitClassGroup(alg, l * alg.d, ceiling)
    for table in group.characters():
        for (po, pp) in pi_values:
            out.append(MultiplicativeCharacter(alg, l, table, po, pp, group))
    return out


# ---------------------------------------------------------------------------
# Godement-Jacquet zeta sums (rank 1)


def scalar_field_for(alg, chars, n_even):
    """Q(zeta_M) large enough for psi, the characters, and sqrt(q) if needed."""
    M = alg.base.p
    for ch in chars:
        for o in ch.scalar_orders():
            M = M * o // math.gcd(M, o)
    if n_even:
        extra = 8 if alg.base.p == 2 else 4 * alg.base.p
        # guard: sqrt(p) must not already divide out weirdly; lcm keeps it exact
        M = M * extra // math.gcd(M, extra)
    return CyclotomicField(M)


def gj_zeta(chi, psi, l_used, zf, ceiling=100000):
    """(Z(s; f), Z(s; f-check)) at level l_used >= max(1, niv(chi)).

    Z(s; f) = vol(K^l).  The dual integral is a finite sum over the shells
    pi_D^j (O_D^* mod 1+P^c), j >= -ld, of psi(trd(g)) chi(g^-1) X^(v_D(g))
    weights, plus a geometric tail that is only nonzero for unramified chi.
    """
    alg = chi.alg
    d = alg.d
    n = d  # rank 1
    ld = l_used * d
    if l_used < max(1, chi.niv):
        raise SpecError("level below the character's level")
    volK = vol_K_level(alg, 1, l_used)
    Z_f = ZetaRational.constant(zf, zf.from_rational(volK))

    q = alg.base.q
    z_inv_pow = lambda j: zf.root_of_unity(chi.pi_order, (-chi.pi_power * j) % chi.pi_order)

    total = ZetaRational.constant(zf, zf.zero())
    for j in range(-ld, 0):
        c = max(ld, -j, 1)
        S = _shell_sum(chi, psi, j, c, zf, ceiling)
        if not S.is_zero():
            total = total + ZetaRational.monomial(zf, S * z_inv_pow(j), j)
    if chi.unit_table.is_trivial():
        # sum_{j>=0} X^j chi(pi)^(-j) = 1/(1 - chi(pi)^(-1) X)
        zinv = z_inv_pow(1)
        tail = ZetaRational(zf, [zf.one()], [zf.one(), -zinv])
        total = total + tail
    prefactor = zf.from_rational(Fraction(1, q ** (n * l_used)))
    Z_dual = total * ZetaRational.constant(zf, prefactor)
    return Z_f, Z_dual


def _shell_sum(chi, psi, j, c, zf, ceiling):
    """integral over O^* of psi(trd(pi^j u)) chi(u)^(-1) du at unit resolution c."""
    alg = chi.alg
    group = UnitClassGroup(alg, c, ceiling) if (chi.group is None or chi.group.c != c) else chi.group
    acc = zf.zero()
    inv_count = Fraction(1, len(group.tokens))
    for tok in group.tokens:
        u = group.lift(tok)
        g = u.shift_pi(j)  # pi^j u ... careful: left shift; valuation j
        tr = reduced_trace(g)
        val = psi.evaluate(tr, zf)
        if chi.group is not None:
            # chi(u)^(-1)
            e = chi.unit_exponent(tok if chi.group.c == c else u.pi_digit_window(0, chi.group.c))
            val = val * zf.root_of_unity(chi.unit_table.order, (-e) % chi.unit_table.order)
        acc = acc + val
    return acc.scale(inv_count)


def epsilon_prime(chi, psi, zf, ceiling=100000, stability_check=True):
    """epsilon'(s) = (-1)^(r(d-1)) Z(1-s+(n-1)/2; f-check) / Z(s+(n-1)/2; f).

    Exact rational function of X = q^(-s); independence of the admissible
    shell level is verified by recomputing one level higher.
    """
    alg = chi.alg
    d = alg.d
    n = d
    q = alg.base.q
    l0 = max(1, chi.niv)

    def compute(l_used):
        Z_f, Z_dual = gj_zeta(chi, psi, l_used, zf, ceiling)
        # T = q^(-(1-s+(n-1)/2)) = c0 / X with c0 = q^(-1) * q^(-(n-1)/2)
        if (n - 1) % 2 == 0:
            c0 = zf.from_rational(Fraction(1, q ** (1 + (n - 1) // 2)))
        else:
            sq = zf.sqrt_prime_power(alg.base.p, alg.base.f)  # sqrt(q)
            c0 = zf.from_rational(Fraction(1, q ** (1 + (n - 1) // 2))) * sq.inv()
        dual_at = Z_dual.subst_c_over_X(c0)
        sign = zf.from_rational((-1) ** (1 * (d - 1)))
        return dual_at * ZetaRational.constant(zf, sign) / Z_f

    result = compute(l0)
    if stability_check:
        again = compute(l0 + 1)
        if result != again:
            raise StabilityError("zeta sums depend on the shell level")
    return result


def epsilon_factor(chi, psi, zf, ceiling=100000):
    """(constant c, conductor m) with epsilon(s) = c X^m, extracted from
    epsilon' by dividing off the allowed L-factor ratio shapes
    U(X) = 1 or X(1 - alpha X)/(X - beta)."""
    ep = epsilon_prime(chi, psi, zf, ceiling)
    if ep.is_zero():
        raise NonMonomialError("epsilon' is zero")
    num, den, shift = ep.num, ep.den, ep.shift
    if len(den) == 1:
        # denominator 1: epsilon' itself must be a monomial
        if len(num) != 1:
            raise NonMonomialError("epsilon' = %r is not monomial" % ep)
        return num[0], shift
    if len(den) == 2:
        if len(num) > 2:
            raise NonMonomialError("numerator degree too large: %r" % ep)
        c = num[0]
        m = shift - 1
        # reconstruct and certify: epsilon' == c X^m * X (1 - alpha X)/(X - beta)
        alpha = (-(num[1]) / c) if len(num) == 2 else zf.zero()
        recon = (ZetaRational.monomial(zf, c, m + 1)
                 * ZetaRational(zf, [zf.one(), -alpha], den))
        if recon != ep:
            raise NonMonomialError("factorization failed: %r" % ep)
        return c, m
    raise NonMonomialError("denominator degree > 1: %r" % ep)


# ---------------------------------------------------------------------------
# Transfer of epsilon' across close fields


def transport_character(chi, alg_target):
    """The character of the target GL_1(D) with the same digit tables."""
    group = None
    if chi.group is not None:
        group = UnitClassGroup(alg_target, chi.group.c)
        # the class partition must match token-for-token (ring iso at level c)
        assert group.class_of == chi.group.class_of, "unit class partitions differ"
    return MultiplicativeCharacter(alg_target, chi.level, chi.unit_table,
                                   chi.pi_order, chi.pi_power, group)


def epsilon_transfer_check(source, target, m, d, h, l, pi_values=((1, 0), (2, 1)),
                           ceiling=100000):
    """Compare epsilon' and epsilon across an m-close pair for all characters
    of level <= l, computing both sides independently.  Returns a report."""
    from .closeness import make_proximity

    t0 = time.time()
    make_proximity(source, target, m)  # validates closeness
    if l > m:
        raise SpecError("character level exceeds closeness")
    alg_F = make_algebra(source, d, h)
    alg_L = make_algebra(target, d, h)
    chars_F = []
    for lev in range(0, l + 1):
        chars_F.extend(characters_of_level(alg_F, lev, pi_values, ceiling))
    n_even = (d % 2 == 0)
    zf = scalar_field_for(alg_F, chars_F, n_even)
    psi_F = make_additive_char(source)
    psi_L = make_additive_char(target)
    rows = []
    failures = []
    for chi_F in chars_F:
        chi_L = transport_character(chi_F, alg_L)
        epF = epsilon_prime(chi_F, psi_F, zf, ceiling)
        epL = epsilon_prime(chi_L, psi_L, zf, ceiling)
        cF, mF = epsilon_factor(chi_F, psi_F, zf, ceiling)
        cL, mL = epsilon_factor(chi_L, psi_L, zf, ceiling)
        ok = (epF == epL) and (cF == cL) and (mF == mL)
        conductor_identity = (mF == chi_F.niv + d - 1)
        rows.append({
            "character": chi_F.describe(),
            "conductor": mF,
            "niv": chi_F.niv,
            "conductor_identity": bool(conductor_identity),
            "epsilon_constant": cF.to_json(),
            "epsilon_prime_shift": epF.shift,
            "equal_across_fields": bool(ok),
        })
        if not ok or not conductor_identity:
            failures.append(rows[-1])
    return {
        "params": {"p": source.p, "f": source.f, "d": d, "h": h, "l": l, "m": m,
                   "e_target": getattr(target, "e", None), "M": zf.M},
        "characters_checked": len(rows),
        "rows": rows,
        "failures": failures,
        "ok": not failures,
        "elapsed": round(time.time() - t0, 3),
    }
