"""m-proximity triples between local fields and the formal digit bijections.

Two fields with the same residue data are m-close when O_F/P_F^m and
O_L/P_L^m are isomorphic as rings, the isomorphism matching the chosen
uniformizers.  Both models here share one deterministic residue field and
Teichmuller digit systems, so the transport lambda is the digit-identity map

    lambda(sum_j [s_j] pi_F^j) = sum_j [s_j] pi_L^j ;

it preserves valuations, commutes with pi-shifts, and is Galois-equivariant
on unramified extensions.  Whether the induced map on O/P^m is a ring
isomorphism is exactly the m-closeness condition (e >= m in the Eisenstein
model), and the constructor verifies it exhaustively at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .localfield import (
    INF,
    ExtSpec,
    PrecisionError,
    SpecError,
    TruncatedElement,
    unramified_extension,
)


class NotCloseError(SpecError):
    """The two specs are not m-close (e.g. characteristic-0 side has e < m)."""


@dataclass(frozen=True)
class ProximityTriple:
    """Closeness level m plus source/target specs; digit map is the identity.

    Both specs share (p, f) and hence one residue-field model, so the digit
    bijection needs no table; the triple still owns level bookkeeping and the
    verified ring-isomorphism property.
    """

    m: int
    source: object  # FieldSpec or ExtSpec
    target: object

    def reverse(self):
        return ProximityTriple(self.m, self.target, self.source)

    def extend(self, d, sigma_power=1):
        """Derived triple between degree-d unramified extensions (same level m)."""
        if isinstance(self.source, ExtSpec):
            raise SpecError("triple already sits over extensions")
        E = unramified_extension(self.source, d, sigma_power)
        K = unramified_extension(self.target, d, sigma_power)
        return ProximityTriple(self.m, E, K)

    def to_json(self):
        return {"m": self.m, "source": self.source.to_json(), "target": self.target.to_json()}


def _closeness_obstruction(spec, m):
    """Why O/P^m of this spec fails to match the equal-characteristic model (or None)."""
    if spec.characteristic == 0 and spec.e < m:
        return (
            "p = pi^e has valuation e = %d < m = %d, so 1+1+...+1 (p times) "
            "is nonzero mod P^m on this side" % (spec.e, m)
        )
    return None


def make_proximity(source, target, m, verify_ceiling=4096):
    """Build a verified m-proximity triple between two field specs.

    Requires matching (p, f).  For a characteristic-0 side the closeness holds
    iff e >= m; violations raise NotCloseError carrying the concrete
    obstruction.  When the ring O/P^m is small enough the induced digit map is
    checked exhaustively to be a ring isomorphism.
    """
    if (source.p, source.residue_degree if hasattr(source, "residue_degree") else source.f) != (
        target.p,
        target.residue_degree if hasattr(target, "residue_degree") else target.f,
    ):
        raise SpecError("proximity needs equal residue data (p, f)")
    if m < 1:
        raise SpecError("closeness level m must be >= 1")
    for spec in (source, target):
        obstruction = _closeness_obstruction(spec, m)
        if obstruction:
            raise NotCloseError(obstruction)
        if spec.N < m:
            raise SpecError("spec precision N=%d below closeness level m=%d" % (spec.N, m))
    triple = ProximityTriple(m, source, target)
    if source.q**m <= verify_ceiling:
        report = verify_ring_isomorphism(triple, exhaustive=True)
        assert report["ok"], report
    return triple


def lambda_apply(triple, x, reverse=False):
    """Transport an element along the formal bijection (digit identity).

    Valuation-preserving, pi-power equivariant and Galois-equivariant; the
    element must not carry more than m guaranteed digits (beyond its
    valuation), since only those are canonical at closeness level m.
    """
    src = triple.target if reverse else triple.source
    dst = triple.source if reverse else triple.target
    if x.field != src:
        raise SpecError("element does not live over the triple's source")
    if x.is_zeroish():
        return dst.zero(x.zero_prec)
    if x.precision > triple.m:
        raise PrecisionError(
            "element carries %d digits, above the closeness level m=%d"
            % (x.precision, triple.m)
        )
    return TruncatedElement(dst, x.valuation, x.digits, None)


def lambda_matrix(triple, rows, reverse=False):
    """Componentwise transport of a matrix (list of lists) of elements."""
    return [[lambda_apply(triple, x, reverse) for x in row] for row in rows]


def is_close(a, b, l, triple):
    """Element closeness a ~_l b:  b - lambda(a) in P_target^(l + v(a)).

    Zero on both sides counts as close; closeness of nonzero elements implies
    equal valuations.  Raises PrecisionError if the inputs cannot certify the
    required depth.
    """
    if l > triple.m:
        raise SpecError("l exceeds the triple's closeness level m")
    if a.is_zeroish() and not a.is_exact_zero():
        raise PrecisionError("source element has undetermined valuation")
    if a.is_exact_zero():
        if b.is_exact_zero():
            return True
        if b.is_zeroish():
            raise PrecisionError("target element has undetermined valuation")
        return False
    need = l + a.valuation
    diff = b - lambda_apply(triple, a.truncate(min(a.abs_prec, a.valuation + triple.m)))
    if diff.is_zeroish():
        if diff.zero_prec >= need:
            return True
        raise PrecisionError("cannot certify closeness at depth %d" % need)
    return diff.valuation >= need


def verify_ring_isomorphism(triple, exhaustive=True, ceiling=4096):
    """Check that the induced map on O/P^m is a ring isomorphism.

    Exhausts all pairs of O/P^m digit vectors (q^m of them) on additivity and
    multiplicativity; the map is a digit bijection by construction.  Returns a
    replayable report dict.
    """
    m = triple.m
    src, dst = triple.source, triple.target
    k = src.residue
    vectors = list(itertools.product(range(k.q), repeat=m))
    if len(vectors) ** 2 > ceiling**2:
        raise SpecError("exhaustive verification above ceiling")
    failures = []

    def lift(spec, digs):
        el = spec.from_digits(0, digs)
        return el if not el.is_zeroish() else spec.zero(m)

    def transport(digs):
        return digs  # digit identity

    for da, db in itertools.product(vectors, repeat=2):
        xa, xb = lift(src, da), lift(src, db)
        ya, yb = lift(dst, transport(da)), lift(dst, transport(db))
        s_src = (xa + xb).digit_window(0, m)
        s_dst = (ya + yb).digit_window(0, m)
        if s_src != s_dst:
            failures.append({"op": "add", "a": da, "b": db, "src": s_src, "dst": s_dst})
        p_src = (xa * xb).digit_window(0, m)
        p_dst = (ya * yb).digit_window(0, m)
        if p_src != p_dst:
            failures.append({"op": "mul", "a": da, "b": db, "src": p_src, "dst": p_dst})
        if len(failures) > 10:
            break
    return {
        "m": m,
        "pairs_checked": len(vectors) ** 2,
        "ok": not failures,
        "failures": failures,
    }


def verify_galois_equivariance(ext_triple, ceiling=4096):
    """lambda(sigma(x)) = sigma'(lambda(x)) exhaustively on O_E/P^m digit vectors."""
    from .localfield import frobenius_power

    m = ext_triple.m
    E, K = ext_triple.source, ext_triple.target
    if not isinstance(E, ExtSpec):
        raise SpecError("needs a triple over unramified extensions")
    k = E.residue
    vectors = list(itertools.product(range(k.q), repeat=m))
    if len(vectors) > ceiling:
        raise SpecError("above ceiling")
    failures = []
    for digs in vectors:
        x = E.from_digits(0, digs)
        if x.is_zeroish():
            x = E.zero(m)
        lhs = lambda_apply(ext_triple, frobenius_power(x, 1) if not x.is_zeroish() else x)
        rhs = frobenius_power(lambda_apply(ext_triple, x), 1)
        if lhs.digit_window(0, m) != rhs.digit_window(0, m):
            failures.append(digs)
    return {"checked": len(vectors), "ok": not failures, "failures": failures}
