"""Finite residue fields F_{p^deg} with deterministic construction.

Elements are plain ints in range(p**deg), encoding coordinate vectors
(c_0, ..., c_{deg-1}) base p with respect to the polynomial basis
1, x, ..., x^{deg-1} modulo a fixed irreducible.  The irreducible is the
lexicographically smallest monic irreducible of degree deg over F_p, so two
runs (or two processes) always build identical tables.
"""

from __future__ import annotations

import itertools


def _poly_mulmod(a, b, mod, p):
    """Multiply dense coefficient tuples a*b modulo the monic poly `mod` over F_p."""
    deg = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    # reduce by mod (monic): x^deg = -(mod[0] + ... + mod[deg-1] x^{deg-1})
    for i in range(len(prod) - 1, deg - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(deg):
                prod[i - deg + j] = (prod[i - deg + j] - c * mod[j]) % p
    return tuple(prod[:deg]) if deg > 0 else ()


def _poly_is_irreducible(coeffs, p):
    """Irreducibility of a monic poly over F_p by exhaustive monic divisor search.

    Degrees here are tiny (<= 8), so trial division is fine.
    """
    deg = len(coeffs) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for ddeg in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=ddeg):
            divisor = tuple(tail) + (1,)
            if _poly_divides(divisor, coeffs, p):
                return False
    return True


def _poly_divides(d, a, p):
    """Whether monic d divides a over F_p (remainder of long division is zero)."""
    rem = list(a)
    dd = len(d) - 1
    while len(rem) - 1 >= dd:
        lead = rem[-1]
        if lead:
            shift = len(rem) - 1 - dd
            for i in range(dd + 1):
                rem[shift + i] = (rem[shift + i] - lead * d[i]) % p
        rem.pop()
    return all(c == 0 for c in rem)


def smallest_irreducible(p, deg):
    """Lexicographically smallest monic irreducible of degree deg over F_p.

    Returned as a coefficient tuple (c_0, ..., c_{deg-1}, 1); the order is lex
    on the non-leading coefficient tuple (c_0, ..., c_{deg-1}).
    """
    for tail in itertools.product(range(p), repeat=deg):
        cand = tuple(tail) + (1,)
        if _poly_is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")


class ResidueField:
    """F_{p^deg} with full operation tables; elements are ints < p**deg."""

    def __init__(self, p, deg):
        self.p = p
        self.deg = deg
        self.q = p**deg
        self.irreducible = smallest_irreducible(p, deg)
        self._build_tables()

    def _build_tables(self):
        p, deg, q = self.p, self.deg, self.q
        coords = [self.coords(i) for i in range(q)]
        self.add_table = [
            [self.from_coords(tuple((a[k] + b[k]) % p for k in range(deg))) for b in coords]
            for a in coords
        ]
        self.neg_table = [
            self.from_coords(tuple((-a[k]) % p for k in range(deg))) for a in coords
        ]
        self.mul_table = [
            [self.from_coords(_poly_mulmod(a, b, self.irreducible, p)) for b in coords]
            for a in coords
        ]
        # inverses by exhaustive search (q is tiny)
        self.inv_table = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a][b] == 1:
                    self.inv_table[a] = b
                    break
        # Frobenius x -> x^p
        self.frob_table = [self.pow(a, p) for a in range(q)]

    def coords(self, a):
        out = []
        for _ in range(self.deg):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coords(self, cs):
        a = 0
        for c in reversed(cs):
            a = a * self.p + (c % self.p)
        return a

    def add(self, a, b):
        return self.add_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in residue field")
        return self.inv_table[a]

    def pow(self, a, n):
        n = n % (self.q - 1) if (a != 0 and n >= 0) else n
        if n < 0:
            a = self.inv(a)
            n = -n
        r = 1
        while n:
            if n & 1:
                r = self.mul_table[r][a]
            a = self.mul_table[a][a]
            n >>= 1
        return r

    def frobenius(self, a, k=1):
        """a^(p^k); k may be any integer (Frobenius has order deg)."""
        k %= self.deg
        for _ in range(k):
            a = self.frob_table[a]
        return a

    def char_trace(self, a):
        """Absolute trace down to F_p, returned as an int in range(p)."""
        t = 0
        x = a
        for _ in range(self.deg):
            t = self.add(t, x)
            x = self.frob_table[x]
        return t  # lies in the prime field: encoded as int < p

    def multiplicative_generator(self):
        """Smallest generator of the cyclic group F_q^*."""
        for a in range(1, self.q):
            if self.order(a) == self.q - 1:
                return a
        raise AssertionError("no generator found")

    def order(self, a):
        if a == 0:
            raise ZeroDivisionError
        n, x = 1, a
        while x != 1:
            x = self.mul_table[x][a]
            n += 1
        return n

    def __repr__(self):
        return f"ResidueField(p={self.p}, deg={self.deg})"


_FIELD_CACHE = {}


def residue_field(p, deg):
    key = (p, deg)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = ResidueField(p, deg)
    return _FIELD_CACHE[key]


_EMBED_CACHE = {}


def subfield_embedding(p, sub_deg, big_deg):
    """Embedding table F_{p^sub_deg} -> F_{p^big_deg} (sub_deg | big_deg).

    Maps the small field's generator x to the lexicographically smallest root
    of the small irreducible inside the big field; this is a fixed field
    homomorphism, deterministic across runs.
    """
    key = (p, sub_deg, big_deg)
    if key in _EMBED_CACHE:
        return _EMBED_CACHE[key]
    if big_deg % sub_deg:
        raise ValueError("sub_deg must divide big_deg")
    small = residue_field(p, sub_deg)
    big = residue_field(p, big_deg)
    if sub_deg == big_deg:
        table = list(range(small.q))
    else:
        root = None
        m = small.irreducible
        for cand in range(big.q):
            acc = 0
            for c in reversed(m):
                acc = big.add(big.mul(acc, cand), c % p)
            if acc == 0:
                root = cand
                break
        assert root is not None
        table = []
        for a in range(small.q):
            cs = small.coords(a)
            img = 0
            for c in reversed(cs):
                img = big.add(big.mul(img, root), c % p)
            table.append(img)
    _EMBED_CACHE[key] = table
    return table
