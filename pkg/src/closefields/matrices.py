"""Generic matrices over truncated (possibly noncommutative) ring elements.

Works for matrices over a field model (TruncatedElement) and over a cyclic
division algebra (CyclicAlgebraElement).  Row operations always multiply on
the left and column operations on the right, so everything stays correct in
the noncommutative case.
"""

from __future__ import annotations

import math

from .localfield import PrecisionError

INF = math.inf


class Matrix:
    __slots__ = ("ring", "rows")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]

    @property
    def n(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    @staticmethod
    def identity(ring, n, prec=None):
        return Matrix(
            ring,
            [[ring.one(prec) if i == j else ring.zero() for j in range(n)] for i in range(n)],
        )

    @staticmethod
    def zero(ring, n, m=None):
        m = n if m is None else m
        return Matrix(ring, [[ring.zero() for _ in range(m)] for _ in range(n)])

    def copy(self):
        return Matrix(self.ring, [list(r) for r in self.rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        assert self.ncols == other.n
        out = []
        for i in range(self.n):
            row = []
            for j in range(other.ncols):
                acc = self.ring.zero()
                for k in range(self.ncols):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(self.ring, out)

    def __add__(self, other):
        return Matrix(
            self.ring,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        return Matrix(
            self.ring,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
        )

    def __neg__(self):
        return Matrix(self.ring, [[-a for a in r] for r in self.rows])

    def scale_left(self, s):
        return Matrix(self.ring, [[s * a for a in r] for r in self.rows])

    def map(self, fn):
        return Matrix(self.ring, [[fn(a) for a in r] for r in self.rows])

    def min_val(self):
        """Minimum valuation over entries; +inf for an (exactly) zero matrix."""
        v = INF
        bound = INF
        for r in self.rows:
            for a in r:
                if a.is_zeroish():
                    if not a.is_exact_zero():
                        bound = min(bound, a.abs_prec)
                else:
                    v = min(v, a.val())
        if v <= bound:
            return v
        raise PrecisionError("min valuation undetermined: near-zero entry at P^%s" % bound)

    def agrees(self, other, abs_prec):
        for r1, r2 in zip(self.rows, other.rows):
            for a, b in zip(r1, r2):
                if not a.agrees(b, abs_prec):
                    return False
        return True

    def all_entries_in_power(self, c):
        """Certified: every entry lies in P^c."""
        for r in self.rows:
            for a in r:
                if a.is_zeroish():
                    if a.abs_prec < c:
                        raise PrecisionError("cannot certify membership in P^%d" % c)
                elif a.val() < c:
                    return False
        return True

    def inv(self):
        """Inverse by Gauss-Jordan with minimal-valuation pivoting (left row ops)."""
        n = self.n
        assert n == self.ncols
        work = self.copy()
        inv = Matrix.identity(self.ring, n, prec=self._max_prec())
        for col in range(n):
            piv, pv = None, INF
            for i in range(col, n):
                a = work.rows[i][col]
                if not a.is_zeroish() and a.val() < pv:
                    piv, pv = i, a.val()
            if piv is None:
                raise PrecisionError("matrix not invertible at available precision")
            if piv != col:
                work.rows[col], work.rows[piv] = work.rows[piv], work.rows[col]
                inv.rows[col], inv.rows[piv] = inv.rows[piv], inv.rows[col]
            s = work.rows[col][col].inv()
            work.rows[col] = [s * a for a in work.rows[col]]
            inv.rows[col] = [s * a for a in inv.rows[col]]
            for i in range(n):
                if i == col:
                    continue
                c = work.rows[i][col]
                if c.is_exact_zero():
                    continue
                work.rows[i] = [a - c * b for a, b in zip(work.rows[i], work.rows[col])]
                inv.rows[i] = [a - c * b for a, b in zip(inv.rows[i], inv.rows[col])]
        return inv

    def _max_prec(self):
        best = 1
        for r in self.rows:
            for a in r:
                if not a.is_zeroish() and a.abs_prec != INF:
                    best = max(best, int(a.abs_prec - a.val()))
        return best

    def trace(self):
        acc = self.ring.zero()
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def __repr__(self):
        return "Matrix(%s)" % self.rows
