"""Dense polynomials over F_q as numpy arrays of F_q element indices.

Coefficients run from the constant term upward and arrays are kept trimmed
(the zero polynomial is the empty array).  Factorisation is the classical
distinct-degree / equal-degree split for odd q, with the equal-degree step
driven by a fixed enumeration of test polynomials instead of random ones so
that results are reproducible.
"""

from __future__ import annotations

import numpy as np

from .field import extension


class FqPolyRing:
    def __init__(self, q):
        self.q = q
        self.ctx = extension(q, 1)
        self.t = self.ctx.tables
        self.p, self.e = self.ctx.p, self.ctx.e

    # construction
    def trim(self, f):
        f = np.asarray(f, dtype=np.int64)
        nz = np.nonzero(f)[0]
        return f[: nz[-1] + 1].copy() if len(nz) else f[:0].copy()

    def from_sparse(self, terms):
        """Dense polynomial from a {degree: F_q index} mapping."""
        if not terms:
            return np.zeros(0, dtype=np.int64)
        f = np.zeros(max(terms) + 1, dtype=np.int64)
        for k, c in terms.items():
            f[k] = c
        return self.trim(f)

    def const(self, c):
        return self.trim([c])

    def x(self):
        return np.array([0, 1], dtype=np.int64)

    def deg(self, f):
        return len(f) - 1

    # arithmetic
    def add(self, f, g):
        n = max(len(f), len(g))
        a = np.zeros(n, dtype=np.int64)
        b = np.zeros(n, dtype=np.int64)
        a[: len(f)] = f
        b[: len(g)] = g
        return self.trim(self.t.add(a, b))

    def neg(self, f):
        return self.t.neg(f) if len(f) else f

    def sub(self, f, g):
        return self.add(f, self.neg(g))

    def scale(self, f, c):
        return self.trim(self.t.mul_scalar(f, c))

    def mul(self, f, g):
        if not len(f) or not len(g):
            return np.zeros(0, dtype=np.int64)
        p, e = self.p, self.e
        df, dg = self.t.digits[f], self.t.digits[g]
        n = len(f) + len(g) - 1
        slots = np.zeros((2 * e - 1, n), dtype=np.int64)
        for i in range(e):
            for j in range(e):
                slots[i + j] += np.convolve(df[:, i], dg[:, j])
        slots %= p
        out = slots[:e].copy()
        red = self.ctx._reduction
        for k in range(e, 2 * e - 1):
            for j, r in enumerate(red[k - e]):
                if r:
                    out[j] += r * slots[k]
        out %= p
        return self.trim(self.t.weights[:e] @ out)

    def divmod(self, f, g):
        if not len(g):
            raise ZeroDivisionError("polynomial division by zero")
        t = self.t
        r = np.array(f, dtype=np.int64)
        dg = len(g) - 1
        if len(r) <= dg:
            return np.zeros(0, dtype=np.int64), self.trim(r)
        quo = np.zeros(len(r) - dg, dtype=np.int64)
        inv_lead = int(t.inv(np.array([g[-1]]))[0])
        for i in range(len(r) - 1 - dg, -1, -1):
            lead = r[i + dg]
            if lead:
                c = int(t.mul(lead, inv_lead))
                quo[i] = c
                r[i:i + dg + 1] = t.sub(r[i:i + dg + 1], t.mul_scalar(g, c))
        return self.trim(quo), self.trim(r[:dg])

    def mod(self, f, g):
        return self.divmod(f, g)[1]

    def monic(self, f):
        if not len(f):
            return f
        inv_lead = int(self.t.inv(np.array([f[-1]]))[0])
        return self.scale(f, inv_lead)

    def gcd(self, f, g):
        f, g = self.trim(f), self.trim(g)
        while len(g):
            f, g = g, self.mod(f, g)
        return self.monic(f)

    def deriv(self, f):
        if len(f) <= 1:
            return np.zeros(0, dtype=np.int64)
        ks = np.arange(1, len(f)) % self.p      # index of the prime-field element k
        return self.trim(self.t.mul(f[1:], ks))

    def powmod(self, f, n, m):
        result = self.const(1)
        base = self.mod(f, m)
        while n:
            if n & 1:
                result = self.mod(self.mul(result, base), m)
            base = self.mod(self.mul(base, base), m)
            n >>= 1
        return result

    def is_squarefree(self, f):
        return self.deg(self.gcd(f, self.deriv(f))) == 0

    # factorisation
    def ddf(self, f):
        """Distinct-degree split of a monic squarefree f: list of (product, d)."""
        out = []
        f = self.monic(f)
        h = self.x()
        d = 0
        while 2 * (d + 1) <= self.deg(f):
            d += 1
            h = self.powmod(h, self.q, f)
            g = self.gcd(f, self.sub(h, self.x()))
            if self.deg(g) > 0:
                out.append((g, d))
                f = self.divmod(f, g)[0]
                h = self.mod(h, f)
        if self.deg(f) > 0:
            out.append((f, self.deg(f)))
        return out

    def _test_polys(self, n):
        """Deterministic stream of nonconstant polynomials of degree < n."""
        q = self.q
        code = q
        while True:
            digits, c = [], code
            while c:
                c, r = divmod(c, q)
                digits.append(r)
            if len(digits) <= n:
                yield self.trim(digits)
            code += 1

    def edf(self, g, d):
        """Split a product of distinct degree-d monic irreducibles."""
        if self.deg(g) == d:
            return [g]
        pending, done = [g], []
        exp = (self.q**d - 1) // 2
        for h in self._test_polys(self.deg(g)):
            nxt = []
            for f in pending:
                if self.deg(f) == d:
                    done.append(f)
                    continue
                w = self.sub(self.powmod(h, exp, f), self.const(1))
                u = self.gcd(f, w)
                if 0 < self.deg(u) < self.deg(f):
                    nxt += [u, self.divmod(f, u)[0]]
                else:
                    nxt.append(f)
            pending = nxt
            if all(self.deg(f) == d for f in pending):
                break
        return done + pending

    def factor_squarefree(self, f):
        """Monic irreducible factors of a squarefree f, sorted by (degree, coefficients)."""
        out = []
        for g, d in self.ddf(f):
            out.extend(self.edf(g, d))
        return sorted((tuple(int(c) for c in h) for h in out), key=lambda h: (len(h), h[::-1]))
