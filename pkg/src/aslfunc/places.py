"""Closed points of G_m over F_q: monic irreducibles other than t.

Places of degree ``d`` are enumerated as Frobenius orbits on the elements of
F_{q^d} of exact degree ``d``.  The canonical root of a place is the
smallest orbit member in the enumeration order of F_{q^d}; the polynomial is
the product of ``X - beta^(q^j)`` with coefficients restricted to F_q.
Polynomials are tuples of F_q element indices, constant term first.

:func:`irreducibles_sieve` is an independent route (a product sieve over
all monics) used to cross-check the orbit enumeration.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .errors import SizeCapExceeded
from .field import (FFElem, TABLE_CAP, embedding_map, extension, prime_factors)


def mobius(n):
    if n == 1:
        return 1
    out = 1
    for ell in prime_factors(n):
        if n % (ell * ell) == 0:
            return 0
        out = -out
    return out


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def count_places(q, n):
    """pi_q(n): monic irreducibles of degree n over F_q, excluding t."""
    if n < 1:
        raise ValueError("n must be positive")
    total = sum(mobius(d) * q ** (n // d) for d in divisors(n))
    assert total % n == 0
    return total // n - (1 if n == 1 else 0)


@dataclass(frozen=True)
class Place:
    """A place v of G_m over F_q with canonical root ``beta`` in F_{q^d}."""

    poly: tuple
    degree: int
    beta: FFElem
    beta_a: FFElem | None = None

    def label(self):
        """Human-readable polynomial in t, e.g. ``t^2+t+2``."""
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.poly[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms)

    def evaluate(self, x):
        """poly(x) for x in an extension of F_q, with coefficients embedded."""
        ctx = x.ctx
        emb = embedding_map(ctx.base, ctx)
        acc = ctx.zero
        for c in reversed(self.poly):
            acc = acc * x + ctx(int(emb[c]))
        return acc


@dataclass(frozen=True)
class PlaceSet:
    q: int
    a: int
    places: tuple
    counts: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.places)

    def __iter__(self):
        return iter(self.places)


def _orbit_data(q, d):
    """Canonical roots and minimal polynomials of all places of degree d.

    Returns (betas, polys): an index array into F_{q^d} and an (n, d+1)
    array of F_q indices, both sorted by polynomial.
    """
    ctx = extension(q, d)
    if ctx.order > TABLE_CAP:
        raise SizeCapExceeded(f"F_{q}^{d} exceeds the enumeration cap")
    t = ctx.tables
    xs = np.arange(1, t.Q, dtype=np.int64)
    conj = [xs]
    for _ in range(d - 1):
        conj.append(t.power(conj[-1], q))
    conj = np.stack(conj)
    exact = np.ones(xs.shape, dtype=bool)
    for j in divisors(d)[:-1]:
        exact &= conj[j] != xs
    canon = exact & (conj.min(axis=0) == xs)
    roots = conj[:, canon]                 # (d, n): conjugates of each canonical root
    n = roots.shape[1]
    coeffs = np.zeros((d + 1, n), dtype=np.int64)
    coeffs[0] = 1                          # start from the constant polynomial 1
    for j in range(d):
        # multiply by (X - r_j): new[k] = old[k-1] - r_j * old[k]
        r = roots[j]
        prod = t.mul(coeffs, np.broadcast_to(r, coeffs.shape))
        shifted = np.vstack([np.zeros((1, n), dtype=np.int64), coeffs[:-1]])
        coeffs = t.sub(shifted.ravel(), prod.ravel()).reshape(d + 1, n)
    inv = _restriction_array(ctx)
    polys = inv[coeffs].T
    assert (polys >= 0).all(), "minimal polynomial not defined over F_q"
    order = sorted(range(n), key=lambda i: tuple(polys[i, ::-1]))
    return roots[0][order], polys[order]


@functools.lru_cache(maxsize=None)
def _restriction_array(ctx):
    emb = embedding_map(ctx.base, ctx)
    inv = np.full(ctx.order, -1, dtype=np.int64)
    inv[emb] = np.arange(ctx.base.order)
    return inv


@functools.lru_cache(maxsize=None)
def _orbits_cached(q, d):
    return _orbit_data(q, d)


def irreducibles(q, d):
    """Sorted monic irreducibles of degree d over F_q other than t."""
    _, polys = _orbits_cached(q, d)
    return [tuple(int(c) for c in row) for row in polys]


def place_set(q, a):
    """All places of degree dividing ``a``, sorted by (degree, polynomial)."""
    ctx_a = extension(q, a)
    if ctx_a.order > TABLE_CAP:
        raise SizeCapExceeded(f"F_{q}^{a} exceeds the enumeration cap")
    out = []
    counts = {}
    for d in divisors(a):
        ctx_d = extension(q, d)
        betas, polys = _orbits_cached(q, d)
        emb = embedding_map(ctx_d, ctx_a)
        counts[d] = len(betas)
        for b, row in zip(betas, polys):
            out.append(Place(tuple(int(c) for c in row), d, ctx_d(int(b)),
                             ctx_a(int(emb[b]))))
    return PlaceSet(q, a, tuple(out), counts)


# -- independent route: product sieve ------------------------------------------

def _poly_mul_fq(f, g, add, mul):
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = add(out[i + j], mul(x, y))
    return tuple(out)


def irreducibles_sieve(q, d, cap=10**6):
    """Monic irreducibles of degree d over F_q (excluding t) by sieving.

    Every monic of degree d that is a product of two monics of positive
    degree is marked reducible; the survivors are irreducible.
    """
    base = extension(q, 1)
    if q**d > cap:
        raise SizeCapExceeded(f"q^d = {q**d} exceeds the sieve cap {cap}")
    t = base.tables

    def add(x, y):
        return int(t.add(x, y))

    def mul(x, y):
        return int(t.mul(x, y))

    def monics(k):
        for code in range(q**k):
            yield tuple((code // q**i) % q for i in range(k)) + (1,)

    reducible = set()
    for i in range(1, d // 2 + 1):
        for f in monics(i):
            for g in monics(d - i):
                reducible.add(_poly_mul_fq(f, g, add, mul))
    out = [f for f in monics(d) if f not in reducible and f != (0, 1)]
    return sorted(out, key=lambda f: f[::-1])
