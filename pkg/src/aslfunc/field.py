"""Finite fields F_{p^m} in power-basis coordinates.

A field is ``F_p[X]/(f)`` with ``f`` the smallest monic irreducible of
degree ``m`` over F_p, where "smallest" means smallest integer code
``c_0 + c_1 p + ... + c_{m-1} p^{m-1}`` (equivalently, lexicographic order
on the coefficient vector read from the top).  An element is a tuple of
``m`` residues and its *index* is the same base-``p`` code; indices give the
fixed enumeration order of the field used throughout the package.

A :class:`FieldCtx` for ``(p, e, k)`` describes F_{q^k} with ``q = p^e``;
contexts with the same ``p`` and ``e*k`` share the modulus.

Scalar elements (:class:`FFElem`) use schoolbook arithmetic.  Bulk work
(character sums over a whole field) goes through :class:`FieldTables`,
numpy log/antilog and trace tables over element indices.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from functools import cached_property

import gmpy2
import numpy as np

from .errors import (ContextMismatch, EvenCharacteristic, NotASubfield,
                     NotPrime, SizeCapExceeded)

SIZE_CAP = 2**40
TABLE_CAP = 2**21


def prime_factors(n):
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p, coefficient lists low -> high -------------------

def _strip(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _strip([c % p for c in out])


def _pmod(f, g, p):
    f = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        shift = len(f) - 1 - dg
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % p
        _strip(f)
    return f


def _pgcd(f, g, p):
    f, g = _strip(list(f)), _strip(list(g))
    while g:
        f, g = g, _pmod(f, g, p)
    return f


def _ppowmod(base, e, f, p):
    result = [1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible_fp(f, p):
    """Rabin's test for a monic polynomial ``f`` over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]

    def xpow(i):
        return _ppowmod(x, p**i, f, p)

    diff = _strip([(a - b) % p for a, b in zip(xpow(m) + [0] * 2, x + [0] * m)])
    if diff:
        return False
    for ell in prime_factors(m):
        h = xpow(m // ell)
        h = h + [0] * (2 - len(h)) if len(h) < 2 else list(h)
        h[1] = (h[1] - 1) % p
        if len(_pgcd(f, _strip(h), p)) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def smallest_irreducible(p, m):
    """Smallest monic irreducible of degree ``m`` over F_p (by integer code)."""
    for code in range(p**m):
        coeffs = [(code // p**i) % p for i in range(m)] + [1]
        if is_irreducible_fp(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# -- contexts and elements ---------------------------------------------------

@dataclass(frozen=True)
class FieldCtx:
    """The field F_{q^k}, q = p^e, as F_p[X]/(modulus)."""

    p: int
    e: int
    k: int
    modulus: tuple

    @property
    def m(self):
        return self.e * self.k

    @property
    def q(self):
        return self.p**self.e

    @property
    def order(self):
        return self.p**self.m

    @cached_property
    def base(self):
        return make_field(self.p, self.e, 1)

    @cached_property
    def _reduction(self):
        # rows[i] = coords of X^(m+i) mod modulus
        m, p = self.m, self.p
        low = [(-c) % p for c in self.modulus[:m]]
        rows = [low]
        for _ in range(m - 2):
            prev = rows[-1]
            top = prev[-1]
            nxt = [0] + prev[:-1]
            rows.append([(a + top * b) % p for a, b in zip(nxt, low)])
        return rows

    def reduce(self, poly):
        """Reduce an integer coefficient list modulo the field modulus."""
        m, p = self.m, self.p
        out = [c % p for c in poly[:m]] + [0] * max(0, m - len(poly))
        for i, c in enumerate(poly[m:]):
            c %= p
            if c:
                for j, r in enumerate(self._reduction[i] if i < len(self._reduction)
                                      else self._xpow_row(m + i)):
                    out[j] = (out[j] + c * r) % p
        return tuple(out)

    def _xpow_row(self, n):
        return list((self.gen ** n).coords)

    def __call__(self, value):
        if isinstance(value, FFElem):
            if value.ctx != self:
                raise ContextMismatch("element belongs to another field")
            return value
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if not 0 <= value < self.order:
                raise ValueError(f"index {value} out of range for field of size {self.order}")
            p = self.p
            coords = []
            for _ in range(self.m):
                value, r = divmod(value, p)
                coords.append(r)
            return FFElem(self, tuple(coords))
        return FFElem(self, self.reduce(list(value)))

    @cached_property
    def zero(self):
        return FFElem(self, (0,) * self.m)

    @cached_property
    def one(self):
        return self.from_prime(1)

    @cached_property
    def gen(self):
        """The class of X."""
        return FFElem(self, self.reduce([0, 1]))

    def from_prime(self, c):
        return FFElem(self, (c % self.p,) + (0,) * (self.m - 1))

    def elements(self):
        if self.order > SIZE_CAP:
            raise SizeCapExceeded(f"field of size {self.order} is too large to enumerate")
        for i in range(self.order):
            yield self(i)

    @property
    def tables(self):
        if self.order > TABLE_CAP:
            raise SizeCapExceeded(
                f"field of size {self.order} exceeds the table cap {TABLE_CAP}")
        return _tables(self.p, self.e, self.k, self.modulus)

    def __repr__(self):
        return f"FieldCtx(F_{self.q}^{self.k}, modulus={self.modulus})"


class FFElem:
    """An element of a :class:`FieldCtx`; immutable."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx, coords):
        self.ctx = ctx
        self.coords = coords

    @property
    def index(self):
        p = self.ctx.p
        out = 0
        for c in reversed(self.coords):
            out = out * p + c
        return out

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.ctx != self.ctx:
                raise ContextMismatch("elements from different fields")
            return other
        if isinstance(other, int):
            return self.ctx.from_prime(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FFElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FFElem(self.ctx, tuple((-a) % p for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.ctx.p
            return FFElem(self.ctx, tuple(a * other % p for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coords, other.coords
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return FFElem(self.ctx, self.ctx.reduce(prod))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.ctx.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def frobenius(self, j=1):
        """x -> x^(q^j), q the base field size."""
        return self ** (self.ctx.q ** j)

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_prime(other)
        return isinstance(other, FFElem) and other.ctx == self.ctx and other.coords == self.coords

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.modulus, self.coords))

    def __repr__(self):
        return f"FFElem({self.index} in F_{self.ctx.order})"


def make_field(p, e=1, k=1, size_cap=SIZE_CAP):
    """Context for F_{q^k} with q = p^e and the canonical modulus."""
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if p < 2 or not gmpy2.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1 or k < 1:
        raise ValueError("degrees must be positive")
    if p ** (e * k) > size_cap:
        raise SizeCapExceeded(f"{p}^{e * k} exceeds the size cap {size_cap}")
    return _make_field(p, e, k)


@functools.lru_cache(maxsize=None)
def _make_field(p, e, k):
    return FieldCtx(p, e, k, smallest_irreducible(p, e * k))


# -- bulk tables ---------------------------------------------------------------

class FieldTables:
    """Numpy tables over element indices of one field.

    ``log``/``exp`` are taken with respect to ``generator``, the smallest
    primitive element in enumeration order; ``log[0]`` is -1.
    """

    def __init__(self, ctx):
        self.ctx = ctx
        p, m = ctx.p, ctx.m
        self.p, self.m = p, m
        self.Q = Q = ctx.order
        self.weights = np.array([p**i for i in range(m)], dtype=np.int64)
        idx = np.arange(Q, dtype=np.int64)
        self.digits = ((idx[:, None] // self.weights) % p).astype(np.int64)

        self.generator = self._find_generator()
        self.exp = self._exp_table(self.generator)
        self.log = np.full(Q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(Q - 1, dtype=np.int64)

        tr_basis = np.array([_abs_trace_scalar(ctx.gen ** i) for i in range(m)], dtype=np.int64)
        self.trace = (self.digits @ tr_basis) % p
        self.lam = np.where(self.log % 2 == 0, 1, -1).astype(np.int64)
        self.lam[0] = 0
        self.nonzero = np.arange(1, Q, dtype=np.int64)

    def _find_generator(self):
        ctx = self.ctx
        n = self.Q - 1
        cofactors = [n // ell for ell in prime_factors(n)]
        for i in range(1, self.Q):
            g = ctx(i)
            if all(g ** c != ctx.one for c in cofactors):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    def _mult_matrix(self, a):
        ctx = self.ctx
        cols = [(a * ctx.gen ** j).coords for j in range(self.m)]
        return np.array(cols, dtype=np.int64)  # row j = a*X^j

    def _exp_table(self, g):
        p, n = self.p, self.Q - 1
        powers = np.zeros((n, self.m), dtype=np.int64)
        powers[0] = self.ctx.one.coords
        filled = 1
        step = g
        while filled < n:
            block = (powers[:filled] @ self._mult_matrix(step)) % p
            take = min(filled, n - filled)
            powers[filled:filled + take] = block[:take]
            filled += take
            step = step * step
        return powers @ self.weights

    # vectorised arithmetic on index arrays
    def to_index(self, digits):
        return (digits % self.p) @ self.weights

    def add(self, a, b):
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.weights

    def neg(self, a):
        return ((-self.digits[a]) % self.p) @ self.weights

    def sub(self, a, b):
        return ((self.digits[a] - self.digits[b]) % self.p) @ self.weights

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % (self.Q - 1)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def inv(self, a):
        la = self.log[a]
        if np.any(la < 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-la) % (self.Q - 1)]

    def power(self, a, n):
        a = np.asarray(a, dtype=np.int64)
        la = self.log[a]
        out = self.exp[(la * (n % (self.Q - 1))) % (self.Q - 1)]
        if n == 0:
            return np.ones_like(a)
        return np.where(la < 0, 0, out)

    def frobenius(self, a, j=1):
        """x -> x^(q^j) on an index array, q the base field size."""
        return self.power(a, pow(self.ctx.q, j, self.Q - 1) or (self.Q - 1))

    def mul_scalar(self, a, c):
        """Multiply an index array by the single element ``c`` (an index)."""
        if c == 0:
            return np.zeros_like(np.asarray(a))
        a = np.asarray(a, dtype=np.int64)
        la = self.log[a]
        out = self.exp[(la + self.log[c]) % (self.Q - 1)]
        return np.where(la < 0, 0, out)

    def add_scalar(self, a, c):
        return ((self.digits[a] + self.digits[c]) % self.p) @ self.weights


@functools.lru_cache(maxsize=None)
def _tables(p, e, k, modulus):
    return FieldTables(FieldCtx(p, e, k, modulus))


def _abs_trace_scalar(x):
    """Tr_{F/F_p}(x) as an integer in [0, p)."""
    ctx = x.ctx
    acc = ctx.zero
    y = x
    for _ in range(ctx.m):
        acc = acc + y
        y = y ** ctx.p
    assert not any(acc.coords[1:])
    return acc.coords[0]


def absolute_trace(x):
    return _abs_trace_scalar(x)


# -- embeddings ---------------------------------------------------------------

def _eval_at(coords, r):
    """Evaluate sum c_i X^i at the element ``r``."""
    acc = r.ctx.zero
    for c in reversed(coords):
        acc = acc * r + c
    return acc


def _roots_in(modulus, dst):
    """Indices of all roots of ``modulus`` (over F_p) in ``dst``, ascending."""
    t = dst.tables
    xs = np.arange(t.Q, dtype=np.int64)
    acc = np.zeros(t.Q, dtype=np.int64)
    for c in reversed(modulus):
        acc = t.add_scalar(t.mul(acc, xs), c % dst.p)
    return [int(i) for i in np.nonzero(acc == 0)[0]]


@functools.lru_cache(maxsize=None)
def _lattice_root(p, m, M):
    """Image (an index in F_{p^M}) of X under the chosen F_{p^m} -> F_{p^M}.

    Embeddings form a compatible system: going through any intermediate
    field gives the same map.  Maximal subfields take the smallest root that
    agrees with previously fixed maximal subfields on their intersections;
    smaller subfields factor through the smallest maximal subfield above them.
    """
    dst = make_field(p, 1, M)
    if m == M:
        return dst.gen.index
    src_mod = smallest_irreducible(p, m)
    if m == 1:
        return (-src_mod[0]) % p
    maxdivs = sorted(M // ell for ell in prime_factors(M))
    if m not in maxdivs:
        d = min(d for d in maxdivs if d % m == 0)
        inner = make_field(p, 1, d)(_lattice_root(p, m, d))
        return _eval_at(inner.coords, dst(_lattice_root(p, d, M))).index
    constraints = []
    for dprev in maxdivs:
        if dprev >= m:
            break
        g = math.gcd(m, dprev)
        if g == 1:
            continue
        via_prev = make_field(p, 1, dprev)(_lattice_root(p, g, dprev))
        target = _eval_at(via_prev.coords, dst(_lattice_root(p, dprev, M)))
        in_m = make_field(p, 1, m)(_lattice_root(p, g, m))
        constraints.append((in_m.coords, target))
    for r in _roots_in(src_mod, dst):
        rr = dst(r)
        if all(_eval_at(c, rr) == t for c, t in constraints):
            return r
    raise AssertionError("no compatible embedding")  # pragma: no cover


def _embed_root(src, dst):
    if src.p != dst.p:
        raise ContextMismatch("different characteristics")
    if dst.m % src.m:
        raise NotASubfield(f"F_{src.p}^{src.m} is not a subfield of F_{dst.p}^{dst.m}")
    canonical = (src.modulus == smallest_irreducible(src.p, src.m)
                 and dst.modulus == smallest_irreducible(dst.p, dst.m))
    if canonical:
        return dst(_lattice_root(src.p, src.m, dst.m))
    if src.m == 1:
        return dst.from_prime(-src.modulus[0])
    return dst(_roots_in(src.modulus, dst)[0])


def subfield_embed(x, target):
    """Image of ``x`` under the fixed embedding of its field into ``target``."""
    r = _embed_root(x.ctx, target)
    return _eval_at(x.coords, r)


@functools.lru_cache(maxsize=None)
def embedding_map(src, dst):
    """Array sending every index of ``src`` to the index of its image in ``dst``."""
    r = _embed_root(src, dst)
    cols = [_eval_at([0] * i + [1], r).coords for i in range(src.m)]
    R = np.array(cols, dtype=np.int64)
    idx = np.arange(src.order, dtype=np.int64)
    digits = (idx[:, None] // np.array([src.p**i for i in range(src.m)])) % src.p
    weights = np.array([dst.p**i for i in range(dst.m)], dtype=np.int64)
    return ((digits @ R) % dst.p) @ weights


@functools.lru_cache(maxsize=None)
def _preimage_dict(src, dst):
    return {int(v): i for i, v in enumerate(embedding_map(src, dst))}


def restrict_to_subfield(y, sub):
    """Inverse of :func:`subfield_embed` on its image; ``None`` if ``y`` is outside it."""
    i = _preimage_dict(sub, y.ctx).get(y.index)
    return None if i is None else sub(i)


def trace_to_base(x):
    """Tr_{F_{q^k}/F_q}(x) as an element of the base field context."""
    ctx = x.ctx
    acc = ctx.zero
    y = x
    for _ in range(ctx.k):
        acc = acc + y
        y = y ** ctx.q
    base = ctx.base
    if ctx.e == 1:
        assert not any(acc.coords[1:])
        return base.from_prime(acc.coords[0])
    out = restrict_to_subfield(acc, base)
    assert out is not None
    return out


def embed_index(c, src, dst):
    """Index-level embedding for a single element."""
    return int(embedding_map(src, dst)[c])


def prime_power(q):
    """Split ``q = p^e``; raises for non-prime-powers and for p = 2."""
    q = int(q)
    if q < 3:
        if q == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        raise NotPrime(f"{q} is not a prime power")
    p = prime_factors(q)[0] if q < 2**20 else None
    if p is None:
        p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrime(f"{q} is not a prime power")
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    return p, e


def extension(q, k=1):
    """Context for F_{q^k} from the integer ``q``."""
    p, e = prime_power(q)
    return make_field(p, e, k)
