"""Exact arithmetic in Z[zeta_p] and Q(zeta_p).

Elements are stored on the power basis 1, zeta, ..., zeta^(p-2).  Internally
products are formed on the redundant basis 1, ..., zeta^(p-1) (so that
multiplication is a cyclic convolution) and folded back by subtracting the
top coefficient, using 1 + zeta + ... + zeta^(p-1) = 0.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .errors import NotRationalInteger


class CycNum:
    """An element sum_j c_j zeta_p^j, j = 0..p-2, with int or Fraction coords."""

    __slots__ = ("p", "coords")

    def __init__(self, p, coords):
        coords = tuple(coords)
        if len(coords) == p:
            top = coords[-1]
            coords = tuple(c - top for c in coords[:-1])
        elif len(coords) < p - 1:
            coords = coords + (0,) * (p - 1 - len(coords))
        elif len(coords) != p - 1:
            raise ValueError(f"expected at most {p} coordinates, got {len(coords)}")
        self.p = p
        self.coords = coords

    @classmethod
    def from_int(cls, p, n):
        return cls(p, (n,))

    @classmethod
    def zeta_power(cls, p, t):
        full = [0] * p
        full[t % p] = 1
        return cls(p, full)

    @classmethod
    def from_counts(cls, p, counts):
        """sum_t counts[t] zeta^t for a length-p sequence of integers."""
        return cls(p, [int(c) for c in counts])

    def _full(self):
        return list(self.coords) + [0]

    def _lift(self, other):
        if isinstance(other, CycNum):
            if other.p != self.p:
                raise ValueError("cyclotomic numbers for different primes")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum(self.p, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return CycNum(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.p, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return CycNum(self.p, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.p, tuple(a * other for a in self.coords))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = [0] * p
        b = other.coords
        for i, x in enumerate(self.coords):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[(i + j) % p] += x * y
        return CycNum(p, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.p, tuple(Fraction(a) / other for a in self.coords))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        # x / y = x * (prod of the other conjugates of y) / N(y)
        co = CycNum.from_int(self.p, 1)
        for j in range(2, self.p):
            co = co * other.galois(j)
        n = (other * co).to_rational()
        return (self * co) / n

    def __pow__(self, n):
        if n < 0:
            return CycNum.from_int(self.p, 1) / self ** (-n)
        result = CycNum.from_int(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum(self.p, (other,))
        return isinstance(other, CycNum) and other.p == self.p and other.coords == self.coords

    def __hash__(self):
        return hash((self.p, self.coords))

    def __repr__(self):
        return f"CycNum(p={self.p}, {list(self.coords)})"

    def is_zero(self):
        return not any(self.coords)

    def galois(self, j):
        """Image under zeta -> zeta^j, j prime to p."""
        p = self.p
        if j % p == 0:
            raise ValueError("j must be prime to p")
        out = [0] * p
        for i, c in enumerate(self.coords):
            out[(i * j) % p] += c
        return CycNum(p, out)

    def conj_bar(self):
        return self.galois(-1)

    def is_rational(self):
        return not any(self.coords[1:])

    def to_rational(self):
        if not self.is_rational():
            raise NotRationalInteger(self.coords)
        return Fraction(self.coords[0])

    def to_rational_integer(self):
        if not self.is_rational():
            raise NotRationalInteger(self.coords)
        c = self.coords[0]
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise NotRationalInteger(self.coords, "rational but not an integer")
            c = c.numerator
        return int(c)

    def embed_complex(self, j=1):
        """Value under zeta -> exp(2 pi i j / p), in double precision."""
        p = self.p
        w = [cmath.exp(2j * math.pi * ((i * j) % p) / p) for i in range(p - 1)]
        return complex(sum(float(c) * z for c, z in zip(self.coords, w)))

    def embed_real(self, j=1):
        return self.embed_complex(j).real

    def norm(self):
        """Exact field norm N_{Q(zeta)/Q}, the product of all conjugates."""
        acc = CycNum.from_int(self.p, 1)
        for j in range(1, self.p):
            acc = acc * self.galois(j)
        return acc.to_rational()


def character_value(t, p=None):
    """psi(t) = zeta_p^t for t in F_p (an FFElem of a prime field or an int)."""
    if p is None:
        ctx = t.ctx
        if ctx.m != 1:
            raise ValueError("character_value expects an element of the prime field")
        p, t = ctx.p, t.coords[0]
    return CycNum.zeta_power(p, int(t))
