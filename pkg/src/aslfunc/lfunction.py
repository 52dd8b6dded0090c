"""The explicit L-polynomial of E_{a,gamma}, its rank and special value.

Each place v of degree d contributes

    (1 - q^d T^d) (1 - (Kln^2 - 2 q^d) T^d + q^(2d) T^(2d))

with Kln = Kln_gamma(v) an exact element of Z[zeta_p].  The product is taken
in Z[zeta_p][T] by a balanced tree of Kronecker-substituted big-integer
products, and reduced to Z[T] once at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .cyclotomic import CycNum
from .errors import FunctionalEquationViolated, MismatchAt, NotRationalInteger
from .kloosterman import place_values

# -- polynomials over Z[zeta_p] as lists of coordinate lists --------------------


def _bits(poly):
    return max((abs(c).bit_length() for row in poly for c in row), default=0)


def _encode(poly, width, B):
    """Pack signed slots c_{k,j} at position k*width + j into one integer."""
    nbytes = B // 8
    half = 1 << (B - 1)
    buf = bytearray()
    pad = half.to_bytes(nbytes, "little")
    for row in poly:
        for c in row:
            buf += (c + half).to_bytes(nbytes, "little")
        buf += pad * (width - len(row))
    n = len(poly) * width
    offset = int.from_bytes(pad * n, "little")
    return gmpy2.mpz(int.from_bytes(bytes(buf), "little") - offset)


def _decode(value, npos, B):
    nbytes = B // 8
    half = 1 << (B - 1)
    offset = gmpy2.mpz(int.from_bytes(half.to_bytes(nbytes, "little") * npos, "little"))
    raw = (value + offset).to_bytes(npos * nbytes, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
            for i in range(npos)]


def _fold(slots, p):
    """Reduce zeta^j, j <= 2p-4, to the canonical basis of length p-1."""
    c = list(slots) + [0] * max(0, p - len(slots))
    for j in range(len(c) - 1, p - 1, -1):
        c[j - p] += c[j]
    top = c[p - 1]
    return [x - top for x in c[:p - 1]]


def poly_mul(f, g, p):
    """Product of two polynomials in T with coefficients in Z[zeta_p]."""
    width = 2 * p - 3
    minlen = min(len(f), len(g))
    bound = _bits(f) + _bits(g) + (minlen * (p - 1)).bit_length() + 2
    B = 8 * ((bound + 7) // 8)
    prod = _encode(f, width, B) * _encode(g, width, B)
    n = len(f) + len(g) - 1
    slots = _decode(prod, n * width, B)
    return [_fold(slots[k * width:(k + 1) * width], p) for k in range(n)]


def _local_factor(kln, d, q, p):
    """(1 - q^d T^d)(1 - (Kln^2 - 2q^d) T^d + q^(2d) T^(2d)) as a coefficient list."""
    qd = q**d
    u = kln * kln - 2 * qd
    zero = [0] * (p - 1)
    out = [list(zero) for _ in range(3 * d + 1)]
    out[0][0] = 1
    out[d] = list((-(u + qd)).coords)
    out[2 * d] = list((u * qd + qd * qd).coords)
    out[3 * d][0] = -qd**3
    return out


def _is_totally_real(poly, p):
    return all(CycNum(p, row).conj_bar() == CycNum(p, row) for row in poly)


def product_tree(factors, p, debug=False):
    layer = list(factors)
    if not layer:
        return [[1] + [0] * (p - 2)]
    while len(layer) > 1:
        nxt = []
        for i in range(0, len(layer) - 1, 2):
            prod = poly_mul(layer[i], layer[i + 1], p)
            if debug and not _is_totally_real(prod, p):
                raise NotRationalInteger(prod[0], "partial product is not totally real")
            nxt.append(prod)
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


# -- the L-polynomial -------------------------------------------------------------

@dataclass(frozen=True)
class LPoly:
    q: int
    a: int
    gamma: int
    coeffs: tuple

    @property
    def b(self):
        return len(self.coeffs) - 1

    def to_json(self):
        return {"q": self.q, "a": self.a, "gamma": self.gamma,
                "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["q"], obj["a"], obj["gamma"], tuple(int(c) for c in obj["coeffs"]))

    def evaluate(self, T):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * T + c
        return acc


def l_polynomial(params, char=1, embedding=1, debug=False):
    """Assemble L(E_{a,gamma}, T) from the place-wise Kloosterman sums."""
    q, p = params.q, params.p
    ps, values = place_values(q, params.a, params.gamma, char, embedding)
    factors = [_local_factor(kv.value, v.degree, q, p) for v, kv in zip(ps.places, values)]
    prod = product_tree(factors, p, debug=debug)
    coeffs = tuple(CycNum(p, row).to_rational_integer() for row in prod)
    expected = params.b
    if len(coeffs) - 1 != expected:
        raise AssertionError(f"degree {len(coeffs) - 1} differs from 3(q^a - 1) = {expected}")
    return LPoly(q, params.a, params.gamma, coeffs)


def divide_out(coeffs, q):
    """Divide by (1 - qT) as often as exactly possible; returns (count, quotient)."""
    coeffs = list(coeffs)
    rho = 0
    while len(coeffs) > 1:
        quo = [coeffs[0]]
        for c in coeffs[1:-1]:
            quo.append(c + q * quo[-1])
        if coeffs[-1] + q * quo[-1] != 0:
            break
        coeffs = quo
        rho += 1
    return rho, coeffs


def analytic_rank(L):
    return divide_out(L.coeffs, L.q)[0]


def verify_functional_equation(L):
    """The sign eps with c_{b-k} q^(2k) = eps q^b c_k for all k."""
    c, q, b = L.coeffs, L.q, L.b
    qb = q**b
    for eps in (1, -1):
        if all(c[b - k] * q ** (2 * k) == eps * qb * c[k] for k in range(b + 1)):
            return eps
    raise FunctionalEquationViolated(f"no sign eps fits the coefficients (q={q}, b={b})")


def log_series(L, n_max):
    """S_1..S_n_max with log L(T) = sum S_n T^n / n (Newton's identities)."""
    c = list(L.coeffs) + [0] * max(0, n_max + 1 - len(L.coeffs))
    S = [0]
    for n in range(1, n_max + 1):
        S.append(n * c[n] - sum(S[k] * c[n - k] for k in range(1, n)))
    return S[1:]


@dataclass(frozen=True)
class SeriesReport:
    n_max: int
    rows: tuple        # (n, from L, from point counts)

    @property
    def ok(self):
        return all(a == b for _, a, b in self.rows)


def verify_series(params, L, n_max, work_limit=None):
    from .curve import WORK_LIMIT, dirichlet_coefficient
    limit = WORK_LIMIT if work_limit is None else work_limit
    rows = []
    series = log_series(L, n_max)
    for n in range(1, n_max + 1):
        s_pts = dirichlet_coefficient(params, n, work_limit=limit)
        s_l = series[n - 1]
        if s_l != s_pts:
            raise MismatchAt(n, s_l, s_pts)
        rows.append((n, s_l, s_pts))
    return SeriesReport(n_max, tuple(rows))


# -- special value ---------------------------------------------------------------

@dataclass(frozen=True)
class SpecialValueReport:
    rank: int
    special_value: Fraction
    float_value: float
    log_value: float        # natural log of L*
    b: int
    log_ratio: float
    sign: int

    def as_dict(self):
        return {"rank": self.rank,
                "special_value": f"{self.special_value.numerator}/{self.special_value.denominator}",
                "special_value_float": self.float_value,
                "log10_special_value": self.log_value / math.log(10),
                "b": self.b, "log_ratio": self.log_ratio, "sign": self.sign}


def _log_fraction(x):
    return math.log(x.numerator) - math.log(x.denominator)


def special_value_division(L, rho=None):
    """Route (a): L(T)/(1 - qT)^rho evaluated at T = 1/q."""
    r, quo = divide_out(L.coeffs, L.q)
    if rho is not None and r != rho:
        raise ArithmeticError(f"(1 - qT) divides L exactly {r} times, expected {rho}")
    m = len(quo) - 1
    num = sum(c * L.q ** (m - k) for k, c in enumerate(quo))
    return Fraction(num, L.q**m)


def special_value_product(params, char=1, embedding=1):
    """Route (b): prod over places of d_v (4 q^d - Kln^2) / q^d, in Z[zeta_p]."""
    q, p = params.q, params.p
    ps, values = place_values(q, params.a, params.gamma, char, embedding)
    layer = []
    total_deg = 0
    for v, kv in zip(ps.places, values):
        d = v.degree
        total_deg += d
        layer.append((4 * q**d - kv.value * kv.value) * d)
    while len(layer) > 1:
        layer = [layer[i] * layer[i + 1] if i + 1 < len(layer) else layer[i]
                 for i in range(0, len(layer), 2)]
    num = layer[0].to_rational_integer()
    return Fraction(num, q**total_deg)


def special_value(params, L=None, char=1):
    """Both routes, asserted equal; returns a :class:`SpecialValueReport`."""
    if L is None:
        L = l_polynomial(params, char=char)
    ps, _ = place_values(params.q, params.a, params.gamma, char, 1)
    rho = analytic_rank(L)
    via_division = special_value_division(L, rho)
    via_product = special_value_product(params, char)
    if via_division != via_product:
        raise ArithmeticError(f"special value routes disagree: {via_division} != {via_product}")
    logv = _log_fraction(via_division)
    try:
        fv = float(via_division)
    except OverflowError:
        fv = math.inf
    ratio = logv / (L.b * math.log(L.q))
    return SpecialValueReport(rho, via_division, fv, logv, L.b, ratio,
                              verify_functional_equation(L))
