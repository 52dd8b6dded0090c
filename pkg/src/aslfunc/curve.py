"""The curve E_{a,gamma}: y^2 = x(x + 16 gamma)(x + wp_a(t)^2), and point counting.

Everything here is computed without Kloosterman sums: Frobenius traces come
from quadratic-character sums over the fibre, and S_n = sum over P^1(F_{q^n})
of A(tau).  This is the independent side against which the explicit
L-polynomial is checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cyclotomic import CycNum
from .errors import SizeCapExceeded, WorkLimitExceeded, ZeroParameter
from .field import FFElem, embedding_map, extension
from .fqpoly import FqPolyRing
from .places import place_set

WORK_LIMIT = 10**8
FACTOR_CAP = 243
CHUNK = 1 << 19


@dataclass(frozen=True)
class CurveParams:
    q: int
    a: int
    gamma: int          # index of gamma in F_q, nonzero

    def __post_init__(self):
        p, e = extension(self.q, 1).p, extension(self.q, 1).e
        if self.a < 1:
            raise ValueError("a must be positive")
        if not 0 < self.gamma < self.q:
            raise ZeroParameter("gamma must be a nonzero element of F_q")
        object.__setattr__(self, "_pe", (p, e))

    @property
    def p(self):
        return self._pe[0]

    @property
    def e(self):
        return self._pe[1]

    @property
    def b(self):
        return 3 * (self.q**self.a - 1)


def _gamma16(ctx, gamma):
    t = ctx.tables
    g = int(embedding_map(ctx.base, ctx)[gamma])
    return int(t.mul_scalar(np.array([g]), 16 % ctx.p)[0])


def wp_values(ctx, a, taus=None):
    """wp_a(tau) = tau^(q^a) - tau for an index array over ``ctx``."""
    t = ctx.tables
    if taus is None:
        taus = np.arange(t.Q, dtype=np.int64)
    return t.sub(t.power(taus, ctx.q**a), taus)


def _lambda_sums(ctx, gamma16, ws, work_limit):
    """A(w) = -sum_x lambda(x (x + 16 gamma)(x + w)) for each w in ``ws``."""
    t = ctx.tables
    xs = np.arange(t.Q, dtype=np.int64)
    if len(ws) * t.Q > work_limit:
        raise WorkLimitExceeded(f"{len(ws)} x {t.Q} character evaluations exceed {work_limit}")
    lam1 = t.lam[t.mul(xs, t.add_scalar(xs, gamma16))]
    dx = t.digits[xs]
    out = np.empty(len(ws), dtype=np.int64)
    rows = max(1, CHUNK // t.Q)
    for s in range(0, len(ws), rows):
        w = ws[s:s + rows]
        shifted = ((dx[None, :, :] + t.digits[w][:, None, :]) % t.p) @ t.weights
        out[s:s + rows] = -(t.lam[shifted] * lam1[None, :]).sum(axis=1)
    return out


def frobenius_trace(params, tau, n=None, work_limit=WORK_LIMIT):
    """A_{a,gamma}(tau, q^n); ``tau`` is an FFElem of F_{q^n} or None for infinity."""
    if tau is None or tau == "inf":
        return 1
    ctx = tau.ctx
    if n is not None and ctx.k != n:
        raise ValueError("tau does not lie in F_{q^n}")
    if ctx.order > work_limit:
        raise WorkLimitExceeded(f"|F| = {ctx.order} exceeds the work limit")
    g16 = _gamma16(ctx, params.gamma)
    wp = wp_values(ctx, params.a, np.array([tau.index]))
    w = ctx.tables.mul(wp, wp)
    return int(_lambda_sums(ctx, g16, w, work_limit)[0])


def dirichlet_coefficient(params, n, work_limit=WORK_LIMIT):
    """S_n = sum of A(tau, q^n) over tau in P^1(F_{q^n}), by point counting."""
    q = params.q
    if q ** (2 * n) > work_limit:
        raise WorkLimitExceeded(f"q^(2n) = {q ** (2 * n)} exceeds the work limit {work_limit}")
    ctx = extension(q, n)
    t = ctx.tables
    wp = wp_values(ctx, params.a)
    ws, mult = np.unique(t.mul(wp, wp), return_counts=True)
    A = _lambda_sums(ctx, _gamma16(ctx, params.gamma), ws, work_limit)
    return 1 + int((A * mult).sum())


def naive_point_count(params, tau):
    """#E_tau(F) including the point at infinity, by listing (x, y) pairs."""
    ctx = tau.ctx
    t = ctx.tables
    xs = np.arange(t.Q, dtype=np.int64)
    wp = wp_values(ctx, params.a, np.array([tau.index]))
    w = int(t.mul(wp, wp)[0])
    g16 = _gamma16(ctx, params.gamma)
    rhs = t.mul(t.mul(xs, t.add_scalar(xs, g16)), t.add_scalar(xs, w))
    squares = np.bincount(t.mul(xs, xs), minlength=t.Q)
    return 1 + int(squares[rhs].sum())


def series_from_kloosterman(params, n, char=1):
    """-sum over beta in F_{q^b}^x (b = gcd(a, n)) of (Kl_{q^n}(gamma beta^2)^2 - q^n)."""
    from .kloosterman import kloosterman_batch
    q = params.q
    b = math.gcd(params.a, n)
    ctx = extension(q, n)
    sub = extension(q, b)
    t = ctx.tables
    betas = embedding_map(sub, ctx)[1:]
    g = int(embedding_map(ctx.base, ctx)[params.gamma])
    alphas = t.mul_scalar(t.mul(betas, betas), g)
    total = CycNum.from_int(ctx.p, 0)
    for kl in kloosterman_batch(ctx, alphas, char):
        total = total + kl * kl - ctx.order
    return -total.to_rational_integer()


def m_sum(ctx, beta, gamma, char=1, work_limit=WORK_LIMIT):
    """M_F(beta, gamma) = sum_x sum_z lambda(x (x + 16 gamma)(x + z^2)) psi(beta z)."""
    from .kloosterman import _char_scalar
    t = ctx.tables
    if t.Q * t.Q > work_limit:
        raise WorkLimitExceeded(f"|F|^2 = {t.Q**2} exceeds the work limit")
    if isinstance(gamma, FFElem):
        gamma = gamma.index
    if not 0 < int(gamma) < ctx.q:
        raise ZeroParameter("gamma must be a nonzero element of F_q")
    beta = beta.index if isinstance(beta, FFElem) else int(beta)
    zs = np.arange(t.Q, dtype=np.int64)
    inner = -_lambda_sums(ctx, _gamma16(ctx, int(gamma)), t.mul(zs, zs), work_limit)
    c = _char_scalar(ctx, char)
    arg = t.mul_scalar(t.mul_scalar(zs, beta), c)
    counts = np.bincount(t.trace[arg], weights=inner, minlength=t.p)
    return CycNum.from_counts(ctx.p, np.rint(counts).astype(np.int64))


def artin_schreier_count(ctx, z, a, char=1):
    """Both sides of the counting lemma for wp_a(tau) = z over F = ctx.

    Returns (#{tau in F : wp_a(tau) = z}, sum over beta in F_{q^a} cap F of psi_F(beta z)).
    """
    from .kloosterman import _char_scalar
    t = ctx.tables
    z = z.index if isinstance(z, FFElem) else int(z)
    count = int((wp_values(ctx, a) == z).sum())
    b = math.gcd(a, ctx.k)
    betas = embedding_map(extension(ctx.q, b), ctx)
    arg = t.mul_scalar(t.mul_scalar(betas, z), _char_scalar(ctx, char))
    value = CycNum.from_counts(ctx.p, np.bincount(t.trace[arg], minlength=t.p))
    return count, value.to_rational_integer()


# -- discriminant and reduction data -------------------------------------------

def _sparse_ops(base):
    t = base.tables

    def add(f, g):
        out = dict(f)
        for k, c in g.items():
            s = int(t.add(out.get(k, 0), c))
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def mul(f, g):
        out = {}
        for i, a in f.items():
            for j, b in g.items():
                out = add(out, {i + j: int(t.mul(a, b))})
        return out

    def scale(f, c):
        return {k: int(t.mul(v, c)) for k, v in f.items() if int(t.mul(v, c))}

    return add, mul, scale


def discriminant_weierstrass(params):
    """Discriminant of the model from the general b2, b4, b6, b8 formula (sparse)."""
    base = extension(params.q, 1)
    add, mul, scale = _sparse_ops(base)
    p = base.p
    Q = params.q**params.a
    wp = add({Q: 1}, {1: p - 1})
    wp2 = mul(wp, wp)
    g16 = {0: _gamma16(base, params.gamma)}
    a2 = add(g16, wp2)
    a4 = mul(g16, wp2)
    # a1 = a3 = a6 = 0: b2 = 4 a2, b4 = 2 a4, b6 = 0, b8 = -a4^2
    b2 = scale(a2, 4 % p)
    b4 = scale(a4, 2 % p)
    b8 = scale(mul(a4, a4), p - 1)
    term1 = scale(mul(mul(b2, b2), b8), p - 1)
    term2 = scale(mul(mul(b4, b4), b4), (-8) % p)
    return add(term1, term2)


def discriminant_closed_form(params):
    """2^12 gamma^2 wp^4 (wp^2 - 16 gamma)^2 (sparse)."""
    base = extension(params.q, 1)
    add, mul, scale = _sparse_ops(base)
    p = base.p
    Q = params.q**params.a
    wp = add({Q: 1}, {1: p - 1})
    wp2 = mul(wp, wp)
    g = params.gamma
    h = add(wp2, {0: int(base.tables.neg(np.array([_gamma16(base, g)]))[0])})
    lead = int(base.tables.mul_scalar(base.tables.mul(np.array([g]), np.array([g])), pow(2, 12, p))[0])
    return scale(mul(mul(wp2, wp2), mul(h, h)), lead)


@dataclass
class ReductionReport:
    params: CurveParams
    disc: dict
    deg_disc_min: int
    deg_conductor: int
    b: int
    height_exponent: int
    wp_squarefree: bool
    h_squarefree: bool
    wp_factors: list = field(default_factory=list)
    h_factors: list | None = None
    valuations: dict = field(default_factory=dict)


def reduction_report(params, factor_cap=FACTOR_CAP):
    """Discriminant, squarefreeness, valuations and global degrees of E_{a,gamma}.

    ``wp_a`` is factored through the place enumeration (t times all places
    of degree dividing a); ``wp_a^2 - 16 gamma`` is factored only when
    q^a <= factor_cap, otherwise ``h_factors`` is None.
    """
    q, a = params.q, params.a
    Q = q**a
    if Q > 2 * 10**6:
        raise SizeCapExceeded(f"q^a = {Q} exceeds the enumeration cap")
    R = FqPolyRing(q)
    base = R.ctx
    p = base.p
    disc = discriminant_closed_form(params)
    wp = R.from_sparse({Q: 1, 1: p - 1})
    g16 = _gamma16(base, params.gamma)
    h = R.sub(R.mul(wp, wp), R.const(g16))
    wp_sf = R.is_squarefree(wp)
    h_sf = R.is_squarefree(h)

    wp_factors = [(0, 1)] + [v.poly for v in place_set(q, a)]
    h_factors = R.factor_squarefree(h) if Q <= factor_cap else None

    valuations = {}
    if Q <= factor_cap:
        dense = R.from_sparse(disc)
        for f in wp_factors + h_factors:
            fa = np.array(f, dtype=np.int64)
            k, rem = 0, dense
            while True:
                quo, r = R.divmod(rem, fa)
                if len(r):
                    break
                k, rem = k + 1, quo
            valuations[f] = k
    else:
        valuations = {f: 4 for f in wp_factors}

    deg_wp = sum(len(f) - 1 for f in wp_factors)
    deg_h = R.deg(h)
    # finite bad places (I_4 over wp, I_2 over wp^2 - 16 gamma) plus I_{4q^a} at infinity
    deg_disc_min = 4 * deg_wp + 2 * deg_h + 4 * Q
    deg_conductor = deg_wp + deg_h + 1
    return ReductionReport(params, disc, deg_disc_min, deg_conductor, deg_conductor - 4,
                           deg_disc_min // 12, wp_sf, h_sf, wp_factors, h_factors, valuations)
