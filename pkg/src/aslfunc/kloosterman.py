"""Kloosterman sums over finite fields, exactly in Z[zeta_p].

The additive character of a field F containing F_q is
``psi_F(x) = zeta_p^Tr_{F/F_p}(c*x)`` where ``c`` in F_q^x selects the base
character (``c = 1`` is the standard choice).  Every sum is computed by
counting how often each trace value occurs, so the result is
``sum_t N_t zeta^t`` with integer ``N_t``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .cyclotomic import CycNum
from .errors import ZeroParameter
from .field import FFElem, embedding_map, extension
from .places import place_set

CHUNK = 1 << 22


def _char_scalar(ctx, char):
    """Index in ``ctx`` of the character selector ``char`` (an F_q index)."""
    if char == 1:
        return 1
    if not 0 < char < ctx.q:
        raise ZeroParameter("character selector must be a nonzero element of F_q")
    return int(embedding_map(ctx.base, ctx)[char])


def _psi_counts(t, vals, c, weights=None):
    """Histogram over F_p of Tr(c * v) for an index array ``vals``."""
    if c != 1:
        vals = t.mul_scalar(vals, c)
    tr = t.trace[vals]
    if weights is None:
        return np.bincount(tr.ravel(), minlength=t.p)
    return np.rint(np.bincount(tr.ravel(), weights=weights.ravel(), minlength=t.p)).astype(np.int64)


def _alpha_index(ctx, alpha):
    if isinstance(alpha, FFElem):
        if alpha.ctx != ctx:
            alpha = ctx(alpha)
        alpha = alpha.index
    alpha = int(alpha)
    if alpha == 0:
        raise ZeroParameter("Kloosterman parameter must be nonzero")
    return alpha


def kloosterman_sum(ctx, alpha, char=1):
    """Kl_F(psi; alpha) = -sum_{x in F^x} psi(x + alpha/x)."""
    alpha = _alpha_index(ctx, alpha)
    t = ctx.tables
    xs = t.nonzero
    vals = t.add(xs, t.mul_scalar(t.inv(xs), alpha))
    counts = _psi_counts(t, vals, _char_scalar(ctx, char))
    return -CycNum.from_counts(ctx.p, counts)


def kloosterman_salie(ctx, alpha, char=1):
    """Salie's form -sum_y lambda(y^2 - 4 alpha) psi(y)."""
    alpha = _alpha_index(ctx, alpha)
    t = ctx.tables
    ys = np.arange(t.Q, dtype=np.int64)
    four_alpha = t.mul_scalar(np.array([alpha]), 4 % ctx.p)[0]
    arg = t.sub(t.mul(ys, ys), np.full(t.Q, four_alpha))
    counts = _psi_counts(t, ys, _char_scalar(ctx, char), weights=t.lam[arg])
    return -CycNum.from_counts(ctx.p, counts)


def kloosterman_batch(ctx, alphas, char=1):
    """Kloosterman sums for many parameters at once (list of CycNum)."""
    t = ctx.tables
    alphas = np.asarray(alphas, dtype=np.int64)
    if np.any(alphas == 0):
        raise ZeroParameter("Kloosterman parameter must be nonzero")
    xs = t.nonzero
    xinv_log = t.log[t.inv(xs)]
    c = _char_scalar(ctx, char)
    rows = max(1, CHUNK // len(xs))
    out = []
    for start in range(0, len(alphas), rows):
        block = alphas[start:start + rows]
        prod = t.exp[(xinv_log[None, :] + t.log[block][:, None]) % (t.Q - 1)]
        vals = t.add(np.broadcast_to(xs, prod.shape), prod)
        if c != 1:
            vals = t.mul_scalar(vals, c)
        tr = t.trace[vals] + t.p * np.arange(len(block))[:, None]
        counts = np.bincount(tr.ravel(), minlength=t.p * len(block)).reshape(len(block), t.p)
        out.extend(-CycNum.from_counts(ctx.p, row) for row in counts)
    return out


@dataclass(frozen=True)
class KloostermanValue:
    """An exact Kloosterman sum with its real value and angle."""

    field_size: int
    alpha: FFElem
    value: CycNum
    real_value: float
    theta: float

    @classmethod
    def build(cls, field_size, alpha, value, embedding=1):
        real = value.embed_real(embedding)
        ratio = real / (2.0 * math.sqrt(field_size))
        theta = math.acos(min(1.0, max(-1.0, ratio)))
        return cls(field_size, alpha, value, real, theta)

    def weil_certificate(self):
        """True iff value^2 - 4|F| is nonzero, i.e. the Weil bound is not attained."""
        return not (self.value * self.value - 4 * self.field_size).is_zero()


def _gamma_in(ctx, gamma):
    if isinstance(gamma, FFElem):
        gamma = gamma.index
    gamma = int(gamma)
    if not 0 < gamma < ctx.q:
        raise ZeroParameter("gamma must be a nonzero element of F_q")
    return int(embedding_map(ctx.base, ctx)[gamma])


def kln(place, gamma, char=1, embedding=1, root=None):
    """Kln_gamma(v) = Kl_{F_v}(psi_{F_v}; gamma * beta_v^2).

    ``root`` overrides the canonical root (any conjugate gives the same value).
    """
    beta = place.beta if root is None else root
    ctx = beta.ctx
    g = ctx(_gamma_in(ctx, gamma))
    alpha = g * beta * beta
    value = kloosterman_sum(ctx, alpha, char)
    return KloostermanValue.build(ctx.order, alpha, value, embedding)


@functools.lru_cache(maxsize=64)
def place_values(q, a, gamma, char=1, embedding=1):
    """Kln_gamma(v) for every v in P_q(a), in place order (tuple)."""
    ps = place_set(q, a)
    by_degree = {}
    for i, v in enumerate(ps.places):
        by_degree.setdefault(v.degree, []).append(i)
    out = [None] * len(ps.places)
    for d, idx in by_degree.items():
        ctx = extension(q, d)
        t = ctx.tables
        g = _gamma_in(ctx, gamma)
        betas = np.array([ps.places[i].beta.index for i in idx], dtype=np.int64)
        alphas = t.mul_scalar(t.mul(betas, betas), g)
        values = kloosterman_batch(ctx, alphas, char)
        for i, al, val in zip(idx, alphas, values):
            out[i] = KloostermanValue.build(ctx.order, ctx(int(al)), val, embedding)
    return ps, tuple(out)


def lift_sequence(kl, qd, m):
    """s_m with s_0 = 2, s_1 = kl, s_{j+1} = kl*s_j - qd*s_{j-1}.

    This is kl_1^m + kl_2^m for the two roots of X^2 - kl X + qd, i.e. the
    Kloosterman sum over the degree-m extension.
    """
    s_prev, s = CycNum.from_int(kl.p, 2), kl
    if m == 0:
        return s_prev
    for _ in range(m - 1):
        s_prev, s = s, kl * s - s_prev * qd
    return s
