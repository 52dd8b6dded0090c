"""Sato-Tate statistics of the Kloosterman angles theta_gamma(v), v in P_q(a).

Two probability measures on [0, pi] are supported: ``nu`` puts mass
1/|P_q(a)| at each theta_gamma(v); ``xi`` puts mass d_v/(q^a - 1) at the
lifted angle of v, the angle of the Kloosterman sum over F_{q^a} itself,
which is arccos(cos((a/d_v) theta_gamma(v))).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyEnsemble
from .kloosterman import place_values

LOG_E_OVER_4 = 1.0 - math.log(4.0)


@dataclass(frozen=True)
class AngleEnsemble:
    params: object
    labels: tuple
    degrees: np.ndarray
    theta: np.ndarray
    kln_real: np.ndarray
    values: tuple            # exact CycNum Kloosterman sums, in place order

    def __len__(self):
        return len(self.theta)

    @classmethod
    def from_angles(cls, angles):
        """A bare nu-ensemble from raw angles (no curve attached)."""
        th = np.asarray(angles, dtype=float)
        return cls(None, tuple(str(i) for i in range(len(th))), np.ones(len(th), dtype=np.int64),
                   th, np.cos(th), ())

    @property
    def xi_weights(self):
        return self.degrees / float(self.params.q**self.params.a - 1)

    @property
    def xi_angles(self):
        m = self.params.a // self.degrees
        return np.arccos(np.clip(np.cos(m * self.theta), -1.0, 1.0))

    def measure(self, which):
        if which == "nu":
            n = len(self.theta)
            return self.theta, np.full(n, 1.0 / n) if n else np.zeros(0)
        if which == "xi":
            return self.xi_angles, self.xi_weights
        raise ValueError(f"unknown measure {which!r}")

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["place", "degree", "kln_real", "theta"])
        for lab, d, k, th in zip(self.labels, self.degrees, self.kln_real, self.theta):
            w.writerow([lab, int(d), repr(float(k)), repr(float(th))])
        return buf.getvalue()


def angle_ensemble(params, char=1, embedding=1):
    ps, vals = place_values(params.q, params.a, params.gamma, char, embedding)
    return AngleEnsemble(
        params,
        tuple(v.label() for v in ps.places),
        np.array([v.degree for v in ps.places], dtype=np.int64),
        np.array([kv.theta for kv in vals], dtype=float),
        np.array([kv.real_value for kv in vals], dtype=float),
        tuple(kv.value for kv in vals),
    )


def sato_tate_cdf(x):
    x = np.asarray(x, dtype=float)
    return x / math.pi - np.sin(2 * x) / (2 * math.pi)


def chebyshev_u(n, c):
    """U_n(c) by the three-term recurrence; U_n(cos t) = sin((n+1)t)/sin t."""
    c = np.asarray(c, dtype=float)
    u_prev, u = np.ones_like(c), 2 * c
    if n == 0:
        return u_prev
    for _ in range(n - 1):
        u_prev, u = u, 2 * c * u - u_prev
    return u


def moment(ens, n, which="nu"):
    angles, w = ens.measure(which)
    if not len(angles):
        raise EmptyEnsemble("moment of an empty ensemble")
    return float(np.dot(w, chebyshev_u(n, np.cos(angles))))


def star_discrepancy(ens, which="nu"):
    angles, w = ens.measure(which)
    if not len(angles):
        raise EmptyEnsemble("discrepancy of an empty ensemble")
    return star_discrepancy_of(angles, w)


def star_discrepancy_of(angles, weights=None):
    angles = np.asarray(angles, dtype=float)
    if weights is None:
        weights = np.full(len(angles), 1.0 / len(angles))
    order = np.argsort(angles, kind="stable")
    a = angles[order]
    cum = np.cumsum(np.asarray(weights, dtype=float)[order])
    prev = np.concatenate([[0.0], cum[:-1]])
    F = sato_tate_cdf(a)
    return float(max(np.max(np.abs(cum - F)), np.max(np.abs(prev - F))))


def log_sin2_average(ens):
    if not len(ens):
        raise EmptyEnsemble("empty ensemble")
    return float(np.mean(np.log(np.sin(ens.theta) ** 2)))


def min_angle(ens):
    """min over samples of min(theta, pi - theta)."""
    if not len(ens):
        raise EmptyEnsemble("empty ensemble")
    return float(np.min(np.minimum(ens.theta, math.pi - ens.theta)))


def min_angle_log_bound(params):
    """log of (q^a)^(-2(p-1)), the lower bound for every angle distance to {0, pi}."""
    return -2 * (params.p - 1) * params.a * math.log(params.q)


def min_angle_certified(ens):
    """Float check of the minimal-angle bound plus the exact non-attainment check."""
    if math.log(min_angle(ens)) <= min_angle_log_bound(ens.params):
        return False
    q = ens.params.q
    return all(not (v * v - 4 * q**int(d)).is_zero() for v, d in zip(ens.values, ens.degrees))


def improved_weil_ok(ens, margin=1e-12):
    p, q = ens.params.p, ens.params.q
    cp = 2 * (p - 1)
    d = ens.degrees.astype(float)
    bound = 2 * q ** (d / 2) * (1 - (2 / math.pi**2) * np.exp(-2 * d * cp * math.log(q)))
    return bool(np.all(np.abs(ens.kln_real) <= bound + margin))


def erdos_turan_bound(ens, N, which="nu"):
    """1/N + sum_{n=1}^{2N-1} (n+1)/(n(n+2)) |M_n|."""
    s = 1.0 / N
    for n in range(1, 2 * N):
        s += (n + 1) / (n * (n + 2)) * abs(moment(ens, n, which))
    return s


def erdos_turan_constant(ens, which="nu", n_max=21):
    """Smallest C with D* <= C * bound(N) for every odd N <= n_max."""
    d = star_discrepancy(ens, which)
    return max(d / erdos_turan_bound(ens, N, which) for N in range(1, n_max + 1, 2))


def cos_mean(ens, which="nu"):
    angles, w = ens.measure(which)
    return float(np.dot(w, np.cos(angles)))


def koksma_ok(ens, which="nu"):
    """|int cos d(measure) - int cos d mu_ST| <= Var(cos) D* = 2 D*."""
    return abs(cos_mean(ens, which)) <= 2 * star_discrepancy(ens, which) + 1e-15


def bs_upper_bound(ens):
    """(sum_v log 4 d_v) / (b log q)."""
    q, a = ens.params.q, ens.params.a
    b = 3 * (q**a - 1)
    return float(np.sum(np.log(4.0 * ens.degrees)) / (b * math.log(q)))


def brauer_siegel_ratio(params):
    from .lfunction import special_value
    return special_value(params).log_ratio


def moment_constant(ens, n_max=8):
    """max_n |M_n| / ((n+1) a q^(-a/2)): the C in the moment decay bound."""
    q, a = ens.params.q, ens.params.a
    scale = a * q ** (-a / 2)
    return max(abs(moment(ens, n)) / ((n + 1) * scale) for n in range(1, n_max + 1))


def discrepancy_constant(ens):
    """D* / (a^(1/2) q^(-a/4))."""
    q, a = ens.params.q, ens.params.a
    return star_discrepancy(ens) / (math.sqrt(a) * q ** (-a / 4))


def stats_report(params, sv=None, n_moments=8):
    """JSON-ready statistics for one (q, a, gamma)."""
    from .lfunction import special_value
    ens = angle_ensemble(params)
    if sv is None:
        sv = special_value(params)
    return {
        "q": params.q, "a": params.a, "gamma": params.gamma,
        "places": len(ens),
        "moments": [moment(ens, n) for n in range(1, n_moments + 1)],
        "moments_xi": [moment(ens, n, "xi") for n in range(1, n_moments + 1)],
        "discrepancy": star_discrepancy(ens),
        "discrepancy_xi": star_discrepancy(ens, "xi"),
        "min_margin": min_angle(ens),
        "log_min_angle_bound": min_angle_log_bound(params),
        "log_sin2_avg": log_sin2_average(ens),
        "bs_ratio": sv.log_ratio,
        "bs_upper_bound": bs_upper_bound(ens),
        "cos_mean": cos_mean(ens),
        "erdos_turan_constant": erdos_turan_constant(ens),
    }
