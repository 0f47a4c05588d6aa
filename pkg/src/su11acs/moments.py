"""Moments, variances and squeezing diagnostics of ladder-basis states.

Ground truth is always the exact sum over the truncated amplitudes.  The
closed-form expressions for ``w = 0`` states and squeezed cats live in
``closed_form_w0`` and ``closed_form_squeezed_cat`` and are only used as
cross-checks.

Conventions: ``[q, p] = i``, ``q = (a + a^dag)/sqrt2``,
``p = -i(a - a^dag)/sqrt2``, ``X = 2 sqrt2 K1``, ``Y = 2 sqrt2 K2``.  Vacuum
variances are 1/2 for ``q, p`` and 1 for ``X, Y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError
from .representation import SqueezeParam, apply_operator, ladder_g

__all__ = [
    "MomentReport",
    "SqueezeFlags",
    "VACUUM_LINEAR",
    "VACUUM_QUADRATIC",
    "k_moments",
    "operator_variance",
    "closed_form_w0",
    "closed_form_squeezed_cat",
    "schrodinger_gap",
    "mandel_q",
    "squeeze_flags",
    "squeezing_interval",
]

VACUUM_LINEAR = 0.5
VACUUM_QUADRATIC = 1.0


@dataclass(frozen=True)
class MomentReport:
    """First and second moments of one state.

    Bosonic fields are None for abstract representations; ``undefined``
    maps each None field to the reason it is missing.
    """

    mean_K: tuple
    var_K1: float
    var_K2: float
    cov_K12: float
    schrodinger_lhs: float
    schrodinger_rhs: float
    mean_n: float | None = None
    mean_a2: complex | None = None
    mean_a4: complex | None = None
    mean_n2kind: float | None = None
    var_q: float | None = None
    var_p: float | None = None
    var_X: float | None = None
    var_Y: float | None = None
    mandel_q: float | None = None
    undefined: dict = field(default_factory=dict)

    def to_dict(self):
        """Flat JSON-ready mapping; complex values become ``[re, im]``."""
        out = {}
        for f in fields(self):
            if f.name == "undefined":
                continue
            val = getattr(self, f.name)
            if isinstance(val, complex):
                val = [val.real, val.imag]
            elif isinstance(val, tuple):
                val = list(val)
            out[f.name] = val
        if self.undefined:
            out["undefined"] = dict(self.undefined)
        return out


def k_moments(psi):
    """Exact moments of ``psi`` from ladder sums.

    For bosonic flavors ``<a^dag a> = 2<K3> - 1/2``, ``<a^2> = 2<K->``,
    ``<a^4> = 4<K-^2>`` and ``<a^dag2 a^2> = 4<K+ K->``; ``<a> = 0`` because
    every stored state has definite photon-number parity.
    """
    rep = psi.repr
    c = psi.amplitudes / psi.norm
    N = c.size - 1
    g = ladder_g(rep.k, np.arange(N + 1))
    cpad = np.concatenate([c, [0j]])
    kp = np.zeros(N + 2, dtype=complex)
    kp[1:] = g * c
    km = np.zeros(N + 2, dtype=complex)
    km[:N] = g[:N] * c[1:]

    mean_kp = np.vdot(cpad, kp)
    mean_k1, mean_k2 = mean_kp.real, mean_kp.imag
    mean_k3 = float(np.sum((rep.k + np.arange(N + 1)) * np.abs(c) ** 2))
    k1 = 0.5 * (kp + km)
    k2 = -0.5j * (kp - km)
    var_k1 = float(np.vdot(k1, k1).real - mean_k1**2)
    var_k2 = float(np.vdot(k2, k2).real - mean_k2**2)
    cov = float(np.vdot(k1, k2).real - mean_k1 * mean_k2)
    lhs = var_k1 * var_k2 - cov**2
    rhs = mean_k3**2 / 4

    base = dict(
        mean_K=(float(mean_k1), float(mean_k2), mean_k3),
        var_K1=var_k1,
        var_K2=var_k2,
        cov_K12=cov,
        schrodinger_lhs=lhs,
        schrodinger_rhs=rhs,
    )
    if not rep.is_bosonic:
        reason = "abstract representation has no boson operators"
        undefined = {name: reason for name in (
            "mean_n", "mean_a2", "mean_a4", "mean_n2kind",
            "var_q", "var_p", "var_X", "var_Y", "mandel_q",
        )}
        return MomentReport(**base, undefined=undefined)

    mean_km = complex(np.conj(mean_kp))
    mean_km2 = complex(np.vdot(kp, km))  # <psi|K- K-|psi> = <K+ psi|K- psi>
    kpkm = float(np.vdot(km, km).real)
    n = 2 * mean_k3 - 0.5
    a2 = 2 * mean_km
    a4 = 4 * mean_km2
    n2 = 4 * kpkm
    undefined = {}
    if n > 1e-14:
        q = (n2 - n * n) / n
    else:
        q = None
        undefined["mandel_q"] = "mean photon number is zero"
    return MomentReport(
        **base,
        mean_n=n,
        mean_a2=a2,
        mean_a4=a4,
        mean_n2kind=n2,
        var_q=0.5 + n + a2.real,
        var_p=0.5 + n - a2.real,
        var_X=8 * var_k1,
        var_Y=8 * var_k2,
        mandel_q=q,
        undefined=undefined,
    )


def operator_variance(u, v, w, psi):
    """``<Z^dag Z> - |<Z>|^2`` for ``Z = u K- + v K+ + w K3``; the variance when Z is hermitean."""
    c = psi.amplitudes / psi.norm
    zc = apply_operator(u, v, w, psi.repr, c, extend=True)
    mean = np.vdot(np.concatenate([c, [0j]]), zc)
    return float(np.vdot(zc, zc).real - abs(mean) ** 2)


class W0Moments(NamedTuple):
    var_K1: float
    var_K2: float
    cov_K12: float
    var_q: float
    var_p: float


def closed_form_w0(z, u, v, k3_mean, n_mean, amplitude_factor=1.0):
    """Closed-form second moments of eigenstates of ``u K- + v K+`` with ``|u|^2 - |v|^2 = 1``.

    ``var_K1 = |u-v|^2 <K3>/2``, ``var_K2 = |u+v|^2 <K3>/2``,
    ``cov = Im(u^* v) <K3>`` and ``var_q, var_p = 1/2 + <n> +- f Re[(u-v) z^*]``.
    The literature form has ``f = 1``; the direct sum gives ``f = 2``
    because ``<a^2> = 2<K-> = 2(u^* z - v z^*)``.
    """
    z, u, v = complex(z), complex(u), complex(v)
    if abs(abs(u) ** 2 - abs(v) ** 2 - 1) > 1e-9:
        raise DomainError(f"|u|^2 - |v|^2 = {abs(u) ** 2 - abs(v) ** 2} must equal 1")
    shift = amplitude_factor * ((u - v) * z.conjugate()).real
    return W0Moments(
        0.5 * abs(u - v) ** 2 * k3_mean,
        0.5 * abs(u + v) ** 2 * k3_mean,
        (u.conjugate() * v).imag * k3_mean,
        0.5 + n_mean + shift,
        0.5 + n_mean - shift,
    )


class SqueezedCatMoments(NamedTuple):
    mean_n: float
    mean_a2: complex
    mean_a4: complex
    mean_n2kind: float
    var_q: float
    var_p: float
    var_X: float
    var_Y: float


def closed_form_squeezed_cat(z, xi, n_bar):
    """Moments of ``S(xi)|alpha_+>`` from the closed-form expansion in ``r, theta, |z|, phi``.

    ``n_bar`` is the photon number of the unsqueezed cat.
    """
    if not isinstance(xi, SqueezeParam):
        xi = SqueezeParam(xi)
    z = complex(z)
    r, th = xi.r, xi.theta
    zabs, phi = abs(z), math.atan2(z.imag, z.real)
    sh, ch = math.sinh(r), math.cosh(r)
    s2, s4 = math.sinh(2 * r), math.sinh(4 * r)
    e = lambda x: complex(math.cos(x), math.sin(x))  # noqa: E731
    cos_d = math.cos(th - phi)

    n = sh**2 + 2 * zabs * s2 * cos_d + n_bar * math.cosh(2 * r)
    a2 = (
        0.5 * s2 * e(th)
        + 2 * zabs * (ch**2 * e(phi) + sh**2 * e(2 * th - phi))
        + n_bar * s2 * e(th)
    )
    n2 = (
        n_bar * (2 * s2**2 + 4 * sh**4 + 2 * zabs * s4 * cos_d)
        + 4 * zabs**2 * (s2**2 + ch**4 + sh**4 + 0.5 * s2**2 * math.cos(2 * th - 2 * phi))
        + 2 * zabs * s2 * cos_d * (ch**2 + 5 * sh**2)
        + 0.25 * s2**2
        + 2 * sh**4
    )
    a4 = (
        n_bar * (3 * s2**2 * e(2 * th) + 4 * zabs * s2 * (ch**2 * e(th + phi) + sh**2 * e(3 * th - phi)))
        + 4 * zabs**2 * (1.5 * s2**2 * e(2 * th) + sh**4 * e(2 * (2 * th - phi)) + ch**4 * e(2 * phi))
        + 6 * zabs * s2 * (ch**2 * e(th + phi) + sh**2 * e(3 * th - phi))
        + 0.75 * s2**2 * e(2 * th)
    )
    mean_x = math.sqrt(2) * a2.real
    mean_y = math.sqrt(2) * a2.imag
    return SqueezedCatMoments(
        n,
        a2,
        a4,
        n2,
        0.5 + n + a2.real,
        0.5 + n - a2.real,
        1 + 2 * n + n2 + a4.real - mean_x**2,
        1 + 2 * n + n2 - a4.real - mean_y**2,
    )


def schrodinger_gap(report):
    """``(var_K1 var_K2 - cov^2, <K3>^2 / 4)``; the first never falls below the second."""
    lhs = report.var_K1 * report.var_K2 - report.cov_K12**2
    return lhs, report.mean_K[2] ** 2 / 4


def mandel_q(report):
    """``(<a^dag2 a^2> - <n>^2) / <n>``; negative means subpoissonian."""
    if report.mean_n is None:
        raise DomainError("Mandel Q needs a bosonic representation")
    if not report.mean_n > 1e-14:
        raise DomainError("Mandel Q is undefined for zero mean photon number")
    return (report.mean_n2kind - report.mean_n**2) / report.mean_n


@dataclass(frozen=True)
class SqueezeFlags:
    q_sq: bool
    p_sq: bool
    x_sq: bool
    y_sq: bool

    @property
    def joint(self):
        """Pairs of one linear and one quadratic quadrature squeezed together."""
        lin = [name for name, on in (("q", self.q_sq), ("p", self.p_sq)) if on]
        quad = [name for name, on in (("X", self.x_sq), ("Y", self.y_sq)) if on]
        return frozenset((a, b) for a in lin for b in quad)


def squeeze_flags(report):
    if report.var_q is None:
        raise DomainError("squeezing flags need a bosonic representation")
    return SqueezeFlags(
        report.var_q < VACUUM_LINEAR,
        report.var_p < VACUUM_LINEAR,
        report.var_X < VACUUM_QUADRATIC,
        report.var_Y < VACUUM_QUADRATIC,
    )


_OBSERVABLE_FIELD = {"q": "var_q", "p": "var_p", "X": "var_X", "Y": "var_Y"}


def squeezing_interval(
    family: Callable,
    param_range,
    observable,
    threshold,
    points=501,
    steps=40,
):
    """Maximal sub-intervals of ``param_range`` where the variance is below ``threshold``.

    ``family`` maps a parameter value to a ``MomentReport``.  The range is
    scanned on ``points`` grid nodes and each crossing is refined by
    ``steps`` bisection steps.  Returns a list of ``(lo, hi)``; empty when
    the variance never drops below the threshold.
    """
    try:
        name = _OBSERVABLE_FIELD[observable]
    except KeyError:
        raise DomainError(f"observable must be one of {sorted(_OBSERVABLE_FIELD)}") from None
    lo, hi = map(float, param_range)
    if not lo < hi:
        raise DomainError("parameter range must satisfy lo < hi")

    def excess(x):
        return getattr(family(x), name) - threshold

    grid = np.linspace(lo, hi, points)
    below = np.array([excess(x) < 0 for x in grid])

    def crossing(a, b):
        fa_below = excess(a) < 0
        for _ in range(steps):
            mid = 0.5 * (a + b)
            if (excess(mid) < 0) == fa_below:
                a = mid
            else:
                b = mid
        return 0.5 * (a + b)

    intervals = []
    start = lo if below[0] else None
    for i in range(1, points):
        if below[i] and not below[i - 1]:
            start = crossing(grid[i - 1], grid[i])
        elif below[i - 1] and not below[i]:
            intervals.append((start, crossing(grid[i - 1], grid[i])))
            start = None
    if start is not None:
        intervals.append((start, hi))
    return intervals
