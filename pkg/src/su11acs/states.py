"""Eigenstates of ``Z = u K- + v K+ + w K3`` (algebraic coherent states).

The primary construction projects ``Z|psi> = z|psi>`` on the ladder basis,
which gives the three-term recurrence

    u g_m c_{m+1} = (z - w(k+m)) c_m - v g_{m-1} c_{m-1},   c_{-1} = 0,

with ``g_m = sqrt((m+1)(m+2k))``.  Asymptotically ``c_{m+1}/c_m`` tends to a
root of ``u t^2 + w t + v = 0``; the two roots are ``(-w -+ l)/(2u)`` with
``l = sqrt(w^2 - 4uv)``, so the normalizability inequalities say exactly
that both roots lie inside the unit disc.  The forward recurrence is then
benign.  For quantized eigenvalues only one root needs to be inside, and the
wanted solution is the minimal one; it is obtained from a tridiagonal
boundary-value solve instead.

The Kummer closed forms are implemented separately (``wavefunction``) and
serve as cross-checks against the recurrence.
"""

from __future__ import annotations

import cmath
import enum
import json
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
import scipy.linalg
from scipy.special import gammaln

from . import specfun
from .errors import DomainError, NotNormalizableError, TruncationError
from .representation import (
    Flavor,
    ReprIndex,
    SqueezeParam,
    StateVector,
    TAIL_THRESHOLD,
    apply_operator,
    default_truncation,
    ladder_g,
    make_state,
    squeeze_apply,
)

__all__ = [
    "AcsParams",
    "ClosedFormParams",
    "SubfamilyKind",
    "SubfamilySpec",
    "killing_root",
    "growth_ratios",
    "normalizable",
    "quantized_normalizable",
    "violated_inequalities",
    "quantized_z",
    "quantization_index",
    "ladder_recurrence",
    "solve_acs",
    "eigen_residual",
    "bg_state",
    "perelomov_state",
    "cat_state",
    "squeezed_cat_state",
    "squeezed_binomial_state",
    "perelomov_params",
    "squeezed_cat_params",
    "cat_params",
    "subfamily",
    "closed_form_params",
    "wavefunction",
    "overlap_series",
    "desqueeze_reference",
    "finite_structure_check",
    "export_state",
    "dump_state",
    "load_state",
]

# |c1| below this switches the closed form to the l^2 -> 0 (0F1) limit
DEGENERATE_C1 = 1e-8
_QUANT_ATOL = 1e-9


def killing_root(u, v, w):
    """Principal square root of the Killing invariant ``l^2 = w^2 - 4uv``."""
    return cmath.sqrt(complex(w) ** 2 - 4 * complex(u) * complex(v))


@dataclass(frozen=True)
class AcsParams:
    """Eigenvalue problem data ``(u K- + v K+ + w K3)|psi> = z|psi>``."""

    z: complex
    u: complex
    v: complex
    w: complex
    repr: ReprIndex = field(default_factory=ReprIndex.even)

    def __post_init__(self):
        for name in ("z", "u", "v", "w"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.u == 0 and self.v == 0 and self.w == 0:
            raise DomainError("(u, v, w) = (0, 0, 0) is not an eigenproblem")

    @property
    def k(self):
        return self.repr.k

    @property
    def l2(self):
        return self.w**2 - 4 * self.u * self.v

    @property
    def root(self):
        return killing_root(self.u, self.v, self.w)

    def to_dict(self):
        return {name: [getattr(self, name).real, getattr(self, name).imag] for name in "zuvw"}

    @classmethod
    def from_dict(cls, data, rep):
        return cls(*(complex(*data[name]) for name in "zuvw"), repr=rep)


def growth_ratios(u, v, w):
    """``(|w - l|, |w + l|) / (2|u|)``: moduli of the two asymptotic ratios."""
    u, v, w = complex(u), complex(v), complex(w)
    if u == 0:
        raise DomainError("growth ratios need u != 0")
    l = killing_root(u, v, w)
    return abs(w - l) / (2 * abs(u)), abs(w + l) / (2 * abs(u))


def normalizable(u, v, w):
    """Whether ``u K- + v K+ + w K3`` has normalizable eigenstates for generic ``z``.

    Both inequalities are invariant under ``l -> -l``, so the answer does not
    depend on the square-root branch.  For ``l^2 = 0`` they coincide with
    ``|w / 2u| < 1``; for ``u = 0`` the condition is ``|v / w| < 1``.
    """
    u, v, w = complex(u), complex(v), complex(w)
    if u == 0:
        if w == 0:
            raise DomainError("u = w = 0: v K+ has no normalizable eigenstates")
        return abs(v / w) < 1
    if w**2 - 4 * u * v == 0:
        return abs(w / (2 * u)) < 1
    lo, hi = growth_ratios(u, v, w)
    return lo < 1 and hi < 1


def quantized_normalizable(u, v, w):
    """Whether some quantized eigenvalue ``z_n`` gives a normalizable state.

    At ``a = -n`` the Kummer factor is a polynomial and only the ratio tied
    to the exponential prefactor has to be below one; with the branch of the
    root left free this is the smaller of the two growth ratios.
    """
    u, v, w = complex(u), complex(v), complex(w)
    if u == 0:
        return normalizable(u, v, w)
    return min(growth_ratios(u, v, w)) < 1


def violated_inequalities(u, v, w):
    """Human-readable list of the normalizability inequalities that fail."""
    u, v, w = complex(u), complex(v), complex(w)
    if u == 0:
        if w == 0:
            return ["u = w = 0"]
        return [] if abs(v / w) < 1 else [f"|v/w| = {abs(v / w):.6g} >= 1"]
    lo, hi = growth_ratios(u, v, w)
    out = []
    if lo >= 1:
        out.append(f"|w - sqrt(w^2-4uv)| / 2|u| = {lo:.6g} >= 1")
    if hi >= 1:
        out.append(f"|w + sqrt(w^2-4uv)| / 2|u| = {hi:.6g} >= 1")
    return out


def quantized_z(n, u, v, w, k, branch=1):
    """Quantized eigenvalue ``z_n = -(k+n) l`` (principal ``l`` for ``branch=1``)."""
    if int(n) != n or n < 0:
        raise DomainError(f"quantum number must be a non-negative integer, got {n}")
    return -(k + n) * branch * killing_root(u, v, w)


def quantization_index(p, atol=_QUANT_ATOL):
    """``(n, branch)`` if ``p.z`` is a quantized eigenvalue, else None.

    For ``u = 0`` the eigenvalues are ``w (k + n)`` and ``branch`` is 0.
    """
    if p.u == 0:
        if p.w == 0:
            return None
        n = specfun.nonpositive_integer(-(p.z / p.w - p.k), atol)
        return None if n is None else (n, 0)
    l = p.root
    if l == 0:
        return (0, 1) if abs(p.z) <= atol else None
    for branch in (1, -1):
        n = specfun.nonpositive_integer(p.k + p.z / (branch * l), atol)
        if n is not None:
            return n, branch
    return None


def ladder_recurrence(z, u, v, w, k, N):
    """Raw forward-recurrence amplitudes ``c_0..c_N`` with ``c_0 = 1``.

    No admissibility check; intermediate rescaling keeps the numbers finite.
    Used by ``solve_acs`` and for divergence diagnostics.
    """
    z, u, v, w = complex(z), complex(u), complex(v), complex(w)
    if u == 0:
        raise DomainError("forward recurrence needs u != 0")
    g = ladder_g(k, np.arange(N + 1)).tolist()
    c = [0j] * (N + 1)
    c[0] = 1.0 + 0.0j
    prev, cur = 0.0j, 1.0 + 0.0j
    prev_g = 0.0
    # plain Python scalars: this loop is the hot path of every scan
    for m in range(N):
        nxt = ((z - w * (k + m)) * cur - v * prev_g * prev) / (u * g[m])
        c[m + 1] = nxt
        prev, cur, prev_g = cur, nxt, g[m]
        if abs(nxt) > 1e150:
            c[: m + 2] = [x * 1e-150 for x in c[: m + 2]]
            prev *= 1e-150
            cur *= 1e-150
    c = np.array(c, dtype=complex)
    return c


def _boundary_solve(p, N):
    # Rows 1..N of (Z - z)c = 0 with c_0 = 1 and c_{N+1} = 0: tridiagonal in c_1..c_N.
    k = p.k
    m = np.arange(1, N + 1)
    g = ladder_g(k, np.arange(N + 1))
    ab = np.zeros((3, N), dtype=complex)
    ab[0, 1:] = p.u * g[1:N]
    ab[1, :] = p.w * (k + m) - p.z
    ab[2, :-1] = p.v * g[1:N]
    rhs = np.zeros(N, dtype=complex)
    rhs[0] = -p.v * g[0]
    return np.concatenate([[1.0 + 0.0j], scipy.linalg.solve_banded((1, 1), ab, rhs)])


def _u_zero_solve(p, n, N):
    if not abs(p.v / p.w) < 1:
        raise NotNormalizableError(
            f"u = 0 eigenstates need |v/w| < 1 (|v/w| = {abs(p.v / p.w):.6g})",
            violated=[f"|v/w| = {abs(p.v / p.w):.6g} >= 1"],
        )
    if n > N:
        raise TruncationError(f"eigenstate starts at index {n} > N = {N}", dimension=N)
    g = ladder_g(p.k, np.arange(N + 1))
    c = np.zeros(N + 1, dtype=complex)
    c[n] = 1.0
    for m in range(n + 1, N + 1):
        c[m] = p.v * g[m - 1] * c[m - 1] / (p.w * (n - m))
    return c


def eigen_residual(p, state):
    """``||(Z - z) psi||`` over ladder rows ``0..N-1``.

    Row ``N`` couples to the discarded amplitude ``c_{N+1}``; truncation
    adequacy is certified separately by the tail norm.
    """
    r = apply_operator(p.u, p.v, p.w, p.repr, state.amplitudes) - p.z * state.amplitudes
    return float(np.linalg.norm(r[:-1]) / state.norm)


def solve_acs(p, N=None, tol=1e-9, tail_tol=TAIL_THRESHOLD, method="auto"):
    """Construct the normalized eigenstate ``|z, u, v, w; k>``.

    Parameters
    ----------
    p : AcsParams
    N : int, optional
        Truncation index; defaults to 400 (bosonic) or 200 (abstract).
    tol : float
        Bound on the eigen-residual over the rows ``0..N-1``.
    tail_tol : float
        Bound on the probability in the last 10% of the window.
    method : {"auto", "forward", "boundary"}
        ``auto`` uses the forward recurrence inside the normalizability
        region and the boundary-value solve for quantized eigenvalues that
        satisfy only the quantized condition.

    Raises
    ------
    NotNormalizableError
        No normalizable eigenstate exists for these parameters.
    TruncationError
        The state is not contained in the window ``0..N``.
    """
    N = default_truncation(p.repr) if N is None else int(N)
    if N < 2:
        raise DomainError(f"truncation must be at least 2, got {N}")
    quant = quantization_index(p)
    if p.u == 0:
        if p.w == 0:
            raise DomainError("u = w = 0: v K+ has no normalizable eigenstates")
        if quant is None:
            raise DomainError(
                "u = 0 requires a quantized eigenvalue z = w (k + n); "
                f"z/w - k = {p.z / p.w - p.k} is not a non-negative integer"
            )
        c = _u_zero_solve(p, quant[0], N)
    else:
        ok = normalizable(p.u, p.v, p.w)
        if method == "auto":
            if ok:
                method = "forward"
            elif quant is not None and _branch_ratio(p, quant[1]) < 1:
                method = "boundary"
            else:
                raise NotNormalizableError(
                    "no normalizable eigenstate: " + "; ".join(violated_inequalities(p.u, p.v, p.w)),
                    violated=violated_inequalities(p.u, p.v, p.w),
                )
        if method == "forward":
            c = ladder_recurrence(p.z, p.u, p.v, p.w, p.k, N)
        elif method == "boundary":
            c = _boundary_solve(p, N)
        else:
            raise DomainError(f"unknown method {method!r}")
    if not np.all(np.isfinite(c)):
        raise TruncationError("recurrence overflowed; parameters too close to the frontier", dimension=N)
    state = make_state(p.repr, c)
    if state.tail_norm > tail_tol:
        raise TruncationError(
            f"tail weight {state.tail_norm:.3g} exceeds {tail_tol:.1g} at N={N}; enlarge the truncation",
            tail_norm=state.tail_norm,
            dimension=N,
        )
    res = eigen_residual(p, state)
    if res > tol:
        raise TruncationError(f"eigen-residual {res:.3g} exceeds {tol:.1g}", tail_norm=state.tail_norm, dimension=N)
    return state


def _branch_ratio(p, branch):
    # |c| for the branch in which z is quantized: the prefactor exp(c eta)
    l = branch * p.root
    return abs(p.w + l) / (2 * abs(p.u))


# ----------------------------------------------------------------------------
# Named subfamilies built directly (independently of the recurrence)


def _log_amplitudes(log_x, log_weights):
    # c_m = x^m * exp(log_weights[m]), evaluated in log space then rescaled
    m = np.arange(log_weights.size)
    if log_x is None:
        c = np.zeros(log_weights.size, dtype=complex)
        c[0] = 1.0
        return c
    logs = m * log_x + log_weights
    return np.exp(logs - logs.real.max())


def bg_state(z, rep, N=None):
    """Eigenstate of ``K-`` with eigenvalue ``z``: ``c_m ~ z^m / sqrt(m! (2k)_m)``."""
    N = default_truncation(rep) if N is None else N
    m = np.arange(N + 1)
    weights = 0.5 * (gammaln(2 * rep.k) - gammaln(m + 1) - gammaln(m + 2 * rep.k))
    log_z = None if z == 0 else cmath.log(complex(z))
    return make_state(rep, _log_amplitudes(log_z, weights))


def perelomov_state(tau, rep, N=None):
    """``exp(xi K+ - xi^* K-)|0; k>`` in the form ``c_m ~ tau^m sqrt(Gamma(m+2k)/(m! Gamma(2k)))``."""
    if not abs(tau) < 1:
        raise DomainError(f"Perelomov states need |tau| < 1, got {abs(tau)}")
    N = default_truncation(rep) if N is None else N
    m = np.arange(N + 1)
    weights = 0.5 * (gammaln(m + 2 * rep.k) - gammaln(m + 1) - gammaln(2 * rep.k))
    log_tau = None if tau == 0 else cmath.log(complex(tau))
    return make_state(rep, _log_amplitudes(log_tau, weights))


def cat_state(alpha, parity, N=None):
    """Even (``parity=0``) or odd Fock projection of the Glauber state ``|alpha>``."""
    rep = ReprIndex.bosonic(parity)
    N = default_truncation(rep) if N is None else N
    n = rep.photon_number(np.arange(N + 1))
    if alpha == 0:
        if parity:
            raise DomainError("the odd cat state of zero amplitude does not exist")
        return bg_state(0, rep, N)
    logs = n * cmath.log(complex(alpha)) - 0.5 * gammaln(n + 1)
    return make_state(rep, np.exp(logs - logs.real.max()))


def squeezed_cat_state(z, xi, parity=0, N=None):
    """``S(xi) |alpha_pm>`` with ``alpha = sqrt(2 z)`` built by explicit squeezing."""
    rep = ReprIndex.bosonic(parity)
    N = default_truncation(rep) if N is None else N
    cat = cat_state(cmath.sqrt(2 * complex(z)), parity, N)
    return squeeze_apply(xi, cat, N)


def squeezed_binomial_state(n, v, w, N=None):
    """``S(xi) (a^dag - (v^*/w^*) a)^n |0>`` with ``tanh|xi| = |v/w|``, ``arg xi = arg(-v/w)``."""
    v, w = complex(v), complex(w)
    if w == 0 or not abs(v / w) < 1:
        raise DomainError("squeezed binomial states need w != 0 and |v/w| < 1")
    rep = ReprIndex.bosonic(n % 2)
    N = default_truncation(rep) if N is None else N
    beta = np.conj(v) / np.conj(w)
    fock = np.zeros(n + 1, dtype=complex)
    fock[0] = 1.0
    sq = np.sqrt(np.arange(n + 1))
    for _ in range(n):
        nxt = np.zeros_like(fock)
        nxt[1:] += sq[1:] * fock[:-1]          # a^dag
        nxt[:-1] -= beta * sq[1:] * fock[1:]   # -beta a
        fock = nxt
    ladder = np.zeros(N + 1, dtype=complex)
    ladder[: fock[n % 2::2].size] = fock[n % 2::2]
    psi = make_state(rep, ladder)
    xi = SqueezeParam.polar(math.atanh(abs(v / w)), cmath.phase(-v / w))
    return squeeze_apply(xi, psi, N)


def perelomov_params(tau, rep, u=1.0):
    """ACS data reproducing ``|tau; k>``: ``w = 0``, ``v = -u tau^2``, ``z = 2 k u tau``."""
    u = complex(u)
    return AcsParams(2 * rep.k * u * tau, u, -u * tau**2, 0.0, rep)


def squeezed_cat_params(z, xi, parity=0):
    """ACS data of ``S(xi)|alpha_pm>``: ``u = cosh^2 r``, ``v = sinh^2 r e^{2i theta}``, ``w = -sinh 2r e^{i theta}``."""
    if not isinstance(xi, SqueezeParam):
        xi = SqueezeParam(xi)
    r, th = xi.r, xi.theta
    return AcsParams(
        z,
        math.cosh(r) ** 2,
        math.sinh(r) ** 2 * cmath.exp(2j * th),
        -math.sinh(2 * r) * cmath.exp(1j * th),
        ReprIndex.bosonic(parity),
    )


def cat_params(z, parity=0):
    return AcsParams(z, 1.0, 0.0, 0.0, ReprIndex.bosonic(parity))


class SubfamilyKind(str, enum.Enum):
    BG = "bg"
    PERELOMOV = "perelomov"
    CAT_EVEN = "cat_even"
    CAT_ODD = "cat_odd"
    SQUEEZED_CAT = "squeezed_cat"
    SQUEEZED_BINOMIAL = "squeezed_binomial"


@dataclass(frozen=True)
class SubfamilySpec:
    """A named state family and its parameters.

    ``params`` keys by kind: bg ``z``; perelomov ``tau``; cats ``alpha``;
    squeezed_cat ``z``, ``xi`` and optional ``parity``; squeezed_binomial
    ``n``, ``v``, ``w``.  ``repr`` is used by bg and perelomov.
    """

    kind: SubfamilyKind
    params: Mapping[str, object]
    repr: ReprIndex = field(default_factory=ReprIndex.even)

    def __post_init__(self):
        kind = SubfamilyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is SubfamilyKind.PERELOMOV and not abs(self.params["tau"]) < 1:
            raise DomainError("Perelomov states need |tau| < 1")
        if kind is SubfamilyKind.SQUEEZED_BINOMIAL:
            v, w = complex(self.params["v"]), complex(self.params["w"])
            if w == 0 or not abs(v / w) < 1:
                raise DomainError("squeezed binomial states need |v/w| < 1")


def subfamily(spec, N=None):
    """Build the named state directly from its defining construction."""
    P = spec.params
    if spec.kind is SubfamilyKind.BG:
        return bg_state(P["z"], spec.repr, N)
    if spec.kind is SubfamilyKind.PERELOMOV:
        return perelomov_state(P["tau"], spec.repr, N)
    if spec.kind is SubfamilyKind.CAT_EVEN:
        return cat_state(P["alpha"], 0, N)
    if spec.kind is SubfamilyKind.CAT_ODD:
        return cat_state(P["alpha"], 1, N)
    if spec.kind is SubfamilyKind.SQUEEZED_CAT:
        return squeezed_cat_state(P["z"], P["xi"], P.get("parity", 0), N)
    return squeezed_binomial_state(int(P["n"]), P["v"], P["w"], N)


# ----------------------------------------------------------------------------
# Closed forms


@dataclass(frozen=True)
class ClosedFormParams:
    """Coefficients of a closed-form wavefunction.

    ``variant`` is one of ``bg_series`` (keys a, b, c, c1), ``bosonic_even``
    (a_plus, c_prime, c2, v_prime), ``bosonic_odd`` (a_minus, c_prime, c2,
    v_prime) or ``u_zero`` (c_tilde, b).  ``root`` records the square root of
    ``w^2 - 4uv`` actually used (principal, or its negative when ``z`` is
    quantized on that branch).
    """

    variant: str
    values: Mapping[str, complex]
    root: complex = 0j
    degenerate: bool = False


def closed_form_params(p, gauge="bg_eta"):
    if gauge not in ("bg_eta", "cs_alpha"):
        raise DomainError(f"unknown gauge {gauge!r}")
    if gauge == "cs_alpha" and not p.repr.is_bosonic:
        raise DomainError("the cs_alpha gauge exists only for bosonic flavors")
    quant = quantization_index(p)
    if p.u == 0:
        if quant is None:
            raise DomainError("u = 0 closed form requires a quantized eigenvalue")
        if gauge == "bg_eta":
            return ClosedFormParams("u_zero", {"c_tilde": -p.v / p.w, "b": (p.z - p.w * p.k) / p.w})
        return ClosedFormParams("u_zero", {"c_tilde": -p.v / (2 * p.w), "b": -0.5 + 2 * p.z / p.w})
    if not normalizable(p.u, p.v, p.w) and not (quant and _branch_ratio(p, quant[1]) < 1):
        raise NotNormalizableError(
            "parameters outside the analyticity domain",
            violated=violated_inequalities(p.u, p.v, p.w),
        )
    l = p.root * (quant[1] if quant else 1)
    degenerate = abs(l / p.u) < DEGENERATE_C1
    a = p.k + (p.z / l if not degenerate else 0)
    c = -(p.w + l) / (2 * p.u)
    c1 = l / p.u
    if gauge == "bg_eta":
        return ClosedFormParams("bg_series", {"a": a, "b": 2 * p.k, "c": c, "c1": c1}, l, degenerate)
    v_prime = -p.l2 / (4 * p.u)
    name, key = ("bosonic_even", "a_plus") if p.repr.parity == 0 else ("bosonic_odd", "a_minus")
    return ClosedFormParams(name, {key: a, "c_prime": c / 2, "c2": c1 / 2, "v_prime": v_prime}, l, degenerate)


def wavefunction(p, point, gauge="bg_eta", ctl=specfun.DEFAULT_CONTROL):
    """Unnormalized closed-form wavefunction at ``point``.

    ``bg_eta``: Barut-Girardello function ``exp(c eta) M(a, 2k, c1 eta)``,
    or ``exp(c eta) 0F1(; 2k; z eta / u)`` when ``w^2 = 4uv``, or
    ``eta^b exp(-v eta / w)`` when ``u = 0``.

    ``cs_alpha`` (bosonic only): canonical coherent-state function;
    even ``exp(c' a^2) M(a+, 1/2, c2 a^2)``, odd
    ``a exp(c' a^2) M(a-, 3/2, c2 a^2)``, ``u = 0``: ``exp(c~ a^2) a^b``.

    Equal to the overlap series of ``solve_acs(p)`` up to one global factor.
    """
    cf = closed_form_params(p, gauge)
    x = complex(point)
    V = cf.values
    if cf.variant == "u_zero":
        power = int(round(V["b"].real))
        arg = x * x if gauge == "cs_alpha" else x
        return complex(cmath.exp(V["c_tilde"] * arg) * x**power)
    if gauge == "bg_eta":
        eta, b = x, 2 * p.k
        pref = cmath.exp(V["c"] * eta)
        if cf.degenerate:
            return pref * specfun.hyp0f1(b, p.z * eta / p.u, ctl)
        return pref * specfun.kummer_m(V["a"], b, V["c1"] * eta, ctl)
    a2 = x * x
    odd = cf.variant == "bosonic_odd"
    b = 1.5 if odd else 0.5
    pref = cmath.exp(V["c_prime"] * a2) * (x if odd else 1.0)
    if cf.degenerate:
        return pref * specfun.hyp0f1(b, p.z * a2 / (2 * p.u), ctl)
    a = V["a_minus"] if odd else V["a_plus"]
    return pref * specfun.kummer_m(a, b, V["c2"] * a2, ctl)


def overlap_series(state, point, gauge="bg_eta"):
    """Sum of the state's amplitudes against the basis functions at ``point``.

    ``bg_eta``: ``|m; k> -> eta^m sqrt(Gamma(2k) / (m! Gamma(m+2k)))``.
    ``cs_alpha``: ``|n> -> alpha^n / sqrt(n!)`` with ``n`` the photon number.
    """
    x = complex(point)
    c = state.amplitudes
    m = np.arange(c.size)
    if gauge == "bg_eta":
        k = state.repr.k
        power = m
        logw = 0.5 * (gammaln(2 * k) - gammaln(m + 1) - gammaln(m + 2 * k))
    elif gauge == "cs_alpha":
        power = state.photon_numbers
        logw = -0.5 * gammaln(power + 1)
    else:
        raise DomainError(f"unknown gauge {gauge!r}")
    if x == 0:
        return complex(c[0] * np.exp(logw[0]) if power[0] == 0 else 0.0)
    return complex(np.sum(c * np.exp(power * cmath.log(x) + logw)))


# ----------------------------------------------------------------------------
# Finite-superposition structure of quantized states


def desqueeze_reference(p, N=None, branch=1):
    """Apply ``exp(-(xi K+ - xi^* K-))`` to ``solve_acs(p)``.

    ``|xi| = atanh|c|`` and ``arg xi = arg c`` with ``c = -(w + l)/(2u)``.
    For quantized ``z_n`` the result is supported on ``0..n``.
    """
    if p.u == 0:
        raise DomainError("de-squeezing reference needs u != 0")
    c = -(p.w + branch * p.root) / (2 * p.u)
    if not abs(c) < 1:
        raise NotNormalizableError(f"|c| = {abs(c):.6g} >= 1", violated=[f"|c| = {abs(c):.6g} >= 1"])
    xi = SqueezeParam.polar(math.atanh(abs(c)), cmath.phase(c))
    state = solve_acs(p, N)
    return squeeze_apply(SqueezeParam(-xi.xi), state, N)


def finite_structure_check(p, N=None, n=None, threshold=1e-6):
    """True iff the de-squeezed state has norm <= ``threshold`` beyond index ``n``.

    ``n`` defaults to the quantization index of ``p.z``.  For a non-quantized
    eigenvalue the nearest index is tried, and the check fails because the
    reference state has infinite support.
    """
    quant = quantization_index(p)
    branch = quant[1] if quant else 1
    if n is None:
        if quant is not None:
            n = quant[0]
        else:
            a = p.k + p.z / p.root
            n = max(0, int(round(-a.real)))
    ref = desqueeze_reference(p, N, branch)
    beyond = float(np.linalg.norm(ref.amplitudes[n + 1:]))
    return beyond <= threshold


# ----------------------------------------------------------------------------
# On-disk interchange


def export_state(state, params=None):
    return state.to_dict(params.to_dict() if params is not None else None)


def dump_state(path, state, params=None):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(export_state(state, params), fh, indent=1)
        fh.write("\n")


def load_state(path):
    """Read an exported state; returns ``(StateVector, AcsParams or None)``."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    state = StateVector.from_dict(data)
    params = AcsParams.from_dict(data["params"], state.repr) if "params" in data else None
    return state, params
