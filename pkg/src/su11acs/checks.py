"""The acceptance and invariant suite behind ``su11acs check``.

Each criterion is a function of a ``CheckContext`` returning a
``CheckResult``.  Detail strings hold no timings, so the printed report is
byte-identical between runs; timings go to the log.
"""

from __future__ import annotations

import cmath
import logging
import math
import time
from dataclasses import dataclass

import numpy as np

from .errors import AcsError
from .moments import closed_form_squeezed_cat, k_moments, squeeze_flags, squeezing_interval
from .representation import ReprIndex, SqueezeParam, hermitian_spectrum, make_state
from .scan import FAMILIES, FIGURE_TRUNC, figure_csv
from .states import (
    AcsParams,
    bg_state,
    cat_params,
    cat_state,
    eigen_residual,
    finite_structure_check,
    overlap_series,
    perelomov_params,
    perelomov_state,
    quantized_z,
    solve_acs,
    squeezed_binomial_state,
    squeezed_cat_params,
    squeezed_cat_state,
    wavefunction,
)

__all__ = ["CheckContext", "CheckResult", "CRITERIA", "run_checks", "format_report"]

log = logging.getLogger(__name__)

SEED = 20240601
REPS = (
    ReprIndex.even(),
    ReprIndex.odd(),
    ReprIndex(0.5),
    ReprIndex(1.0),
    ReprIndex(1.5),
    ReprIndex(2.0),
)


@dataclass(frozen=True)
class CheckContext:
    """``trunc`` overrides every state truncation (used to provoke failures)."""

    trunc: int | None = None

    def N(self, default):
        return default if self.trunc is None else self.trunc


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


def _disc(rng, radius, size=None):
    r = radius * np.sqrt(rng.uniform(0, 1, size))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, size))


def _random_uvw(rng, radius):
    # u from its modulus and phase; (w, v) from two growth ratios inside the disc
    u = rng.uniform(0.5, 2.0) * cmath.exp(2j * math.pi * rng.uniform())
    t1, t2 = _disc(rng, radius), _disc(rng, radius)
    return complex(u), complex(u * t1 * t2), complex(-u * (t1 + t2))


def _fid_ok(f):
    return f >= 1 - 1e-10


# ----------------------------------------------------------------------------


def c1_residual(ctx):
    rng = np.random.default_rng(SEED + 1)
    N = ctx.N(400)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        u, v, w = _random_uvw(rng, 0.95)
        rep = REPS[rng.integers(len(REPS))]
        p = AcsParams(complex(_disc(rng, 1.0)), u, v, w, rep)
        state = solve_acs(p, N, tol=math.inf)
        worst = max(worst, eigen_residual(p, state))
    elapsed = time.perf_counter() - t0
    log.info("criterion 1: %.2f s", elapsed)
    ok = worst <= 1e-9 and elapsed <= 60
    return ok, f"max residual {worst:.1e} over 200 samples at N={N} (bound 1e-09, runtime bound 60 s)"


def _fig1_family(N):
    fam = FAMILIES["w0_even"]
    return lambda x: k_moments(solve_acs(fam.params_at(x, {}), N))


def c2_fig1(ctx):
    f = _fig1_family(FIGURE_TRUNC["fig1"])
    y = squeezing_interval(f, (0.0, 5.0), "Y", 1.0)
    p = squeezing_interval(f, (0.0, 5.0), "p", 0.5)
    ys = [f(x).var_Y for x in np.linspace(0.0, 5.0, 251)]
    mono = bool(np.all(np.diff(ys) < 0))
    ok = (
        len(y) == 1 and abs(y[0][0] - 1.8) <= 0.15 and y[0][1] == 5.0
        and len(p) == 1 and p[0][0] == 0.0 and abs(p[0][1] - 3.8) <= 0.15
        and mono
    )
    fmt = lambda iv: ", ".join(f"({a:.4f}, {b:.4f})" for a, b in iv) or "none"
    return ok, f"var_Y<1 on {fmt(y)}; var_p<0.5 on {fmt(p)}; var_Y strictly decreasing: {mono}"


def c3_fig2(ctx):
    fam = FAMILIES["squeezed_cat"]
    N = FIGURE_TRUNC["fig2"]
    f = lambda d: k_moments(solve_acs(fam.params_at(d, {}), N))
    X = squeezing_interval(f, (0.0, 0.6), "X", 1.0)
    q = squeezing_interval(f, (0.0, 0.6), "q", 0.5)
    ok = len(X) == 1 and len(q) == 1
    detail = f"var_X<1 on {X}; var_q<1/2 on {q}"
    if ok:
        (xa, xb), (qa, qb) = X[0], q[0]
        ja, jb = max(xa, qa), min(xb, qb)
        ok = (
            abs(xa - 0.10) <= 0.02 and abs(xb - 0.31) <= 0.02
            and abs(qa - 0.17) <= 0.02 and abs(qb - 0.51) <= 0.02
            and abs(ja - 0.17) <= 0.02 and abs(jb - 0.31) <= 0.02
        )
        detail = (
            f"var_X<1 on ({xa:.4f}, {xb:.4f}); var_q<1/2 on ({qa:.4f}, {qb:.4f}); "
            f"joint ({ja:.4f}, {jb:.4f})"
        )
    return ok, detail


def c4_schrodinger(ctx):
    rng = np.random.default_rng(SEED + 4)
    N = ctx.N(400)
    worst = 0.0
    for _ in range(100):
        ratio = rng.uniform(0, 0.9)
        s = ratio / math.sqrt(1 - ratio**2)  # |v| with |u|^2 - |v|^2 = 1
        u = math.sqrt(1 + s * s) * cmath.exp(2j * math.pi * rng.uniform())
        v = s * cmath.exp(2j * math.pi * rng.uniform())
        rep = REPS[rng.integers(len(REPS))]
        p = AcsParams(complex(_disc(rng, 2.0)), u, v, 0.0, rep)
        r = k_moments(solve_acs(p, N))
        k3 = r.mean_K[2]
        worst = max(worst, abs(r.schrodinger_lhs - k3**2 / 4) / k3**2)
    return worst <= 1e-8, f"max |lhs - <K3>^2/4| / <K3>^2 = {worst:.1e} over 100 samples (bound 1e-08)"


def c5_subfamilies(ctx):
    rng = np.random.default_rng(SEED + 5)
    N = ctx.N(400)
    worst = {}

    def record(name, f):
        worst[name] = min(worst.get(name, 1.0), f)

    for rep in REPS:
        for _ in range(3):
            z = complex(_disc(rng, 1.5))
            record("bg", solve_acs(AcsParams(z, 1.0, 0.0, 0.0, rep), N).fidelity(bg_state(z, rep, N)))
            tau = complex(_disc(rng, 0.8))
            u = rng.uniform(0.5, 2.0) * cmath.exp(2j * math.pi * rng.uniform())
            record("perelomov", solve_acs(perelomov_params(tau, rep, u), N).fidelity(perelomov_state(tau, rep, N)))
    for parity in (0, 1):
        for _ in range(4):
            z = complex(_disc(rng, 2.0))
            record("cat", solve_acs(cat_params(z, parity), N).fidelity(cat_state(cmath.sqrt(2 * z), parity, N)))
            xi = SqueezeParam.polar(rng.uniform(0, 1.0), rng.uniform(0, 2 * math.pi))
            direct = squeezed_cat_state(z, xi, parity, N)
            record("squeezed_cat", solve_acs(squeezed_cat_params(z, xi, parity), N).fidelity(direct))
    for n in range(6):
        rep = ReprIndex.bosonic(n % 2)
        w = complex(rng.uniform(0.5, 2.0) * cmath.exp(2j * math.pi * rng.uniform()))
        fock = np.zeros(N + 1, dtype=complex)
        fock[n // 2] = 1.0
        ref = make_state(rep, fock)
        record("binomial_v0", squeezed_binomial_state(n, 0.0, w, N).fidelity(ref))
        acs = solve_acs(AcsParams(w * (rep.k + n // 2), 0.0, 0.0, w, rep), N)
        record("binomial_v0", acs.fidelity(ref))
    ok = all(_fid_ok(f) for f in worst.values())
    parts = ", ".join(f"{k} {1 - f:.1e}" for k, f in worst.items())
    return ok, f"max infidelity: {parts} (bound 1e-10); {_printed_maps(N)}"


def _printed_maps(N):
    # informational: the lock z = -k sqrt(-uv) and the map w = +sinh(2r) e^{i theta} as printed
    rep, tau = ReprIndex.even(), 0.5
    lock = AcsParams(-rep.k * cmath.sqrt(tau**2), 1.0, -(tau**2), 0.0, rep)
    f_lock = solve_acs(lock, N).fidelity(perelomov_state(tau, rep, N))
    xi = SqueezeParam.polar(0.5, 0.0)
    p = squeezed_cat_params(0.5, xi)
    flipped = AcsParams(p.z, p.u, p.v, -p.w, p.repr)
    f_sign = solve_acs(flipped, N).fidelity(squeezed_cat_state(0.5, xi, 0, N))
    return f"as printed: lock z=-k sqrt(-uv) fidelity {f_lock:.4f}, w=+sinh(2r) fidelity {f_sign:.4f}"


def c6_closed_forms(ctx):
    rng = np.random.default_rng(SEED + 6)
    N = ctx.N(1000)
    worst = dict(n=0.0, a2=0.0, n2=0.0, a4=0.0)
    for _ in range(50):
        z = complex(_disc(rng, 1.5))
        xi = SqueezeParam.polar(rng.uniform(0, 1.5), rng.uniform(0, 2 * math.pi))
        n_bar = k_moments(cat_state(cmath.sqrt(2 * z), 0, N)).mean_n
        cf = closed_form_squeezed_cat(z, xi, n_bar)
        r = k_moments(solve_acs(squeezed_cat_params(z, xi), N))
        for key, a, b in (
            ("n", cf.mean_n, r.mean_n),
            ("a2", cf.mean_a2, r.mean_a2),
            ("n2", cf.mean_n2kind, r.mean_n2kind),
            ("a4", cf.mean_a4, r.mean_a4),
        ):
            worst[key] = max(worst[key], abs(a - b) / abs(b))
    ok = max(worst.values()) <= 1e-8
    parts = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    return ok, f"max relative deviation over 50 samples: {parts} (bound 1e-08)"


def c7_quantization(ctx):
    rng = np.random.default_rng(SEED + 7)
    N = ctx.N(400)
    reps = (ReprIndex.even(), ReprIndex(0.5), ReprIndex.odd(), ReprIndex(1.0))
    failures = []
    count = 0
    for n in range(4):
        for rep in reps:
            for _ in range(2):
                u, v, w = _random_uvw(rng, 0.9)
                p = AcsParams(quantized_z(n, u, v, w, rep.k), u, v, w, rep)
                count += 1
                if not finite_structure_check(p, N, n):
                    failures.append((n, rep.k))
    return not failures, f"{count - len(failures)}/{count} quantized states have de-squeezed support within 0..n"


def c8_hermitian(ctx):
    rng = np.random.default_rng(SEED + 8)
    N = ctx.N(400)
    levels = 20
    spacing_err = ortho_err = 0.0
    flags = True
    for i in range(20):
        rep = REPS[i % len(REPS)]
        u = rng.uniform(0.2, 1.0) * cmath.exp(2j * math.pi * rng.uniform())
        w = 2 * abs(u) * rng.uniform(1.1, 3.0) * (1 if i % 2 == 0 else -1)
        spec = hermitian_spectrum(u, w, rep, N)
        flags &= spec.normalizable
        order = np.argsort(np.sign(w) * spec.eigenvalues)[:levels]
        vals = spec.eigenvalues[order]
        gap = math.sqrt(w * w - 4 * abs(u) ** 2)
        spacing_err = max(spacing_err, float(np.max(np.abs(np.abs(np.diff(vals)) - gap))))
        V = np.array([spec.eigenvectors[j].amplitudes for j in order])
        G = V.conj() @ V.T
        ortho_err = max(ortho_err, float(np.max(np.abs(G - np.diag(np.diag(G))))))
    ok = flags and spacing_err <= 1e-6 and ortho_err <= 1e-10
    return ok, (
        f"lowest {levels} levels of 20 elliptic samples: spacing error {spacing_err:.1e} (bound 1e-06), "
        f"max overlap {ortho_err:.1e} (bound 1e-10), normalizable flags {flags}"
    )


def c9_subpoissonian(ctx):
    N = ctx.N(1000)
    cases = [(AcsParams(-0.5 - 5j, math.sqrt(1.25), -0.5, 0.0), False)]
    for s in (1, -1):
        for x in (0.1, 0.3, 0.45):
            cases.append((AcsParams(2.5 * s, math.sqrt(1 + x * x), x, 0.0), True))
    ok = True
    parts = []
    for p, need_unsqueezed in cases:
        r = k_moments(solve_acs(p, N))
        good = r.mandel_q < 0
        if need_unsqueezed:
            f = squeeze_flags(r)
            good &= not (f.q_sq or f.p_sq or f.x_sq or f.y_sq)
        ok &= good
        parts.append(f"{r.mandel_q:.4f}")
    return ok, f"Q = {', '.join(parts)}; flags all false for the |+-2.5> states: {ok}"


def c10_wavefunctions(ctx):
    rng = np.random.default_rng(SEED + 10)
    N = ctx.N(400)
    worst = 0.0
    cases = []
    for i in range(5):
        u, v, w = _random_uvw(rng, 0.9)
        cases.append((AcsParams(complex(_disc(rng, 1.0)), u, v, w, ReprIndex((1 + i % 3) / 2)), "bg_eta"))
        u, v, w = _random_uvw(rng, 0.9)
        cases.append((AcsParams(complex(_disc(rng, 1.0)), u, v, w, ReprIndex.even()), "cs_alpha"))
        u, v, w = _random_uvw(rng, 0.9)
        cases.append((AcsParams(complex(_disc(rng, 1.0)), u, v, w, ReprIndex.odd()), "cs_alpha"))
        rep = REPS[i % len(REPS)]
        w = complex(rng.uniform(0.5, 2.0) * cmath.exp(2j * math.pi * rng.uniform()))
        v = w * complex(_disc(rng, 0.8))
        n = int(rng.integers(4))
        gauge = "cs_alpha" if rep.is_bosonic and i % 2 else "bg_eta"
        cases.append((AcsParams(w * (rep.k + n), 0.0, v, w, rep), gauge))
    for p, gauge in cases:
        state = solve_acs(p, N)
        pts = _disc(rng, 0.8, 10)
        pts = np.where(np.abs(pts) < 0.2, 0.2 * np.exp(1j * np.angle(pts)), pts)
        ratios = np.array([wavefunction(p, x, gauge) / overlap_series(state, x, gauge) for x in pts])
        worst = max(worst, float(np.max(np.abs(ratios / ratios[0] - 1))))
    return worst <= 1e-6, f"max ratio spread {worst:.1e} over {len(cases)} states x 10 points (bound 1e-06)"


def c11_p_collapse(ctx):
    N = ctx.N(1500)
    rs = (0.5, 1.0, 1.5, 2.0)
    vals = [k_moments(solve_acs(squeezed_cat_params(1j, SqueezeParam(1j * r)), N)).var_p for r in rs]
    ok = bool(np.all(np.diff(vals) < 0))
    real = [k_moments(solve_acs(squeezed_cat_params(1j, SqueezeParam(r)), N)).var_p for r in rs]
    return ok, (
        "var_p at r = 0.5, 1, 1.5, 2 for xi = i r: " + ", ".join(f"{v:.4g}" for v in vals)
        + "; for comparison xi = r gives " + ", ".join(f"{v:.4g}" for v in real)
    )


def c12_runtime_determinism(ctx, t0):
    same = {which: figure_csv(which) == figure_csv(which) for which in ("fig1", "fig2")}
    elapsed = time.perf_counter() - t0
    log.info("suite total: %.1f s", elapsed)
    ok = elapsed <= 300 and all(same.values())
    return ok, f"suite runtime within 300 s: {elapsed <= 300}; figure output byte-identical: {all(same.values())}"


CRITERIA = (
    (1, "eigen-residual", c1_residual),
    (2, "figure 1 intervals", c2_fig1),
    (3, "figure 2 intervals", c3_fig2),
    (4, "Schrodinger intelligent states", c4_schrodinger),
    (5, "subfamily fidelity", c5_subfamilies),
    (6, "squeezed-cat closed forms", c6_closed_forms),
    (7, "quantization and finite structure", c7_quantization),
    (8, "hermitean spectrum and orthogonality", c8_hermitian),
    (9, "subpoissonian examples", c9_subpoissonian),
    (10, "wavefunction equivalence", c10_wavefunctions),
    (11, "monotone p-collapse", c11_p_collapse),
)


def _guarded(number, name, fn, *args):
    try:
        ok, detail = fn(*args)
    except AcsError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(number, name, bool(ok), detail)


def run_checks(ctx=CheckContext(), only=None):
    """Run the criteria (all, or the numbers in ``only``) in order."""
    t0 = time.perf_counter()
    results = []
    for number, name, fn in CRITERIA:
        if only is None or number in only:
            t = time.perf_counter()
            results.append(_guarded(number, name, fn, ctx))
            log.info("criterion %d: %.2f s", number, time.perf_counter() - t)
    if only is None or 12 in only:
        results.append(_guarded(12, "runtime and determinism", c12_runtime_determinism, ctx, t0))
    return results


def format_report(results):
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
