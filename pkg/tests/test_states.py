import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from su11acs.errors import DomainError, NotNormalizableError, TruncationError
from su11acs.representation import ReprIndex, SqueezeParam, hermitian_spectrum, make_state, operator_matrix
from su11acs.states import (
    AcsParams,
    SubfamilySpec,
    bg_state,
    cat_params,
    cat_state,
    closed_form_params,
    dump_state,
    eigen_residual,
    finite_structure_check,
    growth_ratios,
    ladder_recurrence,
    load_state,
    normalizable,
    overlap_series,
    perelomov_params,
    perelomov_state,
    quantization_index,
    quantized_normalizable,
    quantized_z,
    solve_acs,
    squeezed_binomial_state,
    squeezed_cat_params,
    squeezed_cat_state,
    subfamily,
    violated_inequalities,
    wavefunction,
)

REPS = [ReprIndex.even(), ReprIndex.odd(), ReprIndex(0.5), ReprIndex(1.0), ReprIndex(1.5)]
finite = dict(allow_nan=False, allow_infinity=False)
disc = st.builds(
    lambda r, t: r * cmath.exp(1j * t), st.floats(0, 0.9), st.floats(0, 2 * math.pi)
)


def params_from_roots(u, t1, t2, z, rep):
    # roots of u t^2 + w t + v = 0 are the asymptotic amplitude ratios
    return AcsParams(z, u, u * t1 * t2, -u * (t1 + t2), rep)


def ratio_spread(p, state, gauge, points):
    r = np.array([wavefunction(p, x, gauge) / overlap_series(state, x, gauge) for x in points])
    return float(np.max(np.abs(r / r[0] - 1)))


# ---------------------------------------------------------------- normalizability


@pytest.mark.parametrize(
    "u,v,w,expected",
    [
        (1, 0, 0, True),
        (1, 0, 3, False),
        (1, 0.5, 0, True),
        (1, -0.99, 0, True),
        (1, 1.01, 0, False),
        (1, 0.25, 1, True),    # w^2 = 4uv, |w/2u| = 1/2
        (1, 1, 2, False),      # w^2 = 4uv, |w/2u| = 1
        (0, 0.5, 1, True),
        (0, 1.5, 1, False),
    ],
)
def test_normalizability_table(u, v, w, expected):
    assert normalizable(u, v, w) is expected


@settings(max_examples=200, deadline=None)
@given(
    u=st.complex_numbers(min_magnitude=0.1, max_magnitude=3, **finite),
    v=st.complex_numbers(max_magnitude=3, **finite),
    w=st.complex_numbers(max_magnitude=3, **finite),
)
def test_normalizability_matches_characteristic_roots(u, v, w):
    roots = np.abs(np.roots([u, w, v]))
    roots = np.concatenate([roots, np.zeros(2 - roots.size)])  # v = 0 drops a zero root
    assume(np.all(np.abs(roots - 1) > 1e-9))
    assert normalizable(u, v, w) == bool(np.all(roots < 1))
    assert quantized_normalizable(u, v, w) == bool(np.any(roots < 1))


def test_violated_inequalities_are_reported():
    with pytest.raises(NotNormalizableError) as info:
        solve_acs(AcsParams(0.3, 1.0, 0.0, 3.0))
    assert info.value.violated == tuple(violated_inequalities(1.0, 0.0, 3.0))
    assert len(info.value.violated) == 1 and "3" in info.value.violated[0]


def test_degenerate_inputs():
    with pytest.raises(DomainError):
        AcsParams(0, 0, 0, 0)
    with pytest.raises(DomainError):
        solve_acs(AcsParams(1, 0, 1, 0))
    with pytest.raises(DomainError):
        solve_acs(AcsParams(0.3, 0, 0.2, 1.0))  # u = 0 needs quantized z
    with pytest.raises(DomainError):
        growth_ratios(0, 1, 1)


def test_divergence_beyond_the_frontier():
    # outside the region the raw recurrence grows without bound as N increases
    u, v, w, z = 1.0, 0.2, 1.5, 0.3 + 0.1j
    assert not normalizable(u, v, w)
    c = ladder_recurrence(z, u, v, w, 0.25, 800)
    assert np.linalg.norm(c[:801]) > 1e20 * np.linalg.norm(c[:201])
    inside = ladder_recurrence(z, 1.0, 0.2, 0.5, 0.25, 800)
    assert np.linalg.norm(inside) == pytest.approx(np.linalg.norm(inside[:201]), rel=1e-12)


# ---------------------------------------------------------------- eigenstates


@settings(max_examples=60, deadline=None)
@given(
    u=st.complex_numbers(min_magnitude=0.5, max_magnitude=2, **finite),
    t1=disc,
    t2=disc,
    z=st.complex_numbers(max_magnitude=1.5, **finite),
    i=st.integers(0, len(REPS) - 1),
)
def test_eigen_residual_against_dense_matrix(u, t1, t2, z, i):
    p = params_from_roots(u, t1, t2, z, REPS[i])
    state = solve_acs(p, 800)
    M = operator_matrix(p.u, p.v, p.w, p.repr, 800)
    r = M @ state.amplitudes - z * state.amplitudes
    assert np.linalg.norm(r[:-1]) <= 1e-9
    assert eigen_residual(p, state) <= 1e-9
    assert state.norm == pytest.approx(1.0)


@pytest.mark.parametrize("n", range(4))
@pytest.mark.parametrize("rep", REPS, ids=lambda r: f"k={r.k}")
def test_boundary_solve_matches_hermitian_eigenvector(n, rep):
    # elliptic hermitean operator: only quantized eigenvalues are normalizable
    u, w = 0.5 * cmath.exp(0.4j), 2.0
    p0 = AcsParams(0, u, np.conj(u), w, rep)
    assert not normalizable(p0.u, p0.v, p0.w)
    branch = -1 if abs(w + p0.root) > abs(w - p0.root) else 1
    z = quantized_z(n, u, p0.v, w, rep.k, branch)
    assert abs(z.imag) < 1e-12
    p = AcsParams(z, u, p0.v, w, rep)
    assert quantization_index(p) == (n, branch)
    state = solve_acs(p, 300)
    spec = hermitian_spectrum(u, w, rep, 300)
    j = int(np.argmin(np.abs(spec.eigenvalues - z.real)))
    assert spec.eigenvalues[j] == pytest.approx(z.real, rel=1e-10)
    assert state.fidelity(spec.eigenvectors[j]) == pytest.approx(1.0, abs=1e-10)


def test_truncation_is_certified():
    p = squeezed_cat_params(1j, SqueezeParam.polar(2.0, math.pi / 2))
    with pytest.raises(TruncationError) as info:
        solve_acs(p, 50)
    assert info.value.tail_norm > 1e-8 and info.value.dimension == 50
    assert solve_acs(p, 1500).certified


# ---------------------------------------------------------------- named subfamilies


@pytest.mark.parametrize("rep", REPS, ids=lambda r: f"k={r.k}")
def test_bg_limit(rep):
    z = 0.8 - 0.6j
    assert solve_acs(AcsParams(z, 1, 0, 0, rep)).fidelity(bg_state(z, rep)) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("rep", REPS, ids=lambda r: f"k={r.k}")
@pytest.mark.parametrize("tau", [0.3, -0.5j, 0.6 * cmath.exp(2.2j)])
def test_perelomov_lock(rep, tau):
    u = 1.3 * cmath.exp(0.9j)
    p = perelomov_params(tau, rep, u)
    assert p.z == pytest.approx(2 * rep.k * u * tau)
    # the same lock written through sqrt(-uv): z = -2k sqrt(-uv) with tau = -sqrt(-v/u)
    s = cmath.sqrt(-p.u * p.v)
    if abs(-s / p.u - tau) < 1e-12:
        assert p.z == pytest.approx(-2 * rep.k * s)
    assert solve_acs(p).fidelity(perelomov_state(tau, rep)) == pytest.approx(1, abs=1e-12)


def test_printed_perelomov_lock_is_off_by_two():
    # z = -k sqrt(-uv) with tau = sqrt(-v/u) does not give |tau; k>
    rep, tau = ReprIndex(1.0), 0.5
    u, v = 1.0, -(tau**2)
    printed = AcsParams(-rep.k * cmath.sqrt(-u * v), u, v, 0, rep)
    assert solve_acs(printed).fidelity(perelomov_state(tau, rep)) < 0.9
    corrected = AcsParams(-2 * rep.k * cmath.sqrt(-u * v), u, v, 0, rep)
    assert solve_acs(corrected).fidelity(perelomov_state(-tau, rep)) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("parity", [0, 1])
@pytest.mark.parametrize("z", [0.7, -1.2 + 0.5j, 2j])
def test_cats(parity, z):
    assert solve_acs(cat_params(z, parity)).fidelity(cat_state(cmath.sqrt(2 * z), parity)) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("parity", [0, 1])
@pytest.mark.parametrize("z,r,theta", [(0.5, 0.4, 0.0), (-0.3 + 0.8j, 0.9, 2.0), (1j, 0.2, 5.0)])
def test_squeezed_cat_map(parity, z, r, theta):
    xi = SqueezeParam.polar(r, theta)
    p = squeezed_cat_params(z, xi, parity)
    assert abs(p.l2) < 1e-12  # squeezed cats sit on the degenerate surface w^2 = 4uv
    direct = squeezed_cat_state(z, xi, parity)
    assert solve_acs(p).fidelity(direct) == pytest.approx(1, abs=1e-12)
    # the opposite sign of w squeezes the other way
    flipped = AcsParams(p.z, p.u, p.v, -p.w, p.repr)
    assert solve_acs(flipped).fidelity(direct) < 0.99


@pytest.mark.parametrize("n", range(7))
def test_squeezed_binomial_is_u_zero_eigenstate(n):
    # quantized u = 0 eigenvalue for photon number n: z = w (2n + 1) / 4
    rep = ReprIndex.bosonic(n % 2)
    v, w = 0.3 - 0.2j, 0.9 + 0.4j
    z = w * (2 * n + 1) / 4
    p = AcsParams(z, 0, v, w, rep)
    assert quantization_index(p) == (n // 2, 0)
    assert solve_acs(p).fidelity(squeezed_binomial_state(n, v, w)) == pytest.approx(1, abs=1e-12)
    fock = np.zeros(401)
    fock[n // 2] = 1
    assert squeezed_binomial_state(n, 0, w).fidelity(make_state(rep, fock)) == pytest.approx(1, abs=1e-14)
    with pytest.raises(DomainError):
        solve_acs(AcsParams(w * (n + 2) / 4 + 0.01 * w, 0, v, w, rep))


def test_subfamily_dispatch():
    rep = ReprIndex(1.5)
    assert subfamily(SubfamilySpec("bg", {"z": 0.5}, rep)).fidelity(bg_state(0.5, rep)) == pytest.approx(1)
    with pytest.raises(DomainError):
        SubfamilySpec("perelomov", {"tau": 1.2})
    with pytest.raises(DomainError):
        SubfamilySpec("squeezed_binomial", {"n": 2, "v": 2, "w": 1})
    s = subfamily(SubfamilySpec("squeezed_cat", {"z": 0.4, "xi": 0.3j}))
    assert s.repr == ReprIndex.even()


# ---------------------------------------------------------------- closed forms


def test_basis_normalization_gives_0f1_for_bg_states():
    # with weights Gamma(2k)/(m! Gamma(m+2k)) the BG overlap is exactly 0F1(;2k; z eta)
    rep, z = ReprIndex(1.5), 0.7 + 0.3j
    state = bg_state(z, rep)
    pts = [0.3, -0.5 + 0.2j, 0.8j]
    ratios = [overlap_series(state, x) / complex(mpmath.hyp0f1(2 * rep.k, z * x)) for x in pts]
    assert max(abs(r / ratios[0] - 1) for r in ratios) < 1e-12


@settings(max_examples=40, deadline=None)
@given(
    u=st.complex_numbers(min_magnitude=0.5, max_magnitude=2, **finite),
    t1=disc,
    t2=disc,
    z=st.complex_numbers(max_magnitude=1, **finite),
    i=st.integers(0, len(REPS) - 1),
)
def test_closed_forms_match_overlap(u, t1, t2, z, i):
    rep = REPS[i]
    p = params_from_roots(u, t1, t2, z, rep)
    assume(abs(p.root / p.u) > 1e-6)
    state = solve_acs(p)
    pts = [0.3, 0.5j, -0.4 + 0.4j, 0.7 * cmath.exp(2j)]
    assert ratio_spread(p, state, "bg_eta", pts) < 1e-8
    if rep.is_bosonic:
        assert ratio_spread(p, state, "cs_alpha", pts) < 1e-8


@pytest.mark.parametrize("rep", REPS, ids=lambda r: f"k={r.k}")
def test_degenerate_killing_form(rep):
    # w^2 = 4uv: the Kummer factor degenerates to 0F1(;2k; z eta / u)
    u, w = 1.2 * cmath.exp(0.3j), 0.8 * cmath.exp(-1.1j)
    p = AcsParams(0.6 - 0.2j, u, w * w / (4 * u), w, rep)
    assert closed_form_params(p).degenerate
    state = solve_acs(p)
    pts = [0.2, -0.6j, 0.5 + 0.5j]
    assert ratio_spread(p, state, "bg_eta", pts) < 1e-10
    if rep.is_bosonic:
        assert ratio_spread(p, state, "cs_alpha", pts) < 1e-10


def test_odd_closed_form_structure():
    p = AcsParams(0.4 + 0.1j, 1.1, 0.3j, 0.2 - 0.1j, ReprIndex.odd())
    cf = closed_form_params(p, "cs_alpha")
    assert cf.variant == "bosonic_odd"
    state = solve_acs(p)
    assert wavefunction(p, 0.0, "cs_alpha") == 0
    assert ratio_spread(p, state, "cs_alpha", [0.2, 0.4j, -0.3 + 0.6j]) < 1e-10


def test_closed_form_domain():
    with pytest.raises(NotNormalizableError):
        closed_form_params(AcsParams(0.1, 1, 0, 3))
    with pytest.raises(DomainError):
        closed_form_params(AcsParams(0.1, 1, 0, 0, ReprIndex(1.0)), "cs_alpha")


# ---------------------------------------------------------------- quantization


@pytest.mark.parametrize("n", range(4))
@pytest.mark.parametrize("rep", [ReprIndex.even(), ReprIndex(0.5), ReprIndex.odd(), ReprIndex(1.0)], ids=lambda r: f"k={r.k}")
def test_quantized_states_are_squeezed_finite_superpositions(n, rep):
    u, v, w = 1.0, 0.2 - 0.1j, 0.5 + 0.3j
    p = AcsParams(quantized_z(n, u, v, w, rep.k), u, v, w, rep)
    assert quantization_index(p)[0] == n
    assert finite_structure_check(p, 300)
    off = AcsParams(p.z + 0.37, u, v, w, rep)
    assert quantization_index(off) is None
    assert not finite_structure_check(off, 300)


def test_quantized_z_validation():
    with pytest.raises(DomainError):
        quantized_z(-1, 1, 0, 1, 0.25)


# ---------------------------------------------------------------- interchange


def test_export_roundtrip(tmp_path):
    p = AcsParams(0.3 - 0.2j, 1.1, 0.2, 0.1j, ReprIndex.odd())
    state = solve_acs(p)
    path = tmp_path / "s.json"
    dump_state(path, state, p)
    back, params = load_state(path)
    np.testing.assert_array_equal(back.amplitudes, state.amplitudes)
    assert params == p
    assert back.tail_norm == state.tail_norm
