"""Discrete-series SU(1,1) representation data in the orthonormal ladder basis.

States are carried as amplitude vectors over ``|m; k>``, ``m = 0..N``, with

    K+ |m> = sqrt((m+1)(m+2k)) |m+1>
    K- |m> = sqrt(m(m+2k-1))   |m-1>
    K3 |m> = (k+m) |m>

The bosonic (squared-amplitude) realization ``K- = a^2/2``,
``K+ = a^dag^2/2``, ``K3 = (a^dag a + 1/2)/2`` splits Fock space into the
even sector (k = 1/4, photon number n = 2m) and the odd sector (k = 3/4,
n = 2m + 1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import DomainError, TruncationError

__all__ = [
    "Flavor",
    "ReprIndex",
    "StateVector",
    "SqueezeParam",
    "TAIL_THRESHOLD",
    "default_truncation",
    "ladder_g",
    "ladder_action",
    "generators",
    "operator_matrix",
    "apply_operator",
    "make_state",
    "squeeze_apply",
    "hermitian_spectrum",
    "Spectrum",
]

# Tail-norm level certifying that a truncation window holds the state.
TAIL_THRESHOLD = 1e-8


class Flavor(str, enum.Enum):
    ABSTRACT = "abstract"
    BOSONIC_EVEN = "bosonic_even"
    BOSONIC_ODD = "bosonic_odd"


@dataclass(frozen=True)
class ReprIndex:
    """Bargmann index ``k`` plus the realization it comes from."""

    k: float
    flavor: Flavor = Flavor.ABSTRACT

    def __post_init__(self):
        flavor = Flavor(self.flavor)
        object.__setattr__(self, "flavor", flavor)
        k = float(self.k)
        object.__setattr__(self, "k", k)
        if flavor is Flavor.BOSONIC_EVEN and k != 0.25:
            raise DomainError(f"bosonic_even requires k = 1/4, got {k}")
        if flavor is Flavor.BOSONIC_ODD and k != 0.75:
            raise DomainError(f"bosonic_odd requires k = 3/4, got {k}")
        if flavor is Flavor.ABSTRACT and (k <= 0 or 2 * k != round(2 * k)):
            raise DomainError(f"abstract discrete series requires k in {{1/2, 1, 3/2, ...}}, got {k}")

    @classmethod
    def even(cls):
        return cls(0.25, Flavor.BOSONIC_EVEN)

    @classmethod
    def odd(cls):
        return cls(0.75, Flavor.BOSONIC_ODD)

    @classmethod
    def bosonic(cls, parity):
        return cls.odd() if parity % 2 else cls.even()

    @property
    def is_bosonic(self):
        return self.flavor is not Flavor.ABSTRACT

    @property
    def parity(self):
        """Photon-number parity of the sector; None for abstract representations."""
        if self.flavor is Flavor.BOSONIC_EVEN:
            return 0
        if self.flavor is Flavor.BOSONIC_ODD:
            return 1
        return None

    def photon_number(self, m):
        """Fock photon number of ladder index ``m`` (array-friendly)."""
        if not self.is_bosonic:
            raise DomainError("photon numbers exist only for bosonic flavors")
        return 2 * np.asarray(m) + self.parity

    def to_dict(self):
        return {"k": self.k, "flavor": self.flavor.value}

    @classmethod
    def from_dict(cls, data):
        return cls(float(data["k"]), Flavor(data["flavor"]))


def default_truncation(rep):
    return 400 if rep.is_bosonic else 200


def _tail(amplitudes):
    """Probability weight in the last 10% of the window (at least one entry)."""
    p = np.abs(amplitudes) ** 2
    total = p.sum()
    if total == 0:
        return 0.0
    width = max(1, int(np.ceil(0.1 * len(p))))
    return float(p[-width:].sum() / total)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Truncated ladder-basis state with its truncation certificate.

    ``amplitudes[m]`` is the coefficient of ``|m; k>``.  ``tail_norm`` is the
    probability in the last 10% of the window; a value below
    ``TAIL_THRESHOLD`` certifies that the truncation captures the state.
    """

    repr: ReprIndex
    amplitudes: np.ndarray
    tail_norm: float = field(default=0.0)

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex)
        if amp.ndim != 1 or amp.size < 1:
            raise DomainError("amplitudes must be a non-empty 1-d array")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dimension(self):
        """Truncation index N (the window is ``0..N``)."""
        return self.amplitudes.size - 1

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    @property
    def certified(self):
        return self.tail_norm <= TAIL_THRESHOLD

    @property
    def photon_numbers(self):
        """Photon number of each stored amplitude (a view, no reindexing)."""
        return self.repr.photon_number(np.arange(self.amplitudes.size))

    def to_fock(self):
        """Dense Fock vector with the opposite-parity entries set to zero."""
        n = self.photon_numbers
        fock = np.zeros(n[-1] + 1, dtype=complex)
        fock[n] = self.amplitudes
        return fock

    def padded(self, N):
        """Amplitudes zero-padded (or checked-truncated) to window ``0..N``."""
        amp = self.amplitudes
        if N + 1 >= amp.size:
            return np.concatenate([amp, np.zeros(N + 1 - amp.size, dtype=complex)])
        dropped = float(np.sum(np.abs(amp[N + 1:]) ** 2))
        if dropped > TAIL_THRESHOLD:
            raise TruncationError(
                f"shrinking the window to N={N} discards weight {dropped:.3g}",
                tail_norm=dropped,
                dimension=N,
            )
        return amp[: N + 1].copy()

    def inner(self, other):
        """``<self|other>`` over the common window."""
        if self.repr != other.repr:
            raise DomainError("states live in different representations")
        n = min(self.amplitudes.size, other.amplitudes.size)
        return complex(np.vdot(self.amplitudes[:n], other.amplitudes[:n]))

    def fidelity(self, other):
        return abs(self.inner(other)) ** 2 / (self.norm**2 * other.norm**2)

    def to_dict(self, params=None):
        out = {"repr": self.repr.to_dict()}
        if params is not None:
            out["params"] = params
        out["amplitudes"] = [[float(c.real), float(c.imag)] for c in self.amplitudes]
        out["tail_norm"] = self.tail_norm
        return out

    @classmethod
    def from_dict(cls, data):
        amp = np.array([complex(re, im) for re, im in data["amplitudes"]])
        return cls(ReprIndex.from_dict(data["repr"]), amp, float(data["tail_norm"]))


def make_state(rep, amplitudes, normalize=True):
    """Wrap raw amplitudes: normalize, fix the global phase, compute the tail.

    The phase convention makes the first non-negligible amplitude real and
    positive so that states from different constructions compare directly.
    """
    amp = np.asarray(amplitudes, dtype=complex)
    if normalize:
        nrm = np.linalg.norm(amp)
        if nrm == 0 or not np.isfinite(nrm):
            raise DomainError("cannot normalize a zero or non-finite amplitude vector")
        amp = amp / nrm
        mags = np.abs(amp)
        lead = int(np.argmax(mags > 1e-12 * mags.max()))
        amp = amp * (np.conj(amp[lead]) / mags[lead])
    return StateVector(rep, amp, _tail(amp))


@dataclass(frozen=True)
class SqueezeParam:
    """Squeeze parameter ``xi = r e^{i theta}`` of ``exp(xi K+ - xi^* K-)``."""

    xi: complex

    def __post_init__(self):
        object.__setattr__(self, "xi", complex(self.xi))

    @classmethod
    def polar(cls, r, theta=0.0):
        if r < 0:
            raise DomainError(f"squeeze modulus must be non-negative, got {r}")
        return cls(r * np.exp(1j * theta))

    @property
    def r(self):
        return abs(self.xi)

    @property
    def theta(self):
        return float(np.angle(self.xi)) % (2 * np.pi)


def ladder_g(k, m):
    """Matrix element ``<m+1|K+|m> = sqrt((m+1)(m+2k))``; zero for ``m < 0``."""
    m = np.asarray(m, dtype=float)
    return np.sqrt(np.clip((m + 1) * (m + 2 * k), 0.0, None))


def ladder_action(rep, m):
    """Return ``(f_plus, f_minus, e3)`` for ``K+|m>``, ``K-|m>`` and ``K3|m>``."""
    if m < 0:
        raise DomainError(f"ladder index must be non-negative, got {m}")
    k = rep.k
    return float(ladder_g(k, m)), float(ladder_g(k, m - 1)), k + m


def generators(rep, N):
    """Dense truncated ``(K-, K+, K3)`` on the window ``0..N``."""
    g = ladder_g(rep.k, np.arange(N))
    k_plus = np.diag(g, -1).astype(complex)
    k_minus = np.diag(g, 1).astype(complex)
    k3 = np.diag(rep.k + np.arange(N + 1)).astype(complex)
    return k_minus, k_plus, k3


def operator_matrix(u, v, w, rep, N):
    """Truncated ``u K- + v K+ + w K3`` as a dense ``(N+1) x (N+1)`` array."""
    if N < 2:
        raise DomainError(f"truncation must be at least 2, got {N}")
    g = ladder_g(rep.k, np.arange(N))
    return (
        np.diag(u * g, 1)
        + np.diag(v * g, -1)
        + np.diag(w * (rep.k + np.arange(N + 1)))
    ).astype(complex)


def apply_operator(u, v, w, rep, amplitudes, extend=False):
    """``(u K- + v K+ + w K3) c`` in O(N).

    With ``extend=True`` the result has one extra entry holding the
    ``K+`` spill-over into ``|N+1>``; otherwise it is cut at ``N``.
    """
    c = np.asarray(amplitudes, dtype=complex)
    N = c.size - 1
    g = ladder_g(rep.k, np.arange(N + 1))
    out = np.zeros(N + 2, dtype=complex)
    out[: N + 1] += w * (rep.k + np.arange(N + 1)) * c
    out[:N] += u * g[:N] * c[1:]
    out[1:] += v * g * c
    return out if extend else out[: N + 1]


def squeeze_apply(xi, psi, N=None, renormalize=True, check_tail=True):
    """Apply ``exp(xi K+ - xi^* K-)`` to ``psi`` inside the window ``0..N``.

    The anti-hermitean tridiagonal generator is densified and exponentiated
    by scaling and squaring with a Pade approximant.

    Raises
    ------
    TruncationError
        The result has more than ``TAIL_THRESHOLD`` weight in its tail.
    """
    if not isinstance(xi, SqueezeParam):
        xi = SqueezeParam(xi)
    N = psi.dimension if N is None else int(N)
    c = psi.padded(N)
    if xi.xi == 0:
        out = c
    else:
        k_minus, k_plus, _ = generators(psi.repr, N)
        gen = xi.xi * k_plus - np.conj(xi.xi) * k_minus
        out = scipy.linalg.expm(gen) @ c
    state = make_state(psi.repr, out, normalize=renormalize)
    if check_tail and _tail(out) > TAIL_THRESHOLD:
        raise TruncationError(
            f"squeezed state not contained in N={N} (tail {_tail(out):.3g}); enlarge the truncation",
            tail_norm=_tail(out),
            dimension=N,
        )
    return state


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: list
    normalizable: bool


def hermitian_spectrum(u, w, rep, N):
    """Eigen-decomposition of the truncated ``u K- + u^* K+ + w K3``.

    Conjugating by ``diag(exp(-i m arg u))`` makes the matrix real symmetric
    tridiagonal, which is handed to LAPACK.  Eigenvalues are ascending.  The
    ``normalizable`` flag says whether the untruncated operator has a
    normalizable discrete spectrum; only then do the eigenvalues away from
    the truncation edge mean anything.
    """
    from .states import quantized_normalizable

    if N < 2:
        raise DomainError(f"truncation must be at least 2, got {N}")
    w = float(np.real(w))
    u = complex(u)
    m = np.arange(N + 1)
    diag = w * (rep.k + m)
    off = abs(u) * ladder_g(rep.k, m[:-1])
    vals, vecs = scipy.linalg.eigh_tridiagonal(diag, off)
    phase = np.exp(-1j * m * np.angle(u))
    states = [make_state(rep, phase * vecs[:, j]) for j in range(vals.size)]
    if u == 0:
        normalizable = w != 0
    else:
        normalizable = quantized_normalizable(u, np.conj(u), w)
    return Spectrum(vals, states, bool(normalizable))
