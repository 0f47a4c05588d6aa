"""Algebraic coherent states of SU(1,1): eigenstates of ``u K- + v K+ + w K3``.

Submodules: ``specfun`` (Kummer and related functions), ``representation``
(ladder basis, generators, squeezing), ``states`` (eigenstate construction
and closed forms), ``moments`` (variances, squeezing, photon statistics),
``scan`` and ``cli`` (parameter sweeps and the command line), ``estimator``
(a scikit-learn transformer).
"""

from .errors import AcsError, DomainError, NotNormalizableError, SeriesConvergenceError, TruncationError
from .moments import MomentReport, k_moments, mandel_q, squeeze_flags, squeezing_interval
from .representation import Flavor, ReprIndex, SqueezeParam, StateVector, hermitian_spectrum, squeeze_apply
from .specfun import SeriesControl, hermite_h, hyp0f1, kummer_m
from .states import (
    AcsParams,
    closed_form_params,
    finite_structure_check,
    normalizable,
    quantized_z,
    solve_acs,
    wavefunction,
)

__version__ = "0.1.0"

__all__ = [
    "AcsError", "DomainError", "NotNormalizableError", "SeriesConvergenceError", "TruncationError",
    "MomentReport", "k_moments", "mandel_q", "squeeze_flags", "squeezing_interval",
    "Flavor", "ReprIndex", "SqueezeParam", "StateVector", "hermitian_spectrum", "squeeze_apply",
    "SeriesControl", "hermite_h", "hyp0f1", "kummer_m",
    "AcsParams", "closed_form_params", "finite_structure_check", "normalizable", "quantized_z",
    "solve_acs", "wavefunction",
]
