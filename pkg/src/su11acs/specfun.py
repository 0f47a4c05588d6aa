"""Complex-argument special functions used by the closed-form eigenstates.

Only what the eigenstate formulas need: Kummer's confluent hypergeometric
function ``M(a, b, x) = 1F1(a; b; x)``, its confluent limit ``0F1``,
physicists' Hermite polynomials and ``ln Gamma`` on the positive axis.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, SeriesConvergenceError

__all__ = [
    "SeriesControl",
    "DEFAULT_CONTROL",
    "MAX_ARGUMENT",
    "kummer_m",
    "hyp0f1",
    "hermite_h",
    "log_gamma_pos",
    "nonpositive_integer",
]

# Largest |x| accepted by the series evaluators; there is no asymptotic branch.
MAX_ARGUMENT = 30.0


@dataclass(frozen=True)
class SeriesControl:
    """Term budget and relative stopping tolerance for power series."""

    max_terms: int = 500
    rel_tol: float = 1e-12

    def __post_init__(self):
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")
        if not 0.0 < self.rel_tol < 1.0:
            raise DomainError(f"rel_tol must lie in (0, 1), got {self.rel_tol!r}")


DEFAULT_CONTROL = SeriesControl()


def nonpositive_integer(a, atol=1e-12):
    """Return ``n`` if ``a == -n`` for a non-negative integer ``n``, else None."""
    a = complex(a)
    if abs(a.imag) > atol or a.real > atol:
        return None
    n = round(-a.real)
    if abs(a.real + n) <= atol * max(1.0, n):
        return int(n)
    return None


def _check_b(b):
    if nonpositive_integer(b) is not None:
        raise DomainError(f"b = {b!r} is zero or a negative integer; M(a, b, x) is undefined")


def _polynomial(a_n, b, x):
    # terminating series for a = -n, summed exactly term by term
    total = term = 1.0 + 0.0j
    for j in range(a_n):
        term *= (-a_n + j) * x / ((b + j) * (j + 1))
        total += term
    return total


def _series(a, b, x, ctl):
    total = term = 1.0 + 0.0j
    for n in range(ctl.max_terms):
        ratio = (a + n) * x / ((b + n) * (n + 1))
        term *= ratio
        total += term
        # once the ratio drops below 1/2 the remaining tail is below 2|term|
        if abs(ratio) < 0.5 and abs(term) <= ctl.rel_tol * abs(total):
            return total
        if term == 0:
            return total
    raise SeriesConvergenceError(
        f"1F1({a}, {b}, {x}) did not converge in {ctl.max_terms} terms",
        partial_value=total,
        terms=ctl.max_terms,
    )


def kummer_m(a, b, x, ctl=DEFAULT_CONTROL):
    """Kummer's function ``M(a, b, x)`` for complex arguments.

    The Maclaurin series is summed directly for ``Re x >= 0``.  For
    ``Re x < 0`` Kummer's transformation ``M(a,b,x) = e^x M(b-a,b,-x)`` is
    applied first so that the summed terms do not alternate.  When ``a`` is a
    non-positive integer ``-n`` the result is the exact degree-``n``
    polynomial and no transformation is used.

    Raises
    ------
    DomainError
        ``b`` is zero or a negative integer, or ``|x|`` exceeds ``MAX_ARGUMENT``.
    SeriesConvergenceError
        The series did not converge within ``ctl.max_terms`` terms.
    """
    a, b, x = complex(a), complex(b), complex(x)
    _check_b(b)
    if x == 0:
        return 1.0 + 0.0j
    n = nonpositive_integer(a)
    if n is not None:
        return _polynomial(n, b, x)
    if abs(x) > MAX_ARGUMENT:
        raise DomainError(f"|x| = {abs(x):.3g} exceeds the supported range {MAX_ARGUMENT}")
    if x.real < 0:
        m = nonpositive_integer(b - a)
        if m is not None:
            return cmath.exp(x) * _polynomial(m, b, -x)
        return cmath.exp(x) * _series(b - a, b, -x, ctl)
    return _series(a, b, x, ctl)


def hyp0f1(b, x, ctl=DEFAULT_CONTROL):
    """Confluent limit ``0F1(; b; x) = lim_{a->inf} M(a, b, x/a)``."""
    b, x = complex(b), complex(x)
    _check_b(b)
    if abs(x) > MAX_ARGUMENT**2:
        raise DomainError(f"|x| = {abs(x):.3g} exceeds the supported range")
    total = term = 1.0 + 0.0j
    for n in range(ctl.max_terms):
        ratio = x / ((b + n) * (n + 1))
        term *= ratio
        total += term
        if abs(ratio) < 0.5 and abs(term) <= ctl.rel_tol * abs(total):
            return total
        if term == 0:
            return total
    raise SeriesConvergenceError(
        f"0F1({b}, {x}) did not converge in {ctl.max_terms} terms",
        partial_value=total,
        terms=ctl.max_terms,
    )


def hermite_h(n, x):
    """Physicists' Hermite polynomial by upward recurrence."""
    if int(n) != n or n < 0:
        raise DomainError(f"Hermite degree must be a non-negative integer, got {n!r}")
    x = complex(x)
    h_prev, h = 0.0j, 1.0 + 0.0j
    for j in range(int(n)):
        h_prev, h = h, 2 * x * h - 2 * j * h_prev
    return h


def log_gamma_pos(x):
    """``ln Gamma(x)`` for real ``x > 0``."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"log_gamma_pos requires x > 0, got {x!r}")
    return math.lgamma(x)
