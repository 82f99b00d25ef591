"""Complex special functions used by the analytic passage formulas.

Two ingredients are needed everywhere: the principal-branch log-Gamma (all
phases are Arg Gamma expressions) and the parabolic cylinder function
D_nu(z) for complex order and argument.  D_nu is evaluated from its confluent
hypergeometric power series at small |z| and from its compound asymptotic
expansion at large |z|; the expansion coefficient of the subdominant
exponential depends on the sector of Arg z (Stokes phenomenon), and the
sector rule implemented here was pinned numerically against high-precision
references on the rays Arg z in {pi/4, -3pi/4} used by the exact passage
solution.
"""
from __future__ import annotations

import cmath
import math
from enum import Enum

import numpy as np
from scipy.special import loggamma as _scipy_loggamma, rgamma as _scipy_rgamma

from .core import ConvergenceError, DomainError, OverflowRangeError, PoleError

__all__ = [
    "log_gamma",
    "gamma_fn",
    "arg_gamma_one_minus_i_delta",
    "PcfRegime",
    "CROSSOVER_RADIUS",
    "select_regime",
    "pcf_series",
    "pcf_asymptotic",
    "pcf_d",
]

_EXP_LIMIT = 700.0  # log of the largest representable double, with margin


def log_gamma(z):
    """Principal-branch log Gamma(z) for complex z.

    Raises PoleError at the non-positive integers.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise PoleError(f"log_gamma pole at z = {z.real:g}")
    return complex(_scipy_loggamma(z))


def gamma_fn(z):
    """Gamma(z) via the principal-branch log."""
    return cmath.exp(log_gamma(z))


def arg_gamma_one_minus_i_delta(delta):
    """Arg Gamma(1 - i delta), continuous in delta, zero at delta = 0."""
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    return log_gamma(1.0 - 1j * delta).imag


# ---------------------------------------------------------------------------
# Parabolic cylinder function D_nu(z)
# ---------------------------------------------------------------------------

CROSSOVER_RADIUS = 6.0


class PcfRegime(Enum):
    """Evaluation regimes for D_nu(z).

    SERIES: power series, small |z|.
    ASYM_FULL: two-exponential expansion, valid for -5pi/4 < Arg z < -pi/4.
    ASYM_SINGLE: single recessive exponential, valid for |Arg z| < 3pi/4.
    """

    SERIES = "series"
    ASYM_FULL = "asym_full"
    ASYM_SINGLE = "asym_single"


def select_regime(z, crossover_radius=CROSSOVER_RADIUS):
    """Route (|z|, Arg z) to an evaluation regime.

    In the overlap of the two asymptotic domains the one whose subdominant
    treatment is exact in that sector is preferred (ASYM_FULL for
    Arg z <= -pi/2, ASYM_SINGLE otherwise).
    """
    z = complex(z)
    if abs(z) < crossover_radius:
        return PcfRegime.SERIES
    arg = cmath.phase(z)
    if arg < -0.5 * math.pi or arg > 0.75 * math.pi:
        return PcfRegime.ASYM_FULL
    return PcfRegime.ASYM_SINGLE


def _kummer(a, b, w, max_terms=500):
    """Confluent hypergeometric 1F1(a; b; w) by direct summation."""
    term = 1.0 + 0j
    total = term
    quiet = 0
    for k in range(max_terms):
        term = term * (a + k) / ((b + k) * (k + 1.0)) * w
        total += term
        if abs(term) <= 1e-17 * abs(total) + 1e-300:
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
    raise ConvergenceError(
        f"1F1 series did not converge (a={a}, b={b}, |w|={abs(w):.3g})"
    )


def pcf_series(nu, z, max_terms=500):
    """D_nu(z) from its confluent-hypergeometric representation.

    D_nu(z) = 2^{nu/2} e^{-z^2/4} sqrt(pi) [ M(-nu/2; 1/2; z^2/2)/Gamma((1-nu)/2)
              - sqrt(2) z M((1-nu)/2; 3/2; z^2/2)/Gamma(-nu/2) ]

    The reciprocal Gammas vanish at their poles, so integer orders need no
    special casing.
    """
    nu = complex(nu)
    z = complex(z)
    w = 0.5 * z * z
    m1 = _kummer(-0.5 * nu, 0.5, w, max_terms)
    m2 = _kummer(0.5 * (1.0 - nu), 1.5, w, max_terms)
    r1 = complex(_scipy_rgamma(0.5 * (1.0 - nu)))
    r2 = complex(_scipy_rgamma(-0.5 * nu))
    pref = cmath.exp(0.5 * nu * math.log(2.0) - 0.25 * z * z)
    return pref * math.sqrt(math.pi) * (m1 * r1 - math.sqrt(2.0) * z * m2 * r2)


def _asym_sum_recessive(nu, z, terms=None, max_terms=60):
    """Sum_k (-1)^k nu(nu-1)...(nu-2k+1) / (k! (2 z^2)^k), truncated at the
    smallest term (or after `terms` terms when given)."""
    t = 1.0 + 0j
    total = t
    best = abs(t)
    n = max_terms if terms is None else terms
    for k in range(1, n):
        t = t * (-(nu - 2 * k + 2) * (nu - 2 * k + 1)) / (2.0 * k * z * z)
        if terms is None:
            if abs(t) <= 1e-17 * abs(total):
                break
            if abs(t) > best:
                break  # divergent tail reached: stop at the smallest term
            best = abs(t)
        total += t
    return total


def _asym_sum_dominant(nu, z, terms=None, max_terms=60):
    """Sum_k (nu+1)(nu+2)...(nu+2k) / (k! (2 z^2)^k), same truncation rule."""
    t = 1.0 + 0j
    total = t
    best = abs(t)
    n = max_terms if terms is None else terms
    for k in range(1, n):
        t = t * ((nu + 2 * k - 1) * (nu + 2 * k)) / (2.0 * k * z * z)
        if terms is None:
            if abs(t) <= 1e-17 * abs(total):
                break
            if abs(t) > best:
                break
            best = abs(t)
        total += t
    return total


def _checked_exp(w):
    if w.real > _EXP_LIMIT:
        raise OverflowRangeError(
            f"exponent real part {w.real:.3g} exceeds double range"
        )
    return cmath.exp(w)


def pcf_asymptotic(nu, z, which, terms=None, crossover_radius=CROSSOVER_RADIUS):
    """Large-|z| expansions of D_nu(z) in their declared sectors.

    which=ASYM_SINGLE (|Arg z| < 3pi/4):
        D_nu(z) ~ e^{-z^2/4} z^nu S1
    which=ASYM_FULL (-5pi/4 < Arg z < -pi/4, i.e. principal Arg in
    (-pi, -pi/4) together with (3pi/4, pi]):
        D_nu(z) ~ e^{-z^2/4} z^nu S1
                  - sqrt(2 pi)/Gamma(-nu) e^{-i nu pi} e^{z^2/4} z^{-nu-1} S2

    With terms=1 both reduce to the textbook leading-order forms.  Requesting
    a point outside the declared sector (or inside the series radius) raises
    DomainError; there is no silent fallback.
    """
    nu = complex(nu)
    z = complex(z)
    if abs(z) < crossover_radius:
        raise DomainError(
            f"|z| = {abs(z):.3g} below asymptotic radius {crossover_radius:g}"
        )
    arg = cmath.phase(z)
    tol = 1e-12
    logz = cmath.log(z)
    if which is PcfRegime.ASYM_SINGLE:
        if abs(arg) > 0.75 * math.pi + tol:
            raise DomainError(
                f"Arg z = {arg:.6g} outside |Arg z| < 3pi/4 (asym_single)"
            )
        s1 = _asym_sum_recessive(nu, z, terms)
        return _checked_exp(-0.25 * z * z + nu * logz) * s1
    if which is PcfRegime.ASYM_FULL:
        in_lower = -math.pi - tol <= arg <= -0.25 * math.pi + tol
        in_upper = 0.75 * math.pi - tol <= arg <= math.pi + tol
        if not (in_lower or in_upper):
            raise DomainError(
                f"Arg z = {arg:.6g} outside -5pi/4 < Arg z < -pi/4 (asym_full)"
            )
        s1 = _asym_sum_recessive(nu, z, terms)
        s2 = _asym_sum_dominant(nu, z, terms)
        first = _checked_exp(-0.25 * z * z + nu * logz) * s1
        coeff = -math.sqrt(2.0 * math.pi) * complex(_scipy_rgamma(-nu)) * cmath.exp(
            -1j * nu * math.pi
        )
        second = coeff * _checked_exp(0.25 * z * z - (nu + 1.0) * logz) * s2
        return first + second
    raise DomainError(f"not an asymptotic regime: {which}")


def pcf_d(nu, z, crossover_radius=CROSSOVER_RADIUS):
    """D_nu(z) for complex order and argument.

    Small |z|: power series.  Large |z|: compound expansion with the exact
    sector-dependent coefficient of the subdominant exponential:

        B = 0                                  for |Arg z| < pi/2,
        B = -sqrt(2 pi)/Gamma(-nu) e^{-i nu pi} for Arg z in [-pi, -pi/2),
        B = -sqrt(2 pi)/Gamma(-nu) e^{+i nu pi} for Arg z in (pi/2, pi].

    On the Stokes lines Arg z = +-pi/2 the mean of the neighbouring sectors
    is used (the subdominant term is of order e^{-|z|^2/2} there).
    """
    nu = complex(nu)
    z = complex(z)
    if abs(z) < crossover_radius:
        return pcf_series(nu, z)
    arg = cmath.phase(z)
    logz = cmath.log(z)
    s1 = _asym_sum_recessive(nu, z)
    out = _checked_exp(-0.25 * z * z + nu * logz) * s1
    half_pi = 0.5 * math.pi
    tol = 1e-12
    if abs(arg) <= half_pi - tol:
        return out
    base = -math.sqrt(2.0 * math.pi) * complex(_scipy_rgamma(-nu))
    if abs(abs(arg) - half_pi) < tol:
        phase = cmath.exp(-1j * nu * math.pi) if arg < 0 else cmath.exp(1j * nu * math.pi)
        b = 0.5 * base * phase
    elif arg < -half_pi:
        b = base * cmath.exp(-1j * nu * math.pi)
    else:
        b = base * cmath.exp(1j * nu * math.pi)
    s2 = _asym_sum_dominant(nu, z)
    return out + b * _checked_exp(0.25 * z * z - (nu + 1.0) * logz) * s2
