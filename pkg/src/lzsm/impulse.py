"""Adiabatic-impulse description of the passage.

Away from the crossing the state only accumulates the adiabatic phase
zeta(tau_a) = integral_0^{tau_a} sqrt(2 delta + tau'^2) dtau' (diagonal
propagators U_ad in the diabatic basis); the crossing itself is an
instantaneous unitary kick

    N = [[sqrt(R), sqrt(T)], [-sqrt(T)*, sqrt(R)]],
    R = e^{-2 pi delta},  T = (1 - e^{-2 pi delta}) e^{2 i phi_S},

with the Stokes phase phi_S = pi/4 + Arg Gamma(1 - i delta)
+ delta (ln delta - 1).  Composing the three factors gives the one-passage
matrix with off-diagonal phase 2 zeta + phi_S.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad

from .core import DomainError, TransferMatrix, lzsm_probability
from .special import arg_gamma_one_minus_i_delta

__all__ = [
    "ZetaMode",
    "AdiabaticPhase",
    "Side",
    "zeta",
    "u_ad",
    "stokes_phase",
    "transfer_matrix",
    "compose_passage",
]


class ZetaMode(Enum):
    QUADRATURE = "quadrature"
    ASYMPTOTIC = "asymptotic"


class Side(Enum):
    BEFORE = "before"
    AFTER = "after"


@dataclass(frozen=True)
class AdiabaticPhase:
    zeta: float
    tau_a: float
    delta: float
    mode: ZetaMode


def zeta(tau_a, delta, mode=ZetaMode.QUADRATURE):
    """Adiabatic phase accumulated between the crossing and tau_a.

    Quadrature mode evaluates integral_0^{tau_a} sqrt(2 delta + t^2) dt by
    adaptive Gauss-Kronrod; asymptotic mode evaluates the large-tau_a closed
    form tau_a^2/2 + delta/2 - (delta/2) ln delta + delta ln(sqrt(2) tau_a).
    Both are odd in tau_a; delta = 0 gives exactly tau_a^2 / 2.
    """
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    if tau_a == 0:
        return 0.0
    sign = 1.0 if tau_a > 0 else -1.0
    t = abs(tau_a)
    if mode is ZetaMode.ASYMPTOTIC:
        if delta == 0:
            return sign * 0.5 * t * t
        return sign * (
            0.5 * t * t
            + 0.5 * delta
            - 0.5 * delta * math.log(delta)
            + delta * math.log(math.sqrt(2.0) * t)
        )
    if delta == 0:
        return sign * 0.5 * t * t
    val, _ = quad(
        lambda x: math.sqrt(2.0 * delta + x * x), 0.0, t, epsrel=1e-12, epsabs=0.0,
        limit=200,
    )
    return sign * val


def u_ad(side, zeta_val):
    """Diagonal adiabatic propagator in the diabatic basis.

    BEFORE the crossing: diag(e^{-i zeta}, e^{+i zeta}); AFTER: the sign
    convention flips, diag(e^{+i zeta}, e^{-i zeta}).
    """
    ph = cmath.exp(1j * zeta_val)
    if side is Side.BEFORE:
        return TransferMatrix(np.array([[1.0 / ph, 0j], [0j, ph]]))
    if side is Side.AFTER:
        return TransferMatrix(np.array([[ph, 0j], [0j, 1.0 / ph]]))
    raise DomainError(f"unknown side: {side}")


def stokes_phase(delta):
    """phi_S = pi/4 + Arg Gamma(1 - i delta) + delta (ln delta - 1);
    continuous limit pi/4 at delta = 0."""
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    if delta == 0:
        return 0.25 * math.pi
    return (
        0.25 * math.pi
        + arg_gamma_one_minus_i_delta(delta)
        + delta * (math.log(delta) - 1.0)
    )


def transfer_matrix(delta):
    """The impulse matrix N at the crossing."""
    r = lzsm_probability(delta)
    sqrt_t = math.sqrt(1.0 - r) * cmath.exp(1j * stokes_phase(delta))
    m = np.array(
        [
            [math.sqrt(r), sqrt_t],
            [-sqrt_t.conjugate(), math.sqrt(r)],
        ],
        dtype=complex,
    )
    return TransferMatrix(m)


def compose_passage(tau_a, delta, mode=ZetaMode.QUADRATURE):
    """Full passage -tau_a -> +tau_a in the adiabatic-impulse model:

        [[sqrt(R),              sqrt(T) e^{2 i zeta}],
         [-sqrt(T)* e^{-2 i zeta}, sqrt(R)          ]]

    identical (to rounding) to u_ad(AFTER) @ N @ u_ad(BEFORE).
    """
    if tau_a < 5.0:
        raise DomainError(f"tau_a = {tau_a:g} < 5 (far-field model domain)")
    zt = zeta(tau_a, delta, mode)
    r = lzsm_probability(delta)
    sqrt_t = math.sqrt(1.0 - r) * cmath.exp(1j * stokes_phase(delta))
    off = sqrt_t * cmath.exp(2j * zt)
    m = np.array(
        [
            [math.sqrt(r), off],
            [-off.conjugate(), math.sqrt(r)],
        ],
        dtype=complex,
    )
    return TransferMatrix(m)
