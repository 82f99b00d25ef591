"""Asymptotic wave function of the single passage with full phase.

The first partial solution psi1 starts (as tau -> -infinity) in the lower
diabatic state and acquires the transition amplitude through the avoided
crossing.  For tau < 0 it consists of the saddle-point contribution alone;
for tau > 0 a second term from the near-origin part of the inversion contour
appears, carrying the transferred amplitude.  A second, linearly independent
solution psi2 follows by swapping the components and conjugating, and an
arbitrary normalized initial state evolves as beta_i psi1 + alpha_i psi2.

All complex powers are principal-branch; the branch correctness is pinned by
|beta(tau -> -infinity)| = 1 in the tests, not assumed.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .core import DomainError, Spinor
from .special import arg_gamma_one_minus_i_delta, log_gamma

__all__ = [
    "Psi2Branch",
    "MajoranaSolution",
    "c_delta",
    "eval_psi1",
    "eval_psi1_far",
    "eval_psi2",
    "general_solution",
    "TAU_MIN",
]

TAU_MIN = 1e-3
_FAR_TAU = 5.0


class Psi2Branch(Enum):
    """Sign of the square-root branch in the swapped-conjugate solution:
    psi2 = (beta1*, sign * alpha1*)."""

    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class MajoranaSolution:
    """Parameters of the asymptotic solution pair for one adiabaticity."""

    delta: float
    phase: float = 0.0  # global phase freedom of the normalization constant
    branch_psi2: Psi2Branch = Psi2Branch.MINUS
    c: complex = field(init=False)

    def __post_init__(self):
        if self.delta < 0:
            raise DomainError(f"delta must be >= 0, got {self.delta}")
        object.__setattr__(self, "c", c_delta(self.delta, self.phase))


def c_delta(delta, phase=0.0):
    """Normalization constant sqrt(delta / 2 pi) e^{-pi delta / 2}, with the
    optional free global phase."""
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    mod = math.sqrt(delta / (2.0 * math.pi)) * math.exp(-0.5 * math.pi * delta)
    return mod * cmath.exp(1j * phase)


def _check_tau(tau, tau_min):
    if abs(tau) < tau_min:
        raise DomainError(
            f"|tau| = {abs(tau):.3g} below asymptotic guard {tau_min:g}"
        )


def eval_psi1(tau, delta, tau_min=TAU_MIN, phase=0.0):
    """First partial solution (alpha(tau), beta(tau)).

    The saddle terms are written with the combination
    C_delta sqrt(2 pi / delta) = e^{-pi delta / 2}, which keeps the delta -> 0
    limit finite (pure lower-state phase evolution).
    """
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    _check_tau(tau, tau_min)
    emh = math.exp(-0.5 * math.pi * delta)  # e^{-pi delta / 2}
    m2it = -2j * tau  # Arg = +pi/2 for tau < 0, -pi/2 for tau > 0
    p_sad = m2it ** (-1j * delta)
    alpha = (
        math.sqrt(2.0 * delta)
        * emh
        * p_sad
        / m2it
        * cmath.exp(-0.5j * tau * tau + 0.75j * math.pi)
    )
    beta = emh * p_sad * cmath.exp(-0.5j * tau * tau + 0.25j * math.pi)
    if tau > 0:
        # near-origin contribution carrying the transferred amplitude
        rg = cmath.exp(-log_gamma(1.0 + 1j * delta))  # 1 / Gamma(1 + i delta)
        # C_delta * 2 pi i = i sqrt(2 pi delta) e^{-pi delta / 2}
        near = (
            1j
            * math.sqrt(2.0 * math.pi * delta)
            * emh
            * rg
            * tau ** (1j * delta)
            * cmath.exp(0.5j * tau * tau)
        )
        alpha = alpha + near
        beta = beta + math.sqrt(0.5 * delta) * near / tau
    if phase:
        ph = cmath.exp(1j * phase)
        alpha, beta = alpha * ph, beta * ph
    return Spinor(alpha, beta)


def eval_psi1_far(tau, delta, phase=0.0):
    """Far-field limit of psi1 in explicit modulus/phase form.

    tau >> 1:  alpha = sqrt(1 - P) exp[i(Arg Gamma(1 - i delta) + tau^2/2
               + delta ln tau)],
               beta = sqrt(P) exp[i(pi/4 - tau^2/2 - delta ln 2 tau)],
    tau << -1: alpha = 0, beta = exp[i(pi/4 - tau^2/2 - delta ln 2|tau|)],
    with P = e^{-2 pi delta}.

    Caveat (test-pinned): the outgoing alpha of this explicit form trails the
    two-term solution eval_psi1 — which matches the exact dynamics — by a
    constant phase pi/2.  The closed form is kept exactly as documented above;
    use eval_psi1 whenever the absolute phase matters.
    """
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    if abs(tau) < _FAR_TAU:
        raise DomainError(f"|tau| = {abs(tau):.3g} < {_FAR_TAU:g} (far field)")
    p = math.exp(-2.0 * math.pi * delta)
    if tau < 0:
        alpha = 0j
        beta = cmath.exp(
            1j * (0.25 * math.pi - 0.5 * tau * tau - delta * math.log(2.0 * abs(tau)))
        )
    else:
        alpha = math.sqrt(1.0 - p) * cmath.exp(
            1j
            * (
                arg_gamma_one_minus_i_delta(delta)
                + 0.5 * tau * tau
                + delta * math.log(tau)
            )
        )
        beta = math.sqrt(p) * cmath.exp(
            1j * (0.25 * math.pi - 0.5 * tau * tau - delta * math.log(2.0 * tau))
        )
    if phase:
        ph = cmath.exp(1j * phase)
        alpha, beta = alpha * ph, beta * ph
    return Spinor(alpha, beta)


def eval_psi2(tau, delta, branch=Psi2Branch.MINUS, tau_min=TAU_MIN):
    """Second partial solution: components of psi1 swapped and conjugated,
    psi2 = (beta1*, sign * alpha1*).

    Only the MINUS branch solves the equation of motion; the enum keeps the
    choice explicit and test-pinned against the numerical oracle.
    """
    s1 = eval_psi1(tau, delta, tau_min)
    return Spinor(s1.beta.conjugate(), branch.value * s1.alpha.conjugate())


def general_solution(tau, delta, init: Spinor, branch=Psi2Branch.MINUS,
                     tau_min=TAU_MIN, anchor_tau=None):
    """General solution beta_i psi1 + alpha_i psi2 for a normalized initial
    state.

    With anchor_tau given, the combination coefficients are instead solved so
    the superposition equals `init` exactly at that time; this removes the
    tau-independent phase offsets between the asymptotic basis and a
    finite-time anchored reference (ODE or exact solution).
    """
    if abs(init.norm_sq - 1.0) > 1e-6:
        raise DomainError(
            f"initial state norm^2 = {init.norm_sq:.8f} not within 1e-6 of 1"
        )
    if anchor_tau is None:
        q1, q2 = init.beta, init.alpha
    else:
        b1 = eval_psi1(anchor_tau, delta, tau_min)
        b2 = eval_psi2(anchor_tau, delta, branch, tau_min)
        m = np.array(
            [[b1.alpha, b2.alpha], [b1.beta, b2.beta]], dtype=complex
        )
        q1, q2 = np.linalg.solve(m, init.as_array())
    s1 = eval_psi1(tau, delta, tau_min)
    s2 = eval_psi2(tau, delta, branch, tau_min)
    return Spinor(q1 * s1.alpha + q2 * s2.alpha, q1 * s1.beta + q2 * s2.beta)
