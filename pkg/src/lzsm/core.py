"""Shared domain types for a linearly driven two-level system.

The physical model is H(t) = -(1/2) (Delta sigma_x + v t sigma_z) with a
constant coupling Delta and a linear sweep of the level separation.  All
dynamics modules work in the dimensionless time tau = sqrt(v/2 hbar) t and the
adiabaticity parameter delta = Delta^2 / (4 v hbar); this module holds the
conversions, the basic value types (spinors, trajectories, 2x2 propagators)
and the closed-form single-passage transition probability exp(-2 pi delta).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "DomainError",
    "PoleError",
    "ConvergenceError",
    "OverflowRangeError",
    "Method",
    "DriveParams",
    "Spinor",
    "Trajectory",
    "TransferMatrix",
    "to_dimensionless",
    "from_dimensionless",
    "lzsm_probability",
    "hamiltonian",
    "hamiltonian_dimensionless",
]


class DomainError(ValueError):
    """Input outside the validity domain of a formula or expansion."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole of a special function."""


class ConvergenceError(RuntimeError):
    """An iterative scheme (series, quadrature, implicit step) failed to
    converge; the message records where."""


class OverflowRangeError(OverflowError):
    """Result magnitude exceeds double precision range."""


class Method(Enum):
    """Tags for the four descriptions of the passage dynamics."""

    ODE = "ode"
    ZENER = "zener"
    MAJORANA = "majorana"
    ADIABATIC_IMPULSE = "adiabatic_impulse"


@dataclass(frozen=True)
class DriveParams:
    """Drive description: gap Delta, sweep rate v, hbar, and the derived
    adiabaticity delta = Delta^2 / (4 v hbar)."""

    gap: float
    sweep_rate: float
    hbar: float = 1.0
    delta: float = field(init=False)

    def __post_init__(self):
        if self.gap < 0:
            raise DomainError(f"gap must be >= 0, got {self.gap}")
        if self.sweep_rate <= 0:
            raise DomainError(f"sweep_rate must be > 0, got {self.sweep_rate}")
        if self.hbar <= 0:
            raise DomainError(f"hbar must be > 0, got {self.hbar}")
        object.__setattr__(
            self, "delta", self.gap**2 / (4.0 * self.sweep_rate * self.hbar)
        )

    @classmethod
    def from_delta(cls, delta, sweep_rate=2.0, hbar=1.0):
        """Construct params realizing a given adiabaticity delta."""
        if delta < 0:
            raise DomainError(f"delta must be >= 0, got {delta}")
        gap = math.sqrt(4.0 * sweep_rate * hbar * delta)
        return cls(gap=gap, sweep_rate=sweep_rate, hbar=hbar)


def to_dimensionless(t, p: DriveParams):
    """tau = sqrt(v / 2 hbar) * t"""
    return math.sqrt(p.sweep_rate / (2.0 * p.hbar)) * t


def from_dimensionless(tau, p: DriveParams):
    """Inverse of :func:`to_dimensionless`."""
    return tau / math.sqrt(p.sweep_rate / (2.0 * p.hbar))


def lzsm_probability(delta):
    """Single-passage probability to stay in the same diabatic state,
    exp(-2 pi delta)."""
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    return math.exp(-2.0 * math.pi * delta)


def hamiltonian(t, p: DriveParams):
    """Physical Hamiltonian -(1/2)(Delta sigma_x + v t sigma_z).

    Hermitian by construction; at t = 0 only the off-diagonal coupling
    -Delta/2 survives.
    """
    eps = p.sweep_rate * t
    return np.array(
        [
            [-0.5 * eps, -0.5 * p.gap],
            [-0.5 * p.gap, 0.5 * eps],
        ],
        dtype=complex,
    )


def hamiltonian_dimensionless(tau, delta):
    """Dimensionless generator of i d(psi)/d(tau) = H(tau) psi:
    H = -sqrt(2 delta) sigma_x - tau sigma_z."""
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    c = math.sqrt(2.0 * delta)
    return np.array([[-tau, -c], [-c, tau]], dtype=complex)


@dataclass(frozen=True)
class Spinor:
    """Diabatic amplitudes (alpha, beta); alpha multiplies the upper
    component."""

    alpha: complex
    beta: complex

    @property
    def norm_sq(self):
        return abs(self.alpha) ** 2 + abs(self.beta) ** 2

    def is_normalized(self, tol=1e-9):
        return abs(self.norm_sq - 1.0) <= tol

    def as_array(self):
        return np.array([self.alpha, self.beta], dtype=complex)

    @classmethod
    def from_array(cls, a):
        return cls(complex(a[0]), complex(a[1]))


@dataclass(frozen=True)
class Trajectory:
    """Time series of spinor samples produced by one of the methods.

    tau is strictly increasing; occupations and norm are derived views.
    """

    tau: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    method: Method

    def __post_init__(self):
        tau = np.asarray(self.tau, dtype=float)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "alpha", np.asarray(self.alpha, dtype=complex))
        object.__setattr__(self, "beta", np.asarray(self.beta, dtype=complex))
        if len(tau) > 1 and not np.all(np.diff(tau) > 0):
            raise DomainError("trajectory tau samples must be strictly increasing")

    def __len__(self):
        return len(self.tau)

    def state(self, i):
        return Spinor(self.alpha[i], self.beta[i])

    @property
    def p_alpha(self):
        return np.abs(self.alpha) ** 2

    @property
    def p_beta(self):
        return np.abs(self.beta) ** 2

    @property
    def norm(self):
        return self.p_alpha + self.p_beta

    def norm_drift(self):
        """Largest deviation of |alpha|^2 + |beta|^2 from its initial value."""
        n = self.norm
        return float(np.max(np.abs(n - n[0]))) if len(n) else 0.0


@dataclass(frozen=True)
class TransferMatrix:
    """A 2x2 complex propagator in the diabatic basis."""

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError(f"transfer matrix must be 2x2, got {m.shape}")
        object.__setattr__(self, "m", m)

    def unitarity_defect(self):
        return float(np.max(np.abs(self.m.conj().T @ self.m - np.eye(2))))

    def __matmul__(self, other):
        if isinstance(other, TransferMatrix):
            return TransferMatrix(self.m @ other.m)
        return self.m @ other

    def apply(self, s: Spinor) -> Spinor:
        return Spinor.from_array(self.m @ s.as_array())

    @classmethod
    def identity(cls):
        return cls(np.eye(2, dtype=complex))
