"""Analysis layer: method comparison tables, jump time, deviation maps.

This is the substance behind the CLI: run the four descriptions of the
passage on a shared grid, quantify where the asymptotic wave function departs
from the exact dynamics, and emit deterministic tabular artifacts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError, Method, Spinor
from .majorana import TAU_MIN, general_solution
from .special import log_gamma
from .zener import coefficients_from_initial, eval_zener, p_of_tau
from . import impulse as _impulse
from . import oracle as _oracle

__all__ = [
    "SweepConfig",
    "DeviationMap",
    "jump_time",
    "jump_time_numeric",
    "compare_dynamics",
    "deviation_map",
    "SCHEMA_VERSION",
    "COMPARE_HEADER",
    "DEVIATION_HEADER",
    "format_float",
    "compare_rows_to_csv",
    "deviation_map_to_csv",
]

SCHEMA_VERSION = "lzsm/1"

COMPARE_HEADER = (
    "tau,method,re_alpha,im_alpha,re_beta,im_beta,p_alpha,p_beta,norm,in_jump_window"
)
DEVIATION_HEADER = "tau,delta,p_zener,p_majorana,abs_diff,tau_jump"


@dataclass(frozen=True)
class SweepConfig:
    """A comparison/sweep request: grid, initial state, methods, output."""

    delta_values: tuple
    tau_start: float
    tau_end: float
    tau_count: int
    init: Spinor = Spinor(0j, 1.0 + 0j)
    methods: tuple = (Method.ODE, Method.ZENER, Method.MAJORANA,
                      Method.ADIABATIC_IMPULSE)
    output_path: str | None = None
    format: str = "csv"

    def __post_init__(self):
        object.__setattr__(self, "delta_values", tuple(self.delta_values))
        object.__setattr__(self, "methods", tuple(self.methods))
        if not self.delta_values:
            raise DomainError("delta_values must be non-empty")
        if any(d < 0 for d in self.delta_values):
            raise DomainError("delta values must be >= 0")
        if self.tau_count < 2:
            raise DomainError("tau_count must be >= 2")
        if not self.tau_start < self.tau_end:
            raise DomainError("tau_start must be < tau_end")
        if self.format not in ("csv", "json"):
            raise DomainError(f"unknown format: {self.format}")

    @property
    def tau_grid(self):
        return np.linspace(self.tau_start, self.tau_end, self.tau_count)


def jump_time(delta):
    """Duration of the effective transition window,

        tau_jump = sqrt(1 - P) / (sqrt(2 delta) cos chi(delta)),
        chi = pi/4 + Arg Gamma(1/2 - i delta/2) - Arg Gamma(1 - i delta/2),

    with the analytic delta -> 0 limit sqrt(2 pi).
    """
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    if delta == 0:
        return math.sqrt(2.0 * math.pi)
    chi = (
        0.25 * math.pi
        + log_gamma(0.5 - 0.5j * delta).imag
        - log_gamma(1.0 - 0.5j * delta).imag
    )
    p = math.exp(-2.0 * math.pi * delta)
    return math.sqrt(1.0 - p) / (math.sqrt(2.0 * delta) * math.cos(chi))


def jump_time_numeric(delta, step=1e-3):
    """Finite-difference variant of the definition (1 - P) / P'(0), with
    P'(0) from a fourth-order central difference of the transition
    probability."""
    if delta <= 0:
        raise DomainError(f"delta must be > 0, got {delta}")
    h = step
    dp = (
        p_of_tau(-2 * h, delta)
        - 8.0 * p_of_tau(-h, delta)
        + 8.0 * p_of_tau(h, delta)
        - p_of_tau(2 * h, delta)
    ) / (12.0 * h)
    p = math.exp(-2.0 * math.pi * delta)
    return (1.0 - p) / dp


def _impulse_state(tau, tau_start, delta, init, n_matrix):
    """State of the adiabatic-impulse model at tau, starting at tau_start < 0."""
    if tau < 0:
        dz = _impulse.zeta(tau, delta) - _impulse.zeta(tau_start, delta)
        ph = np.exp(1j * dz)
        return Spinor(init.alpha / ph, init.beta * ph)
    pre = _impulse.u_ad(_impulse.Side.BEFORE,
                        -_impulse.zeta(tau_start, delta)).m
    post = _impulse.u_ad(_impulse.Side.AFTER,
                         _impulse.zeta(tau, delta)).m
    vec = post @ (n_matrix @ (pre @ init.as_array()))
    return Spinor.from_array(vec)


def compare_dynamics(cfg: SweepConfig):
    """Evaluate every requested method on the shared grid.

    Returns a list of row dicts in the comparison CSV schema (one row per
    (tau, method), grid-major order).  Rows where a method's domain guard
    trips carry NaN amplitudes; the run continues.
    """
    if len(cfg.delta_values) != 1:
        raise DomainError("compare_dynamics expects exactly one delta value")
    delta = cfg.delta_values[0]
    grid = cfg.tau_grid
    tj = jump_time(delta) if delta > 0 else math.sqrt(2.0 * math.pi)

    states = {}
    if Method.ODE in cfg.methods:
        tr = _oracle.integrate(cfg.init, cfg.tau_start, cfg.tau_end, delta,
                               samples=grid)
        states[Method.ODE] = list(zip(tr.alpha, tr.beta))
    if Method.ZENER in cfg.methods:
        coeffs = coefficients_from_initial(cfg.init, cfg.tau_start, delta)
        states[Method.ZENER] = [
            (s.alpha, s.beta) for s in (eval_zener(coeffs, t) for t in grid)
        ]
    if Method.MAJORANA in cfg.methods:
        anchor = cfg.tau_start if abs(cfg.tau_start) >= 5.0 else None
        vals = []
        for t in grid:
            try:
                s = general_solution(t, delta, cfg.init, anchor_tau=anchor)
                vals.append((s.alpha, s.beta))
            except DomainError:
                vals.append((complex("nan"), complex("nan")))
        states[Method.MAJORANA] = vals
    if Method.ADIABATIC_IMPULSE in cfg.methods:
        n_matrix = _impulse.transfer_matrix(delta).m
        states[Method.ADIABATIC_IMPULSE] = [
            (s.alpha, s.beta)
            for s in (
                _impulse_state(t, cfg.tau_start, delta, cfg.init, n_matrix)
                for t in grid
            )
        ]

    rows = []
    for i, t in enumerate(grid):
        for method in cfg.methods:
            if method not in states:
                continue
            a, b = states[method][i]
            pa, pb = abs(a) ** 2, abs(b) ** 2
            rows.append(
                {
                    "tau": float(t),
                    "method": method.value,
                    "re_alpha": a.real,
                    "im_alpha": a.imag,
                    "re_beta": b.real,
                    "im_beta": b.imag,
                    "p_alpha": pa,
                    "p_beta": pb,
                    "norm": pa + pb,
                    "in_jump_window": int(abs(t) < tj),
                }
            )
    return rows


@dataclass(frozen=True)
class DeviationMap:
    """Grid of |P_exact - P_asymptotic| over (delta, tau), with the jump-time
    curve and window diagnostics."""

    delta_values: np.ndarray
    tau_values: np.ndarray
    p_zener: np.ndarray  # shape (n_delta, n_tau)
    p_majorana: np.ndarray
    jump_curve: np.ndarray
    threshold: float = 0.02
    flagged: np.ndarray = field(default=None)

    @property
    def grid(self):
        return np.abs(self.p_zener - self.p_majorana)

    def empirical_window(self, i):
        """(first, last) tau where the deviation of delta row i exceeds the
        threshold, or None when it never does."""
        row = self.grid[i]
        mask = np.isfinite(row) & (row > self.threshold)
        if not mask.any():
            return None
        idx = np.nonzero(mask)[0]
        return float(self.tau_values[idx[0]]), float(self.tau_values[idx[-1]])

    def signed_tau_centroid(self):
        """Deviation-weighted mean tau of all cells above threshold; the sign
        measures the skew of the disagreement region."""
        g = self.grid
        mask = np.isfinite(g) & (g > self.threshold)
        if not mask.any():
            return 0.0
        w = np.where(mask, g, 0.0)
        return float(np.sum(w * self.tau_values[None, :]) / np.sum(w))

    def inside_outside_means(self, i):
        """Mean deviation of row i inside vs. outside |tau| < tau_jump."""
        row = self.grid[i]
        inside = np.abs(self.tau_values) < self.jump_curve[i]
        ok = np.isfinite(row)
        mi = float(np.mean(row[inside & ok])) if (inside & ok).any() else math.nan
        mo = float(np.mean(row[~inside & ok])) if (~inside & ok).any() else math.nan
        return mi, mo


def deviation_map(delta_values, tau_values, init: Spinor, anchor_tau=-40.0,
                  threshold=0.02):
    """|P_exact - P_asymptotic| over a (delta, tau) grid.

    Both solutions share the same initial state, imposed at anchor_tau (far
    on the incoming side) so that only genuine asymptotic breakdown — not a
    phase-convention offset — shows up in the map.  Cells inside the
    small-|tau| guard of the asymptotic formulas are NaN and flagged.
    """
    delta_values = np.asarray(delta_values, dtype=float)
    tau_values = np.asarray(tau_values, dtype=float)
    if abs(init.norm_sq - 1.0) > 1e-6:
        raise DomainError("init must be normalized to 1e-6")
    if abs(anchor_tau) < 5.0:
        raise DomainError("anchor_tau must satisfy |anchor_tau| >= 5")
    nd, nt = len(delta_values), len(tau_values)
    pz = np.empty((nd, nt))
    pm = np.empty((nd, nt))
    flagged = np.zeros((nd, nt), dtype=bool)
    for i, d in enumerate(delta_values):
        coeffs = coefficients_from_initial(init, anchor_tau, d)
        for j, t in enumerate(tau_values):
            pz[i, j] = abs(eval_zener(coeffs, t).alpha) ** 2
            if abs(t) < TAU_MIN:
                pm[i, j] = math.nan
                flagged[i, j] = True
            else:
                s = general_solution(t, d, init, anchor_tau=anchor_tau)
                pm[i, j] = abs(s.alpha) ** 2
    jump = np.array([jump_time(d) for d in delta_values])
    return DeviationMap(delta_values, tau_values, pz, pm, jump, threshold, flagged)


# ---------------------------------------------------------------------------
# Deterministic serialization
# ---------------------------------------------------------------------------


def format_float(x):
    """Fixed 17-significant-digit decimal form (round-half-even via the
    underlying IEEE formatting); NaN spelled 'nan'."""
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def compare_rows_to_csv(rows):
    lines = [f"# schema={SCHEMA_VERSION} table=compare", COMPARE_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [
                    format_float(r["tau"]),
                    r["method"],
                    format_float(r["re_alpha"]),
                    format_float(r["im_alpha"]),
                    format_float(r["re_beta"]),
                    format_float(r["im_beta"]),
                    format_float(r["p_alpha"]),
                    format_float(r["p_beta"]),
                    format_float(r["norm"]),
                    str(r["in_jump_window"]),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def deviation_map_to_csv(dm: DeviationMap):
    lines = [f"# schema={SCHEMA_VERSION} table=deviation", DEVIATION_HEADER]
    diff = dm.grid
    for i, d in enumerate(dm.delta_values):
        for j, t in enumerate(dm.tau_values):
            lines.append(
                ",".join(
                    [
                        format_float(float(t)),
                        format_float(float(d)),
                        format_float(float(dm.p_zener[i, j])),
                        format_float(float(dm.p_majorana[i, j])),
                        format_float(float(diff[i, j])),
                        format_float(float(dm.jump_curve[i])),
                    ]
                )
            )
    return "\n".join(lines) + "\n"
