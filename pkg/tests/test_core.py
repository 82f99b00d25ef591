import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lzsm.core import (
    DomainError,
    DriveParams,
    Method,
    Spinor,
    Trajectory,
    TransferMatrix,
    from_dimensionless,
    hamiltonian,
    hamiltonian_dimensionless,
    lzsm_probability,
    to_dimensionless,
)


class TestDriveParams:
    def test_delta_identity(self):
        p = DriveParams(gap=2.0, sweep_rate=4.0, hbar=1.0)
        assert p.delta == 2.0**2 / (4 * 4.0 * 1.0)

    def test_from_delta_round_trip(self):
        p = DriveParams.from_delta(0.37, sweep_rate=3.0)
        assert p.delta == pytest.approx(0.37, rel=1e-14)

    def test_invalid(self):
        with pytest.raises(DomainError):
            DriveParams(gap=-1.0, sweep_rate=1.0)
        with pytest.raises(DomainError):
            DriveParams(gap=1.0, sweep_rate=0.0)


class TestConversions:
    def test_zero(self):
        p = DriveParams(gap=1.0, sweep_rate=1.0)
        assert to_dimensionless(0.0, p) == 0.0

    def test_unit_scaling(self):
        p = DriveParams(gap=1.0, sweep_rate=2.0, hbar=1.0)
        assert to_dimensionless(3.0, p) == pytest.approx(3.0)

    def test_hand_value(self):
        p = DriveParams(gap=1.0, sweep_rate=8.0, hbar=1.0)
        assert to_dimensionless(1.0, p) == pytest.approx(2.0)

    @given(
        st.floats(0.1, 10.0),
        st.floats(0.1, 10.0),
        st.floats(-100.0, 100.0),
    )
    def test_round_trip(self, v, hbar, t):
        p = DriveParams(gap=1.0, sweep_rate=v, hbar=hbar)
        back = from_dimensionless(to_dimensionless(t, p), p)
        assert back == pytest.approx(t, rel=1e-14, abs=1e-14)


class TestProbability:
    def test_zero(self):
        assert lzsm_probability(0.0) == 1.0

    def test_value(self):
        assert lzsm_probability(0.1) == pytest.approx(0.53348809109110325, rel=1e-15)

    def test_large_delta_bound(self):
        assert lzsm_probability(10.0) <= 1e-27

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            lzsm_probability(-0.1)

    @given(st.floats(0.0, 5.0), st.floats(1e-6, 1.0))
    def test_strictly_decreasing(self, d, step):
        assert lzsm_probability(d + step) < lzsm_probability(d)


class TestHamiltonian:
    def test_crossing_point(self):
        p = DriveParams(gap=3.0, sweep_rate=1.0)
        h = hamiltonian(0.0, p)
        assert h[0, 0] == 0 and h[1, 1] == 0
        assert h[0, 1] == h[1, 0] == -1.5

    def test_decoupled(self):
        p = DriveParams(gap=0.0, sweep_rate=2.0)
        h = hamiltonian(3.0, p)
        assert h[0, 1] == 0
        assert h[0, 0] == -3.0 and h[1, 1] == 3.0

    @given(st.floats(-50.0, 50.0), st.floats(0.0, 5.0), st.floats(0.1, 10.0))
    def test_hermitian(self, t, gap, v):
        h = hamiltonian(t, DriveParams(gap=gap, sweep_rate=v))
        assert np.max(np.abs(h - h.conj().T)) == 0.0

    def test_dimensionless_form(self):
        h = hamiltonian_dimensionless(1.5, 0.5)
        assert h[0, 0] == -1.5 and h[1, 1] == 1.5
        assert h[0, 1] == pytest.approx(-1.0)


class TestSpinor:
    def test_norm(self):
        s = Spinor(0.6 + 0j, 0.8j)
        assert s.norm_sq == pytest.approx(1.0)
        assert s.is_normalized()

    def test_array_round_trip(self):
        s = Spinor(0.3 + 0.1j, -0.2 + 0.9j)
        assert Spinor.from_array(s.as_array()) == s


class TestTrajectory:
    def test_monotonic_guard(self):
        with pytest.raises(DomainError):
            Trajectory(
                tau=np.array([0.0, 0.0]),
                alpha=np.zeros(2, complex),
                beta=np.ones(2, complex),
                method=Method.ODE,
            )

    def test_views(self):
        tr = Trajectory(
            tau=np.array([0.0, 1.0]),
            alpha=np.array([0.6, 0.0], complex),
            beta=np.array([0.8j, 1.0], complex),
            method=Method.ZENER,
        )
        assert tr.p_alpha[0] == pytest.approx(0.36)
        assert tr.norm[0] == pytest.approx(1.0)
        assert tr.norm_drift() == pytest.approx(0.0)


class TestTransferMatrix:
    def test_unitarity_defect(self):
        assert TransferMatrix.identity().unitarity_defect() == 0.0

    def test_apply_and_compose(self):
        swap = TransferMatrix(np.array([[0, 1], [1, 0]], dtype=complex))
        s = swap.apply(Spinor(1 + 0j, 0j))
        assert s == Spinor(0j, 1 + 0j)
        assert np.allclose((swap @ swap).m, np.eye(2))
