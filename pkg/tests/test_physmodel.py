import numpy as np
import pytest

from qzeno import core, qstate
from qzeno.physmodel import (
    FluxParams,
    bell_time,
    continuous_run,
    gauge_transform,
    physical_schedule,
    sigma_x_subspace_operator,
    theta_from_physics,
)
from qzeno.sampling import RngSeed
from qzeno.trajectory import click_chain, no_click_branch, w_schedule

THETA_100 = np.pi / (200 * np.sqrt(2))


def test_theta_from_physics():
    assert theta_from_physics(FluxParams(0.0, 0.01, 1.0)) == 0.0
    assert theta_from_physics(FluxParams(1.0, THETA_100, 1.0)) == THETA_100


class TestBellTime:
    def test_unit_delta(self):
        assert bell_time(1.0) == pytest.approx(1.1107, abs=5e-5)
        assert bell_time(1.0) == np.pi / (2 * np.sqrt(2))

    def test_inverse_scaling(self):
        assert bell_time(2.0) == pytest.approx(bell_time(1.0) / 2, rel=1e-15)

    def test_equals_k_tau(self):
        delta = 3.7
        tau = THETA_100 / delta
        assert 100 * tau == pytest.approx(bell_time(delta), rel=0, abs=1e-12)
        assert FluxParams(delta, tau, bell_time(delta)).n_steps == 100

    @pytest.mark.parametrize("delta", np.linspace(0.1, 10, 97))
    def test_step_count_survives_round_off(self, delta):
        # total/tau can land one ulp under the integer
        for k in (50, 100, 1000):
            tau = np.pi / (2 * np.sqrt(2) * k) / delta
            assert FluxParams(delta, tau, bell_time(delta)).n_steps == k

    @pytest.mark.parametrize("delta", [0.0, -1.0])
    def test_rejects_nonpositive(self, delta):
        with pytest.raises(ValueError):
            bell_time(delta)


class TestGauge:
    @pytest.mark.parametrize("angle", np.linspace(-0.5, 0.5, 21))
    def test_gauge_equivalence(self, angle):
        m_x = sigma_x_subspace_operator(angle)
        np.testing.assert_allclose(np.abs(m_x), np.abs(core.build_w(angle)), rtol=0, atol=1e-12)
        np.testing.assert_allclose(gauge_transform(m_x), core.build_w(angle), rtol=0, atol=1e-12)

    def test_sigma_x_is_unitary(self):
        from qzeno.trajectory import sigma_x_gate
        assert qstate.is_unitary(sigma_x_gate(0.3))


class TestContinuousRun:
    def test_bell_preparation(self):
        p = FluxParams(1.0, THETA_100, bell_time(1.0))
        survivors = [o for o in (continuous_run(p, qstate.ket("00"), RngSeed(m)) for m in range(10)) if o.survived]
        assert survivors
        for o in survivors:
            f = qstate.fidelity(o.final_state, qstate.psi_plus())
            assert f > 0.9999
            assert o.cumulative_prob == pytest.approx(0.988, abs=1e-3)

    def test_matches_real_rotation_protocol(self):
        p = FluxParams(1.0, THETA_100, bell_time(1.0))
        real_final, real_p = no_click_branch(w_schedule(100, THETA_100), qstate.ket("00"))
        phys_final, phys_p = no_click_branch(physical_schedule(p), qstate.ket("00"))
        assert phys_p == pytest.approx(real_p, abs=1e-12)
        f_real = qstate.fidelity(real_final, qstate.psi_plus())
        f_phys = qstate.fidelity(phys_final, qstate.psi_plus())
        assert f_phys == pytest.approx(f_real, abs=1e-10)
        np.testing.assert_allclose(click_chain(physical_schedule(p), qstate.ket("00")),
                                   click_chain(w_schedule(100, THETA_100), qstate.ket("00")), rtol=0, atol=1e-12)

    def test_single_large_step_rejected(self):
        with pytest.raises(ValueError):
            FluxParams(1.0, bell_time(1.0), bell_time(1.0))

    def test_zero_delta(self):
        out = continuous_run(FluxParams(0.0, 0.05, 1.0), qstate.ket("00"), RngSeed(1))
        assert out.survived and out.cumulative_prob == 1.0
        np.testing.assert_allclose(out.final_state, qstate.ket("00"))

    def test_time_shorter_than_interval(self):
        with pytest.raises(ValueError):
            FluxParams(1.0, 0.05, 0.01)
