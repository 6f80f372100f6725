import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qzeno import qstate
from qzeno.core import rotation
from qzeno.errors import ContractError, DegenerateStateError, DimensionError


def rng_state(seed, n):
    return qstate.random_state(n, np.random.default_rng(seed))


class TestBasisIndex:
    @pytest.mark.parametrize("bits, expected", [([0, 0], 0), ([1, 0], 2), ([0, 1], 1), ([0, 1, 1], 3), ([1, 0, 0], 4)])
    def test_big_endian(self, bits, expected):
        assert qstate.basis_index(bits, len(bits)) == expected

    def test_wrong_bit_count(self):
        with pytest.raises(DimensionError):
            qstate.basis_index([0, 1], 3)

    def test_ket_layout_matches_index(self):
        for label in ["00", "10", "01", "11", "011", "110"]:
            v = qstate.ket(label)
            assert v[qstate.basis_index([int(c) for c in label])] == 1


class TestApplySingle:
    def test_identity(self):
        s = rng_state(1, 3)
        np.testing.assert_array_equal(qstate.apply_single(qstate.I2, 1, s), s)

    def test_quarter_turn_maps_0_to_1(self):
        out = qstate.apply_single(rotation(np.pi / 2), 0, qstate.ket("0"))
        np.testing.assert_allclose(out, qstate.ket("1"), atol=1e-15)

    @pytest.mark.parametrize("theta", [0.3, np.pi / 7, 1.1])
    def test_two_rotations_from_00(self, theta):
        # expanded by hand: R|0> = cos|0> + sin|1>
        c, s = np.cos(theta), np.sin(theta)
        state = qstate.ket("00")
        for q in (0, 1):
            state = qstate.apply_single(rotation(theta), q, state)
        np.testing.assert_allclose(state, [c * c, s * c, s * c, s * s], atol=1e-15)

    def test_acts_on_named_qubit(self):
        out = qstate.apply_single(qstate.X, 2, qstate.ket("000"))
        np.testing.assert_array_equal(out, qstate.ket("001"))

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            qstate.apply_single(qstate.X, 2, qstate.ket("00"))

    @settings(max_examples=100, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 8), data=st.data())
    def test_unitaries_preserve_norm(self, seed, n, data):
        q = data.draw(st.integers(0, n - 1))
        rng = np.random.default_rng(seed)
        s = qstate.random_state(n, rng)
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        u, _ = np.linalg.qr(a)
        assert abs(qstate.norm2(qstate.apply_single(u, q, s)) - 1) <= 1e-12


class TestJProject:
    def test_00_untouched(self):
        proj, click = qstate.j_project(0, 1, qstate.ket("00"))
        np.testing.assert_array_equal(proj, qstate.ket("00"))
        assert click == 0

    def test_11_annihilated(self):
        proj, click = qstate.j_project(0, 1, qstate.ket("11"))
        assert qstate.norm2(proj) == 0 and click == 1

    @pytest.mark.parametrize("theta", [0.01, 0.2, np.pi / 4])
    def test_click_after_one_rotation_pair(self, theta):
        s = qstate.ket("00")
        for q in (0, 1):
            s = qstate.apply_single(rotation(theta), q, s)
        proj, click = qstate.j_project(0, 1, s)
        assert click == pytest.approx(np.sin(theta) ** 4, abs=1e-15)
        assert qstate.norm2(proj) == pytest.approx(1 - np.sin(theta) ** 4, abs=1e-15)

    def test_pair_inside_larger_register(self):
        s = qstate.ket("1+1")
        proj, click = qstate.j_project(0, 2, s)
        assert click == pytest.approx(1.0)
        proj, click = qstate.j_project(0, 1, s)
        assert click == pytest.approx(0.5)

    def test_same_qubit_rejected(self):
        with pytest.raises(ValueError):
            qstate.j_project(1, 1, qstate.ket("00"))

    def test_unnormalized_rejected(self):
        with pytest.raises(ContractError):
            qstate.j_project(0, 1, 0.5 * qstate.ket("00"))

    @settings(max_examples=100, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 8), data=st.data())
    def test_idempotent_and_complementary(self, seed, n, data):
        q1 = data.draw(st.integers(0, n - 1))
        q2 = data.draw(st.integers(0, n - 1).filter(lambda q: q != q1))
        s = rng_state(seed, n)
        proj, click = qstate.j_project(q1, q2, s)
        assert abs(click + qstate.norm2(proj) - 1) <= 1e-12
        if qstate.norm2(proj) > 0:
            again, _ = qstate.j_project(q1, q2, qstate.normalize(proj)[0])
            np.testing.assert_allclose(again * np.sqrt(qstate.norm2(proj)), proj, atol=1e-14)
        # raw projector applied twice
        t = proj.reshape([2] * n).copy()
        idx = [slice(None)] * n
        idx[q1] = idx[q2] = 1
        t[tuple(idx)] = 0
        np.testing.assert_array_equal(t.reshape(-1), proj)


class TestInnerFidelity:
    def test_self_overlap(self):
        s = rng_state(3, 4)
        assert qstate.inner(s, s) == pytest.approx(1.0)

    def test_bell_overlaps(self):
        assert qstate.inner(qstate.ket("00"), qstate.psi_plus()) == 0
        assert qstate.inner(qstate.psi_plus(), qstate.ket("01")) == pytest.approx(1 / np.sqrt(2))

    def test_conjugate_linear_first_slot(self):
        a, b = rng_state(4, 2), rng_state(5, 2)
        assert qstate.inner(1j * a, b) == pytest.approx(-1j * qstate.inner(a, b))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            qstate.inner(qstate.ket("0"), qstate.ket("00"))
        with pytest.raises(DimensionError):
            qstate.fidelity(qstate.ket("0"), qstate.ket("00"))

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), phase=st.floats(0, 2 * np.pi))
    def test_symmetric_and_phase_blind(self, seed, phase):
        a, b = rng_state(seed, 3), rng_state(seed + 1, 3)
        f = qstate.fidelity(a, b)
        assert qstate.fidelity(b, a) == pytest.approx(f, abs=1e-14)
        assert qstate.fidelity(np.exp(1j * phase) * a, b) == pytest.approx(f, abs=1e-14)
        assert qstate.fidelity(a, np.exp(1j * phase) * a) == pytest.approx(1.0, abs=1e-14)
        assert 0 <= f <= 1


class TestNormalizeAppend:
    def test_normalized_input(self):
        s, w = qstate.normalize(qstate.psi_minus())
        assert w == pytest.approx(1.0)
        np.testing.assert_allclose(s, qstate.psi_minus())

    def test_scaled(self):
        s, w = qstate.normalize(0.5 * qstate.ket("00"))
        assert w == 0.25
        np.testing.assert_array_equal(s, qstate.ket("00"))

    def test_projected_quarter_turn(self):
        # amplitudes (1/2, 1/2, 1/2, 1/2) at pi/4; dropping |11> leaves 3/4
        s = qstate.ket("00")
        for q in (0, 1):
            s = qstate.apply_single(rotation(np.pi / 4), q, s)
        proj, _ = qstate.j_project(0, 1, s)
        _, w = qstate.normalize(proj)
        assert w == pytest.approx(0.75, abs=1e-15)

    def test_zero_vector(self):
        with pytest.raises(DegenerateStateError):
            qstate.normalize(np.zeros(4))

    def test_append(self):
        np.testing.assert_array_equal(qstate.append_qubit(qstate.ket("0"), 0), qstate.ket("00"))
        expected = (qstate.ket("010") + qstate.ket("100")) / np.sqrt(2)
        np.testing.assert_allclose(qstate.append_qubit(qstate.psi_plus(), 0), expected)
        np.testing.assert_array_equal(qstate.append_qubit(qstate.ket("1"), 1), qstate.ket("11"))

    def test_append_keeps_norm(self):
        s = rng_state(9, 5)
        assert qstate.norm2(qstate.append_qubit(s)) == pytest.approx(1.0, abs=1e-12)


def test_subspace_round_trip():
    s = rng_state(11, 2)
    s[3] = 0
    np.testing.assert_array_equal(qstate.from_subspace(qstate.subspace_amplitudes(s)), s)
    np.testing.assert_array_equal(qstate.subspace_amplitudes(qstate.ket("10")), [0, 1, 0])
