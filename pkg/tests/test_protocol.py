import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nmrsdc.errors import NonPhysicalError, OutOfRangeError
from nmrsdc.linalg import I4, dagger, equal_up_to_phase, is_unitary, kron, projector, validate_density
from nmrsdc.protocol import (
    HBAR, K_B, MESSAGES, U_BELL, U_ENT, Message, ThermalConfig, bell_basis, bell_state,
    encoder, gate, magnetization_expectations, occupation_probs, run_protocol,
    thermal_polarization, thermal_state,
)

eps_st = st.floats(-1.0, 1.0, allow_nan=False)
message_st = st.sampled_from(MESSAGES)


def test_thermal_polarization_values():
    assert thermal_polarization(0.0, 10.0, 300.0) == 0.0
    # gamma*hbar*B0/(2 kB T) = 2.675e8*1.054571817e-34*10/(2*1.380649e-23*300)
    x = 2.675e8 * 1.054571817e-34 * 10 / (2 * 1.380649e-23 * 300)
    assert x == pytest.approx(3.4053787e-5, rel=1e-7)
    assert thermal_polarization(2.675e8, 10.0, 300.0) == pytest.approx(3.4054e-5, rel=1e-4)
    assert thermal_polarization(2.675e8, 10.0, 1e-6) == pytest.approx(1.0)


def test_thermal_polarization_rejects_nonpositive_temperature():
    with pytest.raises(NonPhysicalError):
        thermal_polarization(2.675e8, 10.0, 0.0)
    with pytest.raises(NonPhysicalError):
        thermal_polarization(2.675e8, 10.0, -5.0)


def test_physical_constants_pinned():
    assert HBAR == 1.054571817e-34
    assert K_B == 1.380649e-23


def test_occupation_probs():
    assert occupation_probs(0.0) == (0.5, 0.5)
    assert occupation_probs(1.0) == (1.0, 0.0)
    p, q = occupation_probs(math.sqrt(2) - 1)
    assert p == pytest.approx(0.70711, abs=1e-5)
    assert p + q == 1.0
    with pytest.raises(OutOfRangeError):
        occupation_probs(1.5)


def test_thermal_config_from_physical():
    cfg = ThermalConfig.from_physical(2.675e8, 6.726e7, 10.0, 300.0)
    assert cfg.eps_I > cfg.eps_S > 0
    with pytest.raises(OutOfRangeError):
        ThermalConfig(1.2, 0.0)


def test_thermal_state_cases():
    assert np.array_equal(thermal_state(ThermalConfig(1, 1)), projector([1, 0, 0, 0]))
    assert np.array_equal(thermal_state(ThermalConfig(0, 0)), I4 / 4)
    assert np.allclose(np.diag(thermal_state(ThermalConfig(0.5, 0.5))).real, [0.5625, 0.1875, 0.1875, 0.0625])


def test_gates_unitary():
    for name in ("H_I", "CNOT", "U_ent", "U_Bell"):
        assert is_unitary(gate(name))
    for m in MESSAGES:
        assert is_unitary(encoder(m))
    with pytest.raises(ValueError):
        gate("SWAP")


def test_cnot_control_I_target_S():
    c = gate("CNOT")
    assert np.array_equal(c @ [0, 0, 1, 0], [0, 0, 0, 1])
    assert np.array_equal(c @ [0, 1, 0, 0], [0, 1, 0, 0])


def test_encoder_identity_for_00():
    assert np.array_equal(encoder(Message(0, 0)), I4)


def test_entangler_makes_bell_state():
    psi = U_ENT @ np.array([1, 0, 0, 0])
    assert np.allclose(psi, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-15)


def test_decoder_inverts_entangler():
    assert equal_up_to_phase(U_BELL @ U_ENT, I4)


def test_bell_states():
    r = 1 / np.sqrt(2)
    assert np.allclose(bell_state(Message(0, 0)), [r, 0, 0, r])
    assert np.allclose(bell_state(Message(0, 1)), [0, r, r, 0])
    assert np.allclose(bell_state(Message(1, 0)), [r, 0, 0, -r])
    assert np.allclose(bell_state(Message(1, 1)), [0, r, -r, 0])
    b = bell_basis()
    assert np.allclose(dagger(b) @ b, I4, atol=1e-15)


def test_pure_circuit_matches_bell_states():
    for m in MESSAGES:
        psi2 = encoder(m) @ U_ENT @ np.array([1, 0, 0, 0])
        assert np.allclose(psi2, bell_state(m), atol=1e-15)
        psi3 = U_BELL @ psi2
        basis = np.zeros(4)
        basis[m.index] = 1
        assert np.allclose(psi3, basis, atol=1e-15)


def test_message_validation():
    with pytest.raises(OutOfRangeError):
        Message.of(2, 0)
    assert Message.of(1, 0).index == 2


def test_run_protocol_pure():
    for m in MESSAGES:
        t = run_protocol(ThermalConfig(1, 1), m)
        target = np.zeros((4, 4))
        target[m.index, m.index] = 1
        assert np.max(np.abs(t.rho3 - target)) < 1e-12


def test_run_protocol_maximally_mixed():
    for m in MESSAGES:
        t = run_protocol(ThermalConfig(0, 0), m)
        for rho in t.states:
            assert np.max(np.abs(rho - I4 / 4)) < 1e-15


def test_run_protocol_half_polarized_example():
    t = run_protocol(ThermalConfig(0.5, 0.5), Message(1, 0))
    # (q_I|0><0| + p_I|1><1|) x (p_S|0><0| + q_S|1><1|)
    expected = np.kron(np.diag([0.25, 0.75]), np.diag([0.75, 0.25]))
    assert np.max(np.abs(t.rho3 - expected)) < 1e-12
    zI, zS = magnetization_expectations(t.rho3)
    assert zI == pytest.approx(-0.5, abs=1e-12)
    assert zS == pytest.approx(0.5, abs=1e-12)


def test_magnetization_examples():
    assert magnetization_expectations(projector([1, 0, 0, 0])) == (1.0, 1.0)
    assert magnetization_expectations(I4 / 4) == (0.0, 0.0)
    t = run_protocol(ThermalConfig(0.3, 0.2), Message(1, 1))
    zI, zS = magnetization_expectations(t.rho3)
    assert zI == pytest.approx(-0.3, abs=1e-12)
    assert zS == pytest.approx(-0.2, abs=1e-12)


@settings(max_examples=150, deadline=None)
@given(eps_st, eps_st, message_st)
def test_trace_states_are_valid(e_i, e_s, m):
    t = run_protocol(ThermalConfig(e_i, e_s), m)
    for rho in t.states:
        validate_density(rho, herm_tol=1e-12, trace_tol=1e-10, psd_tol=1e-10)


@settings(max_examples=150, deadline=None)
@given(eps_st, eps_st, message_st)
def test_bell_diagonality(e_i, e_s, m):
    t = run_protocol(ThermalConfig(e_i, e_s), m)
    b = bell_basis()
    for rho in (t.rho1, t.rho2):
        in_bell = dagger(b) @ rho @ b
        off = in_bell - np.diag(np.diag(in_bell))
        assert np.max(np.abs(off)) < 1e-12
    off3 = t.rho3 - np.diag(np.diag(t.rho3))
    assert np.max(np.abs(off3)) < 1e-12


@settings(max_examples=150, deadline=None)
@given(eps_st, eps_st, message_st)
def test_rho1_spectrum_is_thermal(e_i, e_s, m):
    t = run_protocol(ThermalConfig(e_i, e_s), m)
    expected = np.sort([t.p_I * t.p_S, t.p_I * t.q_S, t.q_I * t.p_S, t.q_I * t.q_S])
    assert np.max(np.abs(np.linalg.eigvalsh(t.rho1) - expected)) < 1e-12


@settings(max_examples=150, deadline=None)
@given(eps_st, eps_st, message_st)
def test_rho3_factorizes(e_i, e_s, m):
    t = run_protocol(ThermalConfig(e_i, e_s), m)
    a = np.diag([t.p_I, t.q_I]) if m.z == 0 else np.diag([t.q_I, t.p_I])
    b = np.diag([t.p_S, t.q_S]) if m.x == 0 else np.diag([t.q_S, t.p_S])
    assert np.max(np.abs(t.rho3 - kron(a, b))) < 1e-12
    zI, zS = magnetization_expectations(t.rho3)
    assert zI == pytest.approx((-1) ** m.z * e_i, abs=1e-12)
    assert zS == pytest.approx((-1) ** m.x * e_s, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-6, 1.0), st.floats(1e-6, 1.0), message_st)
def test_sign_decoding(e_i, e_s, m):
    zI, zS = magnetization_expectations(run_protocol(ThermalConfig(e_i, e_s), m).rho3)
    assert np.sign(zI) == (-1) ** m.z
    assert np.sign(zS) == (-1) ** m.x
