"""Entanglement tests for the encoded Bell-diagonal state.

Two routes are provided: the magnetization function F, evaluated from the
two measured spin polarizations, and the minimum eigenvalue of the partial
transpose. For two qubits the latter is an exact separability test.
"""

from dataclasses import dataclass

import numpy as np

from .errors import OutOfRangeError
from .linalg import I2, X, Y, Z, dagger, eigvalsh, expectation, kron, partial_transpose
from .protocol import IZ, U_BELL, ZI, Message, magnetization_expectations, run_protocol


@dataclass(frozen=True)
class WitnessReport:
    w1: float
    w2: float
    f_value: float
    success_prob: float
    min_pt_eigenvalue: float
    entangled: bool


def success_probability(cfg):
    """Chance that a single molecule carries the message correctly."""
    p_I, _ = cfg.probs_I
    p_S, _ = cfg.probs_S
    return p_I * p_S


def witness_F(zI, zS):
    """F = 1/2 - (1 + |zI|)(1 + |zS|) / 4; negative means entangled."""
    if abs(zI) > 1 + 1e-12 or abs(zS) > 1 + 1e-12:
        raise OutOfRangeError(f"magnetizations must lie in [-1, 1], got ({zI!r}, {zS!r})")
    return 0.5 - (1.0 + min(abs(zI), 1.0)) * (1.0 + min(abs(zS), 1.0)) / 4.0


def observables_W1_W2():
    """Decoder-conjugated magnetizations, ``U_Bell^H (Z x I) U_Bell`` and ``U_Bell^H (I x Z) U_Bell``."""
    w1 = dagger(U_BELL) @ ZI @ U_BELL
    w2 = dagger(U_BELL) @ IZ @ U_BELL
    return w1, w2


def conventional_witness(m):
    m = Message.of(*m)
    s_z = (-1) ** (1 - m.z)
    s_x = (-1) ** (1 - m.x)
    return 0.25 * (kron(I2, I2) + s_z * kron(X, X) + s_z * s_x * kron(Y, Y) + s_x * kron(Z, Z))


def negativity_check(rho, subsystem="S"):
    """Smallest eigenvalue of the partial transpose; accepts stacks of states."""
    lam = eigvalsh(partial_transpose(rho, subsystem))[..., 0]
    return float(lam) if np.ndim(lam) == 0 else lam


def witness_report(cfg, m):
    """Run the protocol and evaluate both entanglement tests on it."""
    trace = run_protocol(cfg, m)
    w1_op, w2_op = observables_W1_W2()
    w1 = float(expectation(trace.rho2, w1_op))
    w2 = float(expectation(trace.rho2, w2_op))
    f = witness_F(*magnetization_expectations(trace.rho3))
    return WitnessReport(
        w1=w1,
        w2=w2,
        f_value=f,
        success_prob=success_probability(cfg),
        min_pt_eigenvalue=negativity_check(trace.rho2),
        entangled=f < 0,
    )
