"""Thermal two-spin states and the superdense coding circuit.

The entangler is CNOT (control I, target S) after a Hadamard on I, the
encoder is Z^z X^x acting on spin I, and the decoder is the entangler run
backwards. States are evolved as density matrices so that weakly polarized
thermal inputs are handled exactly.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NonPhysicalError, OutOfRangeError
from .linalg import H, I2, X, Z, conjugate, expectation, kron

HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K
MU0 = 1.25663706212e-6  # H / m
GAMMA_PROTON = 2.675e8  # rad s^-1 T^-1


class Message(NamedTuple):
    z: int
    x: int

    @classmethod
    def of(cls, z, x):
        if z not in (0, 1) or x not in (0, 1):
            raise OutOfRangeError(f"message bits must be 0 or 1, got z={z!r}, x={x!r}")
        return cls(int(z), int(x))

    @property
    def index(self):
        """Position of |zx> in the computational basis."""
        return 2 * self.z + self.x


MESSAGES = tuple(Message(z, x) for z in (0, 1) for x in (0, 1))


def thermal_polarization(gamma, B0, T, hbar=HBAR, k_B=K_B):
    """Equilibrium polarization tanh(gamma hbar B0 / (2 k_B T)).

    Positive for positive gyromagnetic ratio; the overall sign is chosen so
    that ``eps`` is the population excess of |0>.
    """
    if not T > 0:
        raise NonPhysicalError(f"temperature must be positive, got {T!r}")
    if not B0 > 0:
        raise NonPhysicalError(f"field must be positive, got {B0!r}")
    return float(np.tanh(gamma * hbar * B0 / (2.0 * k_B * T)))


def _check_eps(eps):
    if not np.isfinite(eps) or abs(eps) > 1:
        raise OutOfRangeError(f"polarization must lie in [-1, 1], got {eps!r}")


def occupation_probs(eps):
    _check_eps(eps)
    return (1.0 + eps) / 2.0, (1.0 - eps) / 2.0


@dataclass(frozen=True)
class ThermalConfig:
    """Polarizations of spins I and S."""

    eps_I: float
    eps_S: float

    def __post_init__(self):
        _check_eps(self.eps_I)
        _check_eps(self.eps_S)

    @classmethod
    def from_physical(cls, gamma_I, gamma_S, B0, T, hbar=HBAR, k_B=K_B):
        return cls(
            thermal_polarization(gamma_I, B0, T, hbar, k_B),
            thermal_polarization(gamma_S, B0, T, hbar, k_B),
        )

    @property
    def probs_I(self):
        return occupation_probs(self.eps_I)

    @property
    def probs_S(self):
        return occupation_probs(self.eps_S)


def thermal_state(cfg):
    p_I, q_I = cfg.probs_I
    p_S, q_S = cfg.probs_S
    return np.diag([p_I * p_S, p_I * q_S, q_I * p_S, q_I * q_S]).astype(complex)


CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
H_I = kron(H, I2)
U_ENT = CNOT @ H_I
U_BELL = H_I @ CNOT

_GATES = {"H_I": H_I, "CNOT": CNOT, "U_ent": U_ENT, "U_Bell": U_BELL}


def gate(name):
    try:
        return _GATES[name].copy()
    except KeyError:
        raise ValueError(f"unknown gate {name!r}; choose from {sorted(_GATES)}") from None


def encoder(m):
    """Z^z X^x on spin I, identity on spin S."""
    u = np.linalg.matrix_power(Z, m.z) @ np.linalg.matrix_power(X, m.x)
    return kron(u, I2)


def bell_state(m):
    """(|0,x> + (-1)^z |1,1-x>) / sqrt(2)."""
    psi = np.zeros(4, dtype=complex)
    psi[m.x] = 1.0
    psi[2 + (1 - m.x)] = (-1) ** m.z
    return psi / np.sqrt(2)


def bell_basis():
    """Matrix whose column ``2z + x`` is the Bell state for message (z, x)."""
    return np.column_stack([bell_state(m) for m in MESSAGES])


@dataclass(frozen=True)
class ProtocolTrace:
    message: Message
    rho0: np.ndarray
    rho1: np.ndarray
    rho2: np.ndarray
    rho3: np.ndarray
    p_I: float
    q_I: float
    p_S: float
    q_S: float

    @property
    def states(self):
        return (self.rho0, self.rho1, self.rho2, self.rho3)


def run_protocol(cfg, m):
    """Entangle, encode and disentangle a thermal state."""
    m = Message.of(*m)
    rho0 = thermal_state(cfg)
    rho1 = conjugate(U_ENT, rho0)
    rho2 = conjugate(encoder(m), rho1)
    rho3 = conjugate(U_BELL, rho2)
    p_I, q_I = cfg.probs_I
    p_S, q_S = cfg.probs_S
    return ProtocolTrace(m, rho0, rho1, rho2, rho3, p_I, q_I, p_S, q_S)


ZI = kron(Z, I2)
IZ = kron(I2, Z)


def magnetization_expectations(rho3):
    """Return (<Z x I>, <I x Z>) for a two-spin state."""
    return float(expectation(rho3, ZI)), float(expectation(rho3, IZ))
