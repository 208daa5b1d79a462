"""Measuring the conventional witness through single-spin magnetizations.

The observable ``U^H (a Z x I + b I x Z + c I x I) U`` has the same
expectation as the conventional witness on every Bell-diagonal state
exactly when the diagonals of ``U_ent^H W U_ent`` and
``V^H (a Z x I + b I x Z + c) V`` agree, with ``V = U U_ent``. Only that
diagonal condition is checked; off-diagonal entries are left free.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import I2, Z, check_unitary, conjugate, dagger, expectation, kron
from .protocol import MESSAGES, U_ENT, Message, bell_basis
from .witness import conventional_witness

C_OFFSET = 0.25
A_EXAMPLE = 3.0 / 8.0


@dataclass(frozen=True)
class Decomposition:
    a: float
    b: float
    c: float
    U: np.ndarray = field(repr=False)

    def __post_init__(self):
        check_unitary(self.U)

    @classmethod
    def from_V(cls, a, b, c, V):
        return cls(a, b, c, V @ dagger(U_ENT))

    @property
    def alpha(self):
        return self.a + self.b

    @property
    def beta(self):
        return self.a - self.b

    @property
    def V(self):
        return self.U @ U_ENT


def magnetization_observable(a, b, c):
    """a Z x I + b I x Z + c I x I (diagonal)."""
    return a * kron(Z, I2) + b * kron(I2, Z) + c * np.eye(4)


def build_wtilde(d):
    check_unitary(d.U)
    return dagger(d.U) @ magnetization_observable(d.a, d.b, d.c) @ d.U


def v_example():
    w = np.exp(2j * np.pi / 3)
    r3 = np.sqrt(3)
    return np.array(
        [
            [0, 1, w, np.conj(w)],
            [0, 1, np.conj(w), w],
            [0, 1, 1, 1],
            [r3, 0, 0, 0],
        ],
        dtype=complex,
    ) / r3


def diagonal_target(m):
    """Required diagonal of V^H (a Z x I + b I x Z) V for message m."""
    m = Message.of(*m)
    h = np.full(4, 0.25)
    h[m.index] = -0.75
    return h


def diagonal_condition_residual(d, m):
    """max |diag(U_ent^H W U_ent - V^H W_o V)| for the witness of message m."""
    w_prime = dagger(U_ENT) @ conventional_witness(m) @ U_ENT
    v = d.V
    rotated = dagger(v) @ magnetization_observable(d.a, d.b, d.c) @ v
    return float(np.max(np.abs(np.diagonal(w_prime - rotated))))


def permute_columns(v, i, j):
    v = np.array(v, dtype=complex)
    v[:, [i, j]] = v[:, [j, i]]
    return v


def construct_decomposition(m):
    """a = b = 3/8, c = 1/4 with V the example unitary, column 0 swapped to 2z + x."""
    m = Message.of(*m)
    v = permute_columns(v_example(), 0, m.index)
    return Decomposition.from_V(A_EXAMPLE, A_EXAMPLE, C_OFFSET, v)


def random_bell_diagonal(rng, size=None):
    """Bell-diagonal states with Dirichlet(1, 1, 1, 1) weights."""
    weights = rng.dirichlet(np.ones(4), size=size)
    basis = bell_basis()
    return np.einsum("ik,...k,jk->...ij", basis, weights, np.conj(basis))


def verify_expectation_equality(d, m, trials, seed):
    """Largest |Tr rho W~ - Tr rho W| over random Bell-diagonal states."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    rhos = random_bell_diagonal(rng, size=trials)
    diff = expectation(rhos, build_wtilde(d)) - expectation(rhos, conventional_witness(m))
    return float(np.max(np.abs(diff)))


SIGN_PATTERNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def contradiction_table(v=None, magnitude=A_EXAMPLE):
    """Residual for every sign choice of (a, b) and every message at fixed V.

    Returns ``{(sign_a, sign_b): {Message: residual}}``.
    """
    v = v_example() if v is None else v
    table = {}
    for sa, sb in SIGN_PATTERNS:
        d = Decomposition.from_V(sa * magnitude, sb * magnitude, C_OFFSET, v)
        table[(sa, sb)] = {m: diagonal_condition_residual(d, m) for m in MESSAGES}
    return table


def rotated_state_check(d, rho):
    """Tr(rho W~) computed by rotating the state instead of the observable."""
    return float(expectation(conjugate(d.U, rho), magnetization_observable(d.a, d.b, d.c)))
