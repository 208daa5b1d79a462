"""Small dense complex linear algebra for two-spin systems.

Matrices are plain numpy arrays. The computational basis is ordered
|00>, |01>, |10>, |11> with spin I as the left (most significant) factor.
Most routines also accept stacks of matrices with shape (..., n, n).
"""

from typing import NamedTuple

import numpy as np

from .errors import NotHermitianError, NotPositiveError, NotUnitaryError, TraceNotOneError

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
I4 = np.eye(4, dtype=complex)

ALGEBRA_TOL = 1e-12
EIGEN_TOL = 1e-10
PSD_TOL = 1e-10


class EigenSystem(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def dagger(a):
    return np.conj(np.swapaxes(a, -1, -2))


def kron(a, b):
    """Kronecker product; the first factor indexes spin I."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def conjugate(u, a):
    """Return ``u @ a @ u^H``."""
    return u @ a @ dagger(u)


def hermitian_residual(a):
    a = np.asarray(a)
    return float(np.max(np.abs(a - dagger(a)), initial=0.0))


def unitary_residual(u):
    u = np.asarray(u)
    eye = np.eye(u.shape[-1])
    return float(np.max(np.abs(u @ dagger(u) - eye), initial=0.0))


def is_hermitian(a, tol=ALGEBRA_TOL):
    return hermitian_residual(a) <= tol


def is_unitary(u, tol=ALGEBRA_TOL):
    return unitary_residual(u) <= tol


def check_unitary(u, tol=EIGEN_TOL):
    res = unitary_residual(u)
    if res > tol:
        raise NotUnitaryError(res)
    return u


def equal_up_to_phase(a, b, tol=ALGEBRA_TOL):
    """True when ``a == exp(i phi) b`` for a single global phase phi."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    k = np.argmax(np.abs(b))
    if abs(b.flat[k]) < tol:
        return bool(np.max(np.abs(a)) <= tol)
    phase = a.flat[k] / b.flat[k]
    if abs(abs(phase) - 1) > tol:
        return False
    return bool(np.max(np.abs(a - phase * b)) <= tol)


def hermitian_eigensystem(a, tol=1e-12, max_sweeps=50, check_tol=EIGEN_TOL):
    """Diagonalize a Hermitian matrix (or a stack of them) by cyclic Jacobi rotations.

    Each rotation first removes the phase of the pivot entry, then applies a
    real Givens rotation that zeroes it. Sweeps continue until every
    off-diagonal entry is below ``tol`` times the matrix scale.

    Returns eigenvalues in ascending order and a unitary whose columns are
    the matching eigenvectors, so that ``a = V diag(w) V^H``.
    """
    a = np.array(a, dtype=complex)
    res = hermitian_residual(a)
    if res > check_tol:
        raise NotHermitianError(res)
    a = 0.5 * (a + dagger(a))
    n = a.shape[-1]
    batch = a.shape[:-2]
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    scale = np.maximum(np.max(np.abs(a), axis=(-1, -2), initial=0.0), 1.0)
    offdiag = ~np.eye(n, dtype=bool)
    pivots = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]

    for _ in range(max_sweeps):
        off = np.max(np.abs(a[..., offdiag]), axis=-1, initial=0.0)
        if np.all(off <= tol * scale):
            break
        for p, q in pivots:
            apq = a[..., p, q]
            g = np.abs(apq)
            active = g > 1e-300
            safe_g = np.where(active, g, 1.0)
            phase = np.where(active, apq / safe_g, 1.0)
            theta = (a[..., q, q].real - a[..., p, p].real) / (2.0 * safe_g)
            sign = np.where(theta >= 0, 1.0, -1.0)
            t = sign / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = np.broadcast_to(np.eye(n, dtype=complex), batch + (n, n)).copy()
            rot[..., p, p] = c
            rot[..., p, q] = s
            rot[..., q, p] = -s * np.conj(phase)
            rot[..., q, q] = c * np.conj(phase)
            a = dagger(rot) @ a @ rot
            v = v @ rot

    w = np.real(np.diagonal(a, axis1=-2, axis2=-1))
    order = np.argsort(w, axis=-1)
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[..., None, :], axis=-1)
    return EigenSystem(w, v)


def eigvalsh(a):
    return hermitian_eigensystem(a).eigenvalues


def partial_transpose(rho, subsystem="S"):
    """Transpose one tensor factor of a two-qubit operator.

    ``subsystem`` is ``"I"`` (left factor) or ``"S"`` (right factor).
    Only entries are permuted, so applying it twice returns the input.
    """
    rho = np.asarray(rho)
    t = rho.reshape(rho.shape[:-2] + (2, 2, 2, 2))
    # axes (..., i, s, i', s')
    if subsystem == "S":
        t = np.swapaxes(t, -3, -1)
    elif subsystem == "I":
        t = np.swapaxes(t, -4, -2)
    else:
        raise ValueError(f"subsystem must be 'I' or 'S', got {subsystem!r}")
    return t.reshape(rho.shape)


def validate_density(m, herm_tol=ALGEBRA_TOL, trace_tol=ALGEBRA_TOL, psd_tol=PSD_TOL):
    """Check that ``m`` is a density matrix and return it as a complex array.

    Raises NotHermitianError, TraceNotOneError or NotPositiveError carrying
    the measured residual.
    """
    m = np.array(m, dtype=complex)
    if m.shape[-2:] != (4, 4) or m.ndim != 2:
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    res = hermitian_residual(m)
    if res > herm_tol:
        raise NotHermitianError(res)
    tr = np.trace(m)
    if abs(tr - 1) > trace_tol:
        raise TraceNotOneError(abs(tr - 1))
    lam_min = eigvalsh(m)[0]
    if lam_min < -psd_tol:
        raise NotPositiveError(lam_min)
    return m


def projector(psi):
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, np.conj(psi))


def expectation(rho, op):
    """Real part of Tr(rho op); works on stacks of states."""
    return np.real(np.einsum("...ij,ji->...", rho, op))
