"""Spectrometer sensitivity: induced signal voltage against Johnson noise."""

import math
import os
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

from .errors import NonPhysicalError, ParameterFileError
from .protocol import GAMMA_PROTON, HBAR, K_B, MU0

CONFIG_ENV = "NMRSDC_HARDWARE_CONFIG"
DEFAULT_B0 = 10.0  # T


@dataclass(frozen=True)
class HardwareParams:
    """Probe and receiver parameters in SI units.

    Defaults are bench values for protons at 10 T and room temperature. Only
    the coil volume and quality factor correspond to a quoted experiment; the
    resistance and bandwidth are assumptions.
    """

    Q: float = 1e3
    V_coil: float = 1e-6  # m^3
    R: float = 50.0  # ohm
    omega_I: float = GAMMA_PROTON * DEFAULT_B0  # rad/s
    T: float = 300.0  # K
    delta_nu: float = 1e4  # Hz
    mu0: float = MU0  # H/m
    gamma_I: float = GAMMA_PROTON  # rad s^-1 T^-1

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (math.isfinite(v) and v > 0):
                raise NonPhysicalError(f"{f.name} must be finite and positive, got {v!r}")


def signal_amplitude(hp, n, eps):
    """Voltage induced by n molecules at polarization eps."""
    if n < 0:
        raise NonPhysicalError(f"molecule count must be >= 0, got {n!r}")
    return 0.25 * math.sqrt(hp.Q / hp.V_coil * hp.mu0 * hp.R * hp.omega_I) * HBAR * hp.gamma_I * n * eps


def noise_amplitude(hp):
    """Nyquist voltage sqrt(4 k_B T R delta_nu)."""
    return math.sqrt(4.0 * K_B * hp.T * hp.R * hp.delta_nu)


def min_molecules(hp, eps, snr_target):
    """Smallest n with signal_amplitude(n, eps) / noise_amplitude >= snr_target."""
    if not eps > 0:
        raise NonPhysicalError(f"polarization must be positive, got {eps!r}")
    if not snr_target > 0:
        raise NonPhysicalError(f"SNR target must be positive, got {snr_target!r}")
    per_molecule = Fraction(signal_amplitude(hp, 1, eps))
    need = Fraction(snr_target) * Fraction(noise_amplitude(hp))
    # exact rational ceiling; float division loses integers above 2**53
    n = max(1, -(-need.numerator * per_molecule.denominator // (need.denominator * per_molecule.numerator)))
    return int(n)


def snr(hp, n, eps):
    return signal_amplitude(hp, n, eps) / noise_amplitude(hp)


def parse_params(text, path="<string>", base=None):
    """Parse ``key = value`` lines (SI units, ``#`` comments) into HardwareParams."""
    base = base or HardwareParams()
    known = {f.name for f in fields(HardwareParams)}
    updates = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterFileError(path, lineno, f"expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ParameterFileError(path, lineno, f"unknown parameter {key!r}")
        try:
            updates[key] = float(value)
        except ValueError:
            raise ParameterFileError(path, lineno, f"{key}: not a number: {value!r}") from None
    try:
        return replace(base, **updates)
    except NonPhysicalError as exc:
        raise ParameterFileError(path, 0, str(exc)) from None


def load_params(path=None):
    """Read a parameter file; falls back to $NMRSDC_HARDWARE_CONFIG, then defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV)
        if not path:
            return HardwareParams()
    path = Path(path)
    return parse_params(path.read_text(), path=path)
