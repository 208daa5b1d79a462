"""How many molecules does a spectrometer need to see the signal?"""
from nmrsdc.hardware import HardwareParams, min_molecules, noise_amplitude, signal_amplitude
from nmrsdc.protocol import GAMMA_PROTON, thermal_polarization

hp = HardwareParams()
eps = thermal_polarization(GAMMA_PROTON, 10.0, 300.0)
print("proton polarization at 10 T, 300 K:", eps)
print("signal per molecule [V]:", signal_amplitude(hp, 1, eps))
print("Nyquist noise [V]:      ", noise_amplitude(hp))
for target in (1, 10, 100):
    print(f"SNR {target:>3}: n_min = {min_molecules(hp, eps, target):.3e}")
