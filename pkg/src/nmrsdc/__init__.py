"""Superdense coding on weakly polarized two-spin NMR ensembles.

Submodules:

- ``linalg``: 2x2/4x4 complex matrices, Jacobi eigensolver, partial transpose
- ``protocol``: thermal states, gates and the entangle/encode/decode circuit
- ``ensemble``: magnetization statistics, error probabilities, sampling
- ``witness``: magnetization witness F, conventional witness, PPT check
- ``appendix``: conventional witness as rotated single-spin magnetizations
- ``hardware``: signal amplitude, Nyquist noise and molecule-count bound
- ``cli``: command-line front end
"""

__version__ = "0.1.0"
