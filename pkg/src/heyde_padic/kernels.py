"""Select the compiled kernels when built, else the numpy reference versions."""

try:
    from . import _kernels as _impl
except ImportError:  # extension not built
    from . import _kernels_py as _impl

from . import _kernels_py as reference

BACKEND = _impl.BACKEND
joint_witness = _impl.joint_witness
fourier_residual = _impl.fourier_residual
exact_fourier_witness = _impl.exact_fourier_witness
enumerate_pairs = _impl.enumerate_pairs

INT64_SAFE = 2**62

__all__ = [
    "BACKEND",
    "INT64_SAFE",
    "enumerate_pairs",
    "exact_fourier_witness",
    "fourier_residual",
    "joint_witness",
    "reference",
]
