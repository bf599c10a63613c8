"""Fourier spectra of symmetric Boolean functions, computed exactly."""
from .spectrum import (LevelSpectrum, SymmetricFunction, brute_force_spectrum, krawtchouk,
                       level_spectrum, spectral_norm, spectral_summary, symmetrized_levels)
from .structure import R_functional, derivative_energy, paturi_t, r_parameters

__version__ = "0.1.0"

__all__ = [
    "LevelSpectrum", "SymmetricFunction", "brute_force_spectrum", "krawtchouk",
    "level_spectrum", "spectral_norm", "spectral_summary", "symmetrized_levels",
    "R_functional", "derivative_energy", "paturi_t", "r_parameters",
]
