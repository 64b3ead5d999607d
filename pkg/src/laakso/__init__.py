"""Spectra, spectral zeta functions and Casimir energies on Laakso spaces.

The package root only exposes the light-weight data types; numerical
modules (``oracle``, ``zeta``, ``poles``, ``casimir``) are imported
explicitly so that thread settings can be applied before BLAS loads.
"""
from .errors import (CertificationError, InsufficientCutoffError, LaaksoError,
                     MultiplicityError, NumericalGuardError, OracleConvergenceError,
                     PoleError, RegularizationError, ResourceError, ValidationError)
from .sequence import (JSequence, PlateConfig, constant_sequence, make_sequence,
                       plate_config)
from .spectrum import (EigenFamily, EnumeratedSpectrum, counting_function,
                       dirichlet_spectrum, family_stream, finite_spectrum, free_spectrum,
                       plated_spectrum)

__version__ = "0.1.0"

__all__ = [
    "CertificationError", "EigenFamily", "EnumeratedSpectrum", "InsufficientCutoffError",
    "JSequence", "LaaksoError", "MultiplicityError", "NumericalGuardError",
    "OracleConvergenceError", "PlateConfig", "PoleError", "RegularizationError",
    "ResourceError", "ValidationError", "constant_sequence", "counting_function",
    "dirichlet_spectrum", "family_stream", "finite_spectrum", "free_spectrum",
    "make_sequence", "plate_config",
]
