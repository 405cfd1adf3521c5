"""Entanglement transfer between spin and momentum of massive spin-1/2 pairs under Lorentz boosts."""

__version__ = "0.1.0"

from . import continuum, discrete, kinematics, spin_algebra  # noqa: E402,F401
from .errors import ConvergenceError, DomainError  # noqa: E402,F401
