"""Four-momenta, z-axis boosts and the Wigner rotation of a rest-frame spin.

Natural units (c = 1) throughout. Boosts are always along +z; a signed
rapidity ``xi < 0`` means a boost along -z. Momenta along an arbitrary axis are
handled by rotating them into this frame first, since a pure rotation acts on
the spin independently of the momentum.

Light-cone components ``E + p_z`` and ``E - p_z`` are evaluated without
cancellation, so that masses and rotation angles stay accurate for
ultrarelativistic momenta and rapidities up to ``MAX_RAPIDITY``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

#: Largest |xi| accepted; cosh overflows double precision shortly after 710.
MAX_RAPIDITY = 700.0


def _check_mass(m: float) -> None:
    if not (m > 0 and math.isfinite(m)):
        raise DomainError(f"mass must be positive and finite, got {m!r}")


def check_rapidity(xi: float) -> float:
    """Validate a signed z-boost rapidity and return it as a float."""
    xi = float(xi)
    if not math.isfinite(xi) or abs(xi) > MAX_RAPIDITY:
        raise DomainError(f"rapidity must be finite with |xi| <= {MAX_RAPIDITY}, got {xi!r}")
    return xi


def light_cone(e, pz, pt2, m):
    """Return ``(E + pz, E - pz)`` for an on-shell momentum, free of cancellation.

    ``pt2`` is the squared transverse momentum. Works elementwise on arrays.
    """
    e = np.asarray(e, dtype=float)
    pz = np.asarray(pz, dtype=float)
    mt2 = m * m + np.asarray(pt2, dtype=float)
    plus_direct = e + pz
    minus_direct = e - pz
    with np.errstate(divide="ignore", invalid="ignore"):
        plus = np.where(pz >= 0, plus_direct, mt2 / minus_direct)
        minus = np.where(pz <= 0, minus_direct, mt2 / plus_direct)
    return plus, minus


@dataclass(frozen=True)
class FourMomentum:
    """On-shell four-momentum of a massive particle.

    The 3-momentum and the mass are stored; the energy is derived from the
    mass shell, so boosting can never push the state off shell.
    """

    px: float
    py: float
    pz: float
    m: float

    def __post_init__(self):
        _check_mass(self.m)
        for v in (self.px, self.py, self.pz):
            if not math.isfinite(v):
                raise DomainError("momentum components must be finite")

    @classmethod
    def from_components(cls, e: float, px: float, py: float, pz: float,
                        rtol: float = 1e-12) -> FourMomentum:
        """Build from ``(E, px, py, pz)``; the implied mass must be positive."""
        if not e > 0:
            raise DomainError(f"energy must be positive, got {e!r}")
        p2 = px * px + py * py + pz * pz
        m2 = e * e - p2
        if m2 <= rtol * e * e:
            raise DomainError("four-momentum is not timelike with positive mass")
        return cls(px, py, pz, math.sqrt(m2))

    @classmethod
    def at_rest(cls, m: float) -> FourMomentum:
        return cls(0.0, 0.0, 0.0, m)

    @property
    def p3(self) -> np.ndarray:
        return np.array([self.px, self.py, self.pz])

    @property
    def p(self) -> float:
        return math.sqrt(self.px ** 2 + self.py ** 2 + self.pz ** 2)

    @property
    def e(self) -> float:
        return math.sqrt(self.m ** 2 + self.px ** 2 + self.py ** 2 + self.pz ** 2)

    @property
    def components(self) -> np.ndarray:
        """``(E, px, py, pz)`` as an array."""
        return np.array([self.e, self.px, self.py, self.pz])

    def invariant_mass_squared(self) -> float:
        """m^2 recomputed from the light-cone components."""
        pt2 = self.px ** 2 + self.py ** 2
        plus, minus = light_cone(self.e, self.pz, pt2, self.m)
        return float(plus * minus - pt2)


@dataclass(frozen=True)
class PolarMomentum:
    """Momentum in polar form: magnitude ``p``, azimuth ``theta``, polar angle ``phi``.

    ``phi`` is measured from +z. When ``sin(phi) == 0`` the azimuth is
    meaningless and is normalised to 0.
    """

    p: float
    theta: float
    phi: float
    m: float

    def __post_init__(self):
        _check_mass(self.m)
        if not self.p >= 0:
            raise DomainError(f"momentum magnitude must be >= 0, got {self.p!r}")
        if not 0.0 <= self.phi <= math.pi:
            raise DomainError(f"polar angle must lie in [0, pi], got {self.phi!r}")

    @property
    def e(self) -> float:
        return math.hypot(self.p, self.m)

    @classmethod
    def from_four_momentum(cls, k: FourMomentum) -> PolarMomentum:
        pt = math.hypot(k.px, k.py)
        p = math.hypot(pt, k.pz)
        phi = math.atan2(pt, k.pz) if p > 0 else 0.0
        theta = math.atan2(k.py, k.px) % (2 * math.pi) if pt > 0 else 0.0
        return cls(p, theta, phi, k.m)

    def to_four_momentum(self) -> FourMomentum:
        s = math.sin(self.phi)
        return FourMomentum(self.p * math.cos(self.theta) * s,
                            self.p * math.sin(self.theta) * s,
                            self.p * math.cos(self.phi),
                            self.m)


@dataclass(frozen=True)
class SpinRotation:
    """The SU(2) matrix ``[[alpha, beta e^{-i theta}], [-beta e^{i theta}, alpha]]``."""

    alpha: float
    beta: float
    theta: float

    @property
    def matrix(self) -> np.ndarray:
        ph = np.exp(1j * self.theta)
        return np.array([[self.alpha, self.beta * np.conj(ph)],
                         [-self.beta * ph, self.alpha]], dtype=complex)

    def unitarity_defect(self) -> float:
        return abs(self.alpha ** 2 + self.beta ** 2 - 1.0)


def rapidity_for_momentum(p3, m: float) -> np.ndarray:
    """Rapidity vector of the pure boost taking a particle at rest to momentum ``p3``."""
    _check_mass(m)
    p3 = np.asarray(p3, dtype=float)
    norm = float(np.linalg.norm(p3))
    if norm == 0.0:
        return np.zeros(3)
    return math.asinh(norm / m) * p3 / norm


def boost(k: FourMomentum, xi: float) -> FourMomentum:
    """Apply a pure boost of rapidity ``xi`` along z."""
    xi = check_rapidity(xi)
    pt2 = k.px ** 2 + k.py ** 2
    plus, minus = light_cone(k.e, k.pz, pt2, k.m)
    pz_new = 0.5 * (plus * math.exp(xi) - minus * math.exp(-xi))
    return FourMomentum(k.px, k.py, float(pz_new), k.m)


def boosted_energy(k: PolarMomentum, xi: float) -> float:
    """Energy ``E cosh(xi) + p cos(phi) sinh(xi)`` after a z-boost."""
    xi = check_rapidity(xi)
    c = math.cos(k.phi)
    s = math.sin(k.phi)
    plus, minus = light_cone(k.e, k.p * c, (k.p * s) ** 2, k.m)
    return float(0.5 * (plus * math.exp(xi) + minus * math.exp(-xi)))


def _sin_from(c, sin_phi):
    if sin_phi is None:
        return np.sqrt(np.clip(1.0 - c * c, 0.0, None))
    return np.asarray(sin_phi, dtype=float)


def wigner_coefficients(p, cos_phi, xi: float, m: float = 1.0, sin_phi=None):
    """Elementwise ``(alpha, beta)`` of the Wigner rotation for a z-boost ``xi``.

    Pass ``sin_phi`` when it is known more accurately than ``sqrt(1 - cos^2)``,
    as for nearly collinear momenta. Scaled by ``exp(-|xi|/2)`` internally so
    that no intermediate overflows. A negative ``xi`` is a boost along -z, which is the +z boost of the
    z-reflected momentum with ``beta`` changing sign.
    """
    _check_mass(m)
    xi = check_rapidity(xi)
    p = np.asarray(p, dtype=float)
    c = np.asarray(cos_phi, dtype=float)
    s = _sin_from(c, sin_phi)
    sign = 1.0
    if xi < 0:
        c, xi, sign = -c, -xi, -1.0
    e = np.sqrt(p * p + m * m)
    plus, minus = light_cone(e, p * c, (p * s) ** 2, m)
    q = math.exp(-xi)
    # (E' + m) * exp(-xi)
    scaled = 0.5 * (plus + minus * q * q) + m * q
    denom = np.sqrt((e + m) * scaled)
    alpha = ((plus + m) + (minus + m) * q) / (2.0 * denom)
    beta = sign * p * s * (1.0 - q) / (2.0 * denom)
    return alpha, beta


def wigner_limit_coefficients(p, cos_phi, m: float = 1.0, sin_phi=None):
    """Elementwise ``xi -> infinity`` limits of ``(alpha, beta)``."""
    _check_mass(m)
    p = np.asarray(p, dtype=float)
    c = np.asarray(cos_phi, dtype=float)
    s = _sin_from(c, sin_phi)
    e = np.sqrt(p * p + m * m)
    plus, _ = light_cone(e, p * c, (p * s) ** 2, m)
    alpha = np.sqrt((e + m) / (2.0 * plus)) * (1.0 + p * c / (e + m))
    beta = p * s / np.sqrt(2.0 * (e + m) * plus)
    return alpha, beta


def wigner_rotation(k: PolarMomentum, xi: float) -> SpinRotation:
    """Spin-1/2 Wigner rotation picked up by momentum ``k`` under a z-boost ``xi``."""
    alpha, beta = wigner_coefficients(k.p, math.cos(k.phi), xi, k.m, math.sin(k.phi))
    return SpinRotation(float(alpha), float(beta), k.theta)


def wigner_limit(k: PolarMomentum) -> tuple[float, float]:
    """``(alpha_inf, beta_inf)``: the Wigner rotation for an infinite z-boost."""
    alpha, beta = wigner_limit_coefficients(k.p, math.cos(k.phi), k.m, math.sin(k.phi))
    return float(alpha), float(beta)


def beta_max(p_over_m):
    """Largest infinite-boost rotation ``beta_inf`` over polar angles at fixed ``p/m``."""
    r = np.asarray(p_over_m, dtype=float)
    if np.any(r < 0):
        raise DomainError("p/m must be non-negative")
    out = r / (1.0 + np.sqrt(1.0 + r * r))
    return float(out) if out.ndim == 0 else out


def rotate_momentum(k: FourMomentum, rotation: np.ndarray) -> FourMomentum:
    """Apply a 3x3 spatial rotation to the 3-momentum."""
    px, py, pz = np.asarray(rotation, dtype=float) @ k.p3
    return FourMomentum(float(px), float(py), float(pz), k.m)
