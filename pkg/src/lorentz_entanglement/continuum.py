"""Gaussian momentum wavepackets and the spin channel a boost induces on them.

A particle with momentum amplitude ``f(p)`` and spin ``rho`` is seen by a
z-boosted observer, once momentum is traced out, in the spin state

    E_xi(rho) = integral |f(p)|^2  U(p) rho U(p)^dagger  d^3p / (2E)

with ``U(p)`` the Wigner rotation. For an isotropic packet the azimuthal
integral is done in closed form: the ``exp(+-i theta)`` cross terms vanish and
the channel depends only on the averages ``A = <alpha^2>`` and ``B = <beta^2>``:

    rho_00 -> A rho_00 + B rho_11      rho_01 -> A rho_01
    rho_11 -> B rho_00 + A rho_11      rho_10 -> A rho_10

The remaining (p, cos phi) integral uses tensor Gauss-Legendre quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import optimize

from . import spin_algebra as sa
from .errors import ConvergenceError, DomainError
from .kinematics import check_rapidity, wigner_coefficients, wigner_limit_coefficients

#: Relative change on node doubling above which a quadrature is rejected.
CONVERGENCE_RTOL = 1e-6


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Legendre grid in ``p`` on ``(0, p_max)`` and in ``cos(phi)`` on ``[-1, 1]``.

    ``p_max=None`` means ``8 * sigma_r`` for whichever packet is integrated.
    """

    n_radial: int = 128
    n_polar: int = 64
    p_max: float | None = None

    def __post_init__(self):
        if self.n_radial < 8 or self.n_polar < 8:
            raise DomainError("quadrature node counts must be >= 8")
        if self.p_max is not None and not self.p_max > 0:
            raise DomainError("p_max must be positive")

    def cutoff(self, sigma_r: float) -> float:
        if self.p_max is None:
            return 8.0 * sigma_r
        if self.p_max < 6.0 * sigma_r:
            raise DomainError(f"p_max={self.p_max} is below 6*sigma_r={6 * sigma_r}")
        return self.p_max

    def refined(self) -> QuadratureSpec:
        """The same grid with both node counts doubled."""
        return replace(self, n_radial=2 * self.n_radial, n_polar=2 * self.n_polar)

    def radial_nodes(self, sigma_r: float):
        x, w = np.polynomial.legendre.leggauss(self.n_radial)
        p_max = self.cutoff(sigma_r)
        return 0.5 * p_max * (x + 1.0), 0.5 * p_max * w

    def polar_nodes(self):
        return np.polynomial.legendre.leggauss(self.n_polar)


DEFAULT_QUADRATURE = QuadratureSpec()


def _radial_integral(sigma_r: float, m: float, quad: QuadratureSpec) -> float:
    p, w = quad.radial_nodes(sigma_r)
    e = np.sqrt(p * p + m * m)
    # angular integral of an isotropic integrand gives 4 pi
    return float(4.0 * math.pi * np.sum(w * p * p * np.exp(-p * p / (2 * sigma_r ** 2)) / (2 * e)))


def normalization_constant(sigma_r: float, m: float = 1.0,
                           quad: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """``N = integral exp(-p^2 / 2 sigma_r^2) d^3p / (2E)``.

    Raises ConvergenceError if doubling the nodes moves ``N`` by more than
    ``CONVERGENCE_RTOL`` relative.
    """
    if not (sigma_r > 0 and m > 0):
        raise DomainError("sigma_r and m must be positive")
    n = _radial_integral(sigma_r, m, quad)
    n_fine = _radial_integral(sigma_r, m, quad.refined())
    if abs(n_fine - n) > CONVERGENCE_RTOL * abs(n_fine):
        raise ConvergenceError(
            f"normalization did not converge: {n} vs {n_fine} on node doubling")
    return n


@dataclass(frozen=True)
class MomentumWavepacket:
    """Zero-mean isotropic packet ``f(p) = sqrt(exp(-p^2 / 2 sigma_r^2) / N)``."""

    sigma_r: float
    m: float = 1.0
    quad: QuadratureSpec = DEFAULT_QUADRATURE
    norm: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "norm", normalization_constant(self.sigma_r, self.m, self.quad))

    @classmethod
    def from_ratio(cls, sigma_over_m: float, quad: QuadratureSpec = DEFAULT_QUADRATURE,
                   m: float = 1.0) -> MomentumWavepacket:
        return cls(sigma_over_m * m, m, quad)

    def amplitude(self, p):
        return np.sqrt(self.density(p))

    def density(self, p):
        """``|f(p)|^2``, to be integrated against ``d^3p / (2E)``."""
        p = np.asarray(p, dtype=float)
        return np.exp(-p * p / (2 * self.sigma_r ** 2)) / self.norm

    def measure_weights(self):
        """Grid ``(p, cos_phi, w)`` with ``sum(w * g) ~ integral |f|^2 g d^3p/(2E)``.

        The azimuth is already integrated out (factor 2 pi), so ``w`` sums to
        one for an isotropic integrand.
        """
        p, wp = self.quad.radial_nodes(self.sigma_r)
        c, wc = self.quad.polar_nodes()
        e = np.sqrt(p * p + self.m ** 2)
        radial = wp * p * p * self.density(p) / (2 * e)
        pp, cc = np.meshgrid(p, c, indexing="ij")
        return pp, cc, 2.0 * math.pi * np.outer(radial, wc)

    def total_probability(self) -> float:
        return float(self.measure_weights()[2].sum())


@dataclass(frozen=True)
class SpinChannel:
    """A linear map on 2x2 matrices, ``vec(out) = superop @ vec(rho)``.

    ``vec`` is row-major flattening: the operator basis is |0><0|, |0><1|,
    |1><0|, |1><1|. In this convention ``rho -> U rho U^dagger`` has
    superoperator ``kron(U, conj(U))``.
    """

    superop: np.ndarray

    @classmethod
    def identity(cls) -> SpinChannel:
        return cls(np.eye(4, dtype=complex))

    @classmethod
    def unitary(cls, u) -> SpinChannel:
        u = np.asarray(u, dtype=complex)
        return cls(np.kron(u, u.conj()))

    @classmethod
    def from_rotation_averages(cls, a: float, b: float) -> SpinChannel:
        """The azimuthally averaged channel with ``A = <alpha^2>``, ``B = <beta^2>``."""
        s = np.zeros((4, 4), dtype=complex)
        s[0, 0] = s[3, 3] = a
        s[0, 3] = s[3, 0] = b
        s[1, 1] = s[2, 2] = a
        return cls(s)

    @property
    def transfer(self) -> np.ndarray:
        """``T[i, j, k, l]`` with ``out[i, j] = sum T[i, j, k, l] rho[k, l]``."""
        return self.superop.reshape(2, 2, 2, 2)

    def apply(self, rho) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        return (self.superop @ rho.reshape(4)).reshape(2, 2)

    def apply_pair(self, rho4, other: SpinChannel | None = None) -> np.ndarray:
        """``(self (x) other)`` applied to a two-qubit matrix (``other`` defaults to ``self``)."""
        other = self if other is None else other
        t = np.asarray(rho4, dtype=complex).reshape(2, 2, 2, 2)  # [a, b, a', b']
        out = np.einsum("ipac,jqbd,abcd->ijpq", self.transfer, other.transfer, t)
        return out.reshape(4, 4)

    def choi(self) -> np.ndarray:
        """``sum_kl |k><l| (x) E(|k><l|)``."""
        c = np.zeros((4, 4), dtype=complex)
        for k in range(2):
            for l in range(2):
                e_kl = np.zeros((2, 2), dtype=complex)
                e_kl[k, l] = 1.0
                c += np.kron(e_kl, self.apply(e_kl))
        return c

    def trace_defect(self) -> float:
        """Largest deviation from trace preservation over the operator basis."""
        t = self.transfer
        tr = t[0, 0] + t[1, 1]  # [k, l]
        return float(np.abs(tr - np.eye(2)).max())

    def min_choi_eigenvalue(self) -> float:
        c = self.choi()
        return float(np.linalg.eigvalsh(0.5 * (c + c.conj().T)).min())

    def unitarity_defect(self) -> float:
        """``1 - purity`` of the normalised Choi matrix; zero exactly for unitary channels."""
        c = self.choi() / 2.0
        return float(1.0 - np.real(np.trace(c @ c)))


def _channel_from_coefficients(pkt: MomentumWavepacket, alpha, beta) -> SpinChannel:
    _, _, w = pkt.measure_weights()
    total = w.sum()
    a = float(np.sum(w * alpha * alpha) / total)
    b = float(np.sum(w * beta * beta) / total)
    return SpinChannel.from_rotation_averages(a, b)


def spin_channel(pkt: MomentumWavepacket, xi: float) -> SpinChannel:
    """Spin channel seen by an observer boosted by ``xi`` along z.

    ``xi = math.inf`` gives the infinite-boost channel built from the
    closed-form limits of the rotation rather than from a large finite ``xi``.
    Momentum relabelling ``p -> Lambda p`` does not appear: it is a change of
    variables under the invariant measure once momentum is traced out.
    """
    if xi == math.inf:
        return limit_channel(pkt)
    xi = check_rapidity(xi)
    if xi == 0.0:
        return SpinChannel.identity()
    p, c, _ = pkt.measure_weights()
    alpha, beta = wigner_coefficients(p, c, xi, pkt.m)
    return _channel_from_coefficients(pkt, alpha, beta)


def limit_channel(pkt: MomentumWavepacket) -> SpinChannel:
    p, c, _ = pkt.measure_weights()
    alpha, beta = wigner_limit_coefficients(p, c, pkt.m)
    return _channel_from_coefficients(pkt, alpha, beta)


def boosted_spin_density(spin_in, pkt: MomentumWavepacket, xi: float) -> np.ndarray:
    """Reduced two-spin state after boosting a product-Gaussian pair.

    Valid for amplitudes of the form ``chi[lam, sig] f(p) f(q)`` with both
    particles carrying the packet ``pkt``; the result is ``(E (x) E)(spin_in)``.
    """
    spin_in = sa.as_density_matrix(spin_in, dim=4)
    channel = spin_channel(pkt, xi)
    return sa.as_density_matrix(channel.apply_pair(spin_in), dim=4)


def _bell_margin(pkt: MomentumWavepacket, xi: float) -> float:
    rho = boosted_spin_density(sa.projector(sa.bell_state("phi+")), pkt, xi)
    return sa.concurrence_margin(rho)


def _check_converged(value: float, fine: float, what: str) -> None:
    if abs(value - fine) > CONVERGENCE_RTOL:
        raise ConvergenceError(f"{what} moved from {value} to {fine} on node doubling")


def concurrence_curve(sigma_over_m: float, xi_values, quad: QuadratureSpec = DEFAULT_QUADRATURE,
                      m: float = 1.0, check_convergence: bool = False) -> list[tuple[float, float]]:
    """Spin concurrence of a boosted ``phi+`` pair with Gaussian momenta, per rapidity."""
    xi_values = [float(x) for x in xi_values]
    if any(x < 0 for x in xi_values):
        raise DomainError("rapidities must be non-negative")
    if any(b < a for a, b in zip(xi_values, xi_values[1:])):
        raise DomainError("rapidities must be ascending")
    pkt = MomentumWavepacket.from_ratio(sigma_over_m, quad, m)
    out = []
    for xi in xi_values:
        c = max(_bell_margin(pkt, xi), 0.0)
        out.append((xi, c))
    if check_convergence and xi_values:
        fine = MomentumWavepacket.from_ratio(sigma_over_m, quad.refined(), m)
        c_fine = max(_bell_margin(fine, xi_values[-1]), 0.0)
        _check_converged(out[-1][1], c_fine, f"concurrence at xi={xi_values[-1]}")
    return out


def saturation_margin(sigma_over_m: float, quad: QuadratureSpec = DEFAULT_QUADRATURE,
                      m: float = 1.0) -> float:
    """Unclamped infinite-boost ``lambda1 - lambda2 - lambda3 - lambda4`` for the ``phi+`` pair."""
    if not sigma_over_m > 0:
        raise DomainError("sigma_r/m must be positive")
    return _bell_margin(MomentumWavepacket.from_ratio(sigma_over_m, quad, m), math.inf)


def saturation_level(sigma_over_m: float, quad: QuadratureSpec = DEFAULT_QUADRATURE,
                     m: float = 1.0) -> float:
    """Concurrence the boosted ``phi+`` pair approaches as ``xi -> infinity``."""
    return max(saturation_margin(sigma_over_m, quad, m), 0.0)


def critical_ratio(quad: QuadratureSpec = DEFAULT_QUADRATURE,
                   bracket: tuple[float, float] = (3.0, 3.8), xtol: float = 1e-6) -> float:
    """``sigma_r/m`` at which the saturation level reaches zero, by bisection.

    Bisects the unclamped margin, which changes sign at the root where the
    clamped concurrence is flat.
    """
    low, high = bracket
    if not 0 < low < high:
        raise DomainError(f"bracket must satisfy 0 < low < high, got {bracket}")
    f_low = saturation_margin(low, quad)
    f_high = saturation_margin(high, quad)
    if not (f_low > 0 and f_high <= 0):
        raise DomainError(
            f"bracket {bracket} does not contain the critical ratio "
            f"(margins {f_low:.3g}, {f_high:.3g})")
    if f_high == 0:
        return float(high)
    return float(optimize.bisect(saturation_margin, low, high, args=(quad,), xtol=xtol))
