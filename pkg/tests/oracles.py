"""Independent reference computations used only by the tests.

None of these call into the package's numerical paths: they rebuild each
quantity from a different route (SL(2,C) matrices, a full 4x4 Lorentz
matrix, Bessel functions, a non-symmetric eigen-solver, 3D quadrature).
"""

import numpy as np
from scipy import special

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
YY = np.kron(SY, SY)


def lorentz_z(xi):
    ch, sh = np.cosh(xi), np.sinh(xi)
    return np.array([[ch, 0, 0, sh], [0, 1, 0, 0], [0, 0, 1, 0], [sh, 0, 0, ch]])


def boost_4x4(e, p3, xi):
    return lorentz_z(xi) @ np.array([e, *p3])


def sl2c_standard_boost(p3, m):
    """SL(2,C) image of the pure boost taking (m, 0) to (E, p3)."""
    p = np.linalg.norm(p3)
    if p == 0:
        return np.eye(2, dtype=complex)
    n = np.asarray(p3) / p
    eta = np.arcsinh(p / m)
    return np.cosh(eta / 2) * np.eye(2) + np.sinh(eta / 2) * (n[0] * SX + n[1] * SY + n[2] * SZ)


def sl2c_wigner(p3, xi, m=1.0):
    """``L(Lambda p)^-1 Lambda L(p)`` for a z-boost, as a 2x2 SU(2) matrix."""
    p3 = np.asarray(p3, dtype=float)
    e = np.sqrt(m * m + p3 @ p3)
    lam = np.cosh(xi / 2) * np.eye(2) + np.sinh(xi / 2) * SZ
    q = boost_4x4(e, p3, xi)[1:]
    return np.linalg.inv(sl2c_standard_boost(q, m)) @ lam @ sl2c_standard_boost(p3, m)


def paper_alpha_beta(p, phi, xi, m=1.0):
    """The printed closed forms, evaluated literally with cosh/sinh."""
    e = np.sqrt(p * p + m * m)
    e1 = e * np.cosh(xi) + p * np.cos(phi) * np.sinh(xi)
    alpha = np.sqrt((e + m) / (e1 + m)) * (np.cosh(xi / 2) + p * np.cos(phi) / (e + m) * np.sinh(xi / 2))
    beta = p * np.sin(phi) / np.sqrt((e + m) * (e1 + m)) * np.sinh(xi / 2)
    return alpha, beta


def u_matrix(alpha, beta, theta):
    return np.array([[alpha, beta * np.exp(-1j * theta)],
                     [-beta * np.exp(1j * theta), alpha]])


def normalization_bessel(sigma, m):
    """Closed form of the integral of exp(-p^2/2 sigma^2) d^3p/(2E)."""
    z = m * m / (4 * sigma * sigma)
    return 0.5 * np.pi * m * m * (special.kve(1, z) - special.kve(0, z))


def concurrence_eig(rho):
    """Concurrence straight from a general eigen-solver on rho @ rho_tilde."""
    rho_t = YY @ rho.conj() @ YY
    ev = np.linalg.eigvals(rho @ rho_t)
    ev = np.where(np.abs(ev.imag) < 1e-8, ev.real, np.nan)
    lam = np.sort(np.sqrt(np.clip(ev, 0, None)))[::-1]
    return max(lam[0] - lam[1:].sum(), 0.0)


def channel_3d(sigma, m, xi, rho, n_radial=128, n_polar=64, n_azimuth=64, p_max=None):
    """``integral |f|^2 U rho U^dagger d^3p/(2E)`` on an explicit (p, cos phi, theta) grid."""
    p_max = 8 * sigma if p_max is None else p_max
    x, wx = np.polynomial.legendre.leggauss(n_radial)
    p, wp = 0.5 * p_max * (x + 1), 0.5 * p_max * wx
    c, wc = np.polynomial.legendre.leggauss(n_polar)
    th = 2 * np.pi * np.arange(n_azimuth) / n_azimuth
    wt = np.full(n_azimuth, 2 * np.pi / n_azimuth)
    P, C, T = np.meshgrid(p, c, th, indexing="ij")
    W = wp[:, None, None] * wc[None, :, None] * wt[None, None, :]
    e = np.sqrt(P * P + m * m)
    W = W * P * P * np.exp(-P * P / (2 * sigma * sigma)) / (2 * e) / normalization_bessel(sigma, m)
    a, b = paper_alpha_beta(P, np.arccos(C), xi, m)
    U = np.empty(P.shape + (2, 2), dtype=complex)
    U[..., 0, 0] = a
    U[..., 0, 1] = b * np.exp(-1j * T)
    U[..., 1, 0] = -b * np.exp(1j * T)
    U[..., 1, 1] = a
    out = np.einsum("...ij,jk,...lk->...il", U, rho, U.conj())
    return np.tensordot(W, out, axes=W.ndim)
