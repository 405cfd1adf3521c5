"""Two-qubit spin algebra: Bell states, density matrices, concurrence, entropy.

Basis order is fixed everywhere as |uu>, |ud>, |du>, |dd> (particle A first),
with |u> = (1, 0) the +z rest-frame spin. States and density matrices are plain
complex numpy arrays.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_YY = np.kron(PAULI_Y, PAULI_Y)

_R = 1.0 / np.sqrt(2.0)
_BELL = {
    "phi+": np.array([_R, 0, 0, _R], dtype=complex),
    "phi-": np.array([_R, 0, 0, -_R], dtype=complex),
    "psi+": np.array([0, _R, _R, 0], dtype=complex),
    "psi-": np.array([0, _R, -_R, 0], dtype=complex),
}
# accept the unicode minus as well
_ALIASES = {"phi−": "phi-", "psi−": "psi-"}

#: Hermiticity / trace slack for matrices assembled by quadrature.
DENSITY_ATOL = 1e-8


def bell_state(kind: str) -> np.ndarray:
    """Return one of ``phi+``, ``phi-``, ``psi+``, ``psi-`` as a 4-vector."""
    key = _ALIASES.get(kind, kind)
    try:
        return _BELL[key].copy()
    except KeyError:
        raise DomainError(f"unknown Bell state {kind!r}; expected one of {sorted(_BELL)}") from None


def projector(psi) -> np.ndarray:
    """``|psi><psi|`` for a normalised state vector."""
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def as_density_matrix(rho, dim: int | None = None, atol: float = DENSITY_ATOL) -> np.ndarray:
    """Validate ``rho`` as a density matrix and return its symmetrised, unit-trace copy.

    Deviations from Hermiticity or unit trace up to ``atol`` are repaired;
    anything larger, or an eigenvalue below ``-atol``, raises DomainError.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DomainError(f"density matrix must be square, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise DomainError(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise DomainError("density matrix has non-finite entries")
    if np.abs(rho - rho.conj().T).max() > atol:
        raise DomainError("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > atol:
        raise DomainError(f"density matrix trace is {tr}, expected 1")
    rho = 0.5 * (rho + rho.conj().T) / tr
    if np.linalg.eigvalsh(rho).min() < -atol:
        raise DomainError("density matrix is not positive semidefinite")
    return rho


def spin_flip(rho) -> np.ndarray:
    """Wootters' time-reversed matrix ``(sy x sy) rho* (sy x sy)``."""
    rho = np.asarray(rho, dtype=complex)
    return SIGMA_YY @ rho.conj() @ SIGMA_YY


def _sqrt_psd(rho: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(rho)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def wootters_lambdas(rho) -> np.ndarray:
    """Square roots of the eigenvalues of ``rho @ spin_flip(rho)``, descending.

    These equal the singular values of ``sqrt(rho) (sy x sy) sqrt(rho)*``, which
    is how they are computed: taking square roots of tiny eigenvalues of the
    non-Hermitian product would amplify round-off to ~1e-8 for low-rank states.
    """
    rho = as_density_matrix(rho, dim=4)
    root = _sqrt_psd(rho)
    return np.linalg.svd(root @ SIGMA_YY @ root.conj(), compute_uv=False)


def concurrence_margin(rho) -> float:
    """Unclamped ``lambda1 - lambda2 - lambda3 - lambda4``; negative for strongly mixed states."""
    lam = wootters_lambdas(rho)
    return float(lam[0] - lam[1:].sum())


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix, in [0, 1]."""
    return min(max(concurrence_margin(rho), 0.0), 1.0)


def pure_state_concurrence(psi) -> float:
    """``2|ad - bc|`` for amplitudes ``(a, b, c, d)``."""
    a, b, c, d = np.asarray(psi, dtype=complex)
    return float(2.0 * abs(a * d - b * c))


def werner_state(w: float) -> np.ndarray:
    """``w |psi-><psi-| + (1 - w) I/4``."""
    return w * projector(bell_state("psi-")) + (1.0 - w) * np.eye(4) / 4.0


def partial_trace(rho, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one factor of ``H_0 (x) H_1``; ``keep`` selects the factor retained (0 or 1)."""
    rho = np.asarray(rho, dtype=complex)
    d0, d1 = dims
    if rho.shape != (d0 * d1, d0 * d1):
        raise DomainError(f"matrix of shape {rho.shape} does not factor as {d0}x{d1}")
    t = rho.reshape(d0, d1, d0, d1)
    if keep == 0:
        return np.einsum("ajbj->ab", t)
    if keep == 1:
        return np.einsum("iaib->ab", t)
    raise DomainError(f"keep must be 0 or 1, got {keep!r}")


def von_neumann_entropy(rho, base: float = 2.0) -> float:
    w = np.linalg.eigvalsh(np.asarray(rho, dtype=complex))
    w = w[w > 1e-15]
    return float(-(w * np.log(w)).sum() / np.log(base))


def schmidt_coefficients(psi, dims: tuple[int, int]) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    d0, d1 = dims
    if psi.size != d0 * d1:
        raise DomainError(f"state of size {psi.size} does not factor as {d0}x{d1}")
    return np.linalg.svd(psi.reshape(d0, d1), compute_uv=False)


def entanglement_entropy(psi, dims: tuple[int, int] = (2, 2), base: float = 2.0) -> float:
    """Entropy of entanglement of a pure bipartite state, in bits by default.

    Computed from the Schmidt coefficients, so either side of the cut gives
    the same number.
    """
    s = schmidt_coefficients(psi, dims)
    nrm = np.sum(s * s)
    if abs(nrm - 1.0) > 1e-10:
        raise DomainError(f"state is not normalised (norm^2 = {nrm})")
    q = s * s
    q = q[q > 1e-30]
    return float(-(q * np.log(q)).sum() / np.log(base))


def fidelity_with_pure(rho, psi) -> float:
    """``<psi| rho |psi>``."""
    psi = np.asarray(psi, dtype=complex)
    return float(np.real(psi.conj() @ np.asarray(rho) @ psi))
