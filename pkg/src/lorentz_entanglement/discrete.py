"""Two-particle states over finitely many sharp momentum modes.

Modes are orthonormal basis labels. The amplitude tensor ``g[i, j, lam, sig]``
runs over mode ``i`` of particle A, mode ``j`` of particle B and the two
rest-frame spins. Under a z-boost each mode is relabelled ``k -> Lambda k`` and
its spin index rotated by the Wigner rotation evaluated at the old momentum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import spin_algebra as sa
from .errors import DomainError
from .kinematics import FourMomentum, PolarMomentum, boost, check_rapidity, wigner_rotation

NORM_TOL = 1e-10
MODE_TOL = 1e-9


def _check_distinct(modes, label):
    p = np.array([k.p3 for k in modes]).reshape(-1, 3)
    for i in range(len(p)):
        d = np.abs(p[i + 1:] - p[i]).max(axis=1) if i + 1 < len(p) else np.array([])
        if np.any(d < MODE_TOL):
            raise DomainError(f"duplicate momentum mode in {label}")


@dataclass(frozen=True)
class DiscreteTwoParticleState:
    modes_a: tuple[FourMomentum, ...]
    modes_b: tuple[FourMomentum, ...]
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "modes_a", tuple(self.modes_a))
        object.__setattr__(self, "modes_b", tuple(self.modes_b))
        g = np.asarray(self.amplitudes, dtype=complex)
        shape = (len(self.modes_a), len(self.modes_b), 2, 2)
        if g.shape != shape:
            raise DomainError(f"amplitude tensor has shape {g.shape}, expected {shape}")
        if abs(np.vdot(g, g).real - 1.0) > NORM_TOL:
            raise DomainError(f"state is not normalised (norm^2 = {np.vdot(g, g).real})")
        _check_distinct(self.modes_a, "modes_a")
        _check_distinct(self.modes_b, "modes_b")
        g.setflags(write=False)
        object.__setattr__(self, "amplitudes", g)

    @classmethod
    def product(cls, modes_a, modes_b, momentum_amplitudes, spin_state) -> DiscreteTwoParticleState:
        """``|psi>_{A'B'} |phi>_{AB}``: momentum amplitudes ``c[i, j]`` times a two-qubit spin state."""
        c = np.asarray(momentum_amplitudes, dtype=complex)
        chi = np.asarray(spin_state, dtype=complex).reshape(2, 2)
        return cls(modes_a, modes_b, np.einsum("ij,ls->ijls", c, chi))

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def as_bipartite_vector(self) -> np.ndarray:
        """Amplitudes as a matrix over ``(mode_a, spin_a) x (mode_b, spin_b)``."""
        na, nb = len(self.modes_a), len(self.modes_b)
        return self.amplitudes.transpose(0, 2, 1, 3).reshape(2 * na, 2 * nb)


def _rotations(modes, xi: float) -> np.ndarray:
    return np.array([wigner_rotation(PolarMomentum.from_four_momentum(k), xi).matrix
                     for k in modes]).reshape(-1, 2, 2)


def apply_boost(state: DiscreteTwoParticleState, xi: float,
                xi_b: float | None = None) -> DiscreteTwoParticleState:
    """Boost both particles by ``xi`` along z.

    ``xi_b`` boosts particle B independently (``Lambda (x) Lambda'``); it
    defaults to ``xi``. Negative rapidities boost along -z.
    """
    xi = check_rapidity(xi)
    xi_b = xi if xi_b is None else check_rapidity(xi_b)
    u = _rotations(state.modes_a, xi)
    v = _rotations(state.modes_b, xi_b)
    g = np.einsum("ilp,ijpq,jsq->ijls", u, state.amplitudes, v)
    return DiscreteTwoParticleState(
        tuple(boost(k, xi) for k in state.modes_a),
        tuple(boost(k, xi_b) for k in state.modes_b),
        g,
    )


def spin_ensemble(state: DiscreteTwoParticleState) -> np.ndarray:
    """Unnormalised spin vectors, one row per mode pair; ``rho = sum_k |v_k><v_k|``."""
    return state.amplitudes.reshape(-1, 4)


def reduced_spin_density(state: DiscreteTwoParticleState) -> np.ndarray:
    """Two-spin density matrix with both momenta traced out."""
    v = spin_ensemble(state)
    return v.T @ v.conj()


def spin_concurrence(state: DiscreteTwoParticleState) -> float:
    return sa.concurrence(reduced_spin_density(state))


def joint_entanglement_entropy(state: DiscreteTwoParticleState) -> float:
    """Entanglement entropy (bits) across the cut particle A | particle B, spin and momentum together."""
    m = state.as_bipartite_vector()
    return sa.entanglement_entropy(m.reshape(-1), dims=m.shape)


def perpendicular_decay_state(p: float, m: float = 1.0) -> DiscreteTwoParticleState:
    """``(|p, -p> |phi+> + |p_perp, -p_perp> |phi->) / sqrt(2)`` with ``p`` along x and ``p_perp`` along y.

    Its reduced spin state is separable, yet a large z-boost sends both spin
    components to ``psi-``.
    """
    if not (p > 0 and m > 0):
        raise DomainError("p and m must be positive")
    modes_a = (FourMomentum(p, 0.0, 0.0, m), FourMomentum(0.0, p, 0.0, m))
    modes_b = (FourMomentum(-p, 0.0, 0.0, m), FourMomentum(0.0, -p, 0.0, m))
    g = np.zeros((2, 2, 2, 2), dtype=complex)
    g[0, 0] = sa.bell_state("phi+").reshape(2, 2) / math.sqrt(2)
    g[1, 1] = sa.bell_state("phi-").reshape(2, 2) / math.sqrt(2)
    return DiscreteTwoParticleState(modes_a, modes_b, g)


def perp_concurrence_closed_form(p, xi):
    """Closed-form spin concurrence of the boosted perpendicular-decay state (unit masses)."""
    p = np.asarray(p, dtype=float)
    ch = np.cosh(np.asarray(xi, dtype=float))
    out = p * p * (ch * ch - 1.0) / (np.sqrt(1.0 + p * p) * ch + 1.0) ** 2
    return float(out) if out.ndim == 0 else out


# --- random sampling -------------------------------------------------------

def random_modes(rng: np.random.Generator, n: int, m: float = 1.0) -> tuple[FourMomentum, ...]:
    """Directions uniform on the sphere, magnitudes log-uniform in ``[0.1 m, 10 m]``."""
    d = rng.normal(size=(n, 3))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    mag = m * np.exp(rng.uniform(math.log(0.1), math.log(10.0), size=n))
    return tuple(FourMomentum(*(mag[i] * d[i]), m) for i in range(n))


def random_complex(rng: np.random.Generator, shape) -> np.ndarray:
    z = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return z / np.linalg.norm(z)


def random_product_state(rng: np.random.Generator, max_modes: int = 3,
                         m: float = 1.0, spin_state=None) -> DiscreteTwoParticleState:
    """Random ``|psi>_{A'B'} |phi>_{AB}``; ``phi`` Haar-random unless given."""
    na, nb = rng.integers(1, max_modes + 1, size=2)
    c = random_complex(rng, (na, nb))
    chi = random_complex(rng, 4) if spin_state is None else np.asarray(spin_state, dtype=complex)
    return DiscreteTwoParticleState.product(random_modes(rng, na, m), random_modes(rng, nb, m), c, chi)


def random_state(rng: np.random.Generator, max_modes: int = 3, m: float = 1.0) -> DiscreteTwoParticleState:
    """Random state with generic spin-momentum entanglement."""
    na, nb = rng.integers(1, max_modes + 1, size=2)
    g = random_complex(rng, (na, nb, 2, 2))
    return DiscreteTwoParticleState(random_modes(rng, na, m), random_modes(rng, nb, m), g)


@dataclass
class TheoremReport:
    """Outcome of sampling the no-increase property for spin-momentum product states."""

    n_samples: int
    max_violation: float
    worst_sample: int
    violations: list[int]
    tolerance: float
    seed: int

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_monotonicity_theorem(n_samples: int, rng_seed: int, tolerance: float = 1e-9,
                                independent_boosts: bool = False, max_rapidity: float = 10.0,
                                spin_state=None) -> TheoremReport:
    """Check that boosting a spin-momentum product state never raises spin concurrence.

    Sample ``k`` draws from its own stream ``SeedSequence(rng_seed).spawn(...)[k]``
    so any offending sample can be replayed alone. ``max_violation`` is the
    largest ``C_after - C_before`` seen (negative when every sample decreased).
    """
    if n_samples < 1:
        raise DomainError("n_samples must be >= 1")
    streams = np.random.SeedSequence(rng_seed).spawn(n_samples)
    worst, worst_k, bad = -math.inf, -1, []
    for k, ss in enumerate(streams):
        rng = np.random.default_rng(ss)
        state = random_product_state(rng, spin_state=spin_state)
        xi = rng.uniform(0.0, max_rapidity)
        xi_b = rng.uniform(0.0, max_rapidity) if independent_boosts else None
        before = spin_concurrence(state)
        after = spin_concurrence(apply_boost(state, xi, xi_b))
        gain = after - before
        if gain > worst:
            worst, worst_k = gain, k
        if gain > tolerance:
            bad.append(k)
    return TheoremReport(n_samples, worst, worst_k, bad, tolerance, rng_seed)
