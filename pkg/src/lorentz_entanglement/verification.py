"""Randomised invariant checks backing the ``verify`` command."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import continuum, discrete
from .kinematics import PolarMomentum, boost, boosted_energy, wigner_limit, wigner_rotation


@dataclass
class PropertyResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_deviation <= self.tolerance)


def _random_polar(rng, n, p_scale=5.0, m=1.0):
    return [PolarMomentum(float(rng.uniform(0, p_scale)), float(rng.uniform(0, 2 * math.pi)),
                          float(np.arccos(rng.uniform(-1, 1))), m) for _ in range(n)]


def check_mass_preservation(rng, n=200):
    dev = 0.0
    for k in _random_polar(rng, n):
        xi = rng.uniform(0, 20)
        four = k.to_four_momentum()
        out = boost(four, xi)
        dev = max(dev, abs(out.invariant_mass_squared() - k.m ** 2) / k.m ** 2,
                  abs(out.e - boosted_energy(k, xi)) / out.e)
    return dev


def check_su2(rng, n=200):
    return max(wigner_rotation(k, rng.uniform(0, 20)).unitarity_defect()
               for k in _random_polar(rng, n))


def check_collinear_identity(rng, n=100):
    dev = 0.0
    for _ in range(n):
        k = PolarMomentum(rng.uniform(0, 20), 0.0, float(rng.choice([0.0, math.pi])), 1.0)
        u = wigner_rotation(k, rng.uniform(0, 20)).matrix
        dev = max(dev, np.abs(u - np.eye(2)).max())
    return dev


def check_limit_consistency(rng, n=200):
    dev = 0.0
    for k in _random_polar(rng, n):
        r = wigner_rotation(k, 40.0)
        a_inf, b_inf = wigner_limit(k)
        dev = max(dev, abs(r.beta - b_inf), abs(r.alpha - a_inf))
    return dev


def _random_qubit_density(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = z @ z.conj().T
    return rho / np.trace(rho)


def check_channels(rng, n=10):
    tp, cp = 0.0, 0.0
    for _ in range(n):
        pkt = continuum.MomentumWavepacket.from_ratio(rng.uniform(0.1, 5.0))
        for xi in (rng.uniform(0, 20), math.inf):
            ch = continuum.spin_channel(pkt, xi)
            out = ch.apply(_random_qubit_density(rng))
            tp = max(tp, abs(np.trace(out).real - 1.0), ch.trace_defect())
            cp = max(cp, -ch.min_choi_eigenvalue())
    return tp, cp


def check_joint_invariance(rng, n=200):
    ent, rev = 0.0, 0.0
    for _ in range(n):
        state = discrete.random_state(rng)
        xi = rng.uniform(0, 20)
        boosted = discrete.apply_boost(state, xi)
        ent = max(ent, abs(discrete.joint_entanglement_entropy(boosted)
                           - discrete.joint_entanglement_entropy(state)))
        back = discrete.apply_boost(boosted, -xi)
        rev = max(rev, np.abs(back.amplitudes - state.amplitudes).max())
    return ent, rev


def check_perp_closed_form():
    dev = 0.0
    for p in (0.25, 0.5, 1.0, 2.0, 5.0, 10.0):
        state = discrete.perpendicular_decay_state(p)
        for xi in (0.5, 1.0, 2.0, 4.0, 8.0):
            c = discrete.spin_concurrence(discrete.apply_boost(state, xi))
            dev = max(dev, abs(c - discrete.perp_concurrence_closed_form(p, xi)))
    return dev


def run_suite(seed: int = 0, n_samples: int = 2000, tolerance_scale: float = 1.0) -> list[PropertyResult]:
    """Run every invariant check; tolerances are multiplied by ``tolerance_scale``."""
    rng = np.random.default_rng(seed)
    s = tolerance_scale
    results = [
        PropertyResult("boost_mass_preservation", check_mass_preservation(rng), 1e-10 * s),
        PropertyResult("wigner_su2_membership", check_su2(rng), 1e-12 * s),
        PropertyResult("wigner_collinear_identity", check_collinear_identity(rng), 1e-12 * s),
        PropertyResult("wigner_limit_consistency", check_limit_consistency(rng), 1e-10 * s),
    ]
    tp, cp = check_channels(rng)
    results += [PropertyResult("channel_trace_preservation", tp, 1e-8 * s),
                PropertyResult("channel_complete_positivity", cp, 1e-8 * s)]
    report = discrete.verify_monotonicity_theorem(n_samples, seed)
    results.append(PropertyResult("theorem_no_concurrence_increase",
                                  max(report.max_violation, 0.0), 1e-9 * s))
    ent, rev = check_joint_invariance(rng)
    results += [PropertyResult("joint_entanglement_invariance", ent, 1e-10 * s),
                PropertyResult("boost_reversibility", rev, 1e-10 * s),
                PropertyResult("perp_closed_form_match", check_perp_closed_form(), 1e-10 * s)]
    return results


def all_passed(results) -> bool:
    return all(r.passed for r in results)
