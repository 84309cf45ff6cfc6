"""Thermal states by two routes: Gibbs exponentiation and local dephasing.

For the parent Hamiltonian of a graph state, the Gibbs state at temperature
T equals the ground state pushed through independent single-qubit dephasing
channels of strength p = 2/(1 + e^(Delta/T)). Both routes are implemented
so each can serve as an oracle for the other.

Temperatures are always the dimensionless ratio T/Delta (k_B = 1). The
endpoints are explicit branches: t = 0 gives the ground-state projector,
t = +inf the maximally mixed state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import build_graph_state, parent_hamiltonian
from .linalg import I2, Z, hermitian_expm, tensor_all

__all__ = [
    "Channel",
    "TemperaturePoint",
    "p_from_temperature",
    "temperature_from_p",
    "gibbs_state",
    "dephasing_channel",
    "phase_gate_channel",
    "apply_channels",
    "thermal_state_model",
]


@dataclass(frozen=True)
class Channel:
    """Mixed-unitary single-qubit channel: apply each unitary with its weight."""

    kraus_ops: tuple  # tuple of (weight, 2x2 unitary)
    target_qubit: int

    def __post_init__(self):
        total = sum(w for w, _ in self.kraus_ops)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"channel weights sum to {total!r}, expected 1")
        if any(w < 0 for w, _ in self.kraus_ops):
            raise ValueError("channel weights must be nonnegative")


@dataclass(frozen=True)
class TemperaturePoint:
    """A (p, T/Delta) pair satisfying p = 2/(1 + e^(Delta/T))."""

    p: float
    t_over_delta: float

    @classmethod
    def from_p(cls, p):
        return cls(p=p, t_over_delta=temperature_from_p(p))

    @classmethod
    def from_temperature(cls, t_over_delta):
        return cls(p=p_from_temperature(t_over_delta), t_over_delta=t_over_delta)


def p_from_temperature(t_over_delta):
    """Dephasing strength p = 2/(1 + e^(Delta/T)); p(0) = 0, p(inf) = 1."""
    t = float(t_over_delta)
    if t < 0:
        raise ValueError("temperature must be nonnegative")
    if t == 0:
        return 0.0
    if np.isinf(t):
        return 1.0
    return float(2.0 / (1.0 + np.exp(1.0 / t)))


def temperature_from_p(p):
    """Inverse map T/Delta = 1/(ln(2-p) - ln p); 0 at p=0, +inf at p=1."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return float("inf")
    return float(1.0 / (np.log(2.0 - p) - np.log(p)))


def gibbs_state(g, gap=1.0, t_over_delta=0.0):
    """e^(-H/T) / Tr e^(-H/T) for the parent Hamiltonian of ``g``.

    The exponent is dimensionless, -H / (gap * t_over_delta), so the result
    depends on the graph and t_over_delta only.
    """
    t = float(t_over_delta)
    if t < 0:
        raise ValueError("temperature must be nonnegative")
    dim = 2**g.n_vertices
    if t == 0:
        psi = build_graph_state(g)
        return np.outer(psi, psi.conj())
    if np.isinf(t):
        return np.eye(dim, dtype=complex) / dim
    h = parent_hamiltonian(g, gap)
    # shift by the ground energy before exponentiating to avoid overflow
    shift = float(np.linalg.eigvalsh(h)[0])
    rho = hermitian_expm(h - shift * np.eye(dim), -1.0 / (gap * t))
    return rho / np.trace(rho).real


def dephasing_channel(p, qubit):
    """Leave the qubit alone with probability 1 - p/2, apply Z with p/2."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    return Channel(kraus_ops=((1.0 - p / 2.0, I2), (p / 2.0, Z)), target_qubit=qubit)


def phase_gate_channel(p, alpha, qubit):
    """Dephasing with the imperfect gate F(alpha) = diag(1, e^(i*alpha)).

    alpha = pi recovers the ideal dephasing channel; the experiments are fit
    by alpha = 0.84*pi.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    f = np.array([[1.0, 0.0], [0.0, np.exp(1j * alpha)]], dtype=complex)
    return Channel(kraus_ops=((1.0 - p / 2.0, I2), (p / 2.0, f)), target_qubit=qubit)


def _embed(u, qubit, n):
    factors = [I2] * n
    factors[qubit] = u
    return tensor_all(factors)


def apply_channels(state, channels, n=None):
    """Apply each mixed-unitary channel in sequence to a density matrix."""
    rho = np.asarray(state, dtype=complex)
    if n is None:
        n = int(round(np.log2(rho.shape[0])))
    for ch in channels:
        if not 0 <= ch.target_qubit < n:
            raise ValueError(f"channel qubit {ch.target_qubit} out of range for n={n}")
        out = np.zeros_like(rho)
        for w, u in ch.kraus_ops:
            if w == 0.0:
                continue
            big = _embed(np.asarray(u, dtype=complex), ch.target_qubit, n)
            out += w * (big @ rho @ big.conj().T)
        rho = out
    return rho


def thermal_state_model(g, p, alpha=np.pi):
    """Graph state followed by the phase-gate channel on every qubit.

    With alpha = pi this is exactly the Gibbs state at temperature_from_p(p);
    alpha = 0.84*pi models an imperfect entangling gate of the kind photonic
    implementations are fit by.
    """
    psi = build_graph_state(g)
    rho = np.outer(psi, psi.conj())
    channels = [phase_gate_channel(p, alpha, q) for q in range(g.n_vertices)]
    return apply_channels(rho, channels, n=g.n_vertices)
