"""Graph states, their excitation eigenbasis, and the parent Hamiltonian.

The chain studied in the experiments is ``linear_graph(3)`` with qubit
ordering (A_p, B_s, B_p) = (0, 1, 2); in that ordering the ground state
equals (|+0+> + |-1->)/sqrt(2) up to global phase.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .linalg import I2, X, Z, tensor_all

__all__ = [
    "Graph",
    "SpectrumReport",
    "linear_graph",
    "parse_graph",
    "format_graph",
    "build_graph_state",
    "excited_state",
    "parent_hamiltonian",
    "verify_spectrum",
]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on ``n_vertices`` labelled 0..n-1."""

    n_vertices: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        norm = set()
        for e in self.edges:
            i, j = sorted(e)
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i and j < self.n_vertices):
                raise ValueError(f"edge {(i, j)} out of range for n={self.n_vertices}")
            norm.add((i, j))
        object.__setattr__(self, "edges", frozenset(norm))

    def neighbors(self, i):
        return sorted(j if a == i else a for (a, j) in self.edges if i in (a, j))


def linear_graph(n):
    """Path graph 0-1-...-(n-1), the 1D cluster geometry."""
    if n < 2:
        raise ValueError("linear graph needs n >= 2")
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def parse_graph(text):
    """Parse the edge-list form ``"n_vertices; i-j,i-j,..."``.

    The edge list may be empty (``"3;"`` is the edgeless 3-vertex graph).
    """
    head, _, tail = text.partition(";")
    try:
        n = int(head.strip())
    except ValueError:
        raise ValueError(f"bad vertex count in graph string {text!r}") from None
    edges = set()
    for item in tail.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            i, j = (int(s) for s in item.split("-"))
        except ValueError:
            raise ValueError(f"bad edge {item!r} in graph string {text!r}") from None
        edges.add((i, j))
    return Graph(n, frozenset(edges))


def format_graph(g):
    """Inverse of :func:`parse_graph`."""
    edges = ",".join(f"{i}-{j}" for (i, j) in sorted(g.edges))
    return f"{g.n_vertices}; {edges}" if edges else f"{g.n_vertices};"


def build_graph_state(g):
    """Amplitude vector of the graph state: CZ along every edge of |+...+>.

    CZ is diagonal in the computational basis, so each edge just flips the
    sign of the amplitudes where both endpoint bits are 1.
    """
    n = g.n_vertices
    dim = 2**n
    amps = np.full(dim, 1.0 / np.sqrt(dim), dtype=complex)
    idx = np.arange(dim)
    for (i, j) in g.edges:
        bi = (idx >> (n - 1 - i)) & 1
        bj = (idx >> (n - 1 - j)) & 1
        amps[(bi == 1) & (bj == 1)] *= -1.0
    return amps


def excited_state(g, mu):
    """Apply Z^mu_i on each qubit of the ground state.

    The 2^n vectors obtained this way are the orthonormal eigenbasis of the
    parent Hamiltonian; ``mu`` counts which stabilizers are violated.
    """
    mu = [int(b) for b in mu]
    if len(mu) != g.n_vertices:
        raise ValueError(f"excitation vector length {len(mu)} != {g.n_vertices} vertices")
    if any(b not in (0, 1) for b in mu):
        raise ValueError("excitation entries must be 0 or 1")
    n = g.n_vertices
    amps = build_graph_state(g).copy()
    idx = np.arange(2**n)
    for q, bit in enumerate(mu):
        if bit:
            bq = (idx >> (n - 1 - q)) & 1
            amps[bq == 1] *= -1.0
    return amps


def _stabilizer_term(g, i):
    # X on vertex i, Z on its neighbors, identity elsewhere
    nbrs = set(g.neighbors(i))
    factors = []
    for q in range(g.n_vertices):
        if q == i:
            factors.append(X)
        elif q in nbrs:
            factors.append(Z)
        else:
            factors.append(I2)
    return tensor_all(factors)


def parent_hamiltonian(g, gap=1.0):
    """H = -(gap/2) * sum_i X_i (x) Z_{neighbors of i}.

    All terms commute, H is frustration-free, and the graph state is its
    unique ground state at energy -n*gap/2.
    """
    if gap <= 0:
        raise ValueError("gap must be positive")
    n = g.n_vertices
    h = np.zeros((2**n, 2**n), dtype=complex)
    for i in range(n):
        h -= _stabilizer_term(g, i)
    return 0.5 * gap * h


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray
    levels: tuple
    multiplicities: tuple
    gap: float
    ground_unique: bool
    gap_matches: bool
    multiplicities_binomial: bool


def verify_spectrum(g, gap=1.0, atol=1e-10):
    """Dense eigensolve of the parent Hamiltonian, checked against theory.

    The exact levels are -(gap/2)(n - 2k) with multiplicity C(n, k): flipping
    k stabilizers costs k*gap. The report flags whether the computed spectrum
    matches, whether the ground level is unique, and whether the gap between
    the two lowest levels equals ``gap``.
    """
    n = g.n_vertices
    w = np.linalg.eigvalsh(parent_hamiltonian(g, gap))
    levels = []
    mults = []
    for ev in w:
        if levels and abs(ev - levels[-1]) <= atol * max(1.0, abs(ev)):
            mults[-1] += 1
        else:
            levels.append(float(ev))
            mults.append(1)
    expected = [(-0.5 * gap * (n - 2 * k), comb(n, k)) for k in range(n + 1)]
    matches = len(levels) == len(expected) and all(
        abs(lv - elv) <= atol and m == em
        for (lv, m), (elv, em) in zip(zip(levels, mults), expected)
    )
    spectral_gap = levels[1] - levels[0] if len(levels) > 1 else float("inf")
    return SpectrumReport(
        eigenvalues=w,
        levels=tuple(levels),
        multiplicities=tuple(mults),
        gap=float(spectral_gap),
        ground_unique=mults[0] == 1,
        gap_matches=abs(spectral_gap - gap) <= atol,
        multiplicities_binomial=matches,
    )
