"""Simulated projective tomography with Poissonian counts.

The measurement model follows the optical experiment: for each product
projector setting the detector registers a Poisson-distributed number of
coincidences with mean flux * Tr(rho * Pi). Reconstruction is offered both
as least-squares linear inversion (with eigenvalue clipping to the physical
set) and as Poisson maximum likelihood (projected gradient ascent, monotone
in the likelihood). Error bars come from Monte Carlo resampling of the
counts, the standard procedure for coincidence data.

All randomness flows from explicit integer seeds; nothing reads ambient
entropy, so every pipeline built on this module is reproducible bit for bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .linalg import KETS

__all__ = [
    "STANDARD_ALPHABET",
    "MUB_ALPHABET",
    "CountRecord",
    "ReconstructionResult",
    "standard_settings",
    "mub_settings",
    "setting_projector",
    "projector_stack",
    "setting_label",
    "parse_setting_label",
    "simulate_counts",
    "expected_probabilities",
    "poisson_log_likelihood",
    "linear_inversion",
    "mle_reconstruct",
    "monte_carlo_states",
    "monte_carlo_statistic",
]

# Minimal informationally complete product family: 4^n settings.
STANDARD_ALPHABET = ("z0", "z1", "x+", "y+")
# Overcomplete 6^n family over all Pauli eigenstates, for robustness studies.
MUB_ALPHABET = ("z0", "z1", "x+", "x-", "y+", "y-")


def standard_settings(n):
    """All 4^n product settings over {|0>, |1>, |+>, |r>}."""
    if n < 1:
        raise ValueError("need at least one qubit")
    return list(itertools.product(STANDARD_ALPHABET, repeat=n))


def mub_settings(n):
    """All 6^n product settings over the full Pauli-eigenstate alphabet."""
    if n < 1:
        raise ValueError("need at least one qubit")
    return list(itertools.product(MUB_ALPHABET, repeat=n))


def setting_projector(setting):
    """Rank-1 product projector for one setting."""
    v = np.array([1.0 + 0.0j])
    for lab in setting:
        v = np.kron(v, KETS[lab])
    return np.outer(v, v.conj())


def projector_stack(settings):
    """(S, d, d) array of all setting projectors."""
    mats = [setting_projector(s) for s in settings]
    return np.array(mats)


def setting_label(setting):
    """Compact text label, e.g. ('z0','x+','y+') -> 'z0x+y+'."""
    return "".join(setting)


def parse_setting_label(label):
    """Inverse of setting_label; labels are fixed-width two-character tokens."""
    if len(label) % 2 != 0:
        raise ValueError(f"bad setting label {label!r}")
    toks = tuple(label[i : i + 2] for i in range(0, len(label), 2))
    for t in toks:
        if t not in KETS:
            raise ValueError(f"unknown setting token {t!r} in {label!r}")
    return toks


@dataclass(frozen=True)
class CountRecord:
    """Counts per setting plus the flux and seed that produced them.

    Counts are stored as floats: the Poisson sampler yields integers, but
    exact mean counts (noiseless diagnostics) are legitimate inputs to the
    reconstructors as well.
    """

    settings: tuple
    counts: np.ndarray
    flux: float
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "settings", tuple(tuple(s) for s in self.settings))
        counts = np.asarray(self.counts, dtype=float)
        object.__setattr__(self, "counts", counts)
        if counts.shape != (len(self.settings),):
            raise ValueError(
                f"{counts.shape[0] if counts.ndim else 0} counts for "
                f"{len(self.settings)} settings"
            )
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        if not self.flux > 0:
            raise ValueError("flux must be positive")

    @property
    def n_qubits(self):
        return len(self.settings[0])

    def to_text(self):
        """Serialize as a text table: one 'label,count' row per setting."""
        lines = [f"# flux = {self.flux!r}", f"# seed = {self.seed!r}"]
        for s, c in zip(self.settings, self.counts):
            c_txt = repr(int(c)) if float(c).is_integer() else repr(float(c))
            lines.append(f"{setting_label(s)},{c_txt}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        flux = None
        seed = None
        settings = []
        counts = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line.lstrip("# ").partition("=")
                key = key.strip()
                val = val.strip()
                if key == "flux":
                    flux = float(val)
                elif key == "seed":
                    seed = None if val in ("None", "none") else int(val)
                continue
            label, _, c_txt = line.partition(",")
            settings.append(parse_setting_label(label.strip()))
            counts.append(float(c_txt))
        if flux is None:
            raise ValueError("count table is missing the flux header")
        return cls(settings=tuple(settings), counts=np.array(counts), flux=flux, seed=seed)


@dataclass(frozen=True)
class ReconstructionResult:
    rho: np.ndarray
    method: str  # "LINEAR" or "MLE"
    iterations: int = 0
    log_likelihood: float | None = None
    converged: bool = True


def expected_probabilities(rho, settings):
    """Tr(rho * Pi_s) for every setting."""
    pi = projector_stack(settings)
    return np.einsum("sij,ji->s", pi, np.asarray(rho)).real


def simulate_counts(rho, settings, flux, seed):
    """Draw one Poisson count per setting with mean flux * Tr(rho * Pi)."""
    if not flux > 0:
        raise ValueError("flux must be positive")
    means = np.clip(expected_probabilities(rho, settings), 0.0, None) * flux
    rng = np.random.default_rng(seed)
    counts = rng.poisson(means).astype(float)
    return CountRecord(settings=tuple(settings), counts=counts, flux=float(flux), seed=seed)


def poisson_log_likelihood(rho, rec):
    """log L = sum_s [c_s log(flux q_s) - flux q_s], dropping the c! constant."""
    q = expected_probabilities(rho, rec.settings)
    return _log_likelihood(q, rec.counts, rec.flux)


def _log_likelihood(q, counts, flux):
    pos = counts > 0
    if np.any(q[pos] <= 0):
        return -np.inf
    return float(np.sum(counts[pos] * np.log(flux * q[pos])) - flux * np.sum(q))


def _simplex_project(w):
    # Euclidean projection of eigenvalues onto the probability simplex
    u = np.sort(w)[::-1]
    css = np.cumsum(u)
    k = np.nonzero(u * np.arange(1, len(w) + 1) > (css - 1.0))[0][-1]
    tau = (css[k] - 1.0) / (k + 1)
    return np.maximum(w - tau, 0.0)


def _project_to_states(m):
    # nearest density matrix in Frobenius norm: eigenvalues onto the simplex
    w, v = np.linalg.eigh(m)
    return (v * _simplex_project(w)) @ v.conj().T


def linear_inversion(rec, project=True):
    """Least-squares inversion of flux * Tr(rho Pi_s) = counts.

    The unconstrained solve returns the Hermitian unit-trace least-squares
    estimate, which can have negative eigenvalues; with ``project=True``
    (the default) the eigenvalues are clipped to the nearest physical state.
    All-zero counts reconstruct to the maximally mixed state by convention.
    """
    pi = projector_stack(rec.settings)
    d = pi.shape[1]
    if rec.counts.sum() == 0:
        return ReconstructionResult(rho=np.eye(d, dtype=complex) / d, method="LINEAR")
    a = pi.reshape(len(rec.settings), -1).conj()
    if np.linalg.matrix_rank(a) < d * d:
        raise ValueError("settings are not informationally complete (rank-deficient)")
    b = (rec.counts / rec.flux).astype(complex)
    rho = np.linalg.lstsq(a, b, rcond=None)[0].reshape(d, d)
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho).real
    if abs(tr) < 1e-12:
        rho = np.eye(d, dtype=complex) / d
    else:
        rho = rho / tr
    if project:
        rho = _project_to_states(rho)
    return ReconstructionResult(rho=rho, method="LINEAR")


def mle_reconstruct(rec, max_iter=1500, tol=1e-9):
    """Poisson maximum-likelihood reconstruction.

    Projected gradient ascent on the density-matrix set: take a gradient
    step, project the eigenvalues back onto the simplex, and backtrack the
    step size until the log-likelihood does not decrease. Stops when the
    per-iteration gain falls below ``tol`` or no uphill step exists at
    machine precision; ``converged`` is False only when ``max_iter`` runs
    out first. The output is always a valid density matrix.
    """
    pi = projector_stack(rec.settings)
    d = pi.shape[1]
    counts = rec.counts
    flux = rec.flux
    if counts.sum() == 0:
        rho = np.eye(d, dtype=complex) / d
        q = np.einsum("sij,ji->s", pi, rho).real
        return ReconstructionResult(
            rho=rho, method="MLE", iterations=0,
            log_likelihood=_log_likelihood(q, counts, flux), converged=True,
        )
    g0 = pi.sum(axis=0)
    rho = np.eye(d, dtype=complex) / d
    q = np.einsum("sij,ji->s", pi, rho).real
    ll = _log_likelihood(q, counts, flux)
    eta = 1.0 / flux
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        grad = np.einsum("s,sij->ij", counts / np.maximum(q, 1e-300), pi) - flux * g0
        improved = False
        for _ in range(60):
            cand = _project_to_states(rho + eta * grad)
            q_cand = np.einsum("sij,ji->s", pi, cand).real
            ll_cand = _log_likelihood(q_cand, counts, flux)
            if ll_cand >= ll - 1e-13 * abs(ll):
                improved = True
                break
            eta *= 0.5
        if not improved:
            # no uphill step representable: stationary to machine precision
            converged = True
            break
        gain = ll_cand - ll
        rho, q, ll = cand, q_cand, ll_cand
        eta *= 2.0
        if 0.0 <= gain < tol:
            converged = True
            break
    return ReconstructionResult(
        rho=rho, method="MLE", iterations=iterations,
        log_likelihood=ll, converged=converged,
    )


def _reconstruct(rec, method, project):
    if method == "mle":
        return mle_reconstruct(rec).rho
    if method == "linear":
        return linear_inversion(rec, project=project).rho
    raise ValueError(f"unknown reconstruction method {method!r}")


def monte_carlo_states(rec, n_samples, seed, method="mle", project=True):
    """Yield reconstructions of Poisson-resampled count records.

    Sample k draws counts ~ Poisson(mean = observed counts) from the
    generator seeded with seed + k, so the stream is independent of any
    scheduling or chunking of the consumer.
    """
    for k in range(n_samples):
        rng = np.random.default_rng(seed + k)
        resampled = rng.poisson(rec.counts).astype(float)
        sample = CountRecord(
            settings=rec.settings, counts=resampled, flux=rec.flux, seed=seed + k
        )
        try:
            yield _reconstruct(sample, method, project)
        except Exception as exc:
            raise RuntimeError(f"reconstruction failed for resample {k}") from exc


def monte_carlo_statistic(rec, statistic, n_samples, seed, method="mle", project=True):
    """Mean and standard deviation of a statistic over count resamples.

    The usual error-bar procedure for counting experiments: resample every
    count from a Poisson distribution centered on the observed value,
    reconstruct, and evaluate the statistic. Returns (mean, sample std).
    """
    if n_samples < 2:
        raise ValueError("need at least 2 samples for a standard deviation")
    vals = [
        float(statistic(rho))
        for rho in monte_carlo_states(rec, n_samples, seed, method, project)
    ]
    return float(np.mean(vals)), float(np.std(vals, ddof=1))
