import numpy as np
import pytest

from thermalcluster.linalg import (
    KETS,
    PositivityError,
    basis_index,
    fidelity,
    hermitian_expm,
    partial_trace,
    partial_transpose,
    purity,
    tensor,
    tensor_all,
    trace_norm,
    validate_density_matrix,
)


def random_density(dim, rng, rank=None):
    rank = dim if rank is None else rank
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def bell_state():
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return np.outer(v, v.conj())


def test_tensor_matches_kron():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(4, 4))
    assert np.allclose(tensor(a, b), np.kron(a, b))


def test_tensor_all_order():
    x = np.diag([1.0, 2.0])
    y = np.diag([3.0, 5.0])
    z = np.diag([7.0, 11.0])
    out = tensor_all([x, y, z])
    # qubit 0 is the leftmost factor, i.e. the most significant bit
    assert out[0, 0] == 1 * 3 * 7
    assert out[4, 4] == 2 * 3 * 7
    assert out[1, 1] == 1 * 3 * 11


def test_basis_index():
    assert basis_index([0, 0, 0]) == 0
    assert basis_index([1, 0, 0]) == 4
    assert basis_index([0, 0, 1]) == 1
    assert basis_index([1, 1, 1]) == 7


def test_kets_are_unit_eigenstates():
    for lab, ket in KETS.items():
        assert abs(np.linalg.norm(ket) - 1.0) < 1e-14, lab


def test_validate_accepts_valid_states():
    rng = np.random.default_rng(1)
    for dim in (2, 4, 8):
        rho = random_density(dim, rng)
        assert validate_density_matrix(rho) is rho


def test_validate_rejects_non_hermitian():
    m = np.array([[0.5, 0.1], [0.3, 0.5]], dtype=complex)
    with pytest.raises(ValueError, match="Hermitian"):
        validate_density_matrix(m)


def test_validate_rejects_wrong_trace():
    with pytest.raises(ValueError, match="trace"):
        validate_density_matrix(np.eye(2))


def test_validate_positivity_clamp_boundary():
    # eigenvalue -5e-10 is inside the clamp, -5e-9 is not
    ok = np.diag([1.0 + 5e-10, -5e-10]).astype(complex)
    validate_density_matrix(ok)
    bad = np.diag([1.0 + 5e-9, -5e-9]).astype(complex)
    with pytest.raises(PositivityError):
        validate_density_matrix(bad)


def test_partial_trace_product_state():
    rng = np.random.default_rng(2)
    a = random_density(2, rng)
    b = random_density(2, rng)
    c = random_density(2, rng)
    rho = tensor_all([a, b, c])
    assert np.allclose(partial_trace(rho, [0]), a)
    assert np.allclose(partial_trace(rho, [1]), b)
    assert np.allclose(partial_trace(rho, [2]), c)
    assert np.allclose(partial_trace(rho, [0, 2]), tensor(a, c))


def test_partial_trace_bell():
    red = partial_trace(bell_state(), [0])
    assert np.allclose(red, np.eye(2) / 2)


def test_partial_trace_preserves_trace_and_validity():
    rng = np.random.default_rng(3)
    rho = random_density(8, rng)
    for keep in ([0], [1], [2], [0, 1], [1, 2], [0, 2]):
        red = partial_trace(rho, keep)
        assert abs(np.trace(red).real - 1.0) < 1e-12
        validate_density_matrix(red)


def test_partial_trace_errors():
    rho = np.eye(4) / 4
    with pytest.raises(ValueError):
        partial_trace(rho, [])
    with pytest.raises(ValueError):
        partial_trace(rho, [2])


def test_partial_transpose_involution_and_trace():
    rng = np.random.default_rng(4)
    rho = random_density(8, rng)
    pt = partial_transpose(rho, [1])
    assert abs(np.trace(pt).real - 1.0) < 1e-12
    assert np.allclose(pt, pt.conj().T)
    assert np.allclose(partial_transpose(pt, [1]), rho)


def test_partial_transpose_full_set_is_transpose():
    rng = np.random.default_rng(5)
    rho = random_density(4, rng)
    assert np.allclose(partial_transpose(rho, [0, 1]), rho.T)


def test_partial_transpose_bell_eigenvalues():
    w = np.linalg.eigvalsh(partial_transpose(bell_state(), [0]))
    assert np.allclose(sorted(w), [-0.5, 0.5, 0.5, 0.5])


def test_partial_transpose_separable_stays_positive():
    rng = np.random.default_rng(6)
    rho = sum(
        p * tensor(random_density(2, rng), random_density(2, rng))
        for p in (0.2, 0.3, 0.5)
    )
    w = np.linalg.eigvalsh(partial_transpose(rho, [0]))
    assert w[0] > -1e-12


def test_hermitian_expm():
    rng = np.random.default_rng(7)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = (a + a.conj().T) / 2
    e = hermitian_expm(h, -0.3)
    # inverse check: exp(-0.3 h) exp(0.3 h) = 1
    assert np.allclose(e @ hermitian_expm(h, 0.3), np.eye(4), atol=1e-12)
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_expm(a)


def test_trace_norm():
    rng = np.random.default_rng(8)
    rho = random_density(4, rng)
    assert abs(trace_norm(rho) - 1.0) < 1e-12
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert abs(trace_norm(m) - np.linalg.svd(m, compute_uv=False).sum()) < 1e-10


def test_fidelity_pure_state_overlap():
    rng = np.random.default_rng(9)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v /= np.linalg.norm(v)
    psi = np.outer(v, v.conj())
    sigma = random_density(4, rng)
    overlap = float((v.conj() @ sigma @ v).real)
    assert abs(fidelity(psi, sigma) - overlap) < 1e-8


def test_fidelity_properties():
    rng = np.random.default_rng(10)
    for _ in range(5):
        rho = random_density(4, rng)
        sigma = random_density(4, rng)
        f = fidelity(rho, sigma)
        assert 0.0 <= f <= 1.0
        assert abs(f - fidelity(sigma, rho)) < 1e-9
        assert fidelity(rho, rho) > 1.0 - 1e-12


def test_fidelity_orthogonal_states():
    a = np.diag([1.0, 0.0]).astype(complex)
    b = np.diag([0.0, 1.0]).astype(complex)
    assert fidelity(a, b) < 1e-14


def test_purity_range():
    rng = np.random.default_rng(11)
    assert abs(purity(np.eye(4) / 4) - 0.25) < 1e-14
    rho = random_density(4, rng, rank=1)
    assert abs(purity(rho) - 1.0) < 1e-12
