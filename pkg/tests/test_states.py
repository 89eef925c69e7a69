"""Tests for state construction and seeded sampling."""

import numpy as np
import pytest

from qsdbounds import linalg
from qsdbounds.states import (
    DensityMatrix,
    PureState,
    SeededRng,
    bell_state,
    child_seed,
    concurrence,
    maximally_mixed,
    pure_from_schmidt,
    random_mixed_rank,
    random_product_pure,
    random_pure,
    su2,
)


# ---------------------------------------------------------------------------
# SeededRng
# ---------------------------------------------------------------------------

def test_rng_identical_seed_identical_stream():
    a = SeededRng(42).normals(100)
    b = SeededRng(42).normals(100)
    assert (a == b).all()


def test_rng_different_seeds_differ():
    assert not (SeededRng(1).normals(10) == SeededRng(2).normals(10)).all()


def test_rng_normals_moments():
    z = SeededRng(3).normals(200_000)
    assert abs(z.mean()) < 0.01
    assert abs(z.std() - 1.0) < 0.01


def test_rng_rejects_bad_seed():
    with pytest.raises(ValueError):
        SeededRng(-1)
    with pytest.raises(ValueError):
        SeededRng(2**64)


def test_child_seed_deterministic_and_spread():
    assert child_seed(7, 0) == child_seed(7, 0)
    seeds = {child_seed(7, i) for i in range(1000)}
    assert len(seeds) == 1000


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------

def test_density_matrix_validation():
    with pytest.raises(ValueError, match="trace"):
        DensityMatrix((2, 2), np.eye(4))
    with pytest.raises(ValueError, match="Hermitian"):
        m = np.eye(4) / 4
        m[0, 1] = 1e-3
        DensityMatrix((2, 2), m)
    with pytest.raises(ValueError, match="shape"):
        DensityMatrix((2, 2), np.eye(2) / 2)


def test_pure_state_validation():
    with pytest.raises(ValueError, match="unit norm"):
        PureState((2, 2), np.array([1.0, 1.0, 0.0, 0.0]))


def test_density_matrix_is_read_only():
    rho = maximally_mixed()
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 2.0


# ---------------------------------------------------------------------------
# random_pure
# ---------------------------------------------------------------------------

def test_random_pure_unit_norm():
    rng = SeededRng(0)
    for _ in range(100):
        psi = random_pure((2, 2), rng)
        assert abs(np.linalg.norm(psi.amplitudes) - 1.0) < 1e-12


def test_random_pure_seed_determinism():
    a = random_pure((2, 2), SeededRng(42))
    b = random_pure((2, 2), SeededRng(42))
    assert (a.amplitudes == b.amplitudes).all()


def test_random_pure_haar_marginal():
    # Mean overlap with a fixed basis state is 1/d for a Haar state.
    rng = SeededRng(9)
    n = 100_000
    z = rng.complex_normals(4 * n).reshape(n, 4)
    weights = np.abs(z) ** 2
    overlaps = weights[:, 0] / weights.sum(axis=1)
    assert abs(overlaps.mean() - 0.25) < 0.01


def test_random_pure_unitary_invariance():
    # E <psi|U' M U|psi> equals E <psi|M|psi> within 3 standard errors.
    rng = SeededRng(12)
    m = np.diag([0.1, 0.2, 0.3, 0.4]).astype(complex)
    m[0, 3] = 0.05
    m[3, 0] = 0.05
    u = linalg.kron(su2(0.3, 1.1, -0.4), su2(-1.0, 0.6, 2.2))
    rotated = u.conj().T @ m @ u
    n = 100_000
    z = rng.complex_normals(4 * n).reshape(n, 4)
    z = z / np.linalg.norm(z, axis=1, keepdims=True)
    plain = np.einsum("ni,ij,nj->n", z.conj(), m, z).real
    turned = np.einsum("ni,ij,nj->n", z.conj(), rotated, z).real
    diff = plain - turned
    stderr = diff.std() / np.sqrt(n)
    assert abs(diff.mean()) <= 3.0 * stderr + 1e-12


# ---------------------------------------------------------------------------
# random_mixed_rank
# ---------------------------------------------------------------------------

def test_mixed_rank_one_is_pure():
    rng = SeededRng(5)
    for _ in range(50):
        rho = random_mixed_rank((2, 2), 1, rng)
        assert abs(rho.purity() - 1.0) < 1e-10


def test_mixed_rank_trace_and_hermiticity():
    rng = SeededRng(6)
    for rank in (1, 2, 3, 4):
        for _ in range(25):
            rho = random_mixed_rank((2, 2), rank, rng)
            assert abs(np.trace(rho.matrix) - 1.0) < 1e-12
            assert linalg.hermiticity_deviation(rho.matrix) == 0.0
            assert rho.min_eigenvalue() >= -1e-10


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_mixed_rank_eigenvalue_counts(rank):
    rng = SeededRng(100 + rank)
    for _ in range(1000):
        rho = random_mixed_rank((2, 2), rank, rng)
        w = linalg.hermitian_eigvals(rho.matrix)
        assert (w > 1e-8).sum() == rank
        assert (np.abs(w) < 1e-10).sum() == 4 - rank


def test_mixed_rank_rejects_bad_rank():
    with pytest.raises(ValueError, match="rank"):
        random_mixed_rank((2, 2), 0, SeededRng(0))
    with pytest.raises(ValueError, match="rank"):
        random_mixed_rank((2, 2), 5, SeededRng(0))


# ---------------------------------------------------------------------------
# product states, Bell states, Schmidt form
# ---------------------------------------------------------------------------

def test_product_pure_has_zero_concurrence():
    rng = SeededRng(8)
    for mode in ("identical", "independent"):
        for _ in range(50):
            psi = random_product_pure(rng, mode=mode)
            assert concurrence(psi) < 1e-12


def test_product_pure_identical_mode_structure():
    # With both factors equal, amplitudes are the outer square of one qubit.
    rng = SeededRng(21)
    psi = random_product_pure(rng, mode="identical")
    x = psi.amplitudes
    # x = (a0*a0, a0*a1, a1*a0, a1*a1): middle entries coincide.
    assert abs(x[1] - x[2]) < 1e-15
    with pytest.raises(ValueError, match="mode"):
        random_product_pure(rng, mode="both")


def test_bell_states():
    labels = ["phi+", "phi-", "psi+", "psi-"]
    for a in labels:
        assert abs(np.linalg.norm(bell_state(a).amplitudes) - 1.0) < 1e-15
        assert abs(concurrence(bell_state(a)) - 1.0) < 1e-12
    assert abs(np.vdot(bell_state("phi+").amplitudes, bell_state("phi-").amplitudes)) < 1e-15
    assert (bell_state("phi+").amplitudes[[0, 3]] == 1 / np.sqrt(2)).all()
    with pytest.raises(ValueError, match="Bell"):
        bell_state("phi")


def test_pure_from_schmidt_identity_angles():
    psi = pure_from_schmidt(0.5)
    assert np.abs(psi.amplitudes - bell_state("phi+").amplitudes).max() < 1e-12
    prod = pure_from_schmidt(1.0)
    assert abs(concurrence(prod)) < 1e-15
    assert abs(prod.amplitudes[0] - 1.0) < 1e-15


def test_pure_from_schmidt_concurrence_invariant_under_angles():
    rng = SeededRng(14)
    for _ in range(200):
        lam = 0.5 + 0.5 * rng.uniform()
        angles = 2 * np.pi * rng.uniforms(6)
        psi = pure_from_schmidt(lam, tuple(angles[:3]), tuple(angles[3:]))
        expected = 2.0 * np.sqrt(lam * (1.0 - lam))
        assert abs(concurrence(psi) - expected) < 1e-10


def test_pure_from_schmidt_rejects_out_of_range():
    with pytest.raises(ValueError, match="lam0"):
        pure_from_schmidt(0.4)
    with pytest.raises(ValueError, match="lam0"):
        pure_from_schmidt(1.1)


def test_su2_is_unitary():
    u = su2(0.4, 1.3, -2.2)
    assert np.abs(u.conj().T @ u - np.eye(2)).max() < 1e-14
