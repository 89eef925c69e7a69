"""Dense complex-matrix kernels for small bipartite operators.

Matrices are numpy ``complex128`` arrays in row-major layout.  The kernels
target the dimensions that show up in two-qubit work (d = 4 typical, d <= 16
expected) and are deliberately dependency-free: the eigensolver is a cyclic
Jacobi iteration rather than a LAPACK call, so identical inputs give
bit-identical output on every platform.

Hermiticity is enforced, never repaired: operations that require a Hermitian
argument reject anything whose deviation max |A_ij - conj(A_ji)| exceeds
``HERMITICITY_TOL``.  Past validation, the eigensolver works on the Hermitian
part of the input, which shifts eigenvalues by at most the (already accepted)
deviation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-12

# Jacobi termination: off-diagonal Frobenius mass below this fraction of the
# matrix Frobenius norm, with a hard cap on the number of sweeps.
_OFF_DIAGONAL_FACTOR = 1e-14
_MAX_SWEEPS = 100


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` is real and ascending; column k of ``eigenvectors`` is the
    unit eigenvector for ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermiticity_deviation(a: np.ndarray) -> float:
    """Largest entrywise magnitude of A - A^dagger."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.abs(a - a.conj().T).max())


def require_hermitian(a: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Return ``a`` as a complex array, rejecting non-square or non-Hermitian input."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    dev = hermiticity_deviation(a)
    if dev > tol:
        raise ValueError(
            f"matrix is not Hermitian: max |A_ij - conj(A_ji)| = {dev:.3e} "
            f"exceeds tolerance {tol:.1e}"
        )
    return a


def _jacobi(a: np.ndarray, want_vectors: bool) -> tuple[np.ndarray, np.ndarray | None]:
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Sweeps the strict upper triangle in row order, annihilating each pivot
    with a complex plane rotation, until the off-diagonal Frobenius mass drops
    below ``_OFF_DIAGONAL_FACTOR`` times the matrix norm or ``_MAX_SWEEPS``
    sweeps have run.  Eigenvalues come back ascending.
    """
    d = a.shape[0]
    # Work on the Hermitian part; validation has already bounded the deviation.
    a = 0.5 * (a + a.conj().T)
    v = np.eye(d, dtype=np.complex128) if want_vectors else None

    norm = float(np.linalg.norm(a))
    if d > 1 and norm > 0.0:
        off_target = _OFF_DIAGONAL_FACTOR * norm
        skip_below = off_target / (d * d)
        for _ in range(_MAX_SWEEPS):
            # Measure the strict off-diagonal mass directly; computing it as
            # ||A||^2 - ||diag||^2 cancels catastrophically near convergence.
            off_part = a.copy()
            np.fill_diagonal(off_part, 0.0)
            off = float(np.linalg.norm(off_part))
            if off <= off_target:
                break
            for p in range(d - 1):
                for q in range(p + 1, d):
                    apq = a[p, q]
                    m = abs(apq)
                    if m <= skip_below:
                        continue
                    phase = apq / m
                    tau = (a[q, q].real - a[p, p].real) / (2.0 * m)
                    if tau >= 0.0:
                        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    w = (t * c) * phase
                    wc = w.conjugate()
                    # Similarity transform on the (p, q) plane: columns, then rows.
                    col_p = a[:, p].copy()
                    col_q = a[:, q]
                    a[:, p] = c * col_p - wc * col_q
                    a[:, q] = w * col_p + c * col_q
                    row_p = a[p, :].copy()
                    row_q = a[q, :]
                    a[p, :] = c * row_p - w * row_q
                    a[q, :] = wc * row_p + c * row_q
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = a[p, p].real
                    a[q, q] = a[q, q].real
                    if v is not None:
                        vp = v[:, p].copy()
                        vq = v[:, q]
                        v[:, p] = c * vp - wc * vq
                        v[:, q] = w * vp + c * vq

    eigenvalues = np.diag(a).real.copy()
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    if v is not None:
        v = v[:, order]
    return eigenvalues, v


def hermitian_eig(a: np.ndarray, tol: float = HERMITICITY_TOL) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Deterministic: identical input yields identical output.  Rejects
    non-square or non-Hermitian (beyond ``tol``) input with a diagnostic that
    includes the violation magnitude.
    """
    a = require_hermitian(a, tol)
    eigenvalues, vectors = _jacobi(a, want_vectors=True)
    return Spectrum(eigenvalues=eigenvalues, eigenvectors=vectors)


def hermitian_eigvals(a: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (no eigenvectors, faster)."""
    a = require_hermitian(a, tol)
    eigenvalues, _ = _jacobi(a, want_vectors=False)
    return eigenvalues


def trace_norm(a: np.ndarray) -> float:
    """Trace norm of a Hermitian matrix: the sum of absolute eigenvalues.

    Only the Hermitian case is supported; a general singular-value path is
    out of scope here.
    """
    return float(np.sum(np.abs(hermitian_eigvals(a))))


def partial_transpose(a: np.ndarray, dims: tuple[int, int], party: str = "B") -> np.ndarray:
    """Transpose one tensor factor of a bipartite operator.

    ``dims = (dA, dB)`` fixes the factorization; ``party`` selects which
    factor's indices are transposed.  The map is an involution.
    """
    a = np.asarray(a, dtype=np.complex128)
    da, db = int(dims[0]), int(dims[1])
    d = da * db
    if a.shape != (d, d):
        raise ValueError(f"matrix shape {a.shape} does not match dims {da}x{db}")
    blocks = a.reshape(da, db, da, db)
    if party == "A":
        blocks = blocks.transpose(2, 1, 0, 3)
    elif party == "B":
        blocks = blocks.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"party must be 'A' or 'B', got {party!r}")
    return np.ascontiguousarray(blocks.reshape(d, d))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor (Kronecker) product of two matrices."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))
