"""Random robustness of entanglement for two-qubit states.

At 2x2 (and 2x3) dimensions a state is separable exactly when its partial
transpose is positive semidefinite, which turns the minimal identity
admixture into a spectral quantity: mixing weight r makes
(rho + r I/d)/(1+r) separable exactly when r >= -d * lambda_min(rho^PT).
The slower constrained search over r survives here as a bisection oracle for
cross-checking the closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import hermitian_eig, hermitian_eigvals, partial_transpose
from .states import DensityMatrix, PureState

# A mixed state counts as PPT (separable at these dimensions) when the
# smallest partial-transpose eigenvalue clears this floor.
PPT_BOUNDARY_TOL = 1e-9

# Bisection bracket: for the dimensions accepted here the robustness never
# exceeds d/2, so 16 leaves generous slack.
_BISECTION_UPPER = 16.0

_VALID_DIMS = {(2, 2), (2, 3), (3, 2)}


@dataclass(frozen=True)
class RREResult:
    """Robustness value with its witnessing boundary state.

    ``closest_separable`` is the state reached by mixing exactly ``value``
    worth of maximally mixed state into the input.
    """

    value: float
    closest_separable: DensityMatrix
    method: str


def _require_ppt_dims(rho: DensityMatrix) -> None:
    if rho.dims not in _VALID_DIMS:
        raise ValueError(
            f"dims {rho.dims} not supported: positivity of the partial transpose "
            "certifies separability only for 2x2 and 2x3 splits"
        )


def _mix_with_identity(rho: DensityMatrix, r: float) -> DensityMatrix:
    d = rho.d
    mixed = (rho.matrix + (r / d) * np.eye(d)) / (1.0 + r)
    return DensityMatrix(rho.dims, mixed)


def min_pt_eigenvalue(rho: DensityMatrix) -> float:
    """Smallest eigenvalue of the partial transpose (party B)."""
    return float(hermitian_eigvals(partial_transpose(rho.matrix, rho.dims, "B"))[0])


def is_ppt(rho: DensityMatrix, tol: float = PPT_BOUNDARY_TOL) -> bool:
    return min_pt_eigenvalue(rho) >= -tol


def rre(rho: DensityMatrix) -> RREResult:
    """Random robustness of entanglement, in closed form.

    Returns max(0, -d * lambda_min(rho^PT)) together with the boundary
    separable state (rho + value * I/d)/(1 + value).
    """
    _require_ppt_dims(rho)
    value = max(0.0, -rho.d * min_pt_eigenvalue(rho))
    return RREResult(value=value, closest_separable=_mix_with_identity(rho, value), method="spectral")


def rre_bisection_oracle(rho: DensityMatrix, tol: float = 1e-9) -> RREResult:
    """Random robustness located by bisection on the mixing weight.

    Finds the smallest r in [0, 16] for which (rho + r I/d)/(1+r) passes the
    partial-transpose test, to absolute tolerance ``tol``.  Kept deliberately
    independent of the spectral formula so the two can cross-validate.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    _require_ppt_dims(rho)

    def feasible(r: float) -> bool:
        return min_pt_eigenvalue(_mix_with_identity(rho, r)) >= 0.0

    if feasible(0.0):
        return RREResult(0.0, _mix_with_identity(rho, 0.0), "bisection-oracle")
    lo, hi = 0.0, _BISECTION_UPPER
    if not feasible(hi):
        raise ValueError("no separable mixture found within the bisection bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return RREResult(hi, _mix_with_identity(rho, hi), "bisection-oracle")


def rre_pure(psi: PureState) -> float:
    """Random robustness of a two-qubit pure state: 4|x0 x3 - x1 x2|.

    Twice the concurrence; validated against the spectral route in the test
    suite before being trusted anywhere.
    """
    if psi.dims != (2, 2):
        raise ValueError(f"pure-state closed form requires 2x2 dims, got {psi.dims}")
    x = psi.amplitudes
    return 4.0 * abs(x[0] * x[3] - x[1] * x[2])


def closest_separable(rho: DensityMatrix) -> DensityMatrix:
    """The separable state reached by the minimal identity admixture."""
    return rre(rho).closest_separable


def robustness_wrt(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Robustness of ``rho`` relative to a separable reference ``sigma``.

    The minimum r >= 0 such that (rho + r sigma)/(1 + r) is separable, which
    at these dimensions means rho^PT + r sigma^PT >= 0.  Returns ``math.inf``
    when no finite admixture works (possible for references whose partial
    transpose is singular).
    """
    _require_ppt_dims(rho)
    _require_ppt_dims(sigma)
    if rho.dims != sigma.dims:
        raise ValueError(f"dims mismatch: {rho.dims} vs {sigma.dims}")
    if np.array_equal(sigma.matrix, np.eye(sigma.d) / sigma.d):
        # Definition coincidence: relative to the maximally mixed state this
        # is the random robustness itself.
        return rre(rho).value
    s_pt = partial_transpose(sigma.matrix, sigma.dims, "B")
    s_spec = hermitian_eig(s_pt)
    if s_spec.eigenvalues[0] < -PPT_BOUNDARY_TOL:
        raise ValueError(
            f"reference state is not separable: min PT eigenvalue {s_spec.eigenvalues[0]:.3e}"
        )
    r_pt = partial_transpose(rho.matrix, rho.dims, "B")
    if hermitian_eigvals(r_pt)[0] >= 0.0:
        return 0.0

    if s_spec.eigenvalues[0] > 1e-12:
        # Positive-definite reference: whiten and read off the extreme eigenvalue.
        w = s_spec.eigenvectors @ np.diag(s_spec.eigenvalues**-0.5) @ s_spec.eigenvectors.conj().T
        m = w @ r_pt @ w
        m = 0.5 * (m + m.conj().T)
        return max(0.0, float(hermitian_eigvals(-m)[-1]))

    return _singular_reference_robustness(r_pt, s_spec)


def _singular_reference_robustness(r_pt: np.ndarray, s_spec) -> float:
    """Minimal admixture against a reference with singular partial transpose.

    Existence of a finite answer requires rho^PT, compressed onto the kernel
    of sigma^PT, to be positive semidefinite, and any null directions of that
    compression to decouple from the rest; otherwise adding sigma^PT can
    never repair the negativity and the robustness is infinite.
    """
    kernel = s_spec.eigenvalues <= 1e-12
    k_basis = s_spec.eigenvectors[:, kernel]
    q_basis = s_spec.eigenvectors[:, ~kernel]
    block = k_basis.conj().T @ r_pt @ k_basis
    block = 0.5 * (block + block.conj().T)
    b_spec = hermitian_eig(block)
    if b_spec.eigenvalues[0] < -1e-10:
        return math.inf
    null_of_block = b_spec.eigenvectors[:, np.abs(b_spec.eigenvalues) <= 1e-10]
    if null_of_block.size:
        coupling = q_basis.conj().T @ r_pt @ (k_basis @ null_of_block)
        if coupling.size and np.abs(coupling).max() > 1e-10:
            return math.inf

    def feasible(r: float) -> bool:
        m = r_pt + r * (s_spec.eigenvectors @ np.diag(s_spec.eigenvalues) @ s_spec.eigenvectors.conj().T)
        m = 0.5 * (m + m.conj().T)
        scale = max(1.0, float(np.abs(m).max()))
        return float(hermitian_eigvals(m)[0]) >= -1e-12 * scale

    hi = 1.0
    while not feasible(hi):
        hi *= 2.0
        if hi > 2.0**60:
            return math.inf
    lo = 0.0
    while hi - lo > 1e-10 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi
