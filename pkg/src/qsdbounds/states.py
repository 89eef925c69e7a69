"""Two-qubit state construction and reproducible random sampling.

Randomness is pinned down completely so that a seed reproduces the same
states on any platform: the bit source is PCG64, uniforms are built from the
top 53 bits of each raw 64-bit word, and normal deviates come from an
explicit Box-Muller transform on those uniforms.  No library distribution
methods are involved beyond the raw bit stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import hermiticity_deviation, kron

TRACE_TOL = 1e-12
NORM_TOL = 1e-12

_TWO_PI = 2.0 * math.pi
_BELL_AMPLITUDES = {
    "phi+": np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2.0),
    "phi-": np.array([1, 0, 0, -1], dtype=complex) / math.sqrt(2.0),
    "psi+": np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2.0),
    "psi-": np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2.0),
}


class SeededRng:
    """Deterministic random stream addressed by a 64-bit seed.

    Identical seeds give identical sample sequences across runs and
    platforms.  Instances are stateful and not thread-safe; use one per
    worker, with :func:`child_seed` to derive independent streams.
    """

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._bits = np.random.PCG64(seed)

    def uniforms(self, n: int) -> np.ndarray:
        """n doubles uniform on [0, 1), one per raw 64-bit word."""
        raw = self._bits.random_raw(n)
        return (raw >> np.uint64(11)) * 2.0**-53

    def uniform(self) -> float:
        return float(self.uniforms(1)[0])

    def uniform_open(self) -> float:
        """A draw from the open interval (0, 1)."""
        while True:
            u = self.uniform()
            if 0.0 < u < 1.0:
                return u

    def normals(self, n: int) -> np.ndarray:
        """n standard normal deviates via Box-Muller on paired uniforms."""
        pairs = (n + 1) // 2
        u = self.uniforms(2 * pairs)
        radius = np.sqrt(-2.0 * np.log1p(-u[0::2]))
        angle = _TWO_PI * u[1::2]
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:n]

    def complex_normals(self, n: int) -> np.ndarray:
        """n standard complex Gaussians (independent N(0,1) real and imaginary parts)."""
        z = self.normals(2 * n)
        return z[0::2] + 1j * z[1::2]


def child_seed(*key: int) -> int:
    """Derive a 64-bit child seed from a master seed and index path.

    Uses numpy's SeedSequence hashing, which is pure integer arithmetic and
    platform independent, so experiment workers can be seeded per index in
    any execution order.
    """
    return int(np.random.SeedSequence(tuple(int(k) for k in key)).generate_state(1, dtype=np.uint64)[0])


def _read_only(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DensityMatrix:
    """Unit-trace Hermitian PSD operator with a bipartite dimension split.

    Construction checks the cheap invariants (shape, trace, Hermiticity);
    positivity is an eigenvalue question and is checked by
    :meth:`min_eigenvalue` where a caller needs it.
    """

    dims: tuple[int, int]
    matrix: np.ndarray

    def __post_init__(self):
        da, db = (int(x) for x in self.dims)
        if da < 1 or db < 1:
            raise ValueError(f"dims must be positive, got {self.dims}")
        object.__setattr__(self, "dims", (da, db))
        m = _read_only(self.matrix)
        d = da * db
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} does not match dims {da}x{db}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace must be 1 within {TRACE_TOL:.0e}, got {tr}")
        dev = hermiticity_deviation(m)
        if dev > 1e-12:
            raise ValueError(f"matrix is not Hermitian: deviation {dev:.3e}")
        object.__setattr__(self, "matrix", m)

    @property
    def d(self) -> int:
        return self.dims[0] * self.dims[1]

    def min_eigenvalue(self) -> float:
        from .linalg import hermitian_eigvals

        return float(hermitian_eigvals(self.matrix)[0])

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


@dataclass(frozen=True)
class PureState:
    """Unit-norm state vector on a bipartite space."""

    dims: tuple[int, int]
    amplitudes: np.ndarray

    def __post_init__(self):
        da, db = (int(x) for x in self.dims)
        object.__setattr__(self, "dims", (da, db))
        v = _read_only(self.amplitudes).reshape(-1)
        if v.shape != (da * db,):
            raise ValueError(f"amplitude vector length {v.shape[0]} does not match dims {da}x{db}")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"amplitudes must be unit norm within {NORM_TOL:.0e}, got {norm}")
        object.__setattr__(self, "amplitudes", v)

    def density(self) -> DensityMatrix:
        v = self.amplitudes
        return DensityMatrix(self.dims, np.outer(v, v.conj()))


def concurrence(psi: PureState) -> float:
    """Pure-state two-qubit concurrence 2|x0 x3 - x1 x2|."""
    if psi.dims != (2, 2):
        raise ValueError(f"concurrence is defined here for 2x2 dims, got {psi.dims}")
    x = psi.amplitudes
    return 2.0 * abs(x[0] * x[3] - x[1] * x[2])


def maximally_mixed(dims: tuple[int, int] = (2, 2)) -> DensityMatrix:
    d = int(dims[0]) * int(dims[1])
    return DensityMatrix(dims, np.eye(d) / d)


def bell_state(label: str) -> PureState:
    """One of the four Bell states; labels phi+, phi-, psi+, psi-."""
    try:
        amps = _BELL_AMPLITUDES[label]
    except KeyError:
        raise ValueError(f"unknown Bell label {label!r}; expected one of {sorted(_BELL_AMPLITUDES)}") from None
    return PureState((2, 2), amps)


def random_pure(dims: tuple[int, int], rng: SeededRng) -> PureState:
    """Haar-uniform pure state: normalized complex Gaussian amplitudes."""
    d = int(dims[0]) * int(dims[1])
    if d < 2:
        raise ValueError(f"total dimension must be at least 2, got {d}")
    z = rng.complex_normals(d)
    return PureState(dims, z / np.linalg.norm(z))


def random_mixed_rank(dims: tuple[int, int], rank: int, rng: SeededRng) -> DensityMatrix:
    """Random fixed-rank density matrix from the Ginibre-induced measure.

    rho = G G^dagger / Tr(G G^dagger) with G a d-by-rank complex standard
    Gaussian matrix, so the sample has rank exactly ``rank`` almost surely.
    """
    d = int(dims[0]) * int(dims[1])
    rank = int(rank)
    if not 1 <= rank <= d:
        raise ValueError(f"rank must be in [1, {d}], got {rank}")
    g = rng.complex_normals(d * rank).reshape(d, rank)
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix(dims, m / np.trace(m).real)


def random_one_qubit_pure(rng: SeededRng) -> np.ndarray:
    z = rng.complex_normals(2)
    return z / np.linalg.norm(z)


def random_product_pure(rng: SeededRng, mode: str = "identical") -> PureState:
    """Haar-random pure product state of two qubits.

    ``identical`` repeats one single-qubit state on both factors;
    ``independent`` draws the two factors separately.
    """
    a = random_one_qubit_pure(rng)
    if mode == "identical":
        b = a
    elif mode == "independent":
        b = random_one_qubit_pure(rng)
    else:
        raise ValueError(f"mode must be 'identical' or 'independent', got {mode!r}")
    return PureState((2, 2), np.kron(a, b))


def su2(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """SU(2) element from z-y-z Euler angles: Rz(alpha) Ry(beta) Rz(gamma)."""
    ca, sa = math.cos(beta / 2.0), math.sin(beta / 2.0)
    return np.array(
        [
            [np.exp(-0.5j * (alpha + gamma)) * ca, -np.exp(-0.5j * (alpha - gamma)) * sa],
            [np.exp(0.5j * (alpha - gamma)) * sa, np.exp(0.5j * (alpha + gamma)) * ca],
        ]
    )


def pure_from_schmidt(
    lam0: float,
    angles_a: tuple[float, float, float] = (0.0, 0.0, 0.0),
    angles_b: tuple[float, float, float] = (0.0, 0.0, 0.0),
) -> PureState:
    """Two-qubit pure state with Schmidt weight ``lam0`` and local rotations.

    Returns (U_A x U_B)(sqrt(lam0)|00> + sqrt(1-lam0)|11>).  The concurrence
    2*sqrt(lam0*(1-lam0)) does not depend on the angles.
    """
    lam0 = float(lam0)
    if not 0.5 <= lam0 <= 1.0:
        raise ValueError(f"lam0 must lie in [1/2, 1], got {lam0}")
    base = np.zeros(4, dtype=complex)
    base[0] = math.sqrt(lam0)
    base[3] = math.sqrt(1.0 - lam0)
    u = kron(su2(*angles_a), su2(*angles_b))
    return PureState((2, 2), u @ base)
