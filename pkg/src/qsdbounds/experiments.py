"""Seeded batch experiments: bound-tightness scatter data and the
distinguishability-gap threshold curve.

Both experiments derive one child seed per work item from the master seed, so
records are independent of scheduling order and each row can be regenerated
from its stored seed and class alone.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .discrimination import INEQUALITY_SLACK, Ensemble, bound_report
from .robustness import rre
from .states import (
    SeededRng,
    child_seed,
    pure_from_schmidt,
    random_mixed_rank,
    random_product_pure,
    su2,
)

_PANELS = ("mixed-ranks", "product-vs-rank")
_PRODUCT_MODES = ("identical", "independent")

# Keep optimizer probabilities strictly inside (0, 1).
_P_EDGE = 1e-6


def default_r_grid() -> tuple[float, ...]:
    """Dense head to resolve the threshold, coarse tail to confirm the plateau."""
    head = [round(0.01 * i, 2) for i in range(1, 31)]
    tail = [round(0.4 + 0.2 * j, 1) for j in range(8)]
    return tuple(head + tail)


@dataclass(frozen=True)
class Fig1Config:
    """One scatter-panel run: which state classes, how many ensembles, which seed."""

    panel: str
    ranks: tuple[int, ...]
    n_ensembles: int = 1000
    seed: int = 0
    product_mode: str = "identical"

    def __post_init__(self):
        if self.panel not in _PANELS:
            raise ValueError(f"panel must be one of {_PANELS}, got {self.panel!r}")
        ranks = tuple(int(r) for r in self.ranks)
        expected = 2 if self.panel == "mixed-ranks" else 1
        if len(ranks) != expected:
            raise ValueError(f"panel {self.panel!r} needs {expected} rank value(s), got {ranks}")
        if any(r not in (1, 2, 3, 4) for r in ranks):
            raise ValueError(f"ranks must lie in 1..4, got {ranks}")
        if self.n_ensembles < 1:
            raise ValueError("n_ensembles must be at least 1")
        if self.product_mode not in _PRODUCT_MODES:
            raise ValueError(f"product_mode must be one of {_PRODUCT_MODES}")
        object.__setattr__(self, "ranks", ranks)


@dataclass(frozen=True)
class Fig2Config:
    """Threshold-curve run: grid of pinned minimum robustness values."""

    r_grid: tuple[float, ...] = field(default_factory=default_r_grid)
    restarts: int = 64
    max_iterations: int = 2000
    zero_tolerance: float = 1e-4
    seed: int = 0

    def __post_init__(self):
        grid = tuple(float(r) for r in self.r_grid)
        if not grid:
            raise ValueError("r_grid must not be empty")
        if any(not 0.0 < r < 2.0 for r in grid):
            raise ValueError("grid values must lie in (0, 2): pure-state robustness cannot exceed 2")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("r_grid must be strictly ascending")
        if self.restarts < 1 or self.max_iterations < 1:
            raise ValueError("restarts and max_iterations must be positive")
        if self.zero_tolerance <= 0:
            raise ValueError("zero_tolerance must be positive")
        object.__setattr__(self, "r_grid", grid)


@dataclass(frozen=True)
class Fig1Record:
    index: int
    seed: int
    rank1: int
    rank2: int
    is_product: bool
    p1: float
    r1: float
    r2: float
    r_max: float
    r_min: float
    p_eta: float
    p_eps: float
    gamma: float


@dataclass(frozen=True)
class Fig1Summary:
    n: int
    gamma_above_one: int
    below_reference_curve: int


@dataclass(frozen=True)
class Fig2Record:
    r: float
    delta_p: float
    p1: float
    lambda1: float
    lambda2: float
    angles: tuple[float, ...]
    best_restart: int
    iterations: int
    floor_violations: int


@dataclass(frozen=True)
class TheoremCheckSummary:
    n: int
    upper_violations: int
    lower_violations: int
    equal_rre_violations: int
    one_separable_violations: int
    upper_margin: float
    lower_margin: float
    equal_rre_margin: float
    one_separable_margin: float

    @property
    def total_violations(self) -> int:
        return (
            self.upper_violations
            + self.lower_violations
            + self.equal_rre_violations
            + self.one_separable_violations
        )


# ---------------------------------------------------------------------------
# scatter experiment
# ---------------------------------------------------------------------------

def sample_fig1_ensemble(
    seed: int, rank1: int, rank2: int, is_product: bool, product_mode: str = "identical"
) -> Ensemble:
    """Rebuild one ensemble from its child seed and class descriptor."""
    rng = SeededRng(seed)
    if is_product:
        rho1 = random_product_pure(rng, mode=product_mode).density()
    else:
        rho1 = random_mixed_rank((2, 2), rank1, rng)
    rho2 = random_mixed_rank((2, 2), rank2, rng)
    p1 = rng.uniform_open()
    return Ensemble.two_state(p1, rho1, rho2)


def fig1_record(
    index: int, seed: int, rank1: int, rank2: int, is_product: bool, product_mode: str = "identical"
) -> Fig1Record:
    eta = sample_fig1_ensemble(seed, rank1, rank2, is_product, product_mode)
    rep = bound_report(eta)
    return Fig1Record(
        index=index,
        seed=seed,
        rank1=rank1,
        rank2=rank2,
        is_product=is_product,
        p1=eta.items[0][0],
        r1=rep.r_values[0],
        r2=rep.r_values[1],
        r_max=rep.r_max,
        r_min=rep.r_min,
        p_eta=rep.p_eta,
        p_eps=rep.p_eps,
        gamma=rep.gamma,
    )


def _fig1_task(args) -> Fig1Record:
    return fig1_record(*args)


def _fig1_tasks(cfg: Fig1Config):
    if cfg.panel == "mixed-ranks":
        rank1, rank2 = cfg.ranks
        is_product = False
    else:
        rank1, rank2 = 1, cfg.ranks[0]
        is_product = True
    return [
        (i, child_seed(cfg.seed, i), rank1, rank2, is_product, cfg.product_mode)
        for i in range(cfg.n_ensembles)
    ]


def summarize_fig1(records) -> Fig1Summary:
    above = sum(1 for rec in records if rec.gamma > 1.0 + INEQUALITY_SLACK)
    below = sum(1 for rec in records if rec.gamma < 1.0 / (1.0 + rec.r_max) - INEQUALITY_SLACK)
    return Fig1Summary(n=len(records), gamma_above_one=above, below_reference_curve=below)


def run_fig1(cfg: Fig1Config, threads: int = 1) -> tuple[list[Fig1Record], Fig1Summary]:
    tasks = _fig1_tasks(cfg)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(_fig1_task, tasks, chunksize=max(1, len(tasks) // (threads * 8))))
    else:
        records = [_fig1_task(t) for t in tasks]
    return records, summarize_fig1(records)


# ---------------------------------------------------------------------------
# threshold experiment
# ---------------------------------------------------------------------------

def schmidt_weight_for_robustness(r: float) -> float:
    """Schmidt weight of the two-qubit pure state whose robustness is exactly r."""
    if not 0.0 <= r <= 2.0:
        raise ValueError(f"pure-state robustness must lie in [0, 2], got {r}")
    return 0.5 * (1.0 + math.sqrt(1.0 - (r / 2.0) ** 2))


def _rotated_schmidt_amplitudes(lam: float, angles) -> np.ndarray:
    """(U_A x U_B)(sqrt(lam)|00> + sqrt(1-lam)|11>) without object overhead."""
    ua = su2(angles[0], angles[1], angles[2])
    ub = su2(angles[3], angles[4], angles[5])
    c0 = math.sqrt(lam)
    c1 = math.sqrt(1.0 - lam)
    return c0 * np.kron(ua[:, 0], ub[:, 0]) + c1 * np.kron(ua[:, 1], ub[:, 1])


def _helstrom_from_overlap(p1: float, p2: float, ov: float) -> float:
    return 0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - 4.0 * p1 * p2 * ov)))


def _twin_helstrom_from_overlap(p1: float, r1: float, p2: float, r2: float, ov: float) -> float:
    a1 = p1 / (1.0 + r1)
    a2 = p2 / (1.0 + r2)
    mu = 0.25 * (p1 * r1 / (1.0 + r1) - p2 * r2 / (1.0 + r2))
    tr2 = a1 - a2
    disc = math.sqrt(tr2 * tr2 + 4.0 * a1 * a2 * max(0.0, 1.0 - ov))
    nu_plus = 0.5 * (tr2 + disc)
    nu_minus = 0.5 * (tr2 - disc)
    tn = abs(nu_plus + mu) + abs(nu_minus + mu) + 2.0 * abs(mu)
    return 0.5 * (1.0 + tn)


def pure_pair_helstrom(p1: float, amps1: np.ndarray, p2: float, amps2: np.ndarray) -> float:
    """Helstrom probability for two pure states, in closed form.

    The weighted difference of two projectors has its nonzero spectrum on a
    two-dimensional subspace, giving (1 + sqrt(1 - 4 p1 p2 |<a|b>|^2)) / 2.
    """
    ov = min(1.0, abs(np.vdot(amps1, amps2)) ** 2)
    return _helstrom_from_overlap(p1, p2, ov)


def pure_pair_twin_helstrom(
    p1: float, amps1: np.ndarray, r1: float, p2: float, amps2: np.ndarray, r2: float
) -> float:
    """Helstrom probability for the boundary separable twins of two pure states.

    Each twin is (rho_b + r_b I/4)/(1 + r_b); the weighted difference is a
    rank-two operator plus a multiple of the identity, so its trace norm
    follows from the 2x2 block on span{psi1, psi2}.
    """
    ov = min(1.0, abs(np.vdot(amps1, amps2)) ** 2)
    return _twin_helstrom_from_overlap(p1, r1, p2, r2, ov)


class _Fig2Objective:
    """Distinguishability gap for one pinned minimum-robustness value.

    State 1 is held in canonical Schmidt form with robustness exactly ``r``;
    the 8 free parameters are (p1, lam2, six rotation angles of state 2).
    Also tracks violations of the lower-bound floor implied by the minimum
    robustness, which must never trigger.
    """

    def __init__(self, r: float):
        self.r = r
        lam1 = schmidt_weight_for_robustness(r)
        self.lam1 = lam1
        self._a1 = math.sqrt(lam1)
        self._b1 = math.sqrt(1.0 - lam1)
        self.amps1 = np.zeros(4, dtype=complex)
        self.amps1[0] = self._a1
        self.amps1[3] = self._b1
        self.bounds = [(_P_EDGE, 1.0 - _P_EDGE), (0.5, lam1)] + [(0.0, 2.0 * math.pi)] * 6
        self.floor_violations = 0

    def random_start(self, rng: SeededRng) -> np.ndarray:
        u = rng.uniforms(8)
        return np.array([lo + (hi - lo) * ui for (lo, hi), ui in zip(self.bounds, u)])

    def __call__(self, theta) -> float:
        p1 = min(max(float(theta[0]), _P_EDGE), 1.0 - _P_EDGE)
        lam2 = min(max(float(theta[1]), 0.5), self.lam1)
        p2 = 1.0 - p1
        # Scalar overlap <psi1|psi2>: psi1 is real in the Schmidt basis, so
        # only amplitudes 0 and 3 of state 2 matter.  Building the rotated
        # vector explicitly (see _rotated_schmidt_amplitudes) gives the same
        # number; this path just avoids array overhead inside the optimizer.
        a0, a1r, a2r, a3, a4, a5 = (float(t) for t in theta[2:8])
        ca, sa = math.cos(0.5 * a1r), math.sin(0.5 * a1r)
        cb, sb = math.cos(0.5 * a4), math.sin(0.5 * a4)
        ua00 = complex(math.cos(-0.5 * (a0 + a2r)), math.sin(-0.5 * (a0 + a2r))) * ca
        ua01 = -complex(math.cos(-0.5 * (a0 - a2r)), math.sin(-0.5 * (a0 - a2r))) * sa
        ua10 = complex(math.cos(0.5 * (a0 - a2r)), math.sin(0.5 * (a0 - a2r))) * sa
        ua11 = complex(math.cos(0.5 * (a0 + a2r)), math.sin(0.5 * (a0 + a2r))) * ca
        ub00 = complex(math.cos(-0.5 * (a3 + a5)), math.sin(-0.5 * (a3 + a5))) * cb
        ub01 = -complex(math.cos(-0.5 * (a3 - a5)), math.sin(-0.5 * (a3 - a5))) * sb
        ub10 = complex(math.cos(0.5 * (a3 - a5)), math.sin(0.5 * (a3 - a5))) * sb
        ub11 = complex(math.cos(0.5 * (a3 + a5)), math.sin(0.5 * (a3 + a5))) * cb
        c0 = math.sqrt(lam2)
        c1 = math.sqrt(1.0 - lam2)
        entry0 = c0 * ua00 * ub00 + c1 * ua01 * ub01
        entry3 = c0 * ua10 * ub10 + c1 * ua11 * ub11
        inner = self._a1 * entry0 + self._b1 * entry3
        ov = min(1.0, inner.real * inner.real + inner.imag * inner.imag)
        r2 = 4.0 * c0 * c1
        p_eta = _helstrom_from_overlap(p1, p2, ov)
        p_eps = _twin_helstrom_from_overlap(p1, self.r, p2, r2, ov)
        gap = p_eta - p_eps
        floor = self.r * p_eps - max(self.r * p1, r2 * p2)
        if gap < floor - INEQUALITY_SLACK:
            self.floor_violations += 1
        return gap


def fig2_grid_point(cfg: Fig2Config, grid_index: int) -> Fig2Record:
    """Minimize the gap at one grid value with the configured restart budget."""
    r = cfg.r_grid[grid_index]
    objective = _Fig2Objective(r)
    best = None
    for j in range(cfg.restarts):
        rng = SeededRng(child_seed(cfg.seed, grid_index, j))
        x0 = objective.random_start(rng)
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            bounds=objective.bounds,
            options={
                "maxiter": cfg.max_iterations,
                "xatol": 1e-6,
                "fatol": 1e-9,
                "adaptive": False,
            },
        )
        if best is None or res.fun < best[0]:
            best = (float(res.fun), res.x.copy(), int(res.nit), j)
    fun, x, nit, j = best
    p1 = min(max(float(x[0]), _P_EDGE), 1.0 - _P_EDGE)
    lam2 = min(max(float(x[1]), 0.5), objective.lam1)
    return Fig2Record(
        r=r,
        delta_p=fun,
        p1=p1,
        lambda1=objective.lam1,
        lambda2=lam2,
        angles=tuple(float(a) for a in x[2:8]),
        best_restart=j,
        iterations=nit,
        floor_violations=objective.floor_violations,
    )


def _fig2_task(args) -> Fig2Record:
    cfg, grid_index = args
    return fig2_grid_point(cfg, grid_index)


def extract_threshold(records, zero_tolerance: float) -> float | None:
    """Smallest grid value from which the gap stays above -zero_tolerance."""
    ordered = sorted(records, key=lambda rec: rec.r)
    threshold = None
    for rec in reversed(ordered):
        if rec.delta_p >= -zero_tolerance:
            threshold = rec.r
        else:
            break
    return threshold


def tail_is_monotone(records, zero_tolerance: float) -> bool:
    """Soft check: once the gap clears -zero_tolerance it never dips back.

    True exactly when the first grid value clearing the tolerance equals the
    stable threshold from :func:`extract_threshold`.
    """
    ordered = sorted(records, key=lambda rec: rec.r)
    first = next((rec.r for rec in ordered if rec.delta_p >= -zero_tolerance), None)
    return first == extract_threshold(records, zero_tolerance)


def run_fig2(cfg: Fig2Config, threads: int = 1) -> tuple[list[Fig2Record], float | None]:
    tasks = [(cfg, g) for g in range(len(cfg.r_grid))]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(_fig2_task, tasks))
    else:
        records = [_fig2_task(t) for t in tasks]
    return records, extract_threshold(records, cfg.zero_tolerance)


# ---------------------------------------------------------------------------
# theorem property harness
# ---------------------------------------------------------------------------

def _random_rank(rng: SeededRng) -> int:
    return 1 + int(rng.uniform() * 4) % 4


def verify_theorems(n_samples: int, seed: int) -> TheoremCheckSummary:
    """Monte-Carlo check of all four bounds on freshly sampled ensembles.

    Returns violation counts (expected zero) and the worst slack margin seen
    for each bound; margins are how far each inequality was from failing.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")

    upper_viol = lower_viol = equal_viol = onesep_viol = 0
    upper_margin = lower_margin = equal_margin = onesep_margin = math.inf

    # General fixed-rank ensembles exercise the upper and lower bounds.
    for i in range(n_samples):
        rng = SeededRng(child_seed(seed, 1, i))
        rank1, rank2 = _random_rank(rng), _random_rank(rng)
        rho1 = random_mixed_rank((2, 2), rank1, rng)
        rho2 = random_mixed_rank((2, 2), rank2, rng)
        rep = bound_report(Ensemble.two_state(rng.uniform_open(), rho1, rho2))
        upper_margin = min(upper_margin, rep.thm1_upper - rep.p_eta)
        lower_margin = min(lower_margin, rep.p_eta - rep.thm2_lower)
        upper_viol += 0 if rep.thm1_ok else 1
        lower_viol += 0 if rep.thm2_ok else 1

    # Equal-robustness pure pairs: entangled pair beats its separable twins.
    for i in range(n_samples):
        rng = SeededRng(child_seed(seed, 2, i))
        lam = 0.5 + 0.5 * rng.uniform()
        angles1 = 2.0 * math.pi * rng.uniforms(6)
        angles2 = 2.0 * math.pi * rng.uniforms(6)
        psi1 = pure_from_schmidt(lam, tuple(angles1[:3]), tuple(angles1[3:]))
        psi2 = pure_from_schmidt(lam, tuple(angles2[:3]), tuple(angles2[3:]))
        rep = bound_report(Ensemble.two_state(rng.uniform_open(), psi1.density(), psi2.density()))
        equal_margin = min(equal_margin, rep.p_eta - rep.p_eps)
        if rep.thm3_applicable_and_ok is not True:
            equal_viol += 1

    # One separable plus one entangled state: the gap bound applies.
    for i in range(n_samples):
        rng = SeededRng(child_seed(seed, 3, i))
        rho1 = random_product_pure(rng).density()
        while True:
            rho2 = random_mixed_rank((2, 2), _random_rank(rng), rng)
            if rre(rho2).value > 1e-9:
                break
        rep = bound_report(Ensemble.two_state(rng.uniform_open(), rho1, rho2))
        assert rep.thm4_ok is not None
        onesep_margin = min(onesep_margin, (rep.p_eta - rep.p_eps) - rep.thm4_lower_diff)
        if rep.thm4_ok is not True:
            onesep_viol += 1

    return TheoremCheckSummary(
        n=n_samples,
        upper_violations=upper_viol,
        lower_violations=lower_viol,
        equal_rre_violations=equal_viol,
        one_separable_violations=onesep_viol,
        upper_margin=upper_margin,
        lower_margin=lower_margin,
        equal_rre_margin=equal_margin,
        one_separable_margin=onesep_margin,
    )
