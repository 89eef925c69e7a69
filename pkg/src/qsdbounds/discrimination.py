"""Two-state global discrimination and the robustness bound evaluators.

The optimal global success probability for guessing which of two known
states was drawn is (1 + ||p1 rho1 - p2 rho2||_1)/2.  Comparing it with the
same probability for the closest separable pair yields one upper and several
lower bounds, all functions of the per-state random robustness; the
evaluators here compute each bound and check it against the exact value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import trace_norm
from .robustness import closest_separable, rre
from .states import DensityMatrix

PROBABILITY_TOL = 1e-12

# Additive slack absorbing eigensolver error in every inequality verdict.
INEQUALITY_SLACK = 1e-9

# Two robustness values within this of each other count as "equal" for the
# equal-robustness comparison.
EQUAL_RRE_TOL = 1e-8

# Robustness above this marks a state as entangled for the one-separable bound.
ENTANGLED_RRE_TOL = 1e-9


@dataclass(frozen=True)
class Ensemble:
    """States with drawing probabilities on a common bipartite space."""

    items: tuple[tuple[float, DensityMatrix], ...]

    def __post_init__(self):
        items = tuple((float(p), rho) for p, rho in self.items)
        if not items:
            raise ValueError("ensemble must contain at least one state")
        dims = items[0][1].dims
        total = 0.0
        for p, rho in items:
            if not 0.0 < p <= 1.0:
                raise ValueError(f"probabilities must lie in (0, 1], got {p}")
            if rho.dims != dims:
                raise ValueError(f"all states must share dims; got {rho.dims} and {dims}")
            total += p
        if abs(total - 1.0) > PROBABILITY_TOL:
            raise ValueError(f"probabilities must sum to 1 within {PROBABILITY_TOL:.0e}, got {total}")
        object.__setattr__(self, "items", items)

    @property
    def dims(self) -> tuple[int, int]:
        return self.items[0][1].dims

    @property
    def size(self) -> int:
        return len(self.items)

    @classmethod
    def two_state(cls, p1: float, rho1: DensityMatrix, rho2: DensityMatrix) -> "Ensemble":
        return cls(((p1, rho1), (1.0 - p1, rho2)))


@dataclass(frozen=True)
class BoundReport:
    """Exact probabilities, robustness data, and all bound verdicts for a pair.

    ``thm3_applicable_and_ok`` and the ``thm4`` fields are ``None`` when the
    corresponding precondition (equal robustness, exactly one separable
    state) does not hold; they are never silently reported as passes.
    """

    p_eta: float
    p_eps: float
    r_values: tuple[float, ...]
    r_max: float
    r_min: float
    gamma: float
    thm1_upper: float
    thm2_lower: float
    thm4_lower_diff: float | None
    thm1_ok: bool
    thm2_ok: bool
    thm3_applicable_and_ok: bool | None
    thm4_ok: bool | None

    def all_applicable_ok(self) -> bool:
        flags = [self.thm1_ok, self.thm2_ok, self.thm3_applicable_and_ok, self.thm4_ok]
        return all(f for f in flags if f is not None)


def helstrom(p1: float, rho1: DensityMatrix, p2: float, rho2: DensityMatrix) -> float:
    """Optimal two-state global guessing probability (1 + ||p1 rho1 - p2 rho2||_1)/2."""
    if abs(p1 + p2 - 1.0) > PROBABILITY_TOL:
        raise ValueError(f"probabilities must sum to 1, got {p1} + {p2}")
    if rho1.dims != rho2.dims:
        raise ValueError(f"dims mismatch: {rho1.dims} vs {rho2.dims}")
    return 0.5 * (1.0 + trace_norm(p1 * rho1.matrix - p2 * rho2.matrix))


def _two_state(eta: Ensemble) -> tuple[float, DensityMatrix, float, DensityMatrix]:
    if eta.size != 2:
        raise ValueError(f"exact treatment covers two-state ensembles only, got size {eta.size}")
    (p1, rho1), (p2, rho2) = eta.items
    return p1, rho1, p2, rho2


def helstrom_ensemble(eta: Ensemble) -> float:
    return helstrom(*_two_state(eta))


def closest_separable_ensemble(eta: Ensemble) -> Ensemble:
    """Same probabilities, each state replaced by its boundary separable state."""
    return Ensemble(tuple((p, closest_separable(rho)) for p, rho in eta.items))


def theorem1_upper(eta: Ensemble) -> float:
    """Upper bound on the guessing probability: P(separable pair) * (1 + max robustness)."""
    p_eps = helstrom_ensemble(closest_separable_ensemble(eta))
    r_max = max(rre(rho).value for _, rho in eta.items)
    return p_eps * (1.0 + r_max)


def theorem2_lower(eta: Ensemble) -> float:
    """Lower bound: P(separable pair) * (1 + min robustness) - max_b(R_b p_b)."""
    p_eps = helstrom_ensemble(closest_separable_ensemble(eta))
    values = [rre(rho).value for _, rho in eta.items]
    penalty = max(r * p for r, (p, _) in zip(values, eta.items))
    return p_eps * (1.0 + min(values)) - penalty


def theorem4_lower_diff(eta: Ensemble) -> float:
    """Lower bound on P(pair) - P(separable pair) when exactly one state is entangled.

    Evaluates R/(2(1+R)) * (||p1 rho1 - p2 rho2||_1 - 1) with R the robustness
    of the entangled member.
    """
    p1, rho1, p2, rho2 = _two_state(eta)
    values = [rre(rho1).value, rre(rho2).value]
    entangled = [i for i, v in enumerate(values) if v > ENTANGLED_RRE_TOL]
    if len(entangled) != 1:
        labels = ", ".join(
            f"state {i + 1}: robustness {v:.3e} ({'entangled' if v > ENTANGLED_RRE_TOL else 'separable'})"
            for i, v in enumerate(values)
        )
        raise ValueError(f"exactly one state must be entangled; got {labels}")
    r_ent = values[entangled[0]]
    tn = trace_norm(p1 * rho1.matrix - p2 * rho2.matrix)
    return (r_ent / (2.0 * (1.0 + r_ent))) * (tn - 1.0)


def bound_report(eta: Ensemble) -> BoundReport:
    """Evaluate every bound for a two-state two-qubit ensemble."""
    p1, rho1, p2, rho2 = _two_state(eta)
    res1, res2 = rre(rho1), rre(rho2)
    r_values = (res1.value, res2.value)
    r_max, r_min = max(r_values), min(r_values)

    p_eta = helstrom(p1, rho1, p2, rho2)
    p_eps = helstrom(p1, res1.closest_separable, p2, res2.closest_separable)

    gamma = p_eta / (p_eps * (1.0 + r_max))
    thm1_upper = p_eps * (1.0 + r_max)
    thm2_lower = p_eps * (1.0 + r_min) - max(r_values[0] * p1, r_values[1] * p2)

    thm1_ok = p_eta <= thm1_upper + INEQUALITY_SLACK
    thm2_ok = p_eta >= thm2_lower - INEQUALITY_SLACK

    if abs(r_values[0] - r_values[1]) <= EQUAL_RRE_TOL:
        thm3 = p_eta >= p_eps - INEQUALITY_SLACK
    else:
        thm3 = None

    entangled = [v > ENTANGLED_RRE_TOL for v in r_values]
    if sum(entangled) == 1:
        r_ent = r_values[0] if entangled[0] else r_values[1]
        tn = trace_norm(p1 * rho1.matrix - p2 * rho2.matrix)
        thm4_diff = (r_ent / (2.0 * (1.0 + r_ent))) * (tn - 1.0)
        thm4_ok = (p_eta - p_eps) >= thm4_diff - INEQUALITY_SLACK
    else:
        thm4_diff = None
        thm4_ok = None

    return BoundReport(
        p_eta=p_eta,
        p_eps=p_eps,
        r_values=r_values,
        r_max=r_max,
        r_min=r_min,
        gamma=gamma,
        thm1_upper=thm1_upper,
        thm2_lower=thm2_lower,
        thm4_lower_diff=thm4_diff,
        thm1_ok=thm1_ok,
        thm2_ok=thm2_ok,
        thm3_applicable_and_ok=thm3,
        thm4_ok=thm4_ok,
    )
