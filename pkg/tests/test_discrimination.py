"""Tests for Helstrom probabilities and the bound evaluators."""

import numpy as np
import pytest

from qsdbounds import linalg
from qsdbounds.discrimination import (
    Ensemble,
    bound_report,
    closest_separable_ensemble,
    helstrom,
    helstrom_ensemble,
    theorem1_upper,
    theorem2_lower,
    theorem4_lower_diff,
)
from qsdbounds.robustness import rre
from qsdbounds.states import (
    DensityMatrix,
    SeededRng,
    bell_state,
    maximally_mixed,
    pure_from_schmidt,
    random_mixed_rank,
    random_product_pure,
)


def bell_ensemble():
    return Ensemble.two_state(0.5, bell_state("phi+").density(), bell_state("phi-").density())


def random_two_state(rng, rank1, rank2):
    rho1 = random_mixed_rank((2, 2), rank1, rng)
    rho2 = random_mixed_rank((2, 2), rank2, rng)
    p1 = rng.uniform_open()
    return Ensemble.two_state(p1, rho1, rho2)


# ---------------------------------------------------------------------------
# Ensemble type
# ---------------------------------------------------------------------------

def test_ensemble_validation():
    rho = maximally_mixed()
    with pytest.raises(ValueError, match="sum to 1"):
        Ensemble(((0.5, rho), (0.4, rho)))
    with pytest.raises(ValueError, match="probabilities"):
        Ensemble(((1.5, rho), (-0.5, rho)))
    with pytest.raises(ValueError, match="at least one"):
        Ensemble(())
    other = DensityMatrix((2, 3), np.eye(6) / 6)
    with pytest.raises(ValueError, match="share dims"):
        Ensemble(((0.5, rho), (0.5, other)))


# ---------------------------------------------------------------------------
# helstrom
# ---------------------------------------------------------------------------

def test_helstrom_orthogonal_bell_pair_is_certain():
    assert abs(helstrom_ensemble(bell_ensemble()) - 1.0) < 1e-12


def test_helstrom_identical_states_gives_max_prior():
    rho = random_mixed_rank((2, 2), 3, SeededRng(50))
    for p1 in (0.5, 0.3, 0.9):
        assert abs(helstrom(p1, rho, 1 - p1, rho) - max(p1, 1 - p1)) < 1e-12


def test_helstrom_closest_separable_bell_pair():
    eps = closest_separable_ensemble(bell_ensemble())
    assert abs(helstrom_ensemble(eps) - 2.0 / 3.0) < 1e-9


def test_helstrom_rejects_probability_mismatch():
    rho = maximally_mixed()
    with pytest.raises(ValueError, match="sum to 1"):
        helstrom(0.6, rho, 0.6, rho)


def test_helstrom_range_and_unitary_invariance():
    rng = SeededRng(51)
    for _ in range(50):
        eta = random_two_state(rng, 2, 3)
        (p1, rho1), (p2, rho2) = eta.items
        value = helstrom(p1, rho1, p2, rho2)
        assert max(p1, p2) - 1e-12 <= value <= 1.0 + 1e-12
        # joint unitary on both states
        g = rng.complex_normals(16).reshape(4, 4)
        q, _ = np.linalg.qr(g)
        u1 = DensityMatrix((2, 2), q @ rho1.matrix @ q.conj().T)
        u2 = DensityMatrix((2, 2), q @ rho2.matrix @ q.conj().T)
        assert abs(helstrom(p1, u1, p2, u2) - value) < 1e-10


# ---------------------------------------------------------------------------
# closest separable ensemble
# ---------------------------------------------------------------------------

def test_closest_separable_ensemble_bell():
    eps = closest_separable_ensemble(bell_ensemble())
    for (p, sigma), label in zip(eps.items, ("phi+", "phi-")):
        expected = (bell_state(label).density().matrix + np.eye(4) / 2) / 3
        assert p == 0.5
        assert np.abs(sigma.matrix - expected).max() < 1e-10


def test_closest_separable_ensemble_fixes_separable_input():
    rho = maximally_mixed()
    eta = Ensemble.two_state(0.25, rho, rho)
    eps = closest_separable_ensemble(eta)
    for (p, sigma), (q, original) in zip(eps.items, eta.items):
        assert p == q
        assert np.abs(sigma.matrix - original.matrix).max() < 1e-12


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def test_theorem1_upper_bell_value():
    assert abs(theorem1_upper(bell_ensemble()) - 2.0) < 1e-9


def test_theorem1_tight_for_separable_ensemble():
    rng = SeededRng(52)
    rho1 = rre(random_mixed_rank((2, 2), 4, rng)).closest_separable
    rho2 = rre(random_mixed_rank((2, 2), 4, rng)).closest_separable
    eta = Ensemble.two_state(0.4, rho1, rho2)
    assert abs(theorem1_upper(eta) - helstrom_ensemble(eta)) < 1e-9


def test_theorem2_bell_saturation():
    eta = bell_ensemble()
    lower = theorem2_lower(eta)
    assert abs(lower - 1.0) < 1e-9
    assert abs(helstrom_ensemble(eta) - lower) < 1e-9


def test_theorem2_separable_ensemble_exact():
    rng = SeededRng(53)
    rho1 = rre(random_mixed_rank((2, 2), 3, rng)).closest_separable
    rho2 = rre(random_mixed_rank((2, 2), 2, rng)).closest_separable
    eta = Ensemble.two_state(0.7, rho1, rho2)
    assert abs(theorem2_lower(eta) - helstrom_ensemble(eta)) < 1e-9


def test_theorems_1_and_2_hold_on_random_ensembles():
    rng = SeededRng(54)
    for _ in range(100):
        rank1 = 1 + int(rng.uniform() * 4) % 4
        rank2 = 1 + int(rng.uniform() * 4) % 4
        eta = random_two_state(rng, rank1, rank2)
        p = helstrom_ensemble(eta)
        assert p <= theorem1_upper(eta) + 1e-9
        assert p >= theorem2_lower(eta) - 1e-9


def test_theorem4_bell_vs_maximally_mixed():
    eta = Ensemble.two_state(0.5, bell_state("phi+").density(), maximally_mixed())
    bound = theorem4_lower_diff(eta)
    # ||rho/2 - I/8||_1 = 3/4, so the bound is (1/3)(3/4 - 1) = -1/12.
    assert abs(bound - (-1.0 / 12.0)) < 1e-9
    eps = closest_separable_ensemble(eta)
    diff = helstrom_ensemble(eta) - helstrom_ensemble(eps)
    assert diff >= bound - 1e-9


def test_theorem4_rejects_two_separable_or_two_entangled():
    sep = maximally_mixed()
    with pytest.raises(ValueError, match="exactly one"):
        theorem4_lower_diff(Ensemble.two_state(0.5, sep, sep))
    ent = bell_state("phi+").density()
    with pytest.raises(ValueError, match="exactly one"):
        theorem4_lower_diff(Ensemble.two_state(0.5, ent, ent))


def test_theorem4_holds_on_product_plus_entangled():
    rng = SeededRng(55)
    checked = 0
    while checked < 50:
        rho1 = random_product_pure(rng).density()
        rho2 = random_mixed_rank((2, 2), 1 + int(rng.uniform() * 4) % 4, rng)
        if rre(rho2).value <= 1e-9:
            continue
        eta = Ensemble.two_state(rng.uniform_open(), rho1, rho2)
        bound = theorem4_lower_diff(eta)
        eps = closest_separable_ensemble(eta)
        assert helstrom_ensemble(eta) - helstrom_ensemble(eps) >= bound - 1e-9
        checked += 1


# ---------------------------------------------------------------------------
# bound_report
# ---------------------------------------------------------------------------

def test_bound_report_bell():
    rep = bound_report(bell_ensemble())
    assert abs(rep.gamma - 0.5) < 1e-9
    assert abs(rep.p_eta - 1.0) < 1e-9
    assert abs(rep.p_eps - 2.0 / 3.0) < 1e-9
    assert abs(rep.r_max - 2.0) < 1e-9
    assert rep.thm1_ok and rep.thm2_ok
    assert rep.thm3_applicable_and_ok is True
    assert rep.thm4_ok is None  # both states entangled
    assert rep.all_applicable_ok()


def test_bound_report_separable_only():
    rng = SeededRng(56)
    rho1 = rre(random_mixed_rank((2, 2), 4, rng)).closest_separable
    rho2 = rre(random_mixed_rank((2, 2), 4, rng)).closest_separable
    rep = bound_report(Ensemble.two_state(0.5, rho1, rho2))
    assert abs(rep.gamma - 1.0) < 1e-9
    assert rep.r_max < 1e-9
    assert rep.thm1_ok and rep.thm2_ok
    assert rep.thm3_applicable_and_ok is True
    assert rep.all_applicable_ok()


def test_bound_report_self_consistency_on_random_input():
    rng = SeededRng(57)
    for _ in range(50):
        eta = random_two_state(rng, 1 + int(rng.uniform() * 4) % 4, 1 + int(rng.uniform() * 4) % 4)
        rep = bound_report(eta)
        assert abs(rep.gamma - rep.p_eta / (rep.p_eps * (1 + rep.r_max))) < 1e-12
        assert 0.5 - 1e-12 <= rep.p_eta <= 1.0 + 1e-12
        assert 0.5 - 1e-12 <= rep.p_eps <= 1.0 + 1e-12
        assert rep.gamma <= 1.0 + 1e-9
        assert rep.r_max == max(rep.r_values) and rep.r_min == min(rep.r_values)
        assert rep.thm1_ok and rep.thm2_ok


def test_bound_report_rejects_wrong_size():
    rho = maximally_mixed()
    eta = Ensemble(((0.3, rho), (0.3, rho), (0.4, rho)))
    with pytest.raises(ValueError, match="two-state"):
        bound_report(eta)


def test_equal_rre_pairs_never_lose_distinguishability():
    rng = SeededRng(58)
    for _ in range(100):
        lam = 0.5 + 0.5 * rng.uniform()
        a1 = 2 * np.pi * rng.uniforms(6)
        a2 = 2 * np.pi * rng.uniforms(6)
        psi1 = pure_from_schmidt(lam, tuple(a1[:3]), tuple(a1[3:]))
        psi2 = pure_from_schmidt(lam, tuple(a2[:3]), tuple(a2[3:]))
        eta = Ensemble.two_state(rng.uniform_open(), psi1.density(), psi2.density())
        rep = bound_report(eta)
        assert rep.thm3_applicable_and_ok is True
        assert rep.p_eta >= rep.p_eps - 1e-9
