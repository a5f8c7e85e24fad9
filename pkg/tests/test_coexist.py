"""Coexistence: witnesses, the rank-one criterion, weak atoms, the probe."""

import numpy as np
import pytest

from effectkit.coexist import (
    CoexistenceWitness,
    coexist_rank_one,
    coexist_trivial_witness,
    coexists_with_all_probe,
    coexists_with_weak_atom,
)
from effectkit.effects import (
    WeakAtom,
    identity_effect,
    make_effect,
    make_ray,
    orthocomplement,
    sample_effect,
    sample_ray,
    scalar_effect,
    zero_effect,
)
from effectkit.errors import DegenerateRanges, DomainError
from effectkit.strength import strength_closed


def _overlapping_rays(tau, seed=0):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    basis = np.linalg.qr(v.reshape(2, 1), mode="complete")[0]
    w = np.sqrt(tau) * v + np.sqrt(1.0 - tau) * basis[:, 1]
    return make_ray(v), make_ray(w)


def test_trivial_witness():
    A = make_effect(np.diag([0.3, 0.2]))
    B = make_effect(np.diag([0.4, 0.1]))
    witness = coexist_trivial_witness(A, B)
    assert witness is not None
    assert witness.is_valid_for(A, B)
    assert witness.residual_for(A, B) <= 1e-15


def test_trivial_witness_absent():
    A = make_effect(np.diag([0.8, 0.2]))
    B = make_effect(np.diag([0.7, 0.1]))
    assert coexist_trivial_witness(A, B) is None


def test_witness_validation_catches_mismatch():
    A = make_effect(np.diag([0.3, 0.2]))
    B = make_effect(np.diag([0.4, 0.1]))
    bogus = CoexistenceWitness(E=A, F=B, G=scalar_effect(2, 0.3))
    assert not bogus.is_valid_for(A, B)


def test_rank_one_criterion_known_failure():
    # weights 0.9/0.9 with transition 0.96: the weighted sum tops out
    # near 1.78, far above 1, so the pair cannot coexist
    P, Q = _overlapping_rays(0.96)
    assert not coexist_rank_one(0.9, P, 0.9, Q)


def test_rank_one_criterion_convex_split():
    # s + t = 1 keeps sP + tQ below the identity for any pair of rays
    for k in range(25):
        rng = np.random.default_rng([7, k])
        lam = float(rng.uniform(0.05, 0.95))
        tau = float(rng.uniform(0.05, 0.9))
        P, Q = _overlapping_rays(tau, seed=k)
        assert coexist_rank_one(lam, P, 1.0 - lam, Q)


def test_rank_one_criterion_matches_inequality():
    # decision equals the scalar inequality s t tau <= (1 - s)(1 - t)
    for k in range(40):
        rng = np.random.default_rng([19, k])
        s = float(rng.uniform(0.05, 0.95))
        t = float(rng.uniform(0.05, 0.95))
        tau = float(rng.uniform(0.05, 0.9))
        P, Q = _overlapping_rays(tau, seed=100 + k)
        exact = s * t * tau <= (1.0 - s) * (1.0 - t)
        margin = abs(s * t * tau - (1.0 - s) * (1.0 - t))
        if margin > 1e-9:
            assert coexist_rank_one(s, P, t, Q) == exact


def test_rank_one_validations():
    P, Q = _overlapping_rays(0.5)
    with pytest.raises(DomainError):
        coexist_rank_one(0.0, P, 0.5, Q)
    with pytest.raises(DomainError):
        coexist_rank_one(0.5, P, 1.1, Q)
    with pytest.raises(DegenerateRanges):
        coexist_rank_one(0.5, P, 0.5, P)


def test_weak_atom_budget():
    # an effect coexists with t * Q exactly when t fits inside the
    # strength budget of A and its complement along Q
    for k in range(25):
        rng = np.random.default_rng([23, k])
        n = int(rng.integers(2, 5))
        A = sample_effect(n, rng)
        Q = sample_ray(n, rng)
        budget = (
            strength_closed(A, Q).value
            + strength_closed(orthocomplement(A), Q).value
        )
        below = WeakAtom(max(0.0, budget - 1e-4), Q)
        assert coexists_with_weak_atom(A, below)
        if budget < 1.0 - 1e-4:
            above = WeakAtom(min(1.0, budget + 1e-4), Q)
            assert not coexists_with_weak_atom(A, above)


def test_weak_atom_scalar_always():
    Q = make_ray(np.array([1.0, 1.0]) / np.sqrt(2))
    A = scalar_effect(2, 0.5)
    assert coexists_with_weak_atom(A, WeakAtom(1.0, Q))


def test_probe_scalar_and_identity():
    assert coexists_with_all_probe(scalar_effect(2, 0.37), 40, 5)
    assert coexists_with_all_probe(identity_effect(3), 40, 5)
    assert coexists_with_all_probe(zero_effect(3), 40, 5)


def test_probe_refutes_weighted_ray():
    atom = make_effect(0.9 * make_ray(np.array([1.0, 0.0])).projection.matrix)
    assert not coexists_with_all_probe(atom, 200, 5)


def test_probe_refutes_projection():
    # a nontrivial projection fails against a rotated weak atom
    P = make_effect(np.diag([1.0, 0.0]))
    assert not coexists_with_all_probe(P, 200, 11)


def test_probe_deterministic():
    A = sample_effect(2, np.random.default_rng(31))
    r1 = coexists_with_all_probe(A, 60, 13)
    r2 = coexists_with_all_probe(A, 60, 13)
    assert r1 == r2
