"""Coexistence of effect pairs.

Two effects A and B coexist when they split as A = E + G, B = F + G with
E, F, G and E + F + G all effects.  General coexistence is not decided
here; the module provides the decidable pieces:

* the trivial witness (A, B, 0), available exactly when A + B <= I;
* the rank-one criterion: weighted rank-one effects with distinct ranges
  coexist iff their sum is an effect;
* coexistence against a weak atom t * |q><q|, decided exactly by
  t <= strength(A, q) + strength(I - A, q), a consequence of rank-one
  dominance applied to the shared part G;
* a randomized probe for "coexists with everything", which can refute
  but never prove (only scalars survive it).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numkern
from .effects import (
    Effect,
    RayProjection,
    WeakAtom,
    leq,
    make_ray,
    orthocomplement,
    rank_of,
    sample_effect,
    sample_ray,
    zero_effect,
)
from .errors import DegenerateRanges, DimensionError, DomainError
from .numkern import DEFAULT_TOL, ToleranceConfig
from .strength import strength_closed

__all__ = [
    "CoexistenceWitness",
    "coexist_trivial_witness",
    "coexist_rank_one",
    "coexists_with_weak_atom",
    "coexists_with_all_probe",
]


@dataclass(frozen=True)
class CoexistenceWitness:
    """Decomposition (E, F, G) certifying that two effects coexist."""

    E: Effect
    F: Effect
    G: Effect

    def residual_for(self, A: Effect, B: Effect) -> float:
        """Worst Frobenius defect of the witness equations for (A, B)."""
        rA = numkern.frobenius(self.E.matrix + self.G.matrix - A.matrix)
        rB = numkern.frobenius(self.F.matrix + self.G.matrix - B.matrix)
        return max(rA, rB)

    def is_valid_for(self, A: Effect, B: Effect, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        """Check the splitting equations and that E + F + G is an effect."""
        if self.residual_for(A, B) > tol.eps_eq:
            return False
        total = self.E.matrix + self.F.matrix + self.G.matrix
        n = A.dim
        return numkern.psd_leq(np.zeros((n, n)), total, tol) and numkern.psd_leq(
            total, np.eye(n), tol
        )


def coexist_trivial_witness(
    A: Effect, B: Effect, tol: ToleranceConfig = DEFAULT_TOL
) -> CoexistenceWitness | None:
    """Witness (A, B, 0) when A + B is itself an effect, else None."""
    if A.dim != B.dim:
        raise DimensionError(f"dimension mismatch: {A.dim} vs {B.dim}")
    total = A.matrix + B.matrix
    if not numkern.psd_leq(total, np.eye(A.dim), tol):
        return None
    return CoexistenceWitness(E=A, F=B, G=zero_effect(A.dim))


def coexist_rank_one(
    s: float,
    P: RayProjection,
    t: float,
    Q: RayProjection,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> bool:
    """Coexistence of s*P and t*Q for rank-one projections with P != Q.

    Decided by whether the sum is still an effect.  Weights must lie in
    (0, 1]; coinciding rays are rejected because the criterion needs
    distinct ranges.
    """
    for name, value in (("s", s), ("t", t)):
        if not (0.0 < value <= 1.0):
            raise DomainError(f"weight {name} must lie in (0, 1], got {value!r}")
    if P.dim != Q.dim:
        raise DimensionError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    overlap = float(np.abs(np.vdot(P.vector, Q.vector)) ** 2)
    if overlap >= 1.0 - tol.eps_rank:
        raise DegenerateRanges("rank-one criterion needs distinct ranges")
    total = s * P.projection.matrix + t * Q.projection.matrix
    return numkern.psd_leq(total, np.eye(P.dim), tol)


def coexists_with_weak_atom(
    A: Effect, atom: WeakAtom, tol: ToleranceConfig = DEFAULT_TOL
) -> bool:
    """Exact decision of coexistence between A and a weak atom t * Q.

    Any shared part G below t * Q is a scalar multiple s * Q, so a witness
    exists iff some s in [0, t] satisfies s <= strength(A, Q) and
    t - s <= strength(I - A, Q), i.e. iff t is at most the sum of the two
    strengths.
    """
    if A.dim != atom.ray.dim:
        raise DimensionError(f"dimension mismatch: {A.dim} vs {atom.ray.dim}")
    budget = (
        strength_closed(A, atom.ray, tol).value
        + strength_closed(orthocomplement(A), atom.ray, tol).value
    )
    return atom.weight <= budget + tol.eps_psd


def coexists_with_all_probe(
    A: Effect, trials: int, seed: int, tol: ToleranceConfig = DEFAULT_TOL
) -> bool:
    """PROBE, not proof: search for an effect that fails to coexist with A.

    Alternates between generic random effects (which can only confirm
    coexistence through the trivial witness, never refute it) and weak
    atoms, where coexistence is decided exactly.  Returns False on the
    first refutation, True if none turned up.  Scalars always return True;
    for a generic non-scalar a refuting weak atom appears quickly.
    """
    n = A.dim
    for k in range(trials):
        rng = np.random.default_rng([seed, k])
        if k % 2 == 0:
            B = sample_effect(n, rng, tol)
            coexist_trivial_witness(A, B, tol)  # may confirm; cannot refute
            continue
        ray = sample_ray(n, rng)
        t = float(rng.uniform(0.0, 1.0))
        if t <= 0.0:
            continue
        if rank_of(A, tol) == 1:
            # Dispatch rank-one pairs to the sum criterion.
            s = float(A.eigenvalues[-1])
            P = make_ray(A.eigenvectors[:, -1])
            overlap = float(np.abs(np.vdot(P.vector, ray.vector)) ** 2)
            if overlap >= 1.0 - tol.eps_rank:
                continue
            if not coexist_rank_one(s, P, t, ray, tol):
                return False
        elif not coexists_with_weak_atom(A, WeakAtom(t, ray), tol):
            return False
    return True
