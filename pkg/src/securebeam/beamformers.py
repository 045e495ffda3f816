# securebeam/beamformers.py
"""Null-space projectors and the three beamformer pairs (EA, Min-TP, Min-RTP)."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .channel import SteeringVector, steering_vector
from .config import ConfigError, InfeasibleGeometryError, ScenarioConfig

# residual tolerance for the null/alignment constraints on unit-norm inputs
CONSTRAINT_TOL = 1e-10
# minimum projected-target norm for the geometry to be feasible
FEASIBILITY_TOL = 1e-9


class Method(str, enum.Enum):
    EA = "ea"
    MIN_TP = "min_tp"
    MIN_RTP = "min_rtp"


@dataclass(frozen=True)
class RegularizationParams:
    """Ridge weights for the message (cm) and jamming (an) beams."""

    gamma_cm: float
    gamma_an: float

    def __post_init__(self):
        if self.gamma_cm < 0.0 or self.gamma_an < 0.0:
            raise ConfigError("regularization factors must be >= 0")


#: plateau-region default used by the reference experiments
DEFAULT_GAMMAS = RegularizationParams(gamma_cm=2.1, gamma_an=1.8)


@dataclass(frozen=True)
class Projector:
    """Orthogonal projector onto the complement of a single channel direction."""

    matrix: np.ndarray  # complex, (N, N)


@dataclass(frozen=True)
class BeamPair:
    """Power-allocated message and jamming weight vectors for one method.

    ||w_cm||^2 = beta * P_s and ||w_an||^2 = (1 - beta) * P_s.
    """

    w_cm: np.ndarray
    w_an: np.ndarray
    method: Method
    gammas: RegularizationParams | None = None


def null_projector(h: SteeringVector) -> Projector:
    """I_N - h h^H: Hermitian, idempotent, annihilates h, rank N-1."""
    v = h.values
    mat = np.eye(len(v), dtype=np.complex128) - np.outer(v, v.conj())
    return Projector(matrix=mat)


def min_tp_beamformer(h_target: SteeringVector, h_null: SteeringVector) -> np.ndarray:
    """Minimum-norm beam with unit gain on the target and a null on h_null.

    Uses the exact simplification P (P^H P)^+ P^H = P for an orthogonal
    projector P, so the direction is P h_target / ||P h_target||^2 with no
    numerical pseudo-inverse involved.
    """
    proj = null_projector(h_null).matrix
    p_ht = proj @ h_target.values
    gain = np.linalg.norm(p_ht) ** 2  # equals h_target^H P h_target, real
    if np.sqrt(gain) <= FEASIBILITY_TOL:
        raise InfeasibleGeometryError(
            "target and nulled channels are parallel; unit gain and a null "
            "cannot hold simultaneously"
        )
    return p_ht / gain


def regularized_direction(
    h_target: SteeringVector, h_null: SteeringVector, gamma: float
) -> np.ndarray:
    """Ridge-regularized update P (P^H P + gamma I)^-1 P^H h_target, before the
    unit-gain rescale. Its norm shrinks monotonically as gamma grows."""
    proj = null_projector(h_null).matrix
    gram = proj.conj().T @ proj
    reg = gram + gamma * np.eye(gram.shape[0], dtype=np.complex128)
    return proj @ np.linalg.solve(reg, proj.conj().T @ h_target.values)


def min_rtp_beamformer(
    h_target: SteeringVector, h_null: SteeringVector, gamma: float
) -> np.ndarray:
    """Regularized minimum-power beam; the leading projector keeps the null exact
    for every gamma, and gamma = 0 falls back to the unregularized solution."""
    if gamma < 0.0:
        raise ConfigError(f"gamma must be >= 0, got {gamma}")
    if gamma == 0.0:
        return min_tp_beamformer(h_target, h_null)
    num = regularized_direction(h_target, h_null, gamma)
    den = h_target.values.conj() @ num
    if abs(den) <= 1e-12:
        raise InfeasibleGeometryError(
            "regularized system produced a vanishing target gain; "
            "target and nulled channels are (near-)parallel"
        )
    return num / den


def ea_beamformer(h_target: SteeringVector) -> np.ndarray:
    """Equal-amplitude baseline: every element at magnitude 1/sqrt(N) with the
    target's phase, so the target gain is real, positive, and maximal among
    equal-amplitude weights. No null is imposed."""
    v = h_target.values
    n = len(v)
    return np.exp(1j * np.angle(v)) / np.sqrt(n)


def synthesize(
    cfg: ScenarioConfig,
    plan,
    method: Method,
    gammas: RegularizationParams | None = None,
) -> BeamPair:
    """Build the power-allocated beam pair for one method.

    The message beam targets Bob and (for Min-TP / Min-RTP) nulls Eve; the
    jamming beam targets Eve and nulls Bob. Each direction is unit-normalized
    then scaled by sqrt(beta P_s) and sqrt((1 - beta) P_s).
    """
    h_b = steering_vector(plan, cfg, cfg.bob)
    h_e = steering_vector(plan, cfg, cfg.eve)

    if method is Method.EA:
        d_cm = ea_beamformer(h_b)
        d_an = ea_beamformer(h_e)
        gammas = None
    elif method is Method.MIN_TP:
        d_cm = min_tp_beamformer(h_b, h_e)
        d_an = min_tp_beamformer(h_e, h_b)
        gammas = None
    elif method is Method.MIN_RTP:
        if gammas is None:
            gammas = DEFAULT_GAMMAS
        d_cm = min_rtp_beamformer(h_b, h_e, gammas.gamma_cm)
        d_an = min_rtp_beamformer(h_e, h_b, gammas.gamma_an)
    else:
        raise ConfigError(f"unknown method {method!r}")

    beta = cfg.power_alloc
    w_cm = np.sqrt(beta * cfg.total_power_w) * d_cm / np.linalg.norm(d_cm)
    w_an = np.sqrt((1.0 - beta) * cfg.total_power_w) * d_an / np.linalg.norm(d_an)
    return BeamPair(w_cm=w_cm, w_an=w_an, method=method, gammas=gammas)
