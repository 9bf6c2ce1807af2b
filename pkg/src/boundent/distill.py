"""Recurrence distillation for two-qubit states.

The state is first brought to Werner form by a fidelity-preserving twirl,
then the two-pair recurrence (bilateral CNOT, target measurement,
post-selection on coinciding outcomes) is iterated. States whose singlet
fidelity is at most 1/2 are first passed through a local filter search.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .densmat import BipartiteState
from .errors import NotDistillableByProtocol, ParameterError, ValidationError
from .locc import KrausPair, local_filter
from .states import werner

FILTER_T_MIN = 0.01
NOT_DISTILLABLE_REASON = "fidelity ≤ 1/2 after filtering"

_PSI_MINUS = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2)


@dataclass(frozen=True)
class DistillRecord:
    round: int
    fidelity: float
    survival: float
    pairs_factor: float
    reached_target: bool

    def to_dict(self) -> dict:
        return {
            "round": self.round,
            "fidelity": self.fidelity,
            "survival": self.survival,
            "pairs_factor": self.pairs_factor,
            "reached_target": self.reached_target,
        }


def _require_two_qubit(s: BipartiteState):
    if s.dims != (2, 2):
        raise ValidationError(f"expected a 2x2 state, got dims {s.dims}")


def _fidelity(rho: np.ndarray) -> float:
    return float(np.real(_PSI_MINUS @ rho @ _PSI_MINUS))


def singlet_fidelity(s: BipartiteState) -> float:
    """Overlap ``<Psi-| rho |Psi->`` with the singlet."""
    _require_two_qubit(s)
    return min(1.0, max(0.0, _fidelity(s.rho)))


def twirl_to_werner(s: BipartiteState) -> BipartiteState:
    """Project onto the Werner family, keeping the singlet fidelity.

    Deterministic equivalent of averaging over random bilateral rotations
    ``U (x) U``, under which the singlet is invariant.
    """
    return werner(singlet_fidelity(s))


def bbpssw_step(f: float) -> tuple[float, float]:
    """One recurrence round on Werner pairs of fidelity ``f``.

    Returns the output fidelity and the probability that the kept pair
    survives post-selection.
    """
    f = float(f)
    if not (np.isfinite(f) and 0.0 <= f <= 1.0):
        raise ParameterError(f"fidelity must lie in [0, 1], got {f}")
    g = (1 - f) / 3
    survival = f * f + 2 * f * g + 5 * g * g
    return (f * f + g * g) / survival, survival


def _su2(alpha: float, beta: float, gamma: float) -> np.ndarray:
    # Rz(alpha) Ry(beta) Rz(gamma)
    c, s = np.cos(beta / 2), np.sin(beta / 2)
    return np.array(
        [
            [np.exp(-0.5j * (alpha + gamma)) * c, -np.exp(-0.5j * (alpha - gamma)) * s],
            [np.exp(0.5j * (alpha - gamma)) * s, np.exp(0.5j * (alpha + gamma)) * c],
        ]
    )


def _filter_op(x: np.ndarray) -> np.ndarray:
    return _su2(*x[0:3]) @ np.diag([1.0, x[3]]) @ _su2(*x[4:7])


def _filtered_fidelity(x: np.ndarray, rho: np.ndarray) -> float:
    k = np.kron(_filter_op(x[:7]), _filter_op(x[7:]))
    out = k @ rho @ k.conj().T
    tr = np.trace(out).real
    if tr < 1e-14:
        return 0.0
    return _fidelity(out) / tr


def filter_boost(s: BipartiteState, restarts: int = 16, seed: int = 0) -> tuple[KrausPair, BipartiteState]:
    """Search local filters ``R1 diag(1, t) R2`` on each side for the highest singlet fidelity.

    Each restart draws a random start from ``default_rng(seed + index)`` and
    runs a bounded quasi-Newton refinement. Restarts are merged by maximum
    fidelity, earliest index winning ties. When nothing beats the unfiltered
    state the identity filter and the input are returned. Heuristic: no
    optimality guarantee.
    """
    _require_two_qubit(s)
    rho = np.asarray(s.rho)
    base = _fidelity(rho)
    bounds = ([(None, None)] * 3 + [(FILTER_T_MIN, 1.0)] + [(None, None)] * 3) * 2
    best_f, best_x = base, None
    for i in range(int(restarts)):
        rng = np.random.default_rng(int(seed) + i)
        x0 = rng.uniform(0, 2 * np.pi, 14)
        x0[[3, 10]] = rng.uniform(FILTER_T_MIN, 1.0, 2)
        res = minimize(lambda x: -_filtered_fidelity(x, rho), x0, method="L-BFGS-B", bounds=bounds)
        f = -float(res.fun)
        if f > best_f + 1e-9:
            best_f, best_x = f, res.x
    if best_x is None:
        return KrausPair(np.eye(2), np.eye(2)), s
    a, b = _filter_op(best_x[:7]), _filter_op(best_x[7:])
    boosted, _ = local_filter(s, a, b)
    return KrausPair(a / np.linalg.norm(a, 2), b / np.linalg.norm(b, 2)), boosted


def recurrence_distill(
    s: BipartiteState,
    target_f: float,
    max_rounds: int,
    filter_restarts: int = 16,
    seed: int = 0,
) -> list[DistillRecord]:
    """Twirl and iterate :func:`bbpssw_step` until ``target_f`` or ``max_rounds``.

    Round 0 records the (possibly filtered) starting fidelity. The last
    record's ``reached_target`` tells success from failure.

    Raises
    ------
    NotDistillableByProtocol
        If the fidelity is still at most 1/2 after the filter search.
    """
    _require_two_qubit(s)
    if not 0.5 < target_f < 1.0:
        raise ParameterError(f"target fidelity must lie in (1/2, 1), got {target_f}")
    if int(max_rounds) < 1:
        raise ParameterError(f"max_rounds must be at least 1, got {max_rounds}")
    if singlet_fidelity(s) <= 0.5:
        _, s = filter_boost(s, filter_restarts, seed)
        if singlet_fidelity(s) <= 0.5:
            raise NotDistillableByProtocol(NOT_DISTILLABLE_REASON)
    f = singlet_fidelity(twirl_to_werner(s))
    records = [DistillRecord(0, f, 1.0, 1.0, f >= target_f)]
    pairs = 1.0
    for r in range(1, int(max_rounds) + 1):
        if f >= target_f:
            break
        f, survival = bbpssw_step(f)
        pairs = 2 * pairs / survival
        records.append(DistillRecord(r, f, survival, pairs, f >= target_f))
    return records


__all__ = [
    "DistillRecord",
    "singlet_fidelity",
    "twirl_to_werner",
    "bbpssw_step",
    "filter_boost",
    "recurrence_distill",
]
