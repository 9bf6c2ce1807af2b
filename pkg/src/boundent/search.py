"""Search for two-qubit entanglement inside N copies of a bipartite state.

A state is distillable exactly when, for some number of copies, local
two-dimensional projections on each side leave an entangled two-qubit
state. This module looks for such projections with a seeded random-restart
hill-climber over pairs of orthonormal frames. A PPT input is certified
undistillable up front and never searched.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .criteria import is_ppt
from .densmat import DEFAULT_DIM_CAP, DEFAULT_TOL, BipartiteState
from .errors import ParameterError
from .locc import NULL_OUTCOME, Frame2, tensor_power

WITNESS_THRESHOLD = 1e-7
STEP_INIT = 0.5
STEP_FLOOR = 1e-6
STEP_SHRINK = 0.5
PATIENCE = 12
DEFAULT_BUDGET = 2000


class Verdict(str, enum.Enum):
    DISTILLABLE_WITNESS_FOUND = "DistillableWitnessFound"
    NO_WITNESS_FOUND = "NoWitnessFound"
    CERTIFIED_NOT_DISTILLABLE = "CertifiedNotDistillable"


@dataclass(frozen=True)
class SearchResult:
    best_negativity: float
    best_frames: tuple[Frame2, Frame2] | None
    copies: int
    restarts_used: int
    evaluations: int
    verdict: Verdict

    def to_dict(self) -> dict:
        frames = None
        if self.best_frames is not None:
            frames = {"a": self.best_frames[0].to_list(), "b": self.best_frames[1].to_list()}
        return {
            "verdict": self.verdict.value,
            "best_negativity": self.best_negativity,
            "copies": self.copies,
            "restarts_used": self.restarts_used,
            "evaluations": self.evaluations,
            "best_frames": frames,
        }


def _orthonormal(x: np.ndarray) -> np.ndarray:
    u0 = x[:, 0] / np.sqrt(np.vdot(x[:, 0], x[:, 0]).real)
    u1 = x[:, 1] - u0 * np.vdot(u0, x[:, 1])
    u1 = u1 - u0 * np.vdot(u0, u1)
    return np.stack([u0, u1 / np.sqrt(np.vdot(u1, u1).real)], axis=1)


def _score(rho: np.ndarray, va: np.ndarray, vb: np.ndarray) -> float:
    """Minus the smallest PT eigenvalue of the compressed block.

    Positive scores are the block's negativity: a two-qubit partial
    transpose has at most one negative eigenvalue. Unlike the negativity,
    the score stays informative on PPT blocks, so the climber has a slope
    to follow from a PPT start.
    """
    v = (va[:, None, :, None] * vb[None, :, None, :]).reshape(va.shape[0] * vb.shape[0], 4)
    block = v.conj().T @ rho @ v
    prob = np.trace(block).real
    if prob < NULL_OUTCOME:
        return -np.inf
    pt = block.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    return -float(np.linalg.eigvalsh((pt + pt.conj().T) / (2 * prob))[0])


def projection_negativity(s: BipartiteState, fa: Frame2, fb: Frame2) -> float:
    """Negativity of the normalized 2x2 compression of ``s`` onto ``fa (x) fb``."""
    return max(0.0, _score(np.asarray(s.rho), fa.isometry, fb.isometry))


def _perturb(v: np.ndarray, step: float, rng: np.random.Generator) -> np.ndarray:
    if v.shape[0] == 2:
        # the only 2-dim subspace of C^2 is the whole space
        return v
    r = rng.standard_normal((2,) + v.shape)
    g = r[0] + 1j * r[1]
    # keep only the component orthogonal to the current subspace
    g -= v @ (v.conj().T @ g)
    return _orthonormal(v + step * g / max(np.linalg.norm(g), 1e-300))


def _refine(rho, fa: Frame2, fb: Frame2, budget: int, rng) -> tuple[Frame2, Frame2, float]:
    va, vb = fa.isometry, fb.isometry
    best = _score(rho, va, vb)
    step, fails, moved = STEP_INIT, 0, False
    for _ in range(budget):
        ta = _perturb(va, step, rng)
        tb = _perturb(vb, step, rng)
        val = _score(rho, ta, tb)
        if val > best:
            va, vb, best, fails, moved = ta, tb, val, 0, True
        else:
            fails += 1
            if fails >= PATIENCE:
                step = max(step * STEP_SHRINK, STEP_FLOOR)
                fails = 0
    if not moved:
        return fa, fb, best
    fa, fb = Frame2(va[:, 0], va[:, 1]), Frame2(vb[:, 0], vb[:, 1])
    # rescore the polished frames so reported values match re-evaluation
    return fa, fb, _score(rho, fa.isometry, fb.isometry)


def refine_frames(
    s_ncopy: BipartiteState,
    fa: Frame2,
    fb: Frame2,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
) -> tuple[Frame2, Frame2, float]:
    """Stochastic hill-climb on a frame pair; returns improved frames and their negativity.

    Each evaluation perturbs both frames along random tangent directions,
    re-orthonormalizes, and keeps the candidate only if it improves. The
    step halves after a run of failures, down to ``1e-6``. The returned
    negativity is never below that of the input frames.
    """
    budget = int(budget)
    if budget <= 0:
        return fa, fb, projection_negativity(s_ncopy, fa, fb)
    rho = np.asarray(s_ncopy.rho)
    fa, fb, best = _refine(rho, fa, fb, budget, np.random.default_rng(seed))
    return fa, fb, max(0.0, best)


def restart_seed(seed: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(seed), int(index)])


def search_2x2_projection(
    s: BipartiteState,
    copies: int = 1,
    restarts: int = 16,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    certify: bool = True,
    ppt_tol: float = DEFAULT_TOL,
    cap: int = DEFAULT_DIM_CAP,
) -> SearchResult:
    """Look for an entangled two-qubit projection of ``s`` over ``copies`` copies.

    With ``certify`` on, a PPT input returns ``CertifiedNotDistillable``
    without any evaluation. ``certify=False`` forces the search, which is
    only useful to check numerically that PPT inputs never yield a witness.
    ``NoWitnessFound`` does not prove undistillability.

    Restart ``i`` is seeded from ``(seed, i)`` alone, so adding restarts
    never lowers the reported optimum.
    """
    copies, restarts, budget = int(copies), int(restarts), int(budget)
    if copies < 1:
        raise ParameterError(f"copies must be at least 1, got {copies}")
    if restarts < 1:
        raise ParameterError(f"restarts must be at least 1, got {restarts}")
    if budget < 0:
        raise ParameterError(f"budget must be non-negative, got {budget}")
    if certify and is_ppt(s, ppt_tol):
        return SearchResult(0.0, None, copies, 0, 0, Verdict.CERTIFIED_NOT_DISTILLABLE)
    big = tensor_power(s, copies, cap=cap)
    rho = np.asarray(big.rho)
    best_val, best_frames = -np.inf, None
    for i in range(restarts):
        rng = np.random.default_rng(restart_seed(seed, i))
        fa = Frame2.random(big.dim_a, rng)
        fb = Frame2.random(big.dim_b, rng)
        fa, fb, val = _refine(rho, fa, fb, budget, rng)
        if val > best_val:
            best_val, best_frames = val, (fa, fb)
    best_neg = max(0.0, best_val)
    verdict = Verdict.NO_WITNESS_FOUND
    if best_neg > WITNESS_THRESHOLD:
        verdict = Verdict.DISTILLABLE_WITNESS_FOUND
    return SearchResult(best_neg, best_frames, copies, restarts, restarts * (budget + 1), verdict)
