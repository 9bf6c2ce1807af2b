"""Partial-transposition tests and state classification.

A state whose partial transpose has a negative eigenvalue (NPT) is
entangled. A PPT state cannot be distilled, whatever the number of copies,
so PPT entangled states carry bound entanglement. In 2x2 and 2x3 the PPT
test is also sufficient for separability.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .densmat import DEFAULT_TOL, BipartiteState, eigvals_hermitian, partial_transpose

NOT_CERTIFIED = "distillability-not-certified"

# local dimension pairs in which PPT is equivalent to separability
_PPT_SUFFICIENT = {(2, 2), (2, 3), (3, 2)}


class ClassLabel(str, enum.Enum):
    SEPARABLE = "Separable"
    FREE_ENTANGLED_NPT = "FreeEntangledNPT"
    BOUND_ENTANGLED_PPT = "BoundEntangledPPT"
    UNDECIDED_PPT = "UndecidedPPT"


class Distillability(str, enum.Enum):
    NOT_DISTILLABLE = "NotDistillable"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class CriteriaReport:
    label: ClassLabel
    pt_spectrum: tuple[float, ...]
    negativity: float
    realignment_norm: float
    dims: tuple[int, int]
    detector_scores: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def min_pt_eigenvalue(self) -> float:
        return self.pt_spectrum[0]

    def to_dict(self) -> dict:
        return {
            "label": self.label.value,
            "dims": list(self.dims),
            "min_pt_eigenvalue": self.min_pt_eigenvalue,
            "negativity": self.negativity,
            "realignment_norm": self.realignment_norm,
            "pt_spectrum": list(self.pt_spectrum),
            "detector_scores": dict(self.detector_scores),
            "notes": list(self.notes),
        }


def pt_spectrum(s: BipartiteState) -> np.ndarray:
    return eigvals_hermitian(partial_transpose(s), tol=s.tol)


def min_pt_eigenvalue(s: BipartiteState) -> float:
    return float(pt_spectrum(s)[0])


def is_ppt(s: BipartiteState, tol: float = DEFAULT_TOL) -> bool:
    return min_pt_eigenvalue(s) >= -tol


def _negativity_from_spectrum(spec: np.ndarray) -> float:
    return float(np.sum(np.abs(spec[spec < 0])))


def negativity(s: BipartiteState, tol: float = DEFAULT_TOL) -> float:
    """Sum of the magnitudes of the negative PT eigenvalues.

    Eigenvalues in ``[-tol, 0)`` are solver noise and are clipped, so the
    result is exactly zero whenever ``is_ppt(s, tol)`` holds.
    """
    spec = pt_spectrum(s)
    return _negativity_from_spectrum(spec[spec < -tol])


def realign(s: BipartiteState) -> np.ndarray:
    """``R[(m, n), (mu, nu)] = rho[(m, mu), (n, nu)]``."""
    da, db = s.dims
    return s.tensor().transpose(0, 2, 1, 3).reshape(da * da, db * db)


def realignment_norm(s: BipartiteState) -> float:
    """Trace norm of the realigned matrix; values above 1 flag entanglement."""
    return float(np.sum(np.linalg.svd(realign(s), compute_uv=False)))


def classify(
    s: BipartiteState,
    ppt_tol: float = DEFAULT_TOL,
    detector_tol: float = DEFAULT_TOL,
) -> CriteriaReport:
    spec = pt_spectrum(s)
    neg = _negativity_from_spectrum(spec[spec < -ppt_tol])
    r_norm = realignment_norm(s)
    notes = []
    if spec[0] < -ppt_tol:
        label = ClassLabel.FREE_ENTANGLED_NPT
        if s.dims != (2, 2):
            notes.append(NOT_CERTIFIED)
    elif s.dims in _PPT_SUFFICIENT or min(s.dims) == 1:
        label = ClassLabel.SEPARABLE
    elif r_norm > 1 + detector_tol:
        label = ClassLabel.BOUND_ENTANGLED_PPT
    else:
        label = ClassLabel.UNDECIDED_PPT
    return CriteriaReport(
        label=label,
        pt_spectrum=tuple(float(x) for x in spec),
        negativity=neg,
        realignment_norm=r_norm,
        dims=s.dims,
        detector_scores={"realignment": r_norm},
        notes=tuple(notes),
    )


def distillability_upper_bound(s: BipartiteState, tol: float = DEFAULT_TOL) -> Distillability:
    """``NotDistillable`` for every PPT state; ``Unknown`` otherwise."""
    if is_ppt(s, tol):
        return Distillability.NOT_DISTILLABLE
    return Distillability.UNKNOWN
