"""Local operations on bipartite states.

Covers separable Kraus maps ``sum_i (A_i (x) B_i) rho (A_i (x) B_i)^dagger``,
single-term local filters, N-copy tensor powers and the compression of a
state onto a pair of local two-dimensional subspaces.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .densmat import DEFAULT_DIM_CAP, BipartiteState, as_cmatrix
from .errors import CapacityError, NullOutcomeError, ValidationError

NULL_OUTCOME = 1e-12
FRAME_REJECT_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class KrausPair:
    """Local operators applied jointly as ``a (x) b``."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", as_cmatrix(self.a))
        object.__setattr__(self, "b", as_cmatrix(self.b))


def _gram_schmidt(v0: np.ndarray, v1: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # modified Gram-Schmidt with one re-orthogonalization pass
    u0 = v0 / np.linalg.norm(v0)
    u1 = v1 - u0 * np.vdot(u0, v1)
    u1 = u1 - u0 * np.vdot(u0, u1)
    return u0, u1 / np.linalg.norm(u1)


@dataclass(frozen=True, eq=False)
class Frame2:
    """Ordered orthonormal pair spanning a local two-dimensional subspace.

    Inputs further than ``1e-6`` from orthonormal are rejected; anything
    closer is polished by Gram-Schmidt.
    """

    v0: np.ndarray
    v1: np.ndarray

    def __post_init__(self):
        v0 = np.asarray(self.v0, dtype=np.complex128).ravel()
        v1 = np.asarray(self.v1, dtype=np.complex128).ravel()
        if v0.shape != v1.shape or v0.size < 2:
            raise ValidationError("frame vectors must share a local dimension of at least 2")
        if not (np.all(np.isfinite(v0)) and np.all(np.isfinite(v1))):
            raise ValidationError("frame vectors contain non-finite entries")
        gram = np.array([[np.vdot(v0, v0), np.vdot(v0, v1)], [np.vdot(v1, v0), np.vdot(v1, v1)]])
        err = np.max(np.abs(gram - np.eye(2)))
        if err > FRAME_REJECT_TOL:
            raise ValidationError(f"frame is not orthonormal (Gram deviation {err:.3e})")
        v0, v1 = _gram_schmidt(v0, v1)
        v0.setflags(write=False)
        v1.setflags(write=False)
        object.__setattr__(self, "v0", v0)
        object.__setattr__(self, "v1", v1)

    @classmethod
    def from_vectors(cls, x0, x1) -> "Frame2":
        """Orthonormalize two arbitrary linearly independent vectors."""
        u0, u1 = _gram_schmidt(np.asarray(x0, dtype=np.complex128).ravel(),
                               np.asarray(x1, dtype=np.complex128).ravel())
        return cls(u0, u1)

    @classmethod
    def standard(cls, d: int, i: int = 0, j: int = 1) -> "Frame2":
        e = np.eye(d)
        return cls(e[i], e[j])

    @classmethod
    def random(cls, d: int, rng: np.random.Generator) -> "Frame2":
        x = rng.standard_normal((2, d)) + 1j * rng.standard_normal((2, d))
        return cls.from_vectors(x[0], x[1])

    @property
    def dim(self) -> int:
        return self.v0.size

    @property
    def isometry(self) -> np.ndarray:
        """``d x 2`` matrix whose columns are ``v0, v1``."""
        return np.column_stack([self.v0, self.v1])

    @property
    def projector(self) -> np.ndarray:
        v = self.isometry
        return v @ v.conj().T

    def to_list(self) -> list:
        return [[[float(z.real), float(z.imag)] for z in v] for v in (self.v0, self.v1)]


def tensor_power(s: BipartiteState, n: int, cap: int = DEFAULT_DIM_CAP) -> BipartiteState:
    """``rho^(x)n`` with all A factors gathered before all B factors."""
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    total = s.dim**n
    if total > cap:
        raise CapacityError(f"{n} copies of a {s.dim_a}x{s.dim_b} state need dimension {total} > cap {cap}")
    if n == 1:
        return s
    out = s.rho
    for _ in range(n - 1):
        out = np.kron(out, s.rho)
    da, db = s.dims
    # axes are (a1, b1, ..., an, bn) for rows then the same for columns
    t = out.reshape([da, db] * n * 2)
    row_a = [2 * k for k in range(n)]
    row_b = [2 * k + 1 for k in range(n)]
    perm = row_a + row_b + [2 * n + k for k in row_a] + [2 * n + k for k in row_b]
    rho = t.transpose(perm).reshape(total, total)
    return BipartiteState(rho, da**n, db**n, tol=s.tol)


def _sandwich(rho: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    k = np.kron(a, b)
    return k @ rho @ k.conj().T


def apply_local_kraus(s: BipartiteState, pairs: Sequence[KrausPair]) -> tuple[BipartiteState, float]:
    """Apply a separable Kraus map and renormalize.

    Returns the output state together with the trace ``M`` of the
    unnormalized output.
    """
    if not pairs:
        raise ValueError("at least one Kraus pair is required")
    out_a, out_b = pairs[0].a.shape[0], pairs[0].b.shape[0]
    acc = np.zeros((out_a * out_b, out_a * out_b), dtype=np.complex128)
    for p in pairs:
        if p.a.shape != (out_a, s.dim_a) or p.b.shape != (out_b, s.dim_b):
            raise ValidationError(
                f"Kraus pair shapes {p.a.shape}, {p.b.shape} do not map ({s.dim_a}, {s.dim_b}) "
                f"to ({out_a}, {out_b})"
            )
        acc += _sandwich(s.rho, p.a, p.b)
    m = float(np.trace(acc).real)
    if m < NULL_OUTCOME:
        raise NullOutcomeError(f"Kraus map annihilates the state (norm {m:.3e})")
    acc = (acc + acc.conj().T) / (2 * m)
    return BipartiteState(acc, out_a, out_b, tol=s.tol), m


def local_filter(s: BipartiteState, a, b) -> tuple[BipartiteState, float]:
    """Single-outcome local filter ``a (x) b``.

    Both operators are first divided by their largest singular value, which
    leaves the output state unchanged and makes the returned trace a
    success probability in ``(0, 1]``.
    """
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape[1] != s.dim_a or b.shape[1] != s.dim_b:
        raise ValidationError(f"filter shapes {a.shape}, {b.shape} do not act on ({s.dim_a}, {s.dim_b})")
    sa = np.linalg.norm(a, 2)
    sb = np.linalg.norm(b, 2)
    if sa == 0 or sb == 0:
        raise NullOutcomeError("filter operator is zero")
    try:
        return apply_local_kraus(s, [KrausPair(a / sa, b / sb)])
    except NullOutcomeError as exc:
        raise NullOutcomeError(f"filter annihilates the state: {exc}") from None


def compress_2x2(rho: np.ndarray, fa: Frame2, fb: Frame2) -> tuple[np.ndarray, float]:
    """Unvalidated core of :func:`project_to_2x2`; returns (normalized block, prob)."""
    v = np.kron(fa.isometry, fb.isometry)
    block = v.conj().T @ rho @ v
    prob = float(np.trace(block).real)
    if prob < NULL_OUTCOME:
        raise NullOutcomeError(f"projection annihilates the state (prob {prob:.3e})")
    block = (block + block.conj().T) / (2 * prob)
    return block, prob


def project_to_2x2(s: BipartiteState, fa: Frame2, fb: Frame2) -> tuple[BipartiteState, float]:
    """Compress ``(P_A (x) P_B) rho (P_A (x) P_B)`` onto its nonzero 4x4 block.

    Entries are ``<v_i w_k| rho |v_j w_l>`` in the frame bases, normalized by
    ``Tr((P_A (x) P_B) rho)``, which is returned as the second value.
    """
    if fa.dim != s.dim_a or fb.dim != s.dim_b:
        raise ValidationError(f"frame dims ({fa.dim}, {fb.dim}) do not match state dims {s.dims}")
    block, prob = compress_2x2(s.rho, fa, fb)
    return BipartiteState(block, 2, 2, tol=s.tol), prob
