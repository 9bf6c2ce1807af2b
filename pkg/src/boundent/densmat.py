"""Dense complex linear algebra on bipartite-indexed matrices.

Matrices are plain ``numpy`` complex arrays. The composite index of the
product basis vector ``|e_m> (x) |f_mu>`` is ``m * dim_b + mu``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, ValidationError

DEFAULT_TOL = 1e-9
DEFAULT_DIM_CAP = 1024


def as_cmatrix(m) -> np.ndarray:
    """Return ``m`` as a finite 2-D complex128 array, raising on anything else."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValidationError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("matrix contains non-finite entries")
    return arr


def kron(a, b, cap: int = DEFAULT_DIM_CAP) -> np.ndarray:
    """Kronecker product ``a (x) b`` with a guard on the output dimension."""
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > cap:
        raise CapacityError(f"kron output {rows}x{cols} exceeds dimension cap {cap}")
    return np.kron(a, b)


def hermiticity_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def eigvals_hermitian(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Ascending real spectrum of a Hermitian matrix.

    The input is symmetrized as ``(m + m^dagger) / 2`` before the solve, so
    residual anti-Hermitian noise below ``tol`` never leaks into the result.
    """
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValidationError(f"matrix must be square, got {m.shape}")
    err = hermiticity_error(m)
    if err > tol:
        raise ValidationError(f"matrix is not Hermitian (max deviation {err:.3e} > {tol:g})")
    return np.linalg.eigvalsh((m + m.conj().T) / 2)


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """A validated density matrix on ``C^dim_a (x) C^dim_b``.

    Construction checks Hermiticity, unit trace and positive
    semidefiniteness, each within ``tol``. The stored matrix is read-only.
    """

    rho: np.ndarray
    dim_a: int
    dim_b: int
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        dim_a, dim_b = int(self.dim_a), int(self.dim_b)
        if dim_a < 1 or dim_b < 1:
            raise ValidationError(f"local dimensions must be positive, got ({dim_a}, {dim_b})")
        rho = as_cmatrix(self.rho).copy()
        n = dim_a * dim_b
        if rho.shape != (n, n):
            raise ValidationError(f"expected a {n}x{n} matrix for dims ({dim_a}, {dim_b}), got {rho.shape}")
        err = hermiticity_error(rho)
        if err > self.tol:
            raise ValidationError(f"state is not Hermitian (max deviation {err:.3e})")
        tr = np.trace(rho)
        if abs(tr - 1) > self.tol:
            raise ValidationError(f"state trace is {tr.real:.12g}, expected 1")
        lam_min = np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0]
        if lam_min < -self.tol:
            raise ValidationError(f"state is not positive semidefinite (min eigenvalue {lam_min:.3e})")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "dim_a", dim_a)
        object.__setattr__(self, "dim_b", dim_b)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dim_a, self.dim_b)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def tensor(self) -> np.ndarray:
        """The matrix viewed as a rank-4 tensor ``[m, mu, n, nu]``."""
        return self.rho.reshape(self.dim_a, self.dim_b, self.dim_a, self.dim_b)


def partial_transpose_matrix(m, dim_a: int, dim_b: int) -> np.ndarray:
    """Partial transpose of any ``(dim_a*dim_b)``-square matrix, no state checks."""
    m = as_cmatrix(m)
    n = dim_a * dim_b
    if m.shape != (n, n):
        raise ValidationError(f"expected a {n}x{n} matrix, got {m.shape}")
    return m.reshape(dim_a, dim_b, dim_a, dim_b).transpose(0, 3, 2, 1).reshape(n, n).copy()


def partial_transpose(s: BipartiteState) -> np.ndarray:
    """Transpose the B factor: ``out[m mu, n nu] = rho[m nu, n mu]``."""
    return partial_transpose_matrix(s.rho, s.dim_a, s.dim_b)


def partial_trace(s: BipartiteState, keep: str) -> np.ndarray:
    """Reduced density matrix on subsystem ``"A"`` or ``"B"``."""
    t = s.tensor()
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def pure_state(psi, dim_a: int, dim_b: int) -> BipartiteState:
    """Normalized projector ``|psi><psi|`` as a bipartite state."""
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    psi = psi / np.linalg.norm(psi)
    return BipartiteState(np.outer(psi, psi.conj()), dim_a, dim_b)
