"""Generators for the bipartite state families used throughout the package."""
from __future__ import annotations

import numpy as np

from .densmat import BipartiteState, as_cmatrix
from .errors import ParameterError

__all__ = [
    "singlet",
    "singlet_projector",
    "werner",
    "isotropic",
    "horodecki3x3",
    "random_separable",
    "random_density",
    "random_pure",
    "FAMILIES",
]


def _rng(seed) -> np.random.Generator:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.default_rng(seed)


def _check_unit_interval(name, x):
    if not (np.isfinite(x) and 0.0 <= x <= 1.0):
        raise ParameterError(f"{name} must lie in [0, 1], got {x}")


def singlet_projector() -> np.ndarray:
    # (|01> - |10>)/sqrt(2), entries of the outer product are exactly +-1/2
    v = np.array([0.0, 1.0, -1.0, 0.0])
    return np.outer(v, v).astype(np.complex128) / 2


def singlet() -> BipartiteState:
    return BipartiteState(singlet_projector(), 2, 2)


def werner(f: float) -> BipartiteState:
    """Two-qubit Werner state with singlet fidelity ``f``.

    ``f * P + (1 - f)/3 * (I - P)`` where ``P`` projects onto the singlet.
    """
    f = float(f)
    _check_unit_interval("F", f)
    p = singlet_projector()
    rho = f * p + ((1 - f) / 3) * (np.eye(4) - p)
    return BipartiteState(rho, 2, 2)


def isotropic(d: int, f: float) -> BipartiteState:
    """``f |Phi_d><Phi_d| + (1 - f)/(d^2 - 1) (I - |Phi_d><Phi_d|)``."""
    d = int(d)
    f = float(f)
    if d < 2:
        raise ParameterError(f"d must be at least 2, got {d}")
    _check_unit_interval("F", f)
    phi = np.zeros(d * d)
    phi[[i * d + i for i in range(d)]] = 1.0
    proj = np.outer(phi, phi) / d
    rho = f * proj + ((1 - f) / (d * d - 1)) * (np.eye(d * d) - proj)
    return BipartiteState(rho.astype(np.complex128), d, d)


def horodecki3x3(a: float) -> BipartiteState:
    """The 3x3 family of inseparable states with positive partial transpose.

    Basis order is ``|1>|1>, |1>|2>, |1>|3>, |2>|1>, ...`` mapped to
    composite indices 0..8.
    """
    a = float(a)
    if not (np.isfinite(a) and 0.0 < a < 1.0):
        raise ParameterError(f"a must lie strictly inside (0, 1), got {a}")
    norm = 8 * a + 1
    rho = np.zeros((9, 9))
    for i in (0, 1, 2, 3, 4, 5, 7):
        rho[i, i] = a / norm
    for i, j in ((0, 4), (0, 8), (4, 8)):
        rho[i, j] = rho[j, i] = a / norm
    rho[6, 6] = rho[8, 8] = (1 + a) / 2 / norm
    rho[6, 8] = rho[8, 6] = np.sqrt(1 - a * a) / 2 / norm
    return BipartiteState(rho.astype(np.complex128), 3, 3)


def random_pure(d: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_separable(dim_a: int, dim_b: int, k: int, seed: int) -> BipartiteState:
    """Convex mixture of ``k`` products of random pure local states.

    Weights are Dirichlet(1, ..., 1) distributed; the output is a
    deterministic function of the arguments.
    """
    dim_a, dim_b, k = int(dim_a), int(dim_b), int(k)
    if dim_a < 1 or dim_b < 1:
        raise ParameterError(f"local dimensions must be positive, got ({dim_a}, {dim_b})")
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(k))
    rho = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=np.complex128)
    for p in weights:
        v = np.kron(random_pure(dim_a, rng), random_pure(dim_b, rng))
        rho += p * np.outer(v, v.conj())
    return BipartiteState(rho, dim_a, dim_b)


def random_density(d: int, seed: int) -> np.ndarray:
    """Random full-rank density matrix ``G G^dagger / Tr(G G^dagger)``."""
    d = int(d)
    if d < 1:
        raise ParameterError(f"d must be positive, got {d}")
    rng = _rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return as_cmatrix(m / np.trace(m).real)


FAMILIES = ("singlet", "werner", "isotropic", "horodecki3x3", "random_separable", "random_density")
