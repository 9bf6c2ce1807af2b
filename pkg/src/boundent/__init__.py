"""Partial-transposition entanglement tests, bound entanglement and distillation tools."""
from .criteria import (
    ClassLabel,
    CriteriaReport,
    Distillability,
    classify,
    distillability_upper_bound,
    is_ppt,
    min_pt_eigenvalue,
    negativity,
    realignment_norm,
)
from .densmat import BipartiteState, eigvals_hermitian, kron, partial_trace, partial_transpose
from .distill import bbpssw_step, filter_boost, recurrence_distill, singlet_fidelity, twirl_to_werner
from .errors import (
    BoundentError,
    CapacityError,
    NotDistillableByProtocol,
    NullOutcomeError,
    ParameterError,
    ValidationError,
)
from .locc import Frame2, KrausPair, apply_local_kraus, local_filter, project_to_2x2, tensor_power
from .search import SearchResult, Verdict, refine_frames, search_2x2_projection
from .states import horodecki3x3, isotropic, random_density, random_separable, singlet, werner

__version__ = "0.1.0"
