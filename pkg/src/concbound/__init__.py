"""concbound: certified lower bounds of concurrence for bipartite quantum
states via lower-dimensional sub-block projections, plus sufficient
distillability detection from 2x3 sub-blocks of N-copy states."""

__version__ = "0.1.0"

from ._accel import USING_NUMBA
from .bounds import (BoundReport, chen_global, combined, evaluate_all, kappa,
                     primitive_norm_bound, tau22, tau_roof_estimate, zeta)
from .concurrence import (RoofOptions, RoofResult, pure_concurrence,
                          pure_concurrence_minors, roof_estimate, wootters)
from .distill import (DistillVerdict, Witness, is_npt, npt_block_witness,
                      reduction_violated, tau22_criterion, verdict)
from .errors import (ConcboundError, DimensionError, NumericalError,
                     SizeLimitError, ValidationError)
from .states import (BipartiteState, PureState, basis_ket, builtin, from_pure,
                     load, max_entangled, save, tensor_copies)
from .subspace import (Selector, project, selector_count, selectors,
                       subspace_coefficient)

__all__ = [
    "__version__",
    "USING_NUMBA",
    "BipartiteState", "PureState", "basis_ket", "builtin", "from_pure",
    "load", "max_entangled", "save", "tensor_copies",
    "Selector", "project", "selector_count", "selectors", "subspace_coefficient",
    "RoofOptions", "RoofResult", "pure_concurrence", "pure_concurrence_minors",
    "roof_estimate", "wootters",
    "BoundReport", "chen_global", "combined", "evaluate_all", "kappa",
    "primitive_norm_bound", "tau22", "tau_roof_estimate", "zeta",
    "DistillVerdict", "Witness", "is_npt", "npt_block_witness",
    "reduction_violated", "tau22_criterion", "verdict",
    "ConcboundError", "DimensionError", "NumericalError", "SizeLimitError",
    "ValidationError",
]
