"""Two-qubit state discrimination probabilities and entanglement robustness.

Library layout:

- :mod:`qsdbounds.linalg` - dense Hermitian kernels (Jacobi eigensolver,
  trace norm, partial transpose, tensor product).
- :mod:`qsdbounds.states` - seeded sampling of pure and fixed-rank mixed
  two-qubit states.
- :mod:`qsdbounds.robustness` - random robustness of entanglement and
  closest separable states via the positive-partial-transpose criterion.
- :mod:`qsdbounds.discrimination` - two-state Helstrom probabilities and the
  upper/lower bound evaluators collected in a BoundReport.
- :mod:`qsdbounds.experiments` - seeded batch runs producing scatter and
  threshold-curve records.
- :mod:`qsdbounds.cli` - command-line front end emitting CSV plus a run
  manifest.
"""

__version__ = "0.1.0"

from .discrimination import (  # noqa: F401
    BoundReport,
    Ensemble,
    bound_report,
    closest_separable_ensemble,
    helstrom,
    helstrom_ensemble,
    theorem1_upper,
    theorem2_lower,
    theorem4_lower_diff,
)
from .linalg import Spectrum, hermitian_eig, hermitian_eigvals, kron, partial_transpose, trace_norm  # noqa: F401
from .robustness import RREResult, closest_separable, robustness_wrt, rre, rre_bisection_oracle, rre_pure  # noqa: F401
from .states import (  # noqa: F401
    DensityMatrix,
    PureState,
    SeededRng,
    bell_state,
    child_seed,
    concurrence,
    maximally_mixed,
    pure_from_schmidt,
    random_mixed_rank,
    random_product_pure,
    random_pure,
)
