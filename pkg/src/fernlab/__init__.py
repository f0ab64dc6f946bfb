"""Exact computations around homological stability for xi-configuration spaces.

Submodules:

* :mod:`fernlab.linalg` -- sparse integer matrices, Smith normal form, chain complexes
* :mod:`fernlab.orbit` -- the orbit complex of admissible words and its cone operator
* :mod:`fernlab.arnold` -- cohomology of ordered configurations in the plane
* :mod:`fernlab.wreath` -- block-preserving permutations and invariant subspaces
* :mod:`fernlab.stability` -- Betti numbers, stabilization and transfer matrices
* :mod:`fernlab.cli` -- the ``fernlab`` command line tool
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BudgetExceeded,
    DimensionMismatch,
    DimensionOverflow,
    FernlabError,
    IndexOutOfRange,
    InvalidComplex,
    ModelInconsistency,
)
from .linalg import (  # noqa: E402
    ChainComplex,
    HomologySummary,
    RationalMatrix,
    SparseIntMatrix,
    homology,
    rational_rank,
    smith_normal_form,
    verify_chain_homotopy,
    verify_complex,
)
from .orbit import (  # noqa: E402
    BlockWord,
    OrbitComplex,
    boundary_matrix,
    enumerate_words,
    face,
    is_admissible,
    nullhomotopy_D,
    orbit_homology,
    verify_homotopy_identity,
)
from .arnold import ArnoldMonomial, CohomologyElement, act, basis, embed, restrict, straighten  # noqa: E402
from .wreath import Perm, WreathGroup, coset_reps, elements, invariant_basis, orbit_count_pairs  # noqa: E402
from .stability import (  # noqa: E402
    HomologyMap,
    StabilityModel,
    StabilityReport,
    betti,
    stab_matrix,
    transfer_matrix,
    verify_dold,
    verify_stability,
    verify_transfer_iso,
)
