"""Exact invariants of quiver representations and their moduli spaces."""

from .errors import ConsistencyError, UnsupportedRegimeError, UsageError
from .hn import (
    HNSystem,
    all_hn_types,
    betti_numbers,
    codim_stratum,
    is_amply_stable,
    poincare_polynomial,
)
from .quiver import (
    Quiver,
    QuiverError,
    euler_form,
    kac_form,
    make_disjoint,
    make_from_matrix,
    make_kronecker,
    make_loop_quiver,
    make_three_vertex,
    quiver_from_document,
)
from .schofield import (
    SubdimensionLattice,
    all_general_subdimension_vectors,
    canonical_decomposition,
    general_ext,
    general_hom,
    is_general_subdim,
    is_schur_root,
    sampled_ext_oracle,
)
from .stability import (
    Stability,
    canonical_stability,
    has_semistables,
    has_stables,
    is_theta_coprime,
    slope,
)
from .teleman import (
    BundleSpec,
    quantization_verdict,
    teleman_bound,
    weights_canonical,
    weights_endomorphism_bundle,
    weights_line_bundle,
    weights_universal_bundle,
)

__version__ = "0.1.0"


def moduli_context(*args, **kwargs):
    """Chow-ring engine for a fine moduli space; see :class:`quiverkit.chow.ModuliContext`."""
    from .chow import moduli_context as _mc

    return _mc(*args, **kwargs)
