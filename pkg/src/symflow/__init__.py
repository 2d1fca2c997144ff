"""symflow: Maslov indices via spectral flow in finite dimensions.

Symplectic linear algebra over complex inner-product spaces, graph
representations of Lagrangian subspaces, gap topology, closed linear
relations as matrix pencils with spectral projections, spectral flow of
admissible families through co-oriented curves, and the Maslov index of
curves of Fredholm pairs of Lagrangian subspaces.
"""

from . import errors
from .contours import BoxPath, BoxWindow, CirclePath, DiskWindow
from .curves import (
    ImaginaryAxisInterval,
    ParametrizedArc,
    PositiveRealAxis,
    RealAxisInterval,
)
from .flow import (
    AdmissibilityReport,
    FlowResult,
    SampledFamily,
    TestDomainTriple,
    check_admissible,
    check_unitary_admissible,
    family_from_matrices,
    sf_embedding_check,
    spectral_flow,
)
from .gap import (
    GapReport,
    complement_frame,
    directed_gap,
    estimate_delta_bound,
    gap,
    intersect_subspaces,
    principal_angles,
    quotient_gap,
    subspaces_equal,
    sum_subspaces,
)
from .lagrangian import (
    LagrangianGenerator,
    PairIndexReport,
    block_generator_matrix,
    boxplus,
    boxplus_pair,
    boxplus_splitting,
    check_iso_to_lag,
    fredholm_via_generators,
    generator_of,
    pair_index,
)
from .linalg import Frame, Tolerances, contour_quadrature, eig, orthonormalize, rank
from .maslov import (
    CurveSample,
    MaslovResult,
    SplitCurve,
    catenate,
    complexified_pair_splitting,
    flip,
    lagrangian_retract,
    mas_bf,
    maslov_boxplus,
    maslov_embedding_check,
    maslov_index,
    maslov_properties_check,
    real_complexify,
    reverse,
    splitting_independence_check,
    transform,
    transport_frame,
    with_splitting,
)
from .relations import (
    PencilRelation,
    SpectrumDescription,
    relation_compose,
    relation_fredholm,
    relation_inverse,
    relation_spectrum,
    relation_sum,
    resolvent,
    spectral_projection,
    spectral_projector_eig,
)
from .symplectic import (
    HForm,
    Splitting,
    SymplecticSpace,
    annihilator,
    classify,
    compute_splitting,
    make_space,
    make_space_from_j,
    normalize_strong,
    splitting_from_frames,
    splitting_from_metric,
)

__version__ = "0.1.0"
