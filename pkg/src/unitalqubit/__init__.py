"""Analysis, canonicalization, equivalence testing and mixed-unitary
decomposition of unital qubit channels, with Bloch-ellipsoid geometry."""

from .bloch import (
    ORDERED_CONE_GENERATORS,
    TETRA_VERTICES,
    OrderedConeDecomposition,
    ScalingTest,
    channel_from_scaling,
    is_channel_scaling,
    ordered_cone_decomposition,
    ordered_cone_test,
    ordered_representative,
    scaling_equivalent,
    scaling_from_spectrum,
    spectrum_from_scaling,
    tetra_coordinates,
)
from .canonical import (
    SPECTRUM_MATCH_TOL,
    Canonicalization,
    EquivalenceResult,
    canonical_choi_matrix,
    canonical_mixing_channel,
    canonicalize,
    pauli_permute,
    unitarily_equivalent,
)
from .channel import (
    BlochAffineForm,
    ChoiForm,
    KrausForm,
    PauliMixingForm,
    QubitChannel,
    ValidationReport,
    apply,
    bloch_channel,
    choi_channel,
    choi_spectrum,
    conjugate_channel,
    depolarizing_channel,
    from_choi,
    identity_channel,
    kraus_channel,
    pauli_mixing_channel,
    random_unital_channel,
    random_unitary,
    to_bloch,
    to_choi,
    validate,
)
from .errors import (
    BadCoefficientsError,
    CanonicalizationError,
    NoConvergenceError,
    NotChannelError,
    NotHermitianError,
    NotHermitianPreservingError,
    NotInConeError,
    NotInTetrahedronError,
    NotMajorizedError,
    NotPSDError,
    NotRotationError,
    NotTracePreservingError,
    NotUnitalError,
    NotUnitaryError,
    OrderingViolatedError,
    ParseError,
    PreconditionViolatedError,
    SumMismatchError,
    UnitalQubitError,
)
from .jsonio import (
    channel_document,
    decomposition_document,
    dumps_document,
    loads_channel,
    parse_channel_document,
)
from .linalg import (
    DEFAULT_TOL,
    HermitianEigen4,
    dagger,
    diagonalize_unitary2,
    frobenius,
    hermitian_eigen4,
    kron,
    pauli_basis,
    su2_from_so3,
)
from .mixed_unitary import (
    DecompositionCheck,
    MajorizationResult,
    PinchStep,
    UnitaryDecomposition,
    apply_pinch_steps,
    average_of_four,
    decompose,
    majorizes,
    pinch_chain,
    rebalance_pair,
    solve_phases,
    verify,
)

__version__ = "0.1.0"
