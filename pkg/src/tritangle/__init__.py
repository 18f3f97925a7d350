"""Twistor-geometric entanglement invariants of three-qubit pure states.

The package maps a state's amplitude slices to a pair of complex
4-vectors in a magic basis, represents the state as a point of the Klein
quadric through its antisymmetric coordinate array, and computes the
complete set of polynomial entanglement invariants plus the SLOCC class
and canonical decomposition from that geometry.
"""

from .bivectors import (
    Bivector,
    PrincipalDirections,
    hodge_dual,
    is_alpha_plane,
    is_beta_plane,
    null_line_check,
    planes_intersect,
    plucker,
    plucker_residual,
    principal_null_directions,
    q_form,
)
from .classify import CanonicalForm, SloccClass, acin_canonical, classify
from .ensembles import (
    EnsembleSpec,
    SweepResult,
    random_local,
    run_sweep,
    sample_state,
)
from .errors import ConsistencyError, InvalidOperatorError, InvalidStateError
from .invariants import (
    InvariantReport,
    full_report,
    hyperdeterminant,
    kempe_identity_residual,
    omega_lambda,
    pair_flip_trace,
    sigma,
    sigma_comparison,
    tau_one_vs_rest,
    three_tangle,
    two_tangles,
)
from .kernels import active_backend, available_backends, invariant_rows
from .states import (
    DensityMatrix,
    LocalOperator,
    PureState,
    SlicePair,
    apply_local,
    kempe_xi,
    pair_tangle,
    reduced_density,
    slices,
    spin_flip,
    state_from_amplitudes,
)
from .twistor import (
    GaugeElement,
    MagicBasis,
    TwistorPair,
    bilinear_dot,
    det_rho_a,
    from_twistor,
    gauge_act,
    hermitian_dot,
    to_twistor,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
