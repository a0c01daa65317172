"""closure14: the exact 14-moment closure for dense gases and macromolecular
fluids, with machine verification of its frame-invariance identities and of
the exact large-c limit construction it comes from."""

from ._version import __version__
from .cseries import (CPoly, RelEmbedding, embed, intermediate_roundtrip, limit_V,
                      limit_X, moment_repack_roundtrip, p_scalars, q_scalars,
                      scheme_equivalence)
from .derivatives import (FluxSet, HessianReport, MomentSet, compatibility_residual,
                          entropy_pair, fluxes_G, hessian_h, moments_F)
from .frames import (InternalMoments, boost_multipliers, galilean_residual_h,
                     galilean_residual_phi, lift_fluxes, lift_moments,
                     unlift_fluxes, unlift_moments)
from .materials import (ACCEPTANCE_MATERIALS, FiniteDifferenceMaterial, Material,
                        PolynomialMaterial, builtin_materials, material_from_json)
from .potentials import Potentials, VSet, XSet, compute_V, compute_X, eval_potentials
from .report import ResidualReport
from .state import (MultiplierState, Scalar14, SchemaError,
                    auxiliary_identity_residual, hamilton_cayley_residual,
                    rotate_state, sample_rational_state, sample_state,
                    scalar_invariants, state_from_json, state_to_json)
from .verify import SuiteConfig, run_suites

__all__ = [
    "__version__",
    "ACCEPTANCE_MATERIALS", "CPoly", "FiniteDifferenceMaterial", "FluxSet",
    "HessianReport", "InternalMoments", "Material", "MomentSet",
    "MultiplierState", "PolynomialMaterial", "Potentials", "RelEmbedding",
    "ResidualReport", "Scalar14", "SchemaError", "SuiteConfig", "VSet", "XSet",
    "auxiliary_identity_residual", "boost_multipliers", "builtin_materials",
    "compatibility_residual", "compute_V", "compute_X", "embed", "entropy_pair",
    "eval_potentials", "fluxes_G", "galilean_residual_h", "galilean_residual_phi",
    "hamilton_cayley_residual", "hessian_h", "intermediate_roundtrip",
    "lift_fluxes", "lift_moments", "limit_V", "limit_X", "material_from_json",
    "moment_repack_roundtrip", "moments_F", "p_scalars", "q_scalars",
    "rotate_state", "run_suites", "sample_rational_state", "sample_state",
    "scalar_invariants", "scheme_equivalence", "state_from_json", "state_to_json",
    "unlift_fluxes", "unlift_moments",
]
