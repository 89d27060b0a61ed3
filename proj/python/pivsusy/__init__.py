"""Painleve IV solutions from k-th order complex transformations of the
harmonic oscillator, with numerical certification of every generated object."""

from ._core import (
    DegenerateGError,
    DegenerateLevelError,
    PoleError,
    RangeError,
    SeedSpec,
    SingularPointError,
    __version__,
    abe_params,
    extremal_state,
    family_params,
    gamma,
    kummer_1f1,
    kummer_1f1_jet,
    mapped_eigenfunction,
    new_level_eigenfunction,
    nu_to_lambda,
    parameter_space_scan,
    partner_potential,
    seed_u,
    singularity_scan,
    solve,
    spectrum,
)

__all__ = [
    "DegenerateGError",
    "DegenerateLevelError",
    "PoleError",
    "RangeError",
    "SeedSpec",
    "SingularPointError",
    "__version__",
    "abe_params",
    "extremal_state",
    "family_params",
    "gamma",
    "kummer_1f1",
    "kummer_1f1_jet",
    "mapped_eigenfunction",
    "new_level_eigenfunction",
    "nu_to_lambda",
    "parameter_space_scan",
    "partner_potential",
    "seed_u",
    "singularity_scan",
    "solve",
    "spectrum",
]
