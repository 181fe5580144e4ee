//! Exact intersection theory of Weil divisors on normal surfaces,
//! presented by a resolution of singularities, together with the
//! numerical layer of Bridgeland stability built on top of it: Chern
//! characters, Riemann-Roch, Bogomolov-type discriminant checks,
//! charges, the support form and wall loci.
//!
//! All computations are exact over the rationals.

pub mod chern;
pub mod divisor;
pub mod error;
pub mod grid;
pub mod matrix;
pub mod rat;
pub mod stability;
pub mod surface;

pub use chern::{
    c2_mumford, chern_from_resolution, discriminant, discriminant_difference,
    discriminant_resolution_side, exceptional_part, riemann_roch_chi,
    riemann_roch_via_discriminant, LocalSheafInvariant, MumfordChern, ResolutionSheafData,
};
pub use divisor::{
    canonical_class, hodge_index_check, intersect, is_nef, is_numerically_ample,
    mumford_pullback, pushforward, DivisorClass, Level,
};
pub use error::{Error, Result};
pub use matrix::{Definiteness, RationalMatrix};
pub use rat::{format_rat, int, parse_rat, rat, GaussianRational, Rat};
pub use stability::{
    bogomolov_check, charge, classify_heart, lambda_vector, phase, real_part_identity_check,
    slice_charge, slope, support_constant, support_form, wall_locus, wall_locus_unchecked,
    BogomolovOutcome,
    HeartSide, LambdaVector, MuMin, NumericalObject, Phase, StabilityParams, WallCoefficients,
    WallLocus, WallShape,
};
pub use surface::{
    builtin_surface, ExceptionalComponent, NamedCurve, SingularPoint, SurfaceModel,
    BUILTIN_SURFACES,
};
