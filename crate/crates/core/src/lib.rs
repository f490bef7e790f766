//! Idempotent measures on finite spaces.
//!
//! Max-plus and max-times densities with their monad structure, the
//! exponential correspondence between the two, capacities with the max-plus
//! integral, and max-plus convexity in `ℝⁿ`. Every law the library relies on
//! has an executable check, and [`laws`] runs them as seeded random batteries.
//!
//! ```
//! use idemkit::{dirac, multiply, FiniteSpace, MetaDensity};
//!
//! let space = FiniteSpace::new(["a", "b"]).unwrap();
//! let a = dirac("a", &space).unwrap();
//! let flat = multiply(&MetaDensity::single(a.clone()));
//! assert_eq!(flat, a);
//! ```

pub mod capacity;
pub mod convex;
pub mod doc;
pub mod error;
pub mod iso;
pub mod laws;
pub mod measure;
pub mod random;
pub mod score;
pub mod space;

pub use capacity::{
    capacity_from_profile, check_characterization, check_repr, maxplus_integral, possibility_integral,
    possibility_mult, recover_capacity, Capacity, MetaPossibility, PossibilityProfile,
};
pub use convex::{
    barycenter, check_algebra, check_convexity_equivalence, combine, hull_member, GeneratorSet, TropicalPoint,
    WeightVector,
};
pub use error::{Error, Result};
pub use iso::{check_l_morphism, check_s_morphism, density_exp, density_log, meta_exp, meta_log};
pub use measure::{
    check_associativity, check_associativity_times, check_unit_laws, check_unit_laws_times, density_from_functional,
    dirac, dirac_times, eval_measure, eval_measure_times, measure_multiplication, multiply, multiply_times,
    pushforward, pushforward_times, Density, MaxPlusDensity, MaxTimesDensity, MetaDensity, MetaTimesDensity, Support,
    ThirdLevel, ThirdTimesLevel,
};
pub use score::{exp_bridge, log_bridge, oplus, otimes, ExtendedScore, Semiring, UnitScore};
pub use space::{comonotone, level_set, FiniteSpace, PointMap, RealFunction, SubsetMask, UnitFunction};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scores.md")]
    mod scores {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/densities.md")]
    mod densities {}
    #[doc = include_str!("../../../book/src/monads.md")]
    mod monads {}
    #[doc = include_str!("../../../book/src/exponential.md")]
    mod exponential {}
    #[doc = include_str!("../../../book/src/capacities.md")]
    mod capacities {}
    #[doc = include_str!("../../../book/src/convexity.md")]
    mod convexity {}
    #[doc = include_str!("../../../book/src/laws.md")]
    mod laws {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
