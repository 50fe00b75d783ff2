//! Exact computation of Bredon (co)homology for finite groups over orbit
//! categories of subgroup families.
//!
//! The pipeline: finite permutation groups and their subgroup families
//! ([`group`], [`family`]); the orbit category with morphisms as fixed
//! cosets ([`orbit`]); Bredon modules as integer-matrix functors
//! ([`module`]); functor calculus — tensor products, morphism groups,
//! restriction/induction/coinduction ([`functor`]); free resolutions of the
//! trivial module ([`resolution`]); exact integer linear algebra and
//! homology ([`matrix`], [`sparse`], [`complex`], [`abgroup`], [`homology`]);
//! and cell-level models of classifying-space quotients ([`gcw`]).

pub mod abgroup;
pub mod checks;
pub mod complex;
pub mod error;
pub mod family;
pub mod functor;
pub mod gcw;
pub mod group;
pub mod homology;
pub mod matrix;
pub mod module;
pub mod orbit;
pub mod perm;
pub mod random;
pub mod resolution;
pub mod sparse;
