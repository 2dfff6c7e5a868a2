//! Exact verification of which teleportation-stable symmetry families admit
//! a quantum realization.
//!
//! Everything is computed over the cyclotomic field `Q(ζ8)` with
//! arbitrary-precision rationals, so identities such as `CHSH = 2√2` are
//! checked with equality rather than tolerance.
//!
//! * [`cyclo`]: the scalar field `Q(ζ8)`.
//! * [`group`]: finite groups as multiplication tables, classes, quotients, homomorphisms.
//! * [`character`]: class functions, character tables, Schur-cover lifting for `D4`.
//! * [`classifier`]: the seven families, the obstruction battery, and verdicts.
//! * [`matrix`] and [`quantum`]: exact qubit linear algebra and the protocol simulators.
//! * [`cli`]: the `repcheck` command-line front end.

pub mod character;
pub mod classifier;
pub mod cli;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod matrix;
pub mod quantum;

pub use character::{CharTable, ClassFunction, ProjectiveClassTag};
pub use classifier::{Family, FamilyName, Verdict};
pub use cyclo::CycloNum;
pub use error::{Error, Result};
pub use group::{BuiltinGroup, GroupHom, GroupTable};
pub use matrix::ExactMatrix;
