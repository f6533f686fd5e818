//! Complete simple games: representation by characteristic invariants,
//! voter roles, duality and role-class bijections, isomorph-free enumeration
//! and exact counting formulas.

pub mod enumeration;
pub mod error;
pub mod formulas;
pub mod game;
pub mod invariants;
pub mod json;
pub mod oracle;
pub mod profile;
pub mod roles;
pub mod transforms;
pub mod verify;

pub use enumeration::{count, count_by_rows, enumerate, EnumSpec};
pub use error::{Error, Result};
pub use formulas::{fib, golden_ratio_gap, FormulaFamily};
pub use game::{Coalition, SimpleGame, TypePartition, WeightedRepresentation};
pub use invariants::Invariants;
pub use profile::{DeltaOrder, Profile};
pub use roles::{Role, RoleReport, RoleSet};
pub use transforms::{apply_bijection, apply_inverse, dual, dual_inv, BijectionId};
