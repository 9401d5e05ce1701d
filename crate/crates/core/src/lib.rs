//! Pure gap sets of two-point Weierstrass semigroups.
//!
//! Given the minimal generating set `Γ(P1, P2)` of the semigroup at two
//! rational places, this crate computes the pure gap set `G0(P1, P2)`
//! through the period-based box decomposition, together with its
//! cardinality and bounds. The GK function field and Kummer extensions get
//! closed-form generators and counts, and every route is cross-checked
//! against a brute-force oracle.
//!
//! ```
//! use puregaps::{engine, gk};
//!
//! let gamma = gk::gk_generating_set(2).unwrap();
//! let result = engine::pure_gaps(&gamma).unwrap();
//! assert_eq!(result.cardinality, 35);
//! assert_eq!(gk::gk_card_g0(2).unwrap(), 35);
//! ```

pub mod arith;
pub mod engine;
pub mod error;
pub mod gk;
pub mod kummer;
pub mod lattice;
pub mod oracle;

pub use engine::{BoxComponents, BoxedGamma, Bounds, G4Strategy, PureGapResult};
pub use error::{Error, Result, ValidationError};
pub use gk::GkParams;
pub use kummer::KummerParams;
pub use lattice::{glb, incomparable, lub, validate_generating_set, GeneratingSet, LatticePoint, TranslationVector};
