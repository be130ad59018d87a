//! Exact computation of derivations, inner derivations, centers and first
//! Hochschild cohomology of twisted group rings F_q^alpha G.
//!
//! ```
//! use std::sync::Arc;
//! use twder::{Cocycle, DihedralSign, FieldCtx, Group, TwistedRing};
//!
//! let g = Arc::new(Group::dihedral(3).unwrap());
//! let f = Arc::new(FieldCtx::new(3, 2, None).unwrap());
//! let alpha = Cocycle::dihedral(DihedralSign::Alpha3, &g, &f).unwrap().cocycle;
//! let ring = TwistedRing::new(&alpha);
//! let h = twder::derivation::hh1(&ring).unwrap();
//! assert_eq!((h.der, h.inn, h.dim), (4, 3, 1));
//! ```

pub mod cocycle;
pub mod derivation;
pub mod ff;
pub mod group;
pub mod linalg;
pub mod report;
pub mod ring;

pub use cocycle::{Cocycle, CocycleError, CocycleSpec, DihedralSign, OneChain};
pub use derivation::{Derivation, DerivationError, Extension, GeneratorMap};
pub use ff::{FieldCtx, FieldElem, FieldError, FieldSpec};
pub use group::{Group, GroupError, GroupSpec, Letter, Word};
pub use linalg::{LinalgError, Matrix, RowSpace};
pub use report::{Report, ReportOptions, Setup};
pub use ring::{RingElem, RingError, TwistedRing};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}
