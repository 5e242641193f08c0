//! Exact computations in truncated free associative and free Lie algebras:
//! Lyndon bases, exp/log and BCH, commutator collection into Lyndon
//! products, mixed Lie/group terms, and finite-dimensional nilpotent models.

pub mod collection;
pub mod error;
pub mod format;
pub mod group;
pub mod lie;
pub mod lyndon;
pub mod models;
pub mod random;
pub mod scalar;
pub mod series;
pub mod terms;
pub mod verify;
pub mod word;

pub use collection::{collect, expand, MlsDecomposition};
pub use error::{Error, Result};
pub use group::{bch, bch_many, exp, log, ExpGroup, GroupElement, TruncatedGroup};
pub use lie::{series_to_lie, LieElement};
pub use lyndon::{bracketing, enumerate_lyndon, is_lyndon, standard_factorization, BracketedWord};
pub use models::{ModelVector, SCLieAlgebra};
pub use scalar::{Rational, Scalar, UniPoly};
pub use series::{TruncatedSeries, Valuation};
pub use terms::{term_to_lie, GroupWord, MixedTerm};
pub use word::Word;
