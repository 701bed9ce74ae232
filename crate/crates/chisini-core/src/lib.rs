//! Exact toolkit for branch curves of finite covers of the plane:
//! plane-curve-germ invariants, local cover models, monodromy enumeration,
//! virtual Plücker formulas and cover-uniqueness verdicts.
//!
//! Everything is computed over the rationals (or towers of algebraic
//! extensions of them); no floating point anywhere.

pub mod alg;
pub mod dual;
pub mod germ;
pub mod model;
pub mod mono;
pub mod passport;
pub mod perm;
pub mod poly;
pub mod rat;

pub use germ::{CurveGerm, GermInvariants, PuiseuxBranch, TypeTag};
pub use model::{ModelCover, ModelReport};
pub use passport::{CurveNumerics, Passport, Verdict, VerdictStatus};
pub use perm::{CyclicalType, Permutation};
pub use poly::MultiPoly;
pub use rat::BigRat;
