//! Exact tools for matrix-valued orthogonal polynomials obtained by folding
//! scalar families through residue splitting.

pub mod diffop;
pub mod eigen;
pub mod error;
pub mod exact;
pub mod families;
pub mod recurrence;
pub mod residue;

pub use diffop::{DegreeBounds, MatDiffOp, ScalarDiffOp};
pub use error::{Error, Result};
pub use exact::{int, rat, MatPoly, Poly, RatMatrix, Rational};
pub use families::{Family, FamilyKind, FamilySpec};
pub use residue::{FoldConfig, PolySource, ResidueVector};
