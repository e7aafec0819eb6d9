//! Exact arithmetic: rationals, polynomials, matrices and matrix polynomials.

pub mod linalg;
pub mod matpoly;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use matpoly::MatPoly;
pub use matrix::{is_positive_definite, RatMatrix};
pub use poly::Poly;
pub use rational::{int, rat, Rational};
