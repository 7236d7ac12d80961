//! Exact arithmetic: rationals, quadratic fields, real algebraic numbers,
//! polynomials, determinants and root counting.

pub mod algebraic;
pub mod interval;
pub mod macaulay;
pub mod matrix;
pub mod mpoly;
pub mod number;
pub mod poly;
pub mod quadext;
pub mod radical;
pub mod rational;
pub mod resultant;
pub mod ring;
pub mod sturm;

pub use algebraic::{AlgElem, AlgebraicReal, Enclose};
pub use interval::Interval;
pub use matrix::Matrix;
pub use mpoly::MPoly;
pub use number::Number;
pub use poly::{qpoly, UniPoly};
pub use quadext::QuadExt;
pub use radical::RadicalExt;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use ring::{ExactDiv, Field, Ring, Sign, Signed};
pub use sturm::SturmSeq;
