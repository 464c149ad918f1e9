//! Exact rational polynomial arithmetic.

pub mod expvec;
pub mod intpoly;
pub mod mvpoly;
pub mod parse;
pub mod rational;
pub mod uvpoly;

pub use expvec::ExpVec;
pub use mvpoly::{MvPoly, Norms, PolyError};
pub use parse::{default_names, parse_poly, parse_poly_auto, to_text};
pub use rational::Rational;
pub use uvpoly::UvPoly;
