//! Rational generating functions for weighted LEGO towers.
//!
//! A tower is a sequence of floors, one piece per floor. Each floor carries
//! a color and a vector of side lengths; a floor of color `i` and lengths
//! `a` costs `t^{L_i(a)}`, and each pair of adjacent floors contributes the
//! placement count `p_{i,j}(a, b)`. [`engine::solve`] turns that data into
//! the exact generating function `f(t)` by eliminating the catalytic
//! variable `z` of the first floor; [`oracle`] enumerates the same objects
//! by brute force so every derived function can be checked.

pub mod algebra;
pub mod cli;
pub mod engine;
pub mod oracle;
pub mod parser;
