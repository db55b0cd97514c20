//! Zeta functions of curves over finite fields from exhaustive point counts,
//! with exact checks of their harmonic-analysis identities: the functional
//! equation, Poisson summation as a residue identity on the dual torus, the
//! Tate–Iwasawa decomposition and the explicit formula. A small number-field
//! companion covers imaginary quadratic class numbers, theta series and the
//! completed Riemann zeta function.

pub mod curve;
pub mod explicit;
pub mod field;
pub mod graded;
pub mod number_field;
pub mod par;
pub mod poly;
pub mod roots;
pub mod sample;
pub mod cli;
pub mod scalar;
pub mod torus;
pub mod zeta;
