//! Exact spectral ratios of dilatation polynomials and integer matrices.

pub mod exact;
pub mod intmat;
pub mod factorz;
pub mod rootfind;
pub mod seed;
pub mod families;
pub mod spectral;
pub mod dynamics;
