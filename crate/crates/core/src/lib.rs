//! Exact Riordan-array algebra, Boubaker/Chebyshev/Fermat polynomial
//! families, a bounded-range identity certifier, and the Boubaker
//! polynomial expansion scheme.

pub mod polycore;
pub mod riordan;
pub mod families;
pub mod identities;
pub mod bpes;
