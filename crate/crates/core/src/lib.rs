//! Three-secret sharing over finite domains: exact scheme verification,
//! information-theoretic randomness lower bounds, and combinatorial
//! certification of those bounds.

pub mod bits;
pub mod domain;
pub mod info;
pub mod scheme;
pub mod bound;
pub mod certify;
