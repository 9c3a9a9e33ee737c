//! Finite-type cluster X-seed patterns with exact arithmetic.
//!
//! * [`semifield`]: polynomials, reduced rational functions, tropical monomials.
//! * [`seedcore`]: exchange matrices, seeds, mutation, canonical seed keys.
//! * [`explorer`]: exchange-graph enumeration and X-variable census.
//! * [`surfaces`]: tagged triangulations of the four marked polygon families.
//! * [`geometric`]: Plücker-coordinate realizations and distinctness checks.

pub mod explorer;
pub mod geometric;
pub mod seedcore;
pub mod semifield;
pub mod surfaces;
