//! Exact semifield arithmetic: reduced rational functions (the universal semifield),
//! Laurent monomials under min-plus (tropical semifields) and the one-element semifield.

pub mod factored;
pub mod gcd;
pub mod modular;
pub mod poly;
pub mod ratfunc;
pub mod tropical;
pub mod value;

pub use factored::{FactorBasis, FactorReduction, Factored, FactoredField};
pub use gcd::{poly_gcd, poly_lcm};
pub use poly::Polynomial;
pub use ratfunc::{rf_canonicalize, RationalFunction};
pub use tropical::LaurentMonomial;
pub use value::{sf_inv, sf_mul, sf_oplus, sf_pow, Exact, Semifield, SemifieldKind, SemifieldValue};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemifieldError {
    #[error("dimension mismatch: expected {expected} indeterminates, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine {left} and {right} semifield values")]
    Variant { left: &'static str, right: &'static str },
    #[error("malformed integer coefficient {0:?}")]
    Parse(String),
}

/// Applies `poly_arith` in the `add`/`mul` form used by the command-line surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: PolyOp) -> Result<Polynomial, SemifieldError> {
    match op {
        PolyOp::Add => a.try_add(b),
        PolyOp::Mul => a.try_mul(b),
    }
}
