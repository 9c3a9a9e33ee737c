//! Plücker-coordinate realizations of the classical patterns and exact
//! distinctness checks for their X-variables.
//!
//! Every arc and boundary segment gets a (possibly modified) Plücker
//! coordinate in the columns of a 2×N matrix; `x̂` of an arc is the product of
//! those coordinates over its neighbors in the extended quiver, with exponent
//! the signed arrow count into the arc.

pub mod cases;
pub mod census;
pub mod distinct;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use cases::case_candidates;
pub use census::{xhat_census, TriangulationHats, XhatCensus};
pub use distinct::{structured_configs, verify_distinctness, DistinctnessReport, Witness};

use crate::seedcore::{DynkinFamily, DynkinType};
use crate::surfaces::{SurfaceError, Tag, TaggedArc, Winding};

#[derive(Debug, thiserror::Error)]
pub enum GeometricError {
    #[error("column {index} out of range for {columns} columns")]
    Index { index: usize, columns: usize },
    #[error("type {0} has no Plücker realization")]
    Type(String),
    #[error("inconsistent realization: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Which eigenvector of the type D matrix `A` a radius pairs with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Eigen {
    A,
    ABowtie,
}

/// Column indices are one-based, as vertex labels are.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "symbol", rename_all = "snake_case")]
pub enum PluckerSymbol {
    /// `det(v_i, v_j)`.
    Plain { i: usize, j: usize },
    /// `P_{i,N} P_{j,N} − P_{ij}` with `N` the last column.
    ModifiedB { i: usize, j: usize },
    /// `det(v_j, M v_i)` with `M` the quarter turn: `v_i · v_j`.
    ModifiedC { i: usize, j: usize },
    /// `det(v_j, A v_i)`.
    ModifiedD { i: usize, j: usize },
    /// `det(v_i, a)` or `det(v_i, a⋈)`.
    RadialD { i: usize, eigen: Eigen },
    /// The eigenvalue of `A` on `a` (`λ = 1`) or on `a⋈` (`λ̄ = 2`).
    Eigen { bar: bool },
}

impl fmt::Display for PluckerSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PluckerSymbol::Plain { i, j } => write!(f, "P{i},{j}"),
            PluckerSymbol::ModifiedB { i, j }
            | PluckerSymbol::ModifiedC { i, j }
            | PluckerSymbol::ModifiedD { i, j } => {
                write!(f, "P{i},{j}bar")
            }
            PluckerSymbol::RadialD { i, eigen: Eigen::A } => write!(f, "P{i},a"),
            PluckerSymbol::RadialD { i, eigen: Eigen::ABowtie } => write!(f, "P{i},a*"),
            PluckerSymbol::Eigen { bar: false } => write!(f, "lambda"),
            PluckerSymbol::Eigen { bar: true } => write!(f, "lambdabar"),
        }
    }
}

/// A 2×N matrix of exact rationals, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointConfig {
    pub columns: Vec<[BigRational; 2]>,
}

impl PointConfig {
    pub fn from_ints(cols: &[(i64, i64)]) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        PointConfig { columns: cols.iter().map(|&(a, b)| [r(a), r(b)]).collect() }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    fn col(&self, i: usize) -> Result<&[BigRational; 2], GeometricError> {
        if i == 0 || i > self.columns.len() {
            return Err(GeometricError::Index { index: i, columns: self.columns.len() });
        }
        Ok(&self.columns[i - 1])
    }

    /// Compact text form `(a,b) (c,d) …`.
    pub fn describe(&self) -> String {
        self.columns.iter().map(|c| format!("({},{})", c[0], c[1])).collect::<Vec<_>>().join(" ")
    }
}

fn det(u: &[BigRational; 2], v: &[BigRational; 2]) -> BigRational {
    &u[0] * &v[1] - &u[1] * &v[0]
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `A = [[1, 0], [−1, 2]]` applied to `v`.
fn apply_a(v: &[BigRational; 2]) -> [BigRational; 2] {
    [v[0].clone(), &v[1] * int(2) - &v[0]]
}

pub fn eval_symbol(s: &PluckerSymbol, z: &PointConfig) -> Result<BigRational, GeometricError> {
    Ok(match *s {
        PluckerSymbol::Plain { i, j } => det(z.col(i)?, z.col(j)?),
        PluckerSymbol::ModifiedB { i, j } => {
            let last = z.len();
            let pn = |k: usize| -> Result<BigRational, GeometricError> { Ok(det(z.col(k)?, z.col(last)?)) };
            pn(i)? * pn(j)? - det(z.col(i)?, z.col(j)?)
        }
        PluckerSymbol::ModifiedC { i, j } => {
            let (u, v) = (z.col(i)?, z.col(j)?);
            &u[0] * &v[0] + &u[1] * &v[1]
        }
        PluckerSymbol::ModifiedD { i, j } => det(z.col(j)?, &apply_a(z.col(i)?)),
        PluckerSymbol::RadialD { i, eigen } => {
            let e = match eigen {
                Eigen::A => [int(1), int(1)],
                Eigen::ABowtie => [int(0), int(-1)],
            };
            det(z.col(i)?, &e)
        }
        PluckerSymbol::Eigen { bar } => int(if bar { 2 } else { 1 }),
    })
}

/// A Laurent monomial in Plücker symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct XhatExpression {
    pub factors: BTreeMap<PluckerSymbol, i64>,
}

impl XhatExpression {
    pub fn from_pairs(pairs: &[(PluckerSymbol, i64)]) -> Self {
        let mut e = XhatExpression::default();
        for &(s, k) in pairs {
            e.mul_symbol(s, k);
        }
        e
    }

    pub fn mul_symbol(&mut self, s: PluckerSymbol, k: i64) {
        if k == 0 {
            return;
        }
        let slot = self.factors.entry(s).or_insert(0);
        *slot += k;
        if *slot == 0 {
            self.factors.remove(&s);
        }
    }

    pub fn inverse(&self) -> Self {
        XhatExpression { factors: self.factors.iter().map(|(s, k)| (*s, -k)).collect() }
    }

    /// Drops the eigenvalue factors.
    pub fn without_eigen(&self) -> Self {
        XhatExpression {
            factors: self
                .factors
                .iter()
                .filter(|(s, _)| !matches!(s, PluckerSymbol::Eigen { .. }))
                .map(|(s, k)| (*s, *k))
                .collect(),
        }
    }

    /// `None` when a denominator factor vanishes.
    pub fn eval(&self, z: &PointConfig) -> Result<Option<BigRational>, GeometricError> {
        let mut num = BigRational::one();
        let mut den = BigRational::one();
        for (s, &k) in &self.factors {
            let v = eval_symbol(s, z)?;
            let p = num_traits::pow(v, k.unsigned_abs() as usize);
            if k > 0 {
                num *= p;
            } else {
                den *= p;
            }
        }
        if den.is_zero() {
            return Ok(None);
        }
        Ok(Some(num / den))
    }
}

impl fmt::Display for XhatExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |sign: i64| {
            let v: Vec<String> = self
                .factors
                .iter()
                .filter(|(_, k)| k.signum() == sign)
                .map(|(s, k)| if k.abs() == 1 { s.to_string() } else { format!("{s}^{}", k.abs()) })
                .collect();
            if v.is_empty() {
                "1".to_string()
            } else {
                v.join("*")
            }
        };
        write!(f, "{} / {}", part(1), part(-1))
    }
}

/// Number of matrix columns for a classical type.
pub fn columns_for(t: DynkinType) -> Result<usize, GeometricError> {
    let n = t.rank;
    Ok(match t.family {
        DynkinFamily::A => n + 3,
        DynkinFamily::B => n + 2,
        DynkinFamily::C => n + 1,
        DynkinFamily::D => n,
        _ => return Err(GeometricError::Type(t.to_string())),
    })
}

/// The coordinate `P_γ` attached to an arc or boundary segment of the type's polygon.
pub fn side_symbol(t: DynkinType, arc: &TaggedArc) -> Result<PluckerSymbol, GeometricError> {
    let n = t.rank;
    let chord_or_segment = |m: usize| -> Option<(usize, usize, bool)> {
        match *arc {
            TaggedArc::Chord { i, j, winding } => Some((i, j, winding == Winding::Around)),
            TaggedArc::BoundarySegment { i } if i == m => Some((1, m, true)),
            TaggedArc::BoundarySegment { i } => Some((i, i + 1, false)),
            TaggedArc::Radius { .. } => None,
        }
    };
    let bad = || GeometricError::Inconsistent(format!("{arc} has no coordinate in type {t}"));
    Ok(match t.family {
        DynkinFamily::A => match chord_or_segment(n + 3).ok_or_else(bad)? {
            (i, j, _) => PluckerSymbol::Plain { i: i.min(j), j: i.max(j) },
        },
        DynkinFamily::B => match *arc {
            TaggedArc::Radius { i, .. } => PluckerSymbol::Plain { i, j: n + 2 },
            _ => match chord_or_segment(n + 1).ok_or_else(bad)? {
                (i, j, false) => PluckerSymbol::Plain { i, j },
                (i, j, true) => PluckerSymbol::ModifiedB { i, j },
            },
        },
        DynkinFamily::D => match *arc {
            TaggedArc::Radius { i, tag: Tag::Plain } => PluckerSymbol::RadialD { i, eigen: Eigen::A },
            TaggedArc::Radius { i, tag: Tag::Notched } => PluckerSymbol::RadialD { i, eigen: Eigen::ABowtie },
            _ => match chord_or_segment(n).ok_or_else(bad)? {
                (i, j, false) => PluckerSymbol::Plain { i, j },
                (i, j, true) => PluckerSymbol::ModifiedD { i, j },
            },
        },
        DynkinFamily::C => {
            let h = n + 1;
            let m = 2 * h;
            let (a, b) = match *arc {
                TaggedArc::Chord { i, j, .. } => (i, j),
                TaggedArc::BoundarySegment { i } => (i, i % m + 1),
                TaggedArc::Radius { .. } => return Err(bad()),
            };
            let rot = |v: usize| (v - 1 + h) % m + 1;
            for (x, y) in [(a, b), (rot(a), rot(b))] {
                let (x, y) = (x.min(y), x.max(y));
                if y <= h {
                    return Ok(PluckerSymbol::Plain { i: x, j: y });
                }
                if x <= h && x <= y - h {
                    return Ok(PluckerSymbol::ModifiedC { i: x, j: y - h });
                }
            }
            return Err(bad());
        }
        _ => return Err(GeometricError::Type(t.to_string())),
    })
}
