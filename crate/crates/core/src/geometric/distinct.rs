//! Pairwise separation of the `x̂` expressions by exact evaluation.
//!
//! Two expressions are separated at a point when exactly one of them is zero
//! or undefined there, or when both are defined and differ. Structured points
//! come first, then small random integer matrices from a seeded generator.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::census::xhat_census;
use super::{columns_for, eval_symbol, GeometricError, PluckerSymbol, PointConfig, XhatExpression};
use crate::seedcore::DynkinType;

/// Witnesses kept in a report; the rest are only counted.
pub const WITNESS_LIMIT: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pair: [String; 2],
    /// Index into [`DistinctnessReport::points`].
    pub point: usize,
    pub values: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctnessReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub expressions: usize,
    pub pairs_total: usize,
    pub separated: usize,
    /// `x̂` is a function of the quadrilateral with diagonal.
    pub single_valued: bool,
    /// Evaluated `x̂` agrees with X-mutation along every flip.
    pub mutation_consistent: bool,
    pub points: Vec<String>,
    pub witnesses: Vec<Witness>,
    pub witnesses_omitted: usize,
    /// Pairs no tried point separates.
    pub unseparated: Vec<[String; 2]>,
    pub counterexamples: Vec<String>,
}

impl DistinctnessReport {
    pub fn passed(&self) -> bool {
        self.single_valued && self.mutation_consistent && self.separated == self.pairs_total
    }
}

/// Column patterns built from vectors that make several coordinates vanish or coincide.
pub fn structured_configs(columns: usize) -> Vec<PointConfig> {
    const POOL: [(i64, i64); 8] = [(1, 0), (0, 1), (1, 1), (-1, 1), (-2, 1), (1, -1), (2, 1), (1, 2)];
    let mut out = Vec::new();
    for stride in [1usize, 3] {
        for shift in 0..POOL.len() {
            let cols: Vec<(i64, i64)> = (0..columns).map(|c| POOL[(stride * c + shift) % POOL.len()]).collect();
            out.push(PointConfig::from_ints(&cols));
            // last column pushed onto the eigenvectors and onto the first column
            for last in [(1, 1), (0, -1), cols[0]] {
                let mut v = cols.clone();
                *v.last_mut().expect("nonempty") = last;
                out.push(PointConfig::from_ints(&v));
            }
        }
    }
    let mut seen = BTreeSet::new();
    out.retain(|p| seen.insert(p.describe()));
    out
}

fn random_config(rng: &mut ChaCha8Rng, columns: usize) -> PointConfig {
    let cols: Vec<(i64, i64)> = (0..columns).map(|_| (rng.gen_range(-5..=5), rng.gen_range(-5..=5))).collect();
    PointConfig::from_ints(&cols)
}

fn eval_cached(e: &XhatExpression, cache: &HashMap<PluckerSymbol, BigRational>) -> Option<BigRational> {
    let mut num = BigRational::from_integer(1.into());
    let mut den = num.clone();
    for (s, &k) in &e.factors {
        let p = num_traits::pow(cache[s].clone(), k.unsigned_abs() as usize);
        if k > 0 {
            num *= p;
        } else {
            den *= p;
        }
    }
    (den != BigRational::from_integer(0.into())).then(|| num / den)
}

fn show(v: &Option<BigRational>) -> String {
    v.as_ref().map_or_else(|| "undefined".to_string(), |x| x.to_string())
}

/// Checks that the `x̂` of distinct quadrilaterals with diagonal are distinct
/// functions, trying the structured points and then `trials` random ones.
pub fn verify_distinctness(
    t: DynkinType,
    trials: usize,
    rng_seed: u64,
    limit: usize,
) -> Result<DistinctnessReport, GeometricError> {
    let census = xhat_census(t, limit)?;
    let columns = columns_for(t)?;
    let keys: Vec<String> = census.formulas.keys().map(|q| format!("{} / {}", q.key(), q.diagonal_key())).collect();
    let exprs: Vec<&XhatExpression> = census.formulas.values().collect();
    let symbols: BTreeSet<PluckerSymbol> = exprs.iter().flat_map(|e| e.factors.keys().copied()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut points: Vec<PointConfig> = structured_configs(columns);
    points.extend((0..trials).map(|_| random_config(&mut rng, columns)));

    let mut open: Vec<(usize, usize)> =
        (0..exprs.len()).flat_map(|i| (i + 1..exprs.len()).map(move |j| (i, j))).collect();
    let pairs_total = open.len();
    let mut witnesses = Vec::new();
    let mut witnesses_omitted = 0;
    let mut used = Vec::new();
    for z in &points {
        if open.is_empty() {
            break;
        }
        let cache: HashMap<PluckerSymbol, BigRational> =
            symbols.iter().map(|s| Ok((*s, eval_symbol(s, z)?))).collect::<Result<_, GeometricError>>()?;
        let vals: Vec<Option<BigRational>> = exprs.iter().map(|e| eval_cached(e, &cache)).collect();
        let zero = BigRational::from_integer(0.into());
        let degenerate = |v: &Option<BigRational>| v.as_ref().map_or(true, |x| *x == zero);
        let before = open.len();
        open.retain(|&(i, j)| {
            let (a, b) = (&vals[i], &vals[j]);
            let sep = if degenerate(a) || degenerate(b) { degenerate(a) != degenerate(b) } else { a != b };
            if sep {
                if witnesses.len() < WITNESS_LIMIT {
                    witnesses.push(Witness {
                        pair: [keys[i].clone(), keys[j].clone()],
                        point: used.len(),
                        values: [show(a), show(b)],
                    });
                } else {
                    witnesses_omitted += 1;
                }
            }
            !sep
        });
        if open.len() < before {
            used.push(z.describe());
        }
    }

    let generic = random_config(&mut ChaCha8Rng::seed_from_u64(rng_seed ^ 0x9e37_79b9), columns);
    let mut counterexamples = census.counterexamples.clone();
    let bad = census.check_mutation(&generic)?;
    let mutation_consistent = bad.is_empty();
    counterexamples.extend(bad.into_iter().take(20));

    Ok(DistinctnessReport {
        type_label: t.to_string(),
        rank: t.rank,
        expressions: exprs.len(),
        pairs_total,
        separated: pairs_total - open.len(),
        single_valued: census.single_valued && census.frozen_consistent,
        mutation_consistent,
        points: used,
        witnesses,
        witnesses_omitted,
        unseparated: open.iter().map(|&(i, j)| [keys[i].clone(), keys[j].clone()]).collect(),
        counterexamples,
    })
}
