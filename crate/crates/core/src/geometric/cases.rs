//! Closed-form `x̂` candidates by quadrilateral shape.
//!
//! Given the vertices of one unfolded quadrilateral, returns every expression
//! (and its inverse) that a quadrilateral of that shape can carry. The quiver
//! recipe in [`super::census`] must land in this list; the two routes are
//! independent.

use super::{Eigen, GeometricError, PluckerSymbol, XhatExpression};
use crate::seedcore::{DynkinFamily, DynkinType};

use PluckerSymbol::{Eigen as Ev, Plain};

fn p(i: usize, j: usize) -> PluckerSymbol {
    Plain { i: i.min(j), j: i.max(j) }
}

fn ratio(num: &[PluckerSymbol], den: &[PluckerSymbol]) -> XhatExpression {
    let mut e = XhatExpression::default();
    for &s in num {
        e.mul_symbol(s, 1);
    }
    for &s in den {
        e.mul_symbol(s, -1);
    }
    e
}

fn with_inverses(v: Vec<XhatExpression>) -> Vec<XhatExpression> {
    let mut out: Vec<XhatExpression> = v.iter().flat_map(|e| [e.clone(), e.inverse()]).collect();
    out.sort();
    out.dedup();
    out
}

/// Four-vertex shapes shared by the punctured kinds; `bar` builds `P_{i j̄}`.
fn punctured_four(v: &[usize], bar: impl Fn(usize, usize) -> PluckerSymbol) -> Vec<XhatExpression> {
    let [i, j, k, l] = [v[0], v[1], v[2], v[3]];
    vec![
        ratio(&[p(i, l), p(j, k)], &[p(i, j), p(k, l)]),
        ratio(&[bar(i, l), bar(j, k)], &[p(i, j), p(k, l)]),
        ratio(&[bar(i, l), p(j, k)], &[bar(i, j), p(k, l)]),
        ratio(&[bar(i, l), p(j, k)], &[p(i, j), bar(k, l)]),
    ]
}

/// Candidates for a quadrilateral with the given (unfolded) vertices.
///
/// Type D candidates for three or four vertices come without their eigenvalue
/// monomial; compare them with [`XhatExpression::without_eigen`].
pub fn case_candidates(t: DynkinType, vertices: &[usize]) -> Result<Vec<XhatExpression>, GeometricError> {
    let n = t.rank;
    let mut v = vertices.to_vec();
    v.sort_unstable();
    v.dedup();
    let unclassified = || GeometricError::Inconsistent(format!("no {t} shape on vertices {v:?}"));
    let out = match (t.family, v.len()) {
        (DynkinFamily::A, 4) => vec![ratio(&[p(v[0], v[3]), p(v[1], v[2])], &[p(v[0], v[1]), p(v[2], v[3])])],
        (DynkinFamily::B, _) => {
            let bar = |i: usize, j: usize| PluckerSymbol::ModifiedB { i, j };
            let r = |i: usize| p(i, n + 2);
            match v.len() {
                4 => punctured_four(&v, bar),
                3 => {
                    let [i, j, k] = [v[0], v[1], v[2]];
                    vec![
                        ratio(&[p(i, j), r(k), r(k)], &[bar(i, k), p(j, k)]),
                        ratio(&[bar(i, k), r(j), r(j)], &[p(i, j), p(j, k)]),
                        ratio(&[p(j, k), r(i), r(i)], &[bar(i, k), p(i, j)]),
                    ]
                }
                // unsquared: the radius orbit counts once in the exchange relation
                2 => vec![ratio(&[p(v[0], v[1])], &[bar(v[0], v[1])])],
                _ => return Err(unclassified()),
            }
        }
        (DynkinFamily::D, _) => {
            let bar = |i: usize, j: usize| PluckerSymbol::ModifiedD { i, j };
            let ra = |i: usize| PluckerSymbol::RadialD { i, eigen: Eigen::A };
            let rb = |i: usize| PluckerSymbol::RadialD { i, eigen: Eigen::ABowtie };
            match v.len() {
                4 => punctured_four(&v, bar),
                3 => {
                    let [i, j, k] = [v[0], v[1], v[2]];
                    let mut out = Vec::new();
                    for r in [ra, rb] {
                        out.push(ratio(&[p(i, j), r(k)], &[r(i), p(j, k)]));
                        out.push(ratio(&[p(j, k), r(i)], &[bar(i, k), r(j)]));
                        out.push(ratio(&[bar(i, k), r(j)], &[p(i, j), r(k)]));
                    }
                    out.push(ratio(&[p(i, j), ra(k), rb(k)], &[bar(i, k), p(j, k)]));
                    out.push(ratio(&[bar(i, k), ra(j), rb(j)], &[p(i, j), p(j, k)]));
                    out.push(ratio(&[p(j, k), ra(i), rb(i)], &[bar(i, k), p(i, j)]));
                    out
                }
                2 => {
                    let (i, j) = (v[0], v[1]);
                    vec![
                        ratio(&[Ev { bar: true }, p(i, j)], &[bar(i, j)]),
                        ratio(&[Ev { bar: false }, p(i, j)], &[bar(i, j)]),
                    ]
                }
                _ => return Err(unclassified()),
            }
        }
        (DynkinFamily::C, _) => {
            let h = n + 1;
            let rot = |x: usize| (x - 1 + h) % (2 * h) + 1;
            let mut out = Vec::new();
            let other: Vec<usize> = {
                let mut w: Vec<usize> = v.iter().map(|&x| rot(x)).collect();
                w.sort_unstable();
                w
            };
            for member in [&v, &other] {
                out.extend(c_shape(member, h));
            }
            if out.is_empty() {
                return Err(unclassified());
            }
            out
        }
        _ => return Err(unclassified()),
    };
    Ok(with_inverses(out))
}

/// One unfolded member of a type C quadrilateral, listed from its smallest vertex.
fn c_shape(v: &[usize], h: usize) -> Vec<XhatExpression> {
    let bar = |i: usize, j: usize| PluckerSymbol::ModifiedC { i: i.min(j), j: i.max(j) };
    let lo: Vec<usize> = v.iter().copied().filter(|&x| x <= h).collect();
    let hi: Vec<usize> = v.iter().copied().filter(|&x| x > h).map(|x| x - h).collect();
    if v.len() != 4 {
        return Vec::new();
    }
    if lo.len() == 2 && lo == hi {
        let (i, j) = (lo[0], lo[1]);
        return vec![ratio(&[p(i, j), p(i, j)], &[bar(i, j), bar(i, j)])];
    }
    match (lo.as_slice(), hi.as_slice()) {
        (&[i, j, k, l], &[]) => vec![ratio(&[p(i, l), p(j, k)], &[p(i, j), p(k, l)])],
        (&[i, j, k], &[l]) if l > k => vec![ratio(&[bar(i, l), p(j, k)], &[p(i, j), bar(k, l)])],
        (&[i, j, k], &[l]) if l == i => vec![ratio(&[bar(i, i), p(j, k)], &[p(i, j), bar(i, k)])],
        (&[i, j, k], &[l]) if l == k => vec![ratio(&[bar(i, k), p(j, k)], &[p(i, j), bar(k, k)])],
        (&[i], &[j, k, l]) if i < j => vec![ratio(&[bar(i, l), p(j, k)], &[bar(i, j), p(k, l)])],
        (&[i, j], &[k, l]) if j < k => vec![ratio(&[bar(i, l), bar(j, k)], &[p(i, j), p(k, l)])],
        (&[i, j], &[k, l]) if k == j => vec![ratio(&[bar(i, l), bar(j, j)], &[p(i, j), p(j, l)])],
        _ => Vec::new(),
    }
}
