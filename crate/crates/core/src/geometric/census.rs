//! `x̂` for every quadrilateral with diagonal, read off the extended quiver of
//! each triangulation.
//!
//! Type D carries two frozen rows `λ`, `λ̄`. At the all-plain-radii
//! triangulation they are `r₁ → λ` and `λ̄ → r_n`, in the orientation where
//! `x̂_γ` collects `P_τ` over arrows `τ → γ`; flips carry them along by
//! extended matrix mutation.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{side_symbol, GeometricError, PluckerSymbol, PointConfig, XhatExpression};
use crate::seedcore::{DynkinFamily, DynkinType, ExchangeMatrix};
use crate::surfaces::{MarkedPolygon, QuadrilateralWithDiagonal, Surface, SurfaceError, Tag, TaggedArc, Triangulation};

/// One triangulation with its matrix, frozen rows and the `x̂` of each position.
#[derive(Clone, Debug)]
pub struct TriangulationHats {
    pub triangulation: Triangulation,
    pub matrix: ExchangeMatrix,
    /// `frozen[f][k]` arrows from frozen vertex `f` into position `k`.
    pub frozen: Vec<Vec<i64>>,
    pub hats: Vec<XhatExpression>,
    pub quads: Vec<QuadrilateralWithDiagonal>,
}

#[derive(Clone, Debug)]
pub struct XhatCensus {
    pub dynkin: DynkinType,
    pub surface: Surface,
    pub nodes: Vec<TriangulationHats>,
    /// `adj[u][k]` is the node reached by flipping position `k` of node `u`.
    pub adj: Vec<Vec<usize>>,
    pub formulas: BTreeMap<QuadrilateralWithDiagonal, XhatExpression>,
    /// Frozen rows agree however a triangulation is reached.
    pub frozen_consistent: bool,
    /// Equal quadrilaterals with diagonal always give the same expression.
    pub single_valued: bool,
    pub counterexamples: Vec<String>,
}

const MAX_COUNTEREXAMPLES: usize = 20;

fn frozen_symbols(t: DynkinType) -> Vec<PluckerSymbol> {
    match t.family {
        DynkinFamily::D => vec![PluckerSymbol::Eigen { bar: false }, PluckerSymbol::Eigen { bar: true }],
        _ => Vec::new(),
    }
}

/// `b'_fj = b_fj + sgn(b_fk) [b_fk b_kj]_+`, `b'_fk = −b_fk`.
fn mutate_row(row: &[i64], b: &ExchangeMatrix, k: usize) -> Vec<i64> {
    let ck = row[k];
    row.iter()
        .enumerate()
        .map(|(j, &c)| if j == k { -c } else { c + ck.signum() * (ck * b.get(k, j)).max(0) })
        .collect()
}

impl XhatCensus {
    pub fn formula(&self, q: &QuadrilateralWithDiagonal) -> Option<&XhatExpression> {
        self.formulas.get(q)
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank
    }

    /// Evaluates `x̂` of both ends of every flip at `z` and checks that they are
    /// related by X-mutation. Edges where some value is undefined are skipped.
    pub fn check_mutation(&self, z: &PointConfig) -> Result<Vec<String>, GeometricError> {
        let mut bad = Vec::new();
        let values: Vec<Vec<Option<BigRational>>> = self
            .nodes
            .iter()
            .map(|t| t.hats.iter().map(|h| h.eval(z)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        for (u, node) in self.nodes.iter().enumerate() {
            let Some(x): Option<Vec<BigRational>> = values[u].iter().cloned().collect() else { continue };
            for (k, &v) in self.adj[u].iter().enumerate() {
                if x[k] == BigRational::zero() {
                    continue;
                }
                let (next, _) = self.surface.flip(&node.triangulation, k)?;
                for (p, o) in next.orbits.iter().enumerate() {
                    let r = self.nodes[v].triangulation.orbits.iter().position(|w| w == o).expect("same orbit set");
                    let expected = if p == k {
                        Some(x[k].recip())
                    } else {
                        let bkj = node.matrix.get(k, p);
                        let base = if bkj < 0 { &x[k] + BigRational::one() } else { x[k].recip() + BigRational::one() };
                        if base == BigRational::zero() && bkj > 0 {
                            None
                        } else {
                            let pw = num_traits::pow(base, bkj.unsigned_abs() as usize);
                            Some(if bkj > 0 { &x[p] / pw } else { &x[p] * pw })
                        }
                    };
                    if let (Some(e), Some(got)) = (expected, &values[v][r]) {
                        if &e != got {
                            bad.push(format!(
                                "flip {k} of {:?}: position {p} gives {got}, mutation gives {e}",
                                node.triangulation.orbits
                            ));
                        }
                    }
                }
            }
        }
        Ok(bad)
    }
}

/// Builds `x̂` for every labeled triangulation of the type's polygon.
pub fn xhat_census(t: DynkinType, limit: usize) -> Result<XhatCensus, GeometricError> {
    let polygon = MarkedPolygon::for_type(t)?;
    let surface = Surface::new(polygon)?;
    let n = surface.rank();
    let frozen_syms = frozen_symbols(t);
    let symbols: Vec<PluckerSymbol> =
        (0..surface.side_count()).map(|s| side_symbol(t, &surface.side(s))).collect::<Result<_, _>>()?;

    let root = surface.initial_triangulation();
    let mut frozen0 = vec![vec![0i64; n]; frozen_syms.len()];
    if t.family == DynkinFamily::D {
        let pos = |i: usize| {
            let id = surface.orbit_id(&TaggedArc::Radius { i, tag: Tag::Plain }).expect("radius exists");
            root.orbits.iter().position(|&o| o == id).expect("root has all plain radii")
        };
        frozen0[0][pos(1)] = -1;
        frozen0[1][pos(t.rank)] = 1;
    }

    let build = |tri: Triangulation, frozen: Vec<Vec<i64>>| -> TriangulationHats {
        let q = surface.quiver(&tri);
        let matrix = surface.exchange_matrix_from(&tri, &q);
        let ids: Vec<usize> = (0..surface.side_count()).collect();
        let hats = (0..n)
            .map(|k| {
                let gamma = surface.orbit_ids(tri.orbits[k])[0];
                let mut e = XhatExpression::default();
                for &s in &ids {
                    e.mul_symbol(symbols[s], q.b(s, gamma));
                }
                for (f, sym) in frozen_syms.iter().enumerate() {
                    e.mul_symbol(*sym, frozen[f][k]);
                }
                e
            })
            .collect();
        let quads = (0..n).map(|k| surface.quadrilateral_from(&tri, &q, k)).collect();
        TriangulationHats { triangulation: tri, matrix, frozen, hats, quads }
    };

    let mut census = XhatCensus {
        dynkin: t,
        surface: surface.clone(),
        nodes: vec![build(root.clone(), frozen0)],
        adj: vec![vec![usize::MAX; n]],
        formulas: BTreeMap::new(),
        frozen_consistent: true,
        single_valued: true,
        counterexamples: Vec::new(),
    };
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(root.key(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for k in 0..n {
            let node = &census.nodes[u];
            let (next, _) = surface.flip(&node.triangulation, k)?;
            let frozen: Vec<Vec<i64>> = node.frozen.iter().map(|r| mutate_row(r, &node.matrix, k)).collect();
            let v = match index.get(&next.key()) {
                Some(&v) => {
                    let stored = &census.nodes[v];
                    let same = next.orbits.iter().enumerate().all(|(p, o)| {
                        let r = stored.triangulation.orbits.iter().position(|w| w == o).expect("same orbit set");
                        frozen.iter().zip(&stored.frozen).all(|(a, b)| a[p] == b[r])
                    });
                    if !same {
                        census.frozen_consistent = false;
                        if census.counterexamples.len() < MAX_COUNTEREXAMPLES {
                            census
                                .counterexamples
                                .push(format!("frozen rows disagree at {:?}", stored.triangulation.key()));
                        }
                    }
                    v
                }
                None => {
                    if census.nodes.len() >= limit {
                        return Err(SurfaceError::TooLarge { limit }.into());
                    }
                    let v = census.nodes.len();
                    index.insert(next.key(), v);
                    census.nodes.push(build(next, frozen));
                    census.adj.push(vec![usize::MAX; n]);
                    queue.push_back(v);
                    v
                }
            };
            census.adj[u][k] = v;
        }
    }

    for node in &census.nodes {
        for (q, h) in node.quads.iter().zip(&node.hats) {
            match census.formulas.get(q) {
                Some(e) if e != h => {
                    census.single_valued = false;
                    if census.counterexamples.len() < MAX_COUNTEREXAMPLES {
                        census.counterexamples.push(format!("{} / {}: {e} vs {h}", q.key(), q.diagonal_key()));
                    }
                }
                Some(_) => {}
                None => {
                    census.formulas.insert(q.clone(), h.clone());
                }
            }
        }
    }
    Ok(census)
}
