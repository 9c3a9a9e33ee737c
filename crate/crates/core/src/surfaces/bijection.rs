//! Quadrilaterals with a diagonal against X-variables of the universal pattern.
//!
//! A universal X-seed is attached to the initial triangulation and carried
//! along the flip graph by mutation in the flipped position. Every labeled
//! pair `(T, k)` then names an X-variable and a quadrilateral with diagonal.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::quads::{closed_form_quad_count, QuadrilateralWithDiagonal};
use super::triangulation::{Surface, Triangulation};
use super::{MarkedPolygon, SurfaceError};
use crate::seedcore::{mutate_x, DynkinType, XSeed};
use crate::semifield::{Exact, Semifield, SemifieldValue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub polygon: MarkedPolygon,
    pub triangulations: usize,
    pub keys: usize,
    pub xvars: usize,
    pub expected: u64,
    /// `B(flip(T, k)) = μ_k(B(T))` on every edge.
    pub flip_commutes: bool,
    /// Reaching a triangulation along different paths gives the same X-seed.
    pub seeds_consistent: bool,
    pub single_valued: bool,
    pub injective: bool,
    pub diagonal_inverse: bool,
    /// Flipping outside `q_T(γ) ∪ {γ}` leaves `x_γ` alone.
    pub locality: bool,
    pub counterexamples: Vec<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.flip_commutes
            && self.seeds_consistent
            && self.single_valued
            && self.injective
            && self.diagonal_inverse
            && self.locality
            && self.keys as u64 == self.expected
            && self.xvars as u64 == self.expected
    }
}

const MAX_COUNTEREXAMPLES: usize = 20;

pub fn verify_bijection(t: DynkinType, limit: usize) -> Result<BijectionReport, SurfaceError> {
    let polygon = MarkedPolygon::for_type(t)?;
    let surface = Surface::new(polygon)?;
    let n = surface.rank();
    let s = Exact::universal(n);
    let root = surface.initial_triangulation();
    let x0 = XSeed::new(surface.exchange_matrix(&root), (0..n).map(|i| s.generator(i)).collect())?;

    let mut report = BijectionReport {
        type_label: t.to_string(),
        polygon,
        triangulations: 0,
        keys: 0,
        xvars: 0,
        expected: 2 * closed_form_quad_count(polygon)?,
        flip_commutes: true,
        seeds_consistent: true,
        single_valued: true,
        injective: true,
        diagonal_inverse: true,
        locality: true,
        counterexamples: Vec::new(),
    };
    let note = |report: &mut BijectionReport, msg: String| {
        if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
            report.counterexamples.push(msg);
        }
    };

    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(root.key(), 0)]);
    let mut nodes: Vec<(Triangulation, XSeed<SemifieldValue>)> = vec![(root, x0)];
    let mut queue = VecDeque::from([0usize]);
    let mut f: BTreeMap<QuadrilateralWithDiagonal, SemifieldValue> = BTreeMap::new();

    while let Some(u) = queue.pop_front() {
        let (tri, seed) = nodes[u].clone();
        let quiver = surface.quiver(&tri);
        let quads: Vec<QuadrilateralWithDiagonal> =
            (0..n).map(|k| surface.quadrilateral_from(&tri, &quiver, k)).collect();
        for (k, q) in quads.iter().enumerate() {
            match f.get(q) {
                Some(v) if *v != seed.x[k] => {
                    report.single_valued = false;
                    note(&mut report, format!("{} / {} carries two X-variables", q.key(), q.diagonal_key()));
                }
                Some(_) => {}
                None => {
                    f.insert(q.clone(), seed.x[k].clone());
                }
            }
        }
        for k in 0..n {
            let (next, _) = surface.flip(&tri, k)?;
            let mutated = mutate_x(&s, &seed, k)?;
            if surface.exchange_matrix(&next) != mutated.b {
                report.flip_commutes = false;
                note(&mut report, format!("flip {k} of {:?} does not match matrix mutation", tri.orbits));
            }
            for (j, q) in quads.iter().enumerate() {
                let outside = j != k && surface.orbit(tri.orbits[k]).iter().all(|a| !q.quad.contains(a));
                if outside && mutated.x[j] != seed.x[j] {
                    report.locality = false;
                    note(&mut report, format!("flipping position {k} moved the variable of {}", q.diagonal_key()));
                }
            }
            match index.get(&next.key()) {
                Some(&v) => {
                    let (stored, sx) = &nodes[v];
                    let same = next.orbits.iter().enumerate().all(|(p, o)| {
                        let r = stored.orbits.iter().position(|x| x == o).expect("same arc set");
                        mutated.x[p] == sx.x[r]
                    });
                    if !same {
                        report.seeds_consistent = false;
                        note(&mut report, format!("two X-seeds at triangulation {:?}", stored.key()));
                    }
                }
                None => {
                    if nodes.len() >= limit {
                        return Err(SurfaceError::TooLarge { limit });
                    }
                    index.insert(next.key(), nodes.len());
                    queue.push_back(nodes.len());
                    nodes.push((next, mutated));
                }
            }
        }
    }

    let mut inverse: HashMap<&SemifieldValue, &QuadrilateralWithDiagonal> = HashMap::new();
    for (q, v) in &f {
        if let Some(p) = inverse.insert(v, q) {
            report.injective = false;
            note(
                &mut report,
                format!(
                    "{} / {} and {} / {} share an X-variable",
                    p.key(),
                    p.diagonal_key(),
                    q.key(),
                    q.diagonal_key()
                ),
            );
        }
    }
    let mut by_quad: BTreeMap<(&[crate::surfaces::TaggedArc], bool), Vec<&SemifieldValue>> = BTreeMap::new();
    for (q, v) in &f {
        by_quad.entry((&q.quad, q.digon_case)).or_default().push(v);
    }
    for ((quad, _), vs) in &by_quad {
        if vs.len() != 2 || s.mul(vs[0], vs[1]) != s.one() {
            report.diagonal_inverse = false;
            let names: Vec<String> = quad.iter().map(|a| a.to_string()).collect();
            note(
                &mut report,
                format!("quadrilateral {} has {} diagonals with non-inverse variables", names.join(" "), vs.len()),
            );
        }
    }
    report.triangulations = nodes.len();
    report.keys = f.len();
    report.xvars = inverse.len();
    Ok(report)
}
