//! Quadrilaterals with a chosen diagonal, their census and closed-form counts.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::arcs::{MarkedPolygon, TaggedArc};
use super::triangulation::{Surface, SurfaceQuiver, Triangulation};
use super::SurfaceError;
use crate::seedcore::binom;

/// `q_T(γ)` together with the diagonal `γ` (an orbit for folded kinds).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadrilateralWithDiagonal {
    pub quad: Vec<TaggedArc>,
    pub diagonal: Vec<TaggedArc>,
    /// The diagonal is a radius inside a once-punctured digon.
    pub digon_case: bool,
}

impl QuadrilateralWithDiagonal {
    /// Boundary vertices touched by the quadrilateral's sides, sorted.
    pub fn vertices(&self, m: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.quad.iter().flat_map(|a| a.vertices(m)).collect();
        set.into_iter().collect()
    }

    /// Stable text key, used by the CSV census.
    pub fn key(&self) -> String {
        let join = |v: &[TaggedArc]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ");
        format!("{}{}", join(&self.quad), if self.digon_case { " digon" } else { "" })
    }

    pub fn diagonal_key(&self) -> String {
        self.diagonal.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl Surface {
    /// Quadrilateral of position `k` of `t`, reusing a computed quiver.
    pub fn quadrilateral_from(&self, t: &Triangulation, q: &SurfaceQuiver, k: usize) -> QuadrilateralWithDiagonal {
        let members = self.orbit_ids(t.orbits[k]).to_vec();
        let mut sides: BTreeSet<TaggedArc> = BTreeSet::new();
        for &g in &members {
            sides.extend(q.neighbors(g).into_iter().map(|s| self.side(s)));
        }
        let diagonal: Vec<TaggedArc> = members.iter().map(|&g| self.side(g)).collect();
        let mut digon_case = false;
        if let (Some([v, w]), TaggedArc::Radius { i, tag }) = (q.digon, diagonal[0]) {
            digon_case = true;
            if !self.polygon.is_folded() {
                // the two radii inside the digon that are compatible with γ
                let other = if i == v { w } else { v };
                sides.insert(TaggedArc::Radius { i, tag: tag.other() });
                sides.insert(TaggedArc::Radius { i: other, tag });
            }
        }
        for d in &diagonal {
            sides.remove(d);
        }
        QuadrilateralWithDiagonal { quad: sides.into_iter().collect(), diagonal, digon_case }
    }

    pub fn quadrilateral(&self, t: &Triangulation, k: usize) -> Result<QuadrilateralWithDiagonal, SurfaceError> {
        if k >= t.orbits.len() {
            return Err(SurfaceError::Direction { k, rank: t.orbits.len() });
        }
        self.check(t)?;
        Ok(self.quadrilateral_from(t, &self.quiver(t), k))
    }

    /// Every quadrilateral with diagonal, with the number of triangulations containing it.
    pub fn enumerate_quadrilaterals(
        &self,
        limit: usize,
    ) -> Result<BTreeMap<QuadrilateralWithDiagonal, usize>, SurfaceError> {
        let g = self.enumerate_triangulations(limit)?;
        let mut out = BTreeMap::new();
        for t in &g.nodes {
            let q = self.quiver(t);
            for k in 0..t.rank() {
                *out.entry(self.quadrilateral_from(t, &q, k)).or_insert(0) += 1;
            }
        }
        Ok(out)
    }
}

/// Number of quadrilaterals (without a choice of diagonal) from the closed forms.
pub fn closed_form_quad_count(p: MarkedPolygon) -> Result<u64, SurfaceError> {
    let p = p.validate()?;
    Ok(match p {
        MarkedPolygon::Plain(m) => binom(m as u64, 4),
        MarkedPolygon::Punctured(n) => {
            let n = n as u64;
            n * (n - 1) * (n * n + 4 * n - 6) / 6
        }
        MarkedPolygon::FoldedPunctured(m) => {
            let n = m as u64 - 1;
            n * (n + 1) * (n * n + 2) / 6
        }
        MarkedPolygon::FoldedPlain(v) => {
            let h = v as u64 / 2;
            c_q1_count(h - 1) / 2 + binom(h, 2)
        }
    })
}

/// `|Q₁| = ½(C(2n+2, 4) − C(n+1, 2))`.
pub fn c_q1_count(n: u64) -> u64 {
    (binom(2 * n + 2, 4) - binom(n + 1, 2)) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfDiskClass {
    /// Inside some closed half-disk cut off by a diameter.
    Q1,
    /// Neither in a half-disk nor of the form `{i, j, i', j'}`.
    Q2,
    /// Of the form `{i, j, i', j'}`.
    Symmetric,
}

/// Classifies four vertices of `Plain(2n+2)` (`h = n + 1`).
pub fn classify_half_disk(vs: &[usize; 4], h: usize) -> HalfDiskClass {
    if q1_order(vs, h).is_some() {
        return HalfDiskClass::Q1;
    }
    let m = 2 * h;
    let prime = |v: usize| (v - 1 + h) % m + 1;
    if vs.iter().all(|&v| vs.contains(&prime(v))) {
        HalfDiskClass::Symmetric
    } else {
        HalfDiskClass::Q2
    }
}

/// Clockwise listing `(a, b, c, d)` of a quadrilateral lying in a closed
/// half-disk, starting after the gap that the half-disk leaves free.
fn q1_order(vs: &[usize; 4], h: usize) -> Option<[usize; 4]> {
    let m = 2 * h;
    let mut s = *vs;
    s.sort_unstable();
    for r in 0..4 {
        let o = [s[r], s[(r + 1) % 4], s[(r + 2) % 4], s[(r + 3) % 4]];
        if (o[3] + m - o[0]) % m <= h {
            return Some(o);
        }
    }
    None
}

/// The map `(a, b, c, d) ↦ (a, c, d, b')` from Q₁ to Q₂.
pub fn alpha(vs: &[usize; 4], h: usize) -> Option<[usize; 4]> {
    let [a, b, c, d] = q1_order(vs, h)?;
    let mut out = [a, c, d, (b - 1 + h) % (2 * h) + 1];
    out.sort_unstable();
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfDiskReport {
    pub n: usize,
    pub total: usize,
    pub q1: usize,
    pub q2: usize,
    pub symmetric: usize,
    pub q1_expected: u64,
    /// α maps Q₁ injectively into Q₂ and hits all of it.
    pub alpha_bijective: bool,
    /// Quadrilaterals of symmetric triangulations lie in Q₁ or are symmetric.
    pub folded_quads_ok: bool,
    /// `½|Q₁| + C(n+1, 2)` against the folded census.
    pub folded_count: usize,
    pub folded_expected: u64,
}

impl HalfDiskReport {
    pub fn passed(&self) -> bool {
        self.q1 as u64 == self.q1_expected
            && self.total == self.q1 + self.q2 + self.symmetric
            && self.alpha_bijective
            && self.folded_quads_ok
            && self.folded_count as u64 == 2 * self.folded_expected
    }
}

/// Brute-forces the quadrilaterals of `Plain(2n+2)` from its triangulations and
/// sorts them into Q₁, Q₂ and the symmetric ones.
pub fn half_disk_census(n: usize, limit: usize) -> Result<HalfDiskReport, SurfaceError> {
    let h = n + 1;
    let plain = Surface::new(MarkedPolygon::Plain(2 * h))?;
    let quads: BTreeSet<[usize; 4]> = plain
        .enumerate_quadrilaterals(limit)?
        .keys()
        .map(|q| {
            let v = q.vertices(2 * h);
            [v[0], v[1], v[2], v[3]]
        })
        .collect();
    let mut by_class: BTreeMap<HalfDiskClass, BTreeSet<[usize; 4]>> = BTreeMap::new();
    for q in &quads {
        by_class.entry(classify_half_disk(q, h)).or_default().insert(*q);
    }
    let q1 = by_class.remove(&HalfDiskClass::Q1).unwrap_or_default();
    let q2 = by_class.remove(&HalfDiskClass::Q2).unwrap_or_default();
    let sym = by_class.remove(&HalfDiskClass::Symmetric).unwrap_or_default();
    let image: BTreeSet<[usize; 4]> = q1.iter().filter_map(|q| alpha(q, h)).collect();
    let alpha_bijective = image.len() == q1.len() && image == q2;

    let folded = Surface::new(MarkedPolygon::FoldedPlain(2 * h))?;
    let census = folded.enumerate_quadrilaterals(limit)?;
    let mut folded_quads_ok = true;
    for t in &folded.enumerate_triangulations(limit)?.nodes {
        let q = folded.quiver(t);
        for &o in &t.orbits {
            for &g in folded.orbit_ids(o) {
                // unfolded quadrilateral of each member
                let vs: BTreeSet<usize> =
                    q.neighbors(g).into_iter().flat_map(|s| folded.side(s).vertices(2 * h)).collect();
                let vs: Vec<usize> = vs.into_iter().collect();
                if vs.len() != 4 || classify_half_disk(&[vs[0], vs[1], vs[2], vs[3]], h) == HalfDiskClass::Q2 {
                    folded_quads_ok = false;
                }
            }
        }
    }
    Ok(HalfDiskReport {
        n,
        total: quads.len(),
        q1: q1.len(),
        q2: q2.len(),
        symmetric: sym.len(),
        q1_expected: c_q1_count(n as u64),
        alpha_bijective,
        folded_quads_ok,
        folded_count: census.len(),
        folded_expected: closed_form_quad_count(MarkedPolygon::FoldedPlain(2 * h))?,
    })
}
