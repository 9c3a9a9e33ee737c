//! Triangulations, flips, the extended quiver and exchange matrices.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::arcs::{base_arcs, base_compatible, cw, orbit_of, punctured_path, MarkedPolygon, Tag, TaggedArc};
use super::SurfaceError;
use crate::seedcore::ExchangeMatrix;

/// Flip-graph searches stop with an error past this many triangulations.
pub const DEFAULT_TRIANGULATION_LIMIT: usize = 250_000;

/// Precomputed arc table of one marked polygon.
///
/// Arcs of the unfolded polygon get ids `0..arcs.len()`, boundary segment `i`
/// gets id `arcs.len() + i - 1`; together these are the "sides".
#[derive(Clone, Debug)]
pub struct Surface {
    pub polygon: MarkedPolygon,
    m: usize,
    arcs: Vec<TaggedArc>,
    index: HashMap<TaggedArc, usize>,
    orbits: Vec<Vec<usize>>,
    orbit_index: HashMap<Vec<usize>, usize>,
    orbit_compat: Vec<Vec<bool>>,
}

/// Labeled triangulation: position `k` holds an orbit id (an arc id for unfolded kinds).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triangulation {
    pub orbits: Vec<usize>,
}

impl Triangulation {
    /// Label-free identity.
    pub fn key(&self) -> Vec<usize> {
        let mut k = self.orbits.clone();
        k.sort_unstable();
        k
    }

    pub fn rank(&self) -> usize {
        self.orbits.len()
    }
}

/// `Q̄(T)` with 2-cycles removed: `net[a][b]` arrows from side `a` to side `b`,
/// negative when they point the other way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceQuiver {
    sides: usize,
    net: Vec<i32>,
    /// Vertices of the once-punctured digon around the puncture, if there is one.
    pub digon: Option<[usize; 2]>,
}

impl SurfaceQuiver {
    pub fn b(&self, from: usize, to: usize) -> i64 {
        self.net[from * self.sides + to] as i64
    }

    /// Sides joined to `s` by at least one arrow.
    pub fn neighbors(&self, s: usize) -> Vec<usize> {
        (0..self.sides).filter(|&t| self.net[s * self.sides + t] != 0).collect()
    }

    fn arrow(&mut self, a: usize, b: usize) {
        self.net[a * self.sides + b] += 1;
        self.net[b * self.sides + a] -= 1;
    }
}

#[derive(Clone, Copy)]
enum Corner {
    Side(usize),
    Loop,
}

/// Triangles of a polygon whose corners are `0..len` in clockwise order.
/// `side(a, b)` for `a < b` names the side between two corners when it is present.
fn polygon_triangles(len: usize, side: &dyn Fn(usize, usize) -> Option<Corner>) -> Vec<[Corner; 3]> {
    let mut out = Vec::new();
    for a in 0..len {
        for b in a + 1..len {
            let Some(ab) = side(a, b) else { continue };
            for c in b + 1..len {
                if let (Some(bc), Some(ac)) = (side(b, c), side(a, c)) {
                    // clockwise around the triangle: ab, then bc, then ca
                    out.push([ab, bc, ac]);
                }
            }
        }
    }
    out
}

impl Surface {
    pub fn new(polygon: MarkedPolygon) -> Result<Self, SurfaceError> {
        let polygon = polygon.validate()?;
        let base = polygon.base();
        let arcs = base_arcs(base);
        let index: HashMap<TaggedArc, usize> = arcs.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let mut orbits: Vec<Vec<usize>> =
            arcs.iter().map(|a| orbit_of(a, polygon).iter().map(|x| index[x]).collect()).collect();
        orbits.sort();
        orbits.dedup();
        let orbit_index = orbits.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let compat: Vec<Vec<bool>> =
            arcs.iter().map(|a| arcs.iter().map(|b| base_compatible(a, b, base)).collect()).collect();
        let orbit_compat = orbits
            .iter()
            .map(|o| orbits.iter().map(|p| o.iter().all(|&x| p.iter().all(|&y| compat[x][y]))).collect())
            .collect();
        Ok(Surface { polygon, m: polygon.vertices(), arcs, index, orbits, orbit_index, orbit_compat })
    }

    pub fn vertices(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.polygon.rank()
    }

    pub fn arcs(&self) -> &[TaggedArc] {
        &self.arcs
    }

    pub fn side_count(&self) -> usize {
        self.arcs.len() + self.m
    }

    pub fn side(&self, id: usize) -> TaggedArc {
        if id < self.arcs.len() {
            self.arcs[id]
        } else {
            TaggedArc::BoundarySegment { i: id - self.arcs.len() + 1 }
        }
    }

    pub fn side_id(&self, a: &TaggedArc) -> Option<usize> {
        match *a {
            TaggedArc::BoundarySegment { i } if (1..=self.m).contains(&i) => Some(self.arcs.len() + i - 1),
            _ => self.index.get(a).copied(),
        }
    }

    fn segment(&self, i: usize) -> usize {
        self.arcs.len() + i - 1
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Arc ids of orbit `o`.
    pub fn orbit_ids(&self, o: usize) -> &[usize] {
        &self.orbits[o]
    }

    pub fn orbit(&self, o: usize) -> Vec<TaggedArc> {
        self.orbits[o].iter().map(|&i| self.arcs[i]).collect()
    }

    /// Orbit containing a given arc.
    pub fn orbit_id(&self, a: &TaggedArc) -> Option<usize> {
        let ids: Vec<usize> =
            orbit_of(a, self.polygon).iter().map(|x| self.index.get(x).copied()).collect::<Option<_>>()?;
        self.orbit_index.get(&ids).copied()
    }

    pub fn orbits_compatible(&self, a: usize, b: usize) -> bool {
        self.orbit_compat[a][b]
    }

    /// All unfolded arc ids of a triangulation.
    pub fn arc_ids(&self, t: &Triangulation) -> Vec<usize> {
        let mut v: Vec<usize> = t.orbits.iter().flat_map(|&o| self.orbits[o].iter().copied()).collect();
        v.sort_unstable();
        v
    }

    pub fn check(&self, t: &Triangulation) -> Result<(), SurfaceError> {
        let bad = |why: &str| SurfaceError::NotTriangulation(why.to_string());
        if t.orbits.len() != self.rank() {
            return Err(bad(&format!("{} orbits, expected {}", t.orbits.len(), self.rank())));
        }
        if t.orbits.iter().any(|&o| o >= self.orbits.len()) {
            return Err(bad("orbit id out of range"));
        }
        let key = t.key();
        if key.windows(2).any(|w| w[0] == w[1]) {
            return Err(bad("repeated arc"));
        }
        for (x, &a) in key.iter().enumerate() {
            if key[x + 1..].iter().any(|&b| !self.orbit_compat[a][b]) {
                return Err(bad("crossing arcs"));
            }
        }
        Ok(())
    }

    /// Builds a triangulation from its arcs (all members of every orbit for folded kinds).
    pub fn triangulation_from_arcs(&self, arcs: &[TaggedArc]) -> Result<Triangulation, SurfaceError> {
        let mut orbits = Vec::new();
        for a in arcs {
            let o = self.orbit_id(a).ok_or_else(|| SurfaceError::NotAnArc(a.to_string(), self.polygon.to_string()))?;
            if !orbits.contains(&o) {
                orbits.push(o);
            }
        }
        let t = Triangulation { orbits };
        self.check(&t)?;
        if self.arc_ids(&t).len() != arcs.len() {
            return Err(SurfaceError::NotTriangulation("not closed under the group action".into()));
        }
        Ok(t)
    }

    /// Fan at vertex 1 (plain), all plain radii (punctured), a diameter with
    /// symmetric fans (folded plain), the digon at vertex 1 with a fan (folded punctured).
    pub fn initial_triangulation(&self) -> Triangulation {
        let m = self.m;
        let arcs: Vec<TaggedArc> = match self.polygon {
            MarkedPolygon::Plain(_) => (3..m).map(|j| TaggedArc::direct(1, j)).collect(),
            MarkedPolygon::Punctured(_) => (1..=m).map(|i| TaggedArc::Radius { i, tag: Tag::Plain }).collect(),
            MarkedPolygon::FoldedPlain(_) => {
                let h = m / 2;
                let mut v: Vec<TaggedArc> = (3..=h + 1).map(|j| TaggedArc::direct(1, j)).collect();
                v.extend((h + 3..=m).map(|j| TaggedArc::direct(h + 1, j)));
                v
            }
            MarkedPolygon::FoldedPunctured(_) => {
                let mut v =
                    vec![TaggedArc::Radius { i: 1, tag: Tag::Plain }, TaggedArc::Radius { i: 1, tag: Tag::Notched }];
                v.extend((3..=m).map(|j| TaggedArc::direct(1, j)));
                v
            }
        };
        self.triangulation_from_arcs(&arcs).expect("the standard triangulation is valid")
    }

    /// Replaces position `k`; returns the new triangulation and the new orbit id.
    pub fn flip(&self, t: &Triangulation, k: usize) -> Result<(Triangulation, usize), SurfaceError> {
        if k >= t.orbits.len() {
            return Err(SurfaceError::Direction { k, rank: t.orbits.len() });
        }
        let old = t.orbits[k];
        let rest: Vec<usize> = t.orbits.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &o)| o).collect();
        let cands: Vec<usize> = (0..self.orbits.len())
            .filter(|&o| o != old && !rest.contains(&o) && rest.iter().all(|&r| self.orbit_compat[o][r]))
            .collect();
        if cands.len() != 1 {
            return Err(SurfaceError::FlipNotUnique { arc: format!("{:?}", self.orbit(old)), candidates: cands.len() });
        }
        let mut next = t.clone();
        next.orbits[k] = cands[0];
        Ok((next, cands[0]))
    }

    pub fn quiver(&self, t: &Triangulation) -> SurfaceQuiver {
        let ids = self.arc_ids(t);
        let present: std::collections::HashSet<TaggedArc> = ids.iter().map(|&i| self.arcs[i]).collect();
        let sides = self.side_count();
        let mut q = SurfaceQuiver { sides, net: vec![0; sides * sides], digon: None };
        let m = self.m;
        let arc_side = |a: TaggedArc| -> Option<Corner> {
            match a {
                TaggedArc::BoundarySegment { i } => Some(Corner::Side(self.segment(i))),
                _ if present.contains(&a) => Some(Corner::Side(self.index[&a])),
                _ => None,
            }
        };
        let mut triangles = Vec::new();
        let mut loop_radii = Vec::new();
        if !self.polygon.is_punctured() {
            let side = |a: usize, b: usize| -> Option<Corner> {
                if b == a + 1 {
                    Some(Corner::Side(self.segment(a + 1)))
                } else if a == 0 && b == m - 1 {
                    Some(Corner::Side(self.segment(m)))
                } else {
                    arc_side(TaggedArc::direct(a + 1, b + 1))
                }
            };
            triangles = polygon_triangles(m, &side);
        } else {
            let mut radii: Vec<(usize, Tag)> = ids
                .iter()
                .filter_map(|&i| match self.arcs[i] {
                    TaggedArc::Radius { i, tag } => Some((i, tag)),
                    _ => None,
                })
                .collect();
            radii.sort();
            let doubled = radii.windows(2).find(|w| w[0].0 == w[1].0).map(|w| w[0].0);
            if let Some(v) = doubled {
                // The outside of the loop around the puncture at v: corners v, v+1, …, v+m-1, v.
                let vert = |t: usize| (v - 1 + t) % m + 1;
                let side = |a: usize, b: usize| -> Option<Corner> {
                    if a == 0 && b == m {
                        Some(Corner::Loop)
                    } else {
                        arc_side(punctured_path(vert(a), vert(b), m))
                    }
                };
                triangles = polygon_triangles(m + 1, &side);
                loop_radii =
                    [Tag::Plain, Tag::Notched].map(|tag| self.index[&TaggedArc::Radius { i: v, tag }]).to_vec();
                let w = triangles
                    .iter()
                    .find(|tr| matches!(tr[2], Corner::Loop))
                    .map(|tr| match tr[0] {
                        Corner::Side(s) => {
                            let a = self.side(s);
                            a.vertices(m).into_iter().find(|&x| x != v).unwrap_or(v)
                        }
                        Corner::Loop => v,
                    })
                    .expect("the loop borders a triangle");
                q.digon = Some([v, w]);
            } else {
                let tag = radii.first().map(|r| r.1).unwrap_or(Tag::Plain);
                let vs: Vec<usize> = radii.iter().map(|r| r.0).collect();
                let k = vs.len();
                for s in 0..k {
                    let (a, b) = (vs[s], vs[(s + 1) % k]);
                    let len = cw(a, b, m);
                    let vert = |t: usize| (a - 1 + t - 1) % m + 1;
                    let radius = |i: usize| Some(Corner::Side(self.index[&TaggedArc::Radius { i, tag }]));
                    let side = |x: usize, y: usize| -> Option<Corner> {
                        match (x, y) {
                            (0, 1) => radius(a),
                            (0, y) if y == len + 1 => radius(b),
                            (0, _) => None,
                            _ => arc_side(punctured_path(vert(x), vert(y), m)),
                        }
                    };
                    triangles.extend(polygon_triangles(len + 2, &side));
                }
                if k == 2 {
                    q.digon = Some([vs[0], vs[1]]);
                }
            }
        }
        let expand = |c: Corner| -> Vec<usize> {
            match c {
                Corner::Side(s) => vec![s],
                Corner::Loop => loop_radii.clone(),
            }
        };
        for tr in &triangles {
            for (x, y) in [(tr[0], tr[1]), (tr[1], tr[2]), (tr[2], tr[0])] {
                for &a in &expand(x) {
                    for &b in &expand(y) {
                        q.arrow(a, b);
                    }
                }
            }
        }
        q
    }

    /// `B(T)`, folded by summing over the row orbit: `b_IJ = Σ_{i∈I} b_{i j}` for a fixed `j ∈ J`.
    pub fn exchange_matrix_from(&self, t: &Triangulation, q: &SurfaceQuiver) -> ExchangeMatrix {
        let n = t.orbits.len();
        let mut b = vec![0i64; n * n];
        for (x, &oi) in t.orbits.iter().enumerate() {
            for (y, &oj) in t.orbits.iter().enumerate() {
                let j = self.orbits[oj][0];
                b[x * n + y] = self.orbits[oi].iter().map(|&i| q.b(i, j)).sum();
            }
        }
        ExchangeMatrix::new(n, b).expect("B(T) is skew-symmetrizable")
    }

    pub fn exchange_matrix(&self, t: &Triangulation) -> ExchangeMatrix {
        self.exchange_matrix_from(t, &self.quiver(t))
    }

    /// Breadth-first search of the flip graph from [`Surface::initial_triangulation`].
    pub fn enumerate_triangulations(&self, limit: usize) -> Result<FlipGraph, SurfaceError> {
        let root = self.initial_triangulation();
        let n = root.rank();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(root.key(), 0)]);
        let mut nodes = vec![root];
        let mut adj: Vec<Vec<usize>> = vec![vec![usize::MAX; n]];
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for k in 0..n {
                if adj[u][k] != usize::MAX {
                    continue;
                }
                let (next, _) = self.flip(&nodes[u], k)?;
                let v = match index.get(&next.key()) {
                    Some(&v) => v,
                    None => {
                        if nodes.len() >= limit {
                            return Err(SurfaceError::TooLarge { limit });
                        }
                        let v = nodes.len();
                        index.insert(next.key(), v);
                        nodes.push(next);
                        adj.push(vec![usize::MAX; n]);
                        queue.push_back(v);
                        v
                    }
                };
                adj[u][k] = v;
                // the flipped orbit sits at the same position in the stored labeling only
                // when v was created from u; record the reverse edge by orbit lookup
                let back =
                    nodes[v].orbits.iter().position(|o| !nodes[u].orbits.contains(o)).expect("flip changes one orbit");
                adj[v][back] = u;
            }
        }
        Ok(FlipGraph { nodes, adj })
    }
}

/// Flip graph with labeled triangulations; `adj[u][k]` is the flip of position `k`.
#[derive(Clone, Debug)]
pub struct FlipGraph {
    pub nodes: Vec<Triangulation>,
    pub adj: Vec<Vec<usize>>,
}

impl FlipGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }
}
