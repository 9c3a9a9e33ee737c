//! Marked polygons, tagged arcs and compatibility.
//!
//! Vertices are labeled `1..=m` clockwise. In a once-punctured polygon the
//! winding of a chord is measured against a cut running from the puncture to
//! the boundary segment between `m` and `1`: a `Direct` chord from `i < j` is
//! the one homotopic to the boundary path `i, i+1, …, j`, an `Around` chord is
//! homotopic to the path `j, …, m, 1, …, i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::SurfaceError;
use crate::seedcore::{DynkinFamily, DynkinType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "snake_case")]
pub enum MarkedPolygon {
    Plain(usize),
    Punctured(usize),
    /// Vertex count (even); the group acts by the half turn `i ↦ i + m/2`.
    FoldedPlain(usize),
    /// The group swaps plain and notched tags.
    FoldedPunctured(usize),
}

impl MarkedPolygon {
    pub fn validate(self) -> Result<Self, SurfaceError> {
        let ok = match self {
            MarkedPolygon::Plain(m) => m >= 4,
            MarkedPolygon::Punctured(m) | MarkedPolygon::FoldedPunctured(m) => m >= 3,
            MarkedPolygon::FoldedPlain(m) => m >= 4 && m % 2 == 0,
        };
        if ok {
            Ok(self)
        } else {
            Err(SurfaceError::Polygon(self.to_string()))
        }
    }

    /// Parses names used on the command line: `plain`, `punctured`,
    /// `folded-plain`, `folded-punctured`, with the vertex count.
    pub fn parse(kind: &str, m: usize) -> Result<Self, SurfaceError> {
        let p = match kind.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "plain" => MarkedPolygon::Plain(m),
            "punctured" => MarkedPolygon::Punctured(m),
            "folded-plain" => MarkedPolygon::FoldedPlain(m),
            "folded-punctured" => MarkedPolygon::FoldedPunctured(m),
            _ => return Err(SurfaceError::Polygon(format!("{kind}({m})"))),
        };
        p.validate()
    }

    /// The polygon whose triangulations model the classical type `t`.
    pub fn for_type(t: DynkinType) -> Result<Self, SurfaceError> {
        let n = t.rank;
        let p = match t.family {
            DynkinFamily::A => MarkedPolygon::Plain(n + 3),
            DynkinFamily::B => MarkedPolygon::FoldedPunctured(n + 1),
            DynkinFamily::C => MarkedPolygon::FoldedPlain(2 * n + 2),
            DynkinFamily::D => MarkedPolygon::Punctured(n),
            _ => return Err(SurfaceError::NotClassical(t.to_string())),
        };
        p.validate()
    }

    pub fn vertices(self) -> usize {
        match self {
            MarkedPolygon::Plain(m)
            | MarkedPolygon::Punctured(m)
            | MarkedPolygon::FoldedPlain(m)
            | MarkedPolygon::FoldedPunctured(m) => m,
        }
    }

    pub fn is_punctured(self) -> bool {
        matches!(self, MarkedPolygon::Punctured(_) | MarkedPolygon::FoldedPunctured(_))
    }

    pub fn is_folded(self) -> bool {
        matches!(self, MarkedPolygon::FoldedPlain(_) | MarkedPolygon::FoldedPunctured(_))
    }

    /// The unfolded polygon carrying the arcs.
    pub fn base(self) -> Self {
        match self {
            MarkedPolygon::FoldedPlain(m) => MarkedPolygon::Plain(m),
            MarkedPolygon::FoldedPunctured(m) => MarkedPolygon::Punctured(m),
            p => p,
        }
    }

    /// Number of arcs (orbits, for folded kinds) in every triangulation.
    pub fn rank(self) -> usize {
        match self {
            MarkedPolygon::Plain(m) => m - 3,
            MarkedPolygon::Punctured(m) => m,
            MarkedPolygon::FoldedPlain(m) => m / 2 - 1,
            MarkedPolygon::FoldedPunctured(m) => m - 1,
        }
    }

    pub fn dynkin_type(self) -> Result<DynkinType, SurfaceError> {
        let (f, n) = match self {
            MarkedPolygon::Plain(m) => (DynkinFamily::A, m - 3),
            MarkedPolygon::Punctured(m) => (DynkinFamily::D, m),
            MarkedPolygon::FoldedPlain(m) => (DynkinFamily::C, m / 2 - 1),
            MarkedPolygon::FoldedPunctured(m) => (DynkinFamily::B, m - 1),
        };
        DynkinType::new(f, n).map_err(|_| SurfaceError::Polygon(self.to_string()))
    }
}

impl fmt::Display for MarkedPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkedPolygon::Plain(m) => write!(f, "Plain({m})"),
            MarkedPolygon::Punctured(m) => write!(f, "Punctured({m})"),
            MarkedPolygon::FoldedPlain(m) => write!(f, "FoldedPlain({m})"),
            MarkedPolygon::FoldedPunctured(m) => write!(f, "FoldedPunctured({m})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Winding {
    Direct,
    Around,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Plain,
    Notched,
}

impl Tag {
    pub fn other(self) -> Tag {
        match self {
            Tag::Plain => Tag::Notched,
            Tag::Notched => Tag::Plain,
        }
    }
}

/// A tagged arc or a boundary segment. Derived ordering is the canonical one
/// used in quadrilateral keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "arc", rename_all = "snake_case")]
pub enum TaggedArc {
    Chord {
        i: usize,
        j: usize,
        winding: Winding,
    },
    Radius {
        i: usize,
        tag: Tag,
    },
    /// From vertex `i` to its clockwise neighbor.
    BoundarySegment {
        i: usize,
    },
}

impl TaggedArc {
    pub fn direct(i: usize, j: usize) -> Self {
        TaggedArc::Chord { i: i.min(j), j: i.max(j), winding: Winding::Direct }
    }

    pub fn is_radius(&self) -> bool {
        matches!(self, TaggedArc::Radius { .. })
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, TaggedArc::BoundarySegment { .. })
    }

    /// Endpoints on the boundary (one for a radius).
    pub fn vertices(&self, m: usize) -> Vec<usize> {
        match *self {
            TaggedArc::Chord { i, j, .. } => vec![i, j],
            TaggedArc::Radius { i, .. } => vec![i],
            TaggedArc::BoundarySegment { i } => vec![i, i % m + 1],
        }
    }
}

impl fmt::Display for TaggedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaggedArc::Chord { i, j, winding: Winding::Direct } => write!(f, "({i},{j})"),
            TaggedArc::Chord { i, j, winding: Winding::Around } => write!(f, "({i},{j})~"),
            TaggedArc::Radius { i, tag: Tag::Plain } => write!(f, "r{i}"),
            TaggedArc::Radius { i, tag: Tag::Notched } => write!(f, "r{i}*"),
            TaggedArc::BoundarySegment { i } => write!(f, "[{i}]"),
        }
    }
}

/// Clockwise distance from `u` to `w` on an `m`-cycle with labels `1..=m`.
pub(crate) fn cw(u: usize, w: usize, m: usize) -> usize {
    (w + m - u) % m
}

/// The side homotopic to the clockwise boundary path from `u` to `w` in a
/// once-punctured `m`-gon (the puncture on the other side).
pub(crate) fn punctured_path(u: usize, w: usize, m: usize) -> TaggedArc {
    match cw(u, w, m) {
        1 => TaggedArc::BoundarySegment { i: u },
        _ if u < w => TaggedArc::Chord { i: u, j: w, winding: Winding::Direct },
        _ => TaggedArc::Chord { i: w, j: u, winding: Winding::Around },
    }
}

/// Inverse of [`punctured_path`] for chords: `(u, w)` with the puncture-free side `u → w`.
pub(crate) fn chord_path(i: usize, j: usize, winding: Winding) -> (usize, usize) {
    match winding {
        Winding::Direct => (i, j),
        Winding::Around => (j, i),
    }
}

/// A chord or diameter of the `2m`-gon covering a once-punctured `m`-gon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LiftedChord {
    pub a: usize,
    pub b: usize,
    /// Set for the diameter covering a radius.
    pub tag: Option<Tag>,
}

/// Lift of an arc of `Punctured(m)` to the branched double cover `Plain(2m)`,
/// where vertex `i` has the two preimages `i` and `i' = i + m`.
pub fn lift_to_double_cover(arc: &TaggedArc, m: usize) -> Vec<LiftedChord> {
    let prime = |v: usize| v + m;
    let chord = |a: usize, b: usize| LiftedChord { a, b, tag: None };
    match *arc {
        TaggedArc::Chord { i, j, winding: Winding::Direct } => vec![chord(i, j), chord(prime(i), prime(j))],
        TaggedArc::Chord { i, j, winding: Winding::Around } => vec![chord(i, prime(j)), chord(prime(i), j)],
        TaggedArc::Radius { i, tag } => vec![LiftedChord { a: i, b: prime(i), tag: Some(tag) }],
        TaggedArc::BoundarySegment { i } => {
            let j = i % m + 1;
            if j == 1 {
                vec![chord(i, prime(1)), chord(prime(i), 1)]
            } else {
                vec![chord(i, j), chord(prime(i), prime(j))]
            }
        }
    }
}

/// Strict interleaving of two chords on a circle.
pub(crate) fn chords_cross(a: (usize, usize), b: (usize, usize)) -> bool {
    let (p, q) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |v: usize| p < v && v < q;
    if [b.0, b.1].iter().any(|v| *v == p || *v == q) {
        return false;
    }
    inside(b.0) != inside(b.1)
}

/// Whether `arc` is an arc (not a boundary segment) of the unfolded polygon `base`.
pub fn is_valid_arc(arc: &TaggedArc, base: MarkedPolygon) -> bool {
    let m = base.vertices();
    let in_range = |v: usize| (1..=m).contains(&v);
    match (*arc, base) {
        (TaggedArc::Chord { i, j, winding: Winding::Direct }, MarkedPolygon::Plain(_)) => {
            in_range(i) && in_range(j) && i < j && j - i >= 2 && !(i == 1 && j == m)
        }
        (TaggedArc::Chord { i, j, winding }, MarkedPolygon::Punctured(_)) => {
            let (u, w) = chord_path(i, j, winding);
            in_range(i) && in_range(j) && i < j && cw(u, w, m) >= 2
        }
        (TaggedArc::Radius { i, .. }, MarkedPolygon::Punctured(_)) => in_range(i),
        _ => false,
    }
}

/// All arcs of an unfolded polygon in canonical order.
pub(crate) fn base_arcs(base: MarkedPolygon) -> Vec<TaggedArc> {
    let m = base.vertices();
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            for winding in [Winding::Direct, Winding::Around] {
                let a = TaggedArc::Chord { i, j, winding };
                if is_valid_arc(&a, base) {
                    out.push(a);
                }
            }
        }
    }
    if base.is_punctured() {
        for tag in [Tag::Plain, Tag::Notched] {
            out.extend((1..=m).map(|i| TaggedArc::Radius { i, tag }));
        }
    }
    out.sort();
    out
}

/// Compatibility of two arcs of the same unfolded polygon.
pub(crate) fn base_compatible(a: &TaggedArc, b: &TaggedArc, base: MarkedPolygon) -> bool {
    if a == b {
        return true;
    }
    let m = base.vertices();
    match (*a, *b) {
        (TaggedArc::Radius { i, tag: s }, TaggedArc::Radius { i: j, tag: t }) => s == t || i == j,
        _ if base.is_punctured() => {
            let (la, lb) = (lift_to_double_cover(a, m), lift_to_double_cover(b, m));
            !la.iter().any(|x| lb.iter().any(|y| chords_cross((x.a, x.b), (y.a, y.b))))
        }
        (TaggedArc::Chord { i, j, .. }, TaggedArc::Chord { i: k, j: l, .. }) => !chords_cross((i, j), (k, l)),
        _ => false,
    }
}

/// Image under the group action of a folded polygon; identity for unfolded ones.
pub fn group_image(arc: &TaggedArc, p: MarkedPolygon) -> TaggedArc {
    match (*arc, p) {
        (TaggedArc::Chord { i, j, .. }, MarkedPolygon::FoldedPlain(m)) => {
            let h = m / 2;
            let r = |v: usize| (v - 1 + h) % m + 1;
            TaggedArc::direct(r(i), r(j))
        }
        (TaggedArc::BoundarySegment { i }, MarkedPolygon::FoldedPlain(m)) => {
            TaggedArc::BoundarySegment { i: (i - 1 + m / 2) % m + 1 }
        }
        (TaggedArc::Radius { i, tag }, MarkedPolygon::FoldedPunctured(_)) => TaggedArc::Radius { i, tag: tag.other() },
        (a, _) => a,
    }
}

/// The orbit `[γ]`: one or two arcs, sorted.
pub fn orbit_of(arc: &TaggedArc, p: MarkedPolygon) -> Vec<TaggedArc> {
    let g = group_image(arc, p);
    match g.cmp(arc) {
        std::cmp::Ordering::Equal => vec![*arc],
        std::cmp::Ordering::Less => vec![g, *arc],
        std::cmp::Ordering::Greater => vec![*arc, g],
    }
}

/// All arcs of `p` (orbits for folded kinds), each orbit sorted, in canonical order.
pub fn all_arcs(p: MarkedPolygon) -> Result<Vec<Vec<TaggedArc>>, SurfaceError> {
    let p = p.validate()?;
    let mut out: Vec<Vec<TaggedArc>> = base_arcs(p.base()).iter().map(|a| orbit_of(a, p)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Compatibility of two tagged arcs of `p` (members of orbits for folded kinds).
pub fn compatible(a: &TaggedArc, b: &TaggedArc, p: MarkedPolygon) -> Result<bool, SurfaceError> {
    let base = p.validate()?.base();
    for x in [a, b] {
        if !is_valid_arc(x, base) {
            return Err(SurfaceError::NotAnArc(x.to_string(), p.to_string()));
        }
    }
    Ok(base_compatible(a, b, base))
}
