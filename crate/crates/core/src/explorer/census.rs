//! Counting X-variables and exchangeable pairs, and comparing the exchange graphs
//! of the A- and X-patterns attached to one exchange matrix.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::seedcore::{
    canonical_key_x, dynkin_initial_matrix, APattern, ASeed, DynkinType, ExchangeMatrix, SeedError, SeedKey, XSeed,
};
use crate::semifield::{Exact, Factored, FactoredField, RationalFunction, Semifield, SemifieldKind, SemifieldValue};

use super::bfs::{explore_raw, Limits, RawGraph, UNKNOWN};
use super::graph::{export_graph, sorted_distinct, ExchangeGraph, Exported};
use super::patterns::{AWalk, Export, ExportField, JointSeed, JointWalk, XWalk};
use super::ExploreError;

/// Which initial X-cluster to attach to the Dynkin matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    /// Algebraically independent generators `t_1, ..., t_n` of the universal semifield.
    Universal,
    /// Tropical generators `t_1, ..., t_n`.
    Principal,
}

impl FromStr for Coefficients {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "universal" => Ok(Coefficients::Universal),
            "principal" => Ok(Coefficients::Principal),
            _ => Err(format!("unknown semifield {s:?} (expected universal or principal)")),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficients::Universal => "universal",
            Coefficients::Principal => "principal",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct XvarCount {
    pub count: usize,
    pub nodes: usize,
    pub seconds: f64,
}

fn export_x<S: Export>(
    s: &S,
    raw: &RawGraph<XSeed<S::Elem>>,
    label: &str,
    sf: &str,
) -> Result<ExchangeGraph, ExploreError> {
    export_graph(
        raw,
        |seed| Exported { b: seed.b.clone(), x: seed.x.iter().map(|v| s.export(v)).collect(), a: None },
        label,
        sf,
    )
}

fn run_x<S: Export>(
    s: &S,
    root: &XSeed<S::Elem>,
    limits: Limits,
    label: &str,
    sf: &str,
) -> Result<RawGraph<XSeed<S::Elem>>, ExploreError> {
    let raw = explore_raw(&XWalk { s }, root, limits)?;
    match raw.limit {
        Some(hit) => Err(ExploreError::Limit { hit, partial: Box::new(export_x(s, &raw, label, sf)?) }),
        None => Ok(raw),
    }
}

fn count_with<S: Export>(
    s: &S,
    root: &XSeed<S::Elem>,
    limits: Limits,
    label: &str,
    sf: &str,
) -> Result<XvarCount, ExploreError> {
    let raw = run_x(s, root, limits, label, sf)?;
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    for seed in &raw.seeds {
        for v in &seed.x {
            let mut out = Vec::new();
            s.encode(v, &mut out);
            seen.insert(out);
        }
    }
    Ok(XvarCount { count: seen.len(), nodes: raw.len(), seconds: raw.elapsed.as_secs_f64() })
}

fn factored_root(b: ExchangeMatrix) -> (FactoredField, XSeed<Factored>) {
    let n = b.rank();
    let f = FactoredField::new(n);
    let x = (0..n).map(|i| f.generator(i)).collect();
    (f, XSeed { b, x })
}

fn tropical_root(b: ExchangeMatrix) -> (Exact, XSeed<SemifieldValue>) {
    let s = Exact::tropical(b.rank());
    let x = (0..b.rank()).map(|i| s.generator(i)).collect();
    (s, XSeed { b, x })
}

/// `|X(S)|` for the pattern of the given Dynkin type with the chosen initial cluster.
pub fn count_xvars(t: DynkinType, c: Coefficients, limits: Limits) -> Result<XvarCount, ExploreError> {
    let b = dynkin_initial_matrix(t);
    let label = t.to_string();
    match c {
        Coefficients::Universal => {
            let (f, root) = factored_root(b);
            count_with(&f, &root, limits, &label, "universal")
        }
        Coefficients::Principal => {
            let (s, root) = tropical_root(b);
            count_with(&s, &root, limits, &label, "principal")
        }
    }
}

pub fn explore_dynkin(t: DynkinType, c: Coefficients, limits: Limits) -> Result<ExchangeGraph, ExploreError> {
    let b = dynkin_initial_matrix(t);
    let label = t.to_string();
    match c {
        Coefficients::Universal => {
            let (f, root) = factored_root(b);
            export_x(&f, &run_x(&f, &root, limits, &label, "universal")?, &label, "universal")
        }
        Coefficients::Principal => {
            let (s, root) = tropical_root(b);
            export_x(&s, &run_x(&s, &root, limits, &label, "principal")?, &label, "principal")
        }
    }
}

fn root_kind(root: &XSeed<SemifieldValue>) -> Result<SemifieldKind, ExploreError> {
    let kind = match root.x.first() {
        Some(v) => v.kind(),
        None => SemifieldKind::Trivial,
    };
    let exact = Exact { kind };
    for v in &root.x {
        exact.check(v).map_err(SeedError::from)?;
    }
    Ok(kind)
}

fn kind_label(kind: SemifieldKind) -> &'static str {
    match kind {
        SemifieldKind::Universal { .. } => "universal",
        SemifieldKind::Tropical { .. } => "tropical",
        SemifieldKind::Trivial => "trivial",
    }
}

fn to_factored(root: &XSeed<SemifieldValue>, nvars: usize) -> (FactoredField, XSeed<Factored>) {
    let f = FactoredField::new(nvars);
    let x = root.x.iter().map(|v| f.from_rational_function(v.as_universal().expect("checked kind"))).collect();
    (f, XSeed { b: root.b.clone(), x })
}

/// Explores the X-pattern through an arbitrary exact root seed.
pub fn explore_x(
    root: &XSeed<SemifieldValue>,
    limits: Limits,
    type_label: &str,
) -> Result<ExchangeGraph, ExploreError> {
    let kind = root_kind(root)?;
    let sf = kind_label(kind);
    match kind {
        SemifieldKind::Universal { nvars } => {
            let (f, r) = to_factored(root, nvars);
            export_x(&f, &run_x(&f, &r, limits, type_label, sf)?, type_label, sf)
        }
        _ => {
            let s = Exact { kind };
            export_x(&s, &run_x(&s, root, limits, type_label, sf)?, type_label, sf)
        }
    }
}

/// `|X(S)|` for the pattern through an arbitrary exact root seed.
pub fn count_xvars_from(root: &XSeed<SemifieldValue>, limits: Limits) -> Result<XvarCount, ExploreError> {
    let kind = root_kind(root)?;
    let sf = kind_label(kind);
    match kind {
        SemifieldKind::Universal { nvars } => {
            let (f, r) = to_factored(root, nvars);
            count_with(&f, &r, limits, "custom", sf)
        }
        _ => count_with(&Exact { kind }, root, limits, "custom", sf),
    }
}

type ASeedF = ASeed<Factored, SemifieldValue>;

/// Coefficients of an A-pattern attached to a Dynkin matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ACoefficients {
    /// Trivial semifield: the plain exchange relations.
    Free,
    /// Tropical semifield with initial coefficients `t_1, ..., t_n` (full-rank extended matrix).
    Principal,
}

impl ACoefficients {
    fn label(self) -> &'static str {
        match self {
            ACoefficients::Free => "coefficient-free",
            ACoefficients::Principal => "principal",
        }
    }
}

/// Runs `body` with the A-pattern of `t`. Cluster variables live in the field of
/// `a_1, ..., a_n` (followed by `t_1, ..., t_n` for principal coefficients).
fn with_a_pattern<R>(
    t: DynkinType,
    c: ACoefficients,
    body: impl FnOnce(&APattern<'_, Exact, FactoredField>, ASeedF) -> R,
) -> R {
    let b = dynkin_initial_matrix(t);
    let n = b.rank();
    match c {
        ACoefficients::Free => {
            let field = FactoredField::new(n);
            let coeffs = Exact::trivial();
            let one = field.one();
            let embed = move |_: &SemifieldValue| one.clone();
            let pattern = APattern { coeffs: &coeffs, field: &field, embed: &embed };
            let root =
                ASeed { b, a: (0..n).map(|i| field.generator(i)).collect(), x: vec![SemifieldValue::Trivial; n] };
            body(&pattern, root)
        }
        ACoefficients::Principal => {
            let field = FactoredField::new(2 * n);
            let coeffs = Exact::tropical(n);
            let embed = |v: &SemifieldValue| {
                let m = v.as_tropical().expect("tropical coefficients");
                m.exps()
                    .iter()
                    .enumerate()
                    .fold(field.one(), |acc, (j, &e)| field.mul(&acc, &field.pow(&field.generator(n + j), e)))
            };
            let pattern = APattern { coeffs: &coeffs, field: &field, embed: &embed };
            let root = ASeed {
                b,
                a: (0..n).map(|i| field.generator(i)).collect(),
                x: (0..n).map(|i| coeffs.generator(i)).collect(),
            };
            body(&pattern, root)
        }
    }
}

fn export_a(
    p: &APattern<'_, Exact, FactoredField>,
    raw: &RawGraph<ASeedF>,
    label: &str,
    sf: &str,
) -> Result<ExchangeGraph, ExploreError> {
    export_graph(
        raw,
        |s| Exported { b: s.b.clone(), x: s.x.clone(), a: Some(s.a.iter().map(|v| p.field.export_rf(v)).collect()) },
        label,
        sf,
    )
}

fn run_a(
    p: &APattern<'_, Exact, FactoredField>,
    root: &ASeedF,
    limits: Limits,
    label: &str,
    sf: &str,
) -> Result<RawGraph<ASeedF>, ExploreError> {
    let walk = AWalk { pattern: APattern { coeffs: p.coeffs, field: p.field, embed: p.embed } };
    let raw = explore_raw(&walk, root, limits)?;
    match raw.limit {
        Some(hit) => Err(ExploreError::Limit { hit, partial: Box::new(export_a(p, &raw, label, sf)?) }),
        None => Ok(raw),
    }
}

/// Exchange graph of the A-pattern of `t`.
pub fn explore_a(t: DynkinType, c: ACoefficients, limits: Limits) -> Result<ExchangeGraph, ExploreError> {
    let label = t.to_string();
    let sf = c.label();
    with_a_pattern(t, c, |p, root| export_a(p, &run_a(p, &root, limits, &label, sf)?, &label, sf))
}

type RfPair = (RationalFunction, RationalFunction);

fn ordered_pair(a: RationalFunction, b: RationalFunction) -> RfPair {
    let (mut ea, mut eb) = (Vec::new(), Vec::new());
    a.encode(&mut ea);
    b.encode(&mut eb);
    if ea <= eb {
        (a, b)
    } else {
        (b, a)
    }
}

fn pair_bytes(p: &RfPair) -> Vec<u8> {
    let mut out = Vec::new();
    p.0.encode(&mut out);
    p.1.encode(&mut out);
    out
}

/// Every labeled exchange `(node, k)`: the exchanged pair `{a_k, a'_k}` and the two
/// terms on the right of the exchange relation (coefficients included), each as an
/// unordered pair.
fn exchanges(t: DynkinType, c: ACoefficients, limits: Limits) -> Result<(usize, Vec<(RfPair, RfPair)>), ExploreError> {
    let label = t.to_string();
    with_a_pattern(t, c, |p, root| {
        let raw = run_a(p, &root, limits, &label, c.label())?;
        let f = p.field;
        let s = p.coeffs;
        let mut raw_out: Vec<(Factored, Factored, Factored, Factored)> = Vec::new();
        for seed in &raw.seeds {
            for k in 0..seed.rank() {
                let (plus, minus) = p.exchange_monomials(seed, k);
                let xk = &seed.x[k];
                let den = s.oplus(xk, &s.one());
                let plus = f.mul(&plus, &(p.embed)(&s.div(xk, &den)));
                let minus = f.mul(&minus, &(p.embed)(&s.inv(&den)));
                let other = f.div(&f.oplus(&plus, &minus), &seed.a[k]);
                raw_out.push((seed.a[k].clone(), other, plus, minus));
            }
        }
        // conversion happens after all arithmetic so every value sees the final basis
        let out = raw_out
            .iter()
            .map(|(a, b, m1, m2)| {
                let ex = ordered_pair(f.to_rational_function(a), f.to_rational_function(b));
                let mon = ordered_pair(f.to_rational_function(m1), f.to_rational_function(m2));
                (ex, mon)
            })
            .collect();
        Ok((raw.len(), out))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairCensus {
    /// Ordered pairs of exchangeable cluster variables.
    pub ordered: usize,
    /// Unordered pairs `{a, a'}`, each listed once with the smaller encoding first.
    pub pairs: Vec<(RationalFunction, RationalFunction)>,
    pub nodes: usize,
}

impl PairCensus {
    pub fn unordered(&self) -> usize {
        self.pairs.len()
    }
}

/// Census of exchangeable pairs in the coefficient-free A-pattern of `t`.
pub fn exchangeable_pairs(t: DynkinType, limits: Limits) -> Result<PairCensus, ExploreError> {
    let (nodes, ex) = exchanges(t, ACoefficients::Free, limits)?;
    let pairs = sorted_distinct(ex.into_iter().map(|(e, _)| e), pair_bytes);
    Ok(PairCensus { ordered: 2 * pairs.len(), pairs, nodes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniqueExchangeReport {
    pub exchange_pairs: usize,
    pub monomial_pairs: usize,
    /// Each monomial pair occurs with only one exchanged pair.
    pub well_defined: bool,
    /// Distinct exchanged pairs have distinct monomial pairs.
    pub injective: bool,
}

impl UniqueExchangeReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.injective
    }
}

/// Checks that the two monomials of an exchange relation determine the exchanged
/// pair, over every labeled exchange of the A-pattern. The property needs a full-rank
/// extended exchange matrix ([`ACoefficients::Principal`]); without coefficients it
/// fails already in type A3, where `a a' = b + 1` occurs for two different pairs.
pub fn unique_exchange(t: DynkinType, c: ACoefficients, limits: Limits) -> Result<UniqueExchangeReport, ExploreError> {
    let (_, ex) = exchanges(t, c, limits)?;
    let mut fwd: HashMap<Vec<u8>, BTreeSet<Vec<u8>>> = HashMap::new();
    let mut back: HashMap<Vec<u8>, BTreeSet<Vec<u8>>> = HashMap::new();
    for (e, m) in &ex {
        let (eb, mb) = (pair_bytes(e), pair_bytes(m));
        fwd.entry(mb.clone()).or_default().insert(eb.clone());
        back.entry(eb).or_default().insert(mb);
    }
    Ok(UniqueExchangeReport {
        exchange_pairs: back.len(),
        monomial_pairs: fwd.len(),
        well_defined: fwd.values().all(|s| s.len() == 1),
        injective: back.values().all(|s| s.len() == 1),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidenceReport {
    pub a_nodes: usize,
    pub a_edges: usize,
    pub x_nodes: usize,
    pub x_edges: usize,
    /// Size of the image of the A-graph under "same mutation sequence" in the X-pattern.
    pub image_nodes: usize,
    pub image_edges: usize,
    pub injective: bool,
    pub coincide: bool,
}

fn simple_edges<T>(raw: &RawGraph<T>, node_id: impl Fn(usize) -> usize) -> usize {
    let mut set = HashSet::new();
    for (u, row) in raw.adj.iter().enumerate() {
        for &v in row {
            if v != UNKNOWN {
                let (a, b) = (node_id(u), node_id(v));
                set.insert((a.min(b), a.max(b)));
            }
        }
    }
    set.len()
}

/// Compares the exchange graph of the coefficient-free A-pattern with that of the
/// universal X-pattern with the same exchange matrix.
///
/// Both clusters are mutated along the same sequences; the A-graph is keyed by the
/// A-seed and each node is mapped to the key of its X-seed. The graphs coincide when
/// that map is injective and node and edge counts agree with a separate X-exploration.
pub fn exchange_graphs_coincide(t: DynkinType, limits: Limits) -> Result<CoincidenceReport, ExploreError> {
    let label = t.to_string();
    let n = t.rank;
    let (a_nodes, a_edges, image_nodes, image_edges) = with_a_pattern(t, ACoefficients::Free, |p, root| {
        let ys = FactoredField::new(n);
        let root = JointSeed { y: (0..n).map(|i| ys.generator(i)).collect(), a: root };
        let walk = JointWalk { pattern: APattern { coeffs: p.coeffs, field: p.field, embed: p.embed }, ys: &ys };
        let raw = explore_raw(&walk, &root, limits)?;
        if let Some(hit) = raw.limit {
            let a_raw = RawGraph {
                seeds: raw.seeds.iter().map(|s| s.a.clone()).collect(),
                adj: raw.adj.clone(),
                limit: raw.limit,
                elapsed: raw.elapsed,
            };
            return Err(ExploreError::Limit {
                hit,
                partial: Box::new(export_a(p, &a_raw, &label, "coefficient-free")?),
            });
        }
        let keys: Vec<SeedKey> = raw
            .seeds
            .iter()
            .map(|s| canonical_key_x(&ys, &s.y_seed()).map(|k| k.0))
            .collect::<Result<_, SeedError>>()?;
        let mut ids: HashMap<&SeedKey, usize> = HashMap::new();
        for k in &keys {
            let next = ids.len();
            ids.entry(k).or_insert(next);
        }
        let image_nodes = ids.len();
        let image_edges = simple_edges(&raw, |u| ids[&keys[u]]);
        Ok::<_, ExploreError>((raw.len(), simple_edges(&raw, |u| u), image_nodes, image_edges))
    })?;
    let (f, root) = factored_root(dynkin_initial_matrix(t));
    let xraw = run_x(&f, &root, limits, &label, "universal")?;
    let x_nodes = xraw.len();
    let x_edges = simple_edges(&xraw, |u| u);
    let injective = image_nodes == a_nodes;
    Ok(CoincidenceReport {
        a_nodes,
        a_edges,
        x_nodes,
        x_edges,
        image_nodes,
        image_edges,
        injective,
        coincide: injective && a_nodes == x_nodes && a_edges == x_edges && image_edges == x_edges,
    })
}
