//! Dispatch from parsed arguments to the library.

use std::path::PathBuf;
use std::time::Instant;

use clusterx::explorer::{
    count_xvars, exchange_graphs_coincide, exchangeable_pairs, explore_dynkin, graph_to_json, load_graph, save_graph,
    to_dot, Coefficients, ExchangeGraph, ExploreError, Limits,
};
use clusterx::geometric::verify_distinctness;
use clusterx::seedcore::{DynkinFamily, DynkinType};
use clusterx::surfaces::{
    closed_form_quad_count, flip_graph_dot, half_disk_census, quads_csv, verify_bijection, MarkedPolygon, Surface,
    SurfaceError, DEFAULT_TRIANGULATION_LIMIT,
};
use serde_json::json;

use crate::output::{csv, json_line, pick, table, write_primary, CliResult, Outcome};
use crate::{Cli, Command, Emit, Format, RunOptions, SurfaceArgs, TypeArgs, Verify};

/// Graph cache directory; graphs are stored as `{label}-{semifield}.json`.
pub const CACHE_ENV: &str = "CLUSTERX_CACHE_DIR";

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let run = &cli.run;
    match &cli.command {
        Command::CountXvars { ty, semifield, expect_paper } => cmd_count_xvars(run, ty, semifield, *expect_paper),
        Command::Verify(v) => cmd_verify(run, v),
        Command::Emit(e) => cmd_emit(run, e),
    }
}

fn dynkin(ty: &TypeArgs) -> CliResult<DynkinType> {
    Ok(DynkinType::parse(&ty.family, ty.rank)?)
}

fn limits(run: &RunOptions) -> Limits {
    Limits { max_nodes: run.max_nodes, max_seconds: run.max_seconds }
}

fn surface_limit(run: &RunOptions) -> usize {
    run.max_nodes.unwrap_or(DEFAULT_TRIANGULATION_LIMIT)
}

fn coefficients(s: &str) -> CliResult<Coefficients> {
    Ok(s.parse::<Coefficients>()?)
}

/// E7 and E8 with universal coefficients take minutes to hours.
fn check_long(run: &RunOptions, t: DynkinType, c: Coefficients) -> CliResult<()> {
    if t.family == DynkinFamily::E && t.rank >= 7 && c == Coefficients::Universal && !run.allow_long {
        return Err(format!(
            "{t} universal is a long run (E7 about 2 minutes in release builds, E8 much longer); pass --allow-long"
        )
        .into());
    }
    Ok(())
}

/// A search limit: the partial graph goes to the primary output and the exit is 2.
fn limit_exit(run: &RunOptions, e: ExploreError) -> CliResult<Outcome> {
    match e {
        ExploreError::Limit { hit, partial } => {
            eprintln!("search stopped by the {hit:?} limit after {} nodes", partial.nodes.len());
            write_primary(run, &graph_to_json(&partial))?;
            Ok(Outcome::Resource)
        }
        e => Err(e.into()),
    }
}

fn surface_exit(e: SurfaceError) -> CliResult<Outcome> {
    match e {
        SurfaceError::TooLarge { limit } => {
            eprintln!("more than {limit} triangulations; raise --max-nodes");
            Ok(Outcome::Resource)
        }
        e => Err(e.into()),
    }
}

fn cache_path(t: DynkinType, c: Coefficients) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    Some(PathBuf::from(dir).join(format!("{t}-{c}.json")))
}

/// Full exchange graph, read from or written to the cache when it is configured.
fn graph(t: DynkinType, c: Coefficients, limits: Limits) -> Result<ExchangeGraph, ExploreError> {
    let path = cache_path(t, c);
    if let Some(p) = path.as_ref().filter(|p| p.exists()) {
        let g = load_graph(p)?;
        if g.complete {
            return Ok(g);
        }
    }
    let g = explore_dynkin(t, c, limits)?;
    if let Some(p) = path {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)
                .map_err(|source| ExploreError::Io { path: dir.display().to_string(), source })?;
        }
        save_graph(&g, &p)?;
    }
    Ok(g)
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_count_xvars(run: &RunOptions, ty: &TypeArgs, semifield: &str, expect: bool) -> CliResult<Outcome> {
    let t = dynkin(ty)?;
    let c = coefficients(semifield)?;
    check_long(run, t, c)?;
    let start = Instant::now();
    let (count, nodes) = if cache_path(t, c).is_some() {
        match graph(t, c, limits(run)) {
            Ok(g) => (g.xvars.len(), g.nodes.len()),
            Err(e) => return limit_exit(run, e),
        }
    } else {
        match count_xvars(t, c, limits(run)) {
            Ok(r) => (r.count, r.nodes),
            Err(e) => return limit_exit(run, e),
        }
    };
    eprintln!("{t} {c}: {nodes} seeds in {:.2}s", start.elapsed().as_secs_f64());
    let expected = t.expected_xvars(c == Coefficients::Principal);
    let ok = !expect || count as u64 == expected;
    let format = pick(run, Format::Table, &[Format::Table, Format::Json, Format::Csv], "count-xvars")?;
    let exp = if expect { expected.to_string() } else { "-".into() };
    let row =
        vec![format!("{:?}", t.family), t.rank.to_string(), c.to_string(), count.to_string(), nodes.to_string(), exp];
    let header = ["type", "rank", "semifield", "xvars", "seeds", "expected"];
    let text = match format {
        Format::Json => json_line(&json!({
            "type": t.to_string(),
            "rank": t.rank,
            "semifield": c.to_string(),
            "xvars": count,
            "seeds": nodes,
            "expected": expect.then_some(expected),
            "pass": ok,
        }))?,
        Format::Csv => csv(&header, &[row]),
        _ => table(&header, &[row]),
    };
    write_primary(run, &text)?;
    Ok(Outcome::from_pass(ok))
}

fn cmd_verify(run: &RunOptions, v: &Verify) -> CliResult<Outcome> {
    let format = pick(run, Format::Table, &[Format::Table, Format::Json], "verify")?;
    let (ok, report, lines): (bool, serde_json::Value, Vec<String>) = match v {
        Verify::Bijection { ty } => {
            let t = dynkin(ty)?;
            let r = match verify_bijection(t, surface_limit(run)) {
                Ok(r) => r,
                Err(e) => return surface_exit(e),
            };
            let mut lines = vec![
                format!("{t} on {}: {} triangulations", r.polygon, r.triangulations),
                format!("quadrilaterals with diagonal: {} = {}", r.keys, r.expected),
                format!("X-variables: {} = {}", r.xvars, r.expected),
                format!(
                    "flip commutes {}, seeds consistent {}, single-valued {}, injective {}, diagonal inverse {}, locality {}",
                    yes(r.flip_commutes),
                    yes(r.seeds_consistent),
                    yes(r.single_valued),
                    yes(r.injective),
                    yes(r.diagonal_inverse),
                    yes(r.locality)
                ),
            ];
            lines.extend(r.counterexamples.iter().map(|c| format!("counterexample: {c}")));
            (r.passed(), serde_json::to_value(&r)?, lines)
        }
        Verify::QuadCounts { surface } => match quad_counts(run, surface)? {
            Some(x) => x,
            None => return Ok(Outcome::Resource),
        },
        Verify::Geometric { ty, trials } => {
            let t = dynkin(ty)?;
            let r = verify_distinctness(t, *trials, run.rng_seed, surface_limit(run))?;
            let mut lines = vec![
                format!(
                    "{t}: {} expressions, {} of {} pairs separated at {} points",
                    r.expressions,
                    r.separated,
                    r.pairs_total,
                    r.points.len()
                ),
                format!("single-valued {}, mutation-consistent {}", yes(r.single_valued), yes(r.mutation_consistent)),
            ];
            lines.extend(r.unseparated.iter().map(|[a, b]| format!("unseparated: {a} | {b}")));
            lines.extend(r.counterexamples.iter().map(|c| format!("counterexample: {c}")));
            (r.passed(), serde_json::to_value(&r)?, lines)
        }
        Verify::Pairs { ty } => {
            let t = dynkin(ty)?;
            let p = match exchangeable_pairs(t, limits(run)) {
                Ok(p) => p,
                Err(e) => return limit_exit(run, e),
            };
            let expected = t.expected_xvars(false);
            let ok = p.ordered as u64 == expected;
            let report = json!({
                "type": t.to_string(),
                "ordered_pairs": p.ordered,
                "unordered_pairs": p.unordered(),
                "seeds": p.nodes,
                "expected": expected,
                "pass": ok,
            });
            (ok, report, vec![format!("{t} ordered exchangeable pairs: {} = {expected}", p.ordered)])
        }
        Verify::ExchangeGraphCoincide { ty } => {
            let t = dynkin(ty)?;
            check_long(run, t, Coefficients::Universal)?;
            let r = match exchange_graphs_coincide(t, limits(run)) {
                Ok(r) => r,
                Err(e) => return limit_exit(run, e),
            };
            let report = json!({
                "type": t.to_string(),
                "a_nodes": r.a_nodes,
                "a_edges": r.a_edges,
                "x_nodes": r.x_nodes,
                "x_edges": r.x_edges,
                "image_nodes": r.image_nodes,
                "image_edges": r.image_edges,
                "injective": r.injective,
                "coincide": r.coincide,
            });
            let lines = vec![
                format!("{t} A-pattern: {} seeds, {} edges", r.a_nodes, r.a_edges),
                format!("{t} X-pattern: {} seeds, {} edges", r.x_nodes, r.x_edges),
                format!(
                    "image of the A-graph: {} seeds, {} edges, injective {}",
                    r.image_nodes,
                    r.image_edges,
                    yes(r.injective)
                ),
            ];
            (r.coincide, report, lines)
        }
    };
    let text = match format {
        Format::Json => json_line(&report)?,
        _ => lines.iter().map(|l| format!("{l}\n")).collect::<String>() + verdict(ok) + "\n",
    };
    write_primary(run, &text)?;
    Ok(Outcome::from_pass(ok))
}

type Verified = (bool, serde_json::Value, Vec<String>);

fn quad_counts(run: &RunOptions, sa: &SurfaceArgs) -> CliResult<Option<Verified>> {
    let polygon = MarkedPolygon::parse(&sa.surface, sa.n)?;
    let s = Surface::new(polygon)?;
    let census = match s.enumerate_quadrilaterals(surface_limit(run)) {
        Ok(c) => c,
        Err(e) => return surface_exit(e).map(|_| None),
    };
    let expected = closed_form_quad_count(polygon)?;
    let quads = census.keys().map(|q| q.key()).collect::<std::collections::BTreeSet<_>>().len();
    let mut ok = quads as u64 == expected && census.len() as u64 == 2 * expected;
    let mut lines = vec![
        format!("{polygon} quadrilaterals: {quads} = {expected}"),
        format!("with diagonal: {} = {}", census.len(), 2 * expected),
    ];
    let mut report = json!({
        "polygon": polygon.to_string(),
        "quadrilaterals": quads,
        "with_diagonal": census.len(),
        "expected": expected,
    });
    if let MarkedPolygon::FoldedPlain(m) = polygon {
        let h = match half_disk_census(m / 2 - 1, surface_limit(run)) {
            Ok(h) => h,
            Err(e) => return surface_exit(e).map(|_| None),
        };
        ok &= h.passed();
        lines.push(format!(
            "unfolded Plain({m}): {} quadrilaterals, Q1 {} = {}, Q2 {}, symmetric {}, alpha bijective {}",
            h.total,
            h.q1,
            h.q1_expected,
            h.q2,
            h.symmetric,
            yes(h.alpha_bijective)
        ));
        report["half_disk"] = serde_json::to_value(&h)?;
    }
    report["pass"] = json!(ok);
    Ok(Some((ok, report, lines)))
}

fn cmd_emit(run: &RunOptions, e: &Emit) -> CliResult<Outcome> {
    let text = match e {
        Emit::ExchangeGraph { ty, semifield } => {
            let format = pick(run, Format::Dot, &[Format::Dot, Format::Json], "emit exchange-graph")?;
            let t = dynkin(ty)?;
            let c = coefficients(semifield)?;
            check_long(run, t, c)?;
            let g = match graph(t, c, limits(run)) {
                Ok(g) => g,
                Err(e) => return limit_exit(run, e),
            };
            if format == Format::Json {
                graph_to_json(&g)
            } else {
                to_dot(&g)
            }
        }
        Emit::FlipGraph { surface } => {
            pick(run, Format::Dot, &[Format::Dot], "emit flip-graph")?;
            let s = Surface::new(MarkedPolygon::parse(&surface.surface, surface.n)?)?;
            match s.enumerate_triangulations(surface_limit(run)) {
                Ok(g) => flip_graph_dot(&s, &g),
                Err(e) => return surface_exit(e),
            }
        }
        Emit::Xvars { ty, semifield } => {
            let format = pick(run, Format::Json, &[Format::Json, Format::Csv, Format::Table], "emit xvars")?;
            let t = dynkin(ty)?;
            let c = coefficients(semifield)?;
            check_long(run, t, c)?;
            let g = match graph(t, c, limits(run)) {
                Ok(g) => g,
                Err(e) => return limit_exit(run, e),
            };
            let rows: Vec<Vec<String>> =
                g.xvars.iter().enumerate().map(|(i, x)| vec![(i + 1).to_string(), x.to_string()]).collect();
            match format {
                Format::Json => json_line(&json!({
                    "type": t.to_string(),
                    "semifield": c.to_string(),
                    "count": g.xvars.len(),
                    "xvars": g.xvars,
                }))?,
                Format::Csv => csv(&["index", "xvar"], &rows),
                _ => table(&["index", "xvar"], &rows),
            }
        }
        Emit::Quads { surface } => {
            pick(run, Format::Csv, &[Format::Csv], "emit quads")?;
            let s = Surface::new(MarkedPolygon::parse(&surface.surface, surface.n)?)?;
            match s.enumerate_quadrilaterals(surface_limit(run)) {
                Ok(c) => quads_csv(&c),
                Err(e) => return surface_exit(e),
            }
        }
    };
    write_primary(run, &text)?;
    Ok(Outcome::Pass)
}
