use std::path::{Path, PathBuf};
use std::process::ExitCode;

use plancherel_lab::graded::{
    is_plancherel_graph, young_graph_adapter, FiniteGraph, GradedGraph, GraphJson, PascalGraph,
    PlancherelGraphReport,
};
use plancherel_lab::plancherel::{
    check_coherence, induced_prefix_distribution, level_measure, plancherel_tableau_distribution,
    prefix_distance, sample_growth_trial,
};
use plancherel_lab::posets::{enumerate_numberings, lattice_zd, nonrigid_poset, IdealSpec, Poset};
use plancherel_lab::rational::{parse_pq, to_pq};
use plancherel_lab::stats::{first_row_statistics, sampled_density, sublinearity_check};
use plancherel_lab::totpos::{character_gf, check_total_positivity, thoma_coefficients, CoefficientSequence, ThomaParams};
use plancherel_lab::transfer::{quasi_stationarity_test, transfer_step};
use plancherel_lab::{selftest, BigRational, Limits, Partition, StandardTableau};
use serde::Serialize;

use crate::output::{csv_text, emit, Artifact, CliError};
use crate::{Command, Format};

pub struct Context {
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub limits: Limits,
}

pub fn run(command: &Command, ctx: &Context) -> Result<ExitCode, CliError> {
    if let Command::Selftest { json } = command {
        return run_selftest(*json, ctx);
    }
    let (name, artifact) = build(command, ctx)?;
    emit(artifact.render(ctx.format, name)?, ctx.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn parse_partition(s: &str) -> Result<Partition, CliError> {
    Ok(s.parse::<Partition>()?)
}

fn rational_list(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_pq(t).map_err(CliError::from))
        .collect()
}

fn read_rationals(path: &Path) -> Result<Vec<BigRational>, CliError> {
    let text = std::fs::read_to_string(path)?;
    let seq: CoefficientSequence = serde_json::from_str(&text)?;
    Ok(seq.0)
}

fn coefficient_rows(c: &CoefficientSequence) -> Vec<(usize, String)> {
    c.coeffs().iter().enumerate().map(|(i, q)| (i, to_pq(q))).collect()
}

#[derive(Serialize)]
struct WeightedPrefix {
    prefix: StandardTableau,
    weight: String,
}

#[derive(Serialize)]
struct PrefixDistOutput {
    lambda: Partition,
    k: usize,
    distance: String,
    induced: Vec<WeightedPrefix>,
    plancherel: Vec<WeightedPrefix>,
}

#[derive(Serialize)]
struct NumberingsOutput<T: Serialize> {
    poset: String,
    n: usize,
    count: usize,
    numberings: Vec<T>,
}

#[derive(Serialize)]
struct TransferOutput {
    input: StandardTableau,
    output: StandardTableau,
}

fn weighted(list: Vec<(StandardTableau, BigRational)>) -> Vec<WeightedPrefix> {
    list.into_iter()
        .map(|(prefix, w)| WeightedPrefix {
            prefix,
            weight: to_pq(&w),
        })
        .collect()
}

fn graph_check<G: GradedGraph>(g: &G, levels: usize, delete: Option<&str>, limits: &Limits) -> Result<PlancherelGraphReport, CliError> {
    match delete {
        None => Ok(is_plancherel_graph(g, levels, limits)?),
        Some(spec) => {
            let finite = FiniteGraph::from_graph(g, levels + 1)?;
            finite_check(&finite, levels, Some(spec), limits)
        }
    }
}

fn finite_check(g: &FiniteGraph, levels: usize, delete: Option<&str>, limits: &Limits) -> Result<PlancherelGraphReport, CliError> {
    let g = match delete {
        None => g.clone(),
        Some(spec) => {
            let (from, to) = spec
                .split_once("->")
                .ok_or_else(|| CliError::Usage(format!("--delete-edge wants FROM->TO, got {spec:?}")))?;
            g.without_edge(from.trim(), to.trim())?
        }
    };
    if g.num_levels() < 2 {
        return Err(CliError::Usage("the graph needs at least two levels".into()));
    }
    let up_to = levels.min(g.num_levels() - 2);
    Ok(is_plancherel_graph(&g, up_to, limits)?)
}

fn numberings<P: Poset>(p: &P, n: usize, limits: &Limits) -> Result<Artifact, CliError> {
    let list = enumerate_numberings(p, n, limits)?;
    let rows: Vec<(usize, String)> = list
        .iter()
        .enumerate()
        .map(|(i, m)| (i, serde_json::to_string(m).expect("points serialise")))
        .collect();
    Artifact::json(&NumberingsOutput {
        poset: p.name(),
        n,
        count: list.len(),
        numberings: list,
    })?
    .with_csv(&["index", "numbering"], rows)
}

fn build(command: &Command, ctx: &Context) -> Result<(&'static str, Artifact), CliError> {
    let lim = &ctx.limits;
    let seed = ctx.seed;
    Ok(match command {
        Command::Measure { n } => {
            let m = level_measure(*n, lim)?;
            let rows: Vec<(String, String)> = m.weights.iter().map(|(p, w)| (p.to_string(), to_pq(w))).collect();
            ("measure", Artifact::json(&m)?.with_csv(&["lambda", "weight"], rows)?)
        }
        Command::Sample { n, trial } => {
            let s = sample_growth_trial(*n, seed, *trial, lim)?;
            let rows: Vec<(usize, usize, usize)> = s
                .tableau
                .cells_in_order()
                .iter()
                .enumerate()
                .map(|(i, c)| (i + 1, c.row, c.col))
                .collect();
            ("sample", Artifact::json(&s)?.with_csv(&["entry", "row", "col"], rows)?)
        }
        Command::Coherence { n } => ("coherence", Artifact::json(&check_coherence(*n, lim)?)?),
        Command::PrefixDist { lambda, k } => {
            let lambda = parse_partition(lambda)?;
            let out = PrefixDistOutput {
                distance: to_pq(&prefix_distance(&lambda, *k, lim)?),
                induced: weighted(induced_prefix_distribution(&lambda, *k, lim)?),
                plancherel: weighted(plancherel_tableau_distribution(*k, lim)?),
                lambda,
                k: *k,
            };
            ("prefix-dist", Artifact::json(&out)?)
        }
        Command::Plgraph { graph, levels, delete_edge } => {
            let delete = delete_edge.as_deref();
            let report = match graph.as_str() {
                "young" => graph_check(&young_graph_adapter(), *levels, delete, lim)?,
                "pascal" => graph_check(&PascalGraph, *levels, delete, lim)?,
                path => {
                    let json: GraphJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    finite_check(&FiniteGraph::from_json(json)?, *levels, delete, lim)?
                }
            };
            ("plgraph", Artifact::json(&report)?)
        }
        Command::Numberings { poset, n } => {
            let art = match poset.as_str() {
                "z2" => numberings(&lattice_zd(2)?, *n, lim)?,
                "z3" => numberings(&lattice_zd(3)?, *n, lim)?,
                "z4" => numberings(&lattice_zd(4)?, *n, lim)?,
                "nonrigid" => numberings(&nonrigid_poset(), *n, lim)?,
                other => return Err(CliError::Usage(format!("unknown poset {other:?}; use z2, z3, z4 or nonrigid"))),
            };
            ("numberings", art)
        }
        Command::Density { ideal, n, trials } => {
            let ideal: IdealSpec = ideal.parse()?;
            let r = sampled_density(*n, *trials, seed, &ideal, lim)?;
            let rows: Vec<(usize, f64)> = r.per_trial.iter().copied().enumerate().collect();
            ("density", Artifact::json(&r)?.with_csv(&["trial", "density"], rows)?)
        }
        Command::Transfer { tableau_json } => {
            let input: StandardTableau = serde_json::from_str(tableau_json)?;
            let output = transfer_step(&input)?;
            ("transfer", Artifact::json(&TransferOutput { input, output })?)
        }
        Command::QsTest { k, n, trials, significance } => {
            let r = quasi_stationarity_test(*k, *n, *trials, seed, *significance, lim)?;
            ("qs-test", Artifact::json(&r)?)
        }
        Command::TpCheck { coeffs, order, window } => {
            let c = if coeffs == "exp" {
                CoefficientSequence::exp(window.saturating_sub(1))
            } else {
                CoefficientSequence::new(read_rationals(Path::new(coeffs))?)
            };
            ("tp-check", Artifact::json(&check_total_positivity(&c, *order, *window, lim)?)?)
        }
        Command::Thoma { alpha, beta, gamma, m, order } => {
            let p = ThomaParams::new(rational_list(alpha)?, rational_list(beta)?, parse_pq(gamma)?, *m)?;
            let c = thoma_coefficients(&p, *order, lim)?;
            let rows = coefficient_rows(&c);
            ("thoma", Artifact::json(&c)?.with_csv(&["n", "coefficient"], rows)?)
        }
        Command::Chargf { chi, chi_values, order } => {
            let chi = match (chi, chi_values) {
                (Some(path), _) => read_rationals(path)?,
                (None, Some(list)) => rational_list(list)?,
                (None, None) => return Err(CliError::Usage("chargf needs --chi FILE or --chi-values LIST".into())),
            };
            let c = character_gf(&chi, *order, lim)?;
            let rows = coefficient_rows(&c);
            ("chargf", Artifact::json(&c)?.with_csv(&["n", "coefficient"], rows)?)
        }
        Command::FirstRow { n, trials, emit_csv } => {
            let r = first_row_statistics(*n, *trials, seed, lim)?;
            let mut buf = Vec::new();
            r.write_csv(&mut buf)?;
            let csv = String::from_utf8(buf).expect("csv is utf-8");
            if let Some(path) = emit_csv {
                emit(&csv, Some(path))?;
            }
            let mut art = Artifact::json(&r)?;
            art.csv = Some(csv);
            ("first-row", art)
        }
        Command::Sublinearity { n_list, trials } => {
            let r = sublinearity_check(n_list, *trials, seed, lim)?;
            let rows: Vec<(usize, f64, f64)> = r.points.iter().map(|p| (p.n, p.mean_fraction, p.mean_ratio)).collect();
            ("sublinearity", Artifact::json(&r)?.with_csv(&["n", "mean_fraction", "mean_ratio"], rows)?)
        }
        Command::Selftest { .. } => unreachable!("handled in run"),
    })
}

fn run_selftest(json: bool, ctx: &Context) -> Result<ExitCode, CliError> {
    let results = selftest::run(&ctx.limits)?;
    let text = if json {
        let mut s = serde_json::to_string_pretty(&results)?;
        s.push('\n');
        s
    } else if ctx.format == Format::Csv {
        let rows: Vec<(&str, usize, bool, String)> = results
            .iter()
            .map(|r| (r.name, r.up_to, r.pass, r.witness.clone().unwrap_or_default()))
            .collect();
        csv_text(&["identity", "up_to", "pass", "witness"], rows)?
    } else {
        results
            .iter()
            .map(|r| {
                let status = if r.pass { "PASS" } else { "FAIL" };
                match &r.witness {
                    Some(w) => format!("{status} {} (n <= {}): {w}\n", r.name, r.up_to),
                    None => format!("{status} {} (n <= {})\n", r.name, r.up_to),
                }
            })
            .collect()
    };
    emit(&text, ctx.out.as_deref())?;
    Ok(if results.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
