use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use curvelab::balance::{enumerate_balanced, Multidegree};
use curvelab::dual_graph::DualGraph;
use curvelab::examples;
use curvelab::generator::{realize, seeded_rng};
use curvelab::graph_curve::{h0, random_bundle, GraphCurve, LineBundle};
use curvelab::parse::{parse_graph, parse_multidegree};
use curvelab::poly::Q;
use curvelab::report::{render, Format};
use curvelab::theorem_lab::{
    counterexample_suite, example_suite, failure_count,
    hypcomb_check, verify_clifford_low_degree, verify_clifford_two_component,
    verify_clifford_uniform, verify_degree_extremes, verify_g25_exclusion,
    verify_gluing_lemmas, verify_riemann, weakly_hyperelliptic_classify, Caps,
    VerificationReport,
};
use num::One;

#[derive(Parser)]
#[command(name = "curvelab", about = "Line bundles on semistable nodal curves: \
invariants, balanced multidegrees, exact section counts, and theorem verification.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 17)]
    seed: u64,
    /// Refusal threshold for subcurve enumeration (number of components).
    #[arg(long, global = true, default_value_t = curvelab::DEFAULT_SUBCURVE_CAP)]
    cap_subcurves: usize,
    /// Refusal threshold for balanced-box enumeration (cell count).
    #[arg(long, global = true, default_value_t = curvelab::DEFAULT_BOX_CAP)]
    cap_box: u64,
    /// Sample budget for randomized checks.
    #[arg(long, global = true, default_value_t = 25)]
    samples: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Records,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Records => Format::Records,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print genus, stability, and structural invariants of a curve.
    Invariants { input: String },
    /// Enumerate the balanced multidegrees of a total degree.
    Balanced {
        input: String,
        #[arg(short, long)]
        degree: i64,
    },
    /// Count global sections of a bundle on a realized curve.
    H0 {
        input: String,
        /// Multidegree, e.g. "(1,0,2)".
        #[arg(long)]
        degrees: String,
        /// Sample the gluing at the nodes instead of using 1 everywhere.
        #[arg(long)]
        random: bool,
    },
    /// Run a theorem verifier over a curve.
    Verify {
        theorem: TheoremId,
        input: String,
    },
    /// Run the bundled counterexample suite.
    Examples {
        #[arg(long)]
        only: Option<String>,
    },
    /// Structural classification runs.
    Classify {
        kind: ClassifyKind,
        input: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremId {
    Riemann,
    CliffordUniform,
    #[value(name = "clifford-2c")]
    Clifford2c,
    Extremes,
    Cl4,
    G25,
    Lemmas,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassifyKind {
    Wh,
    Hypcomb,
    G25,
}

fn load_graph(input: &str) -> Result<DualGraph> {
    let text = if std::path::Path::new(input).exists() {
        std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    } else if let Some(source) = examples::source(input) {
        source.to_string()
    } else {
        bail!("`{input}` is neither a file nor a bundled label");
    };
    Ok(parse_graph(&text)?)
}

fn realized(graph: &DualGraph) -> Result<Arc<GraphCurve>> {
    if let Some(i) = (0..graph.vertex_count()).find(|&i| graph.weight(i) != 0) {
        bail!(
            "unrealized curve: component {} has positive genus; encode its genus as loops",
            graph.name(i)
        );
    }
    Ok(realize(graph))
}

fn seeds_from(seed: u64) -> [u64; 3] {
    [seed, seed.wrapping_add(1), seed.wrapping_add(2)]
}

fn cmd_invariants(graph: &DualGraph, caps: Caps) -> Result<String> {
    let mut out = String::new();
    let name_list = |members: &[usize]| {
        members
            .iter()
            .map(|&i| graph.name(i).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    out.push_str(&format!("genus {}\n", graph.arithmetic_genus()));
    out.push_str(&format!("components {}\n", graph.vertex_count()));
    out.push_str(&format!("nodes {}\n", graph.edges().len()));
    for i in 0..graph.vertex_count() {
        let loops = graph
            .edges()
            .iter()
            .filter(|e| e.is_loop() && e.u == i)
            .count() as i64;
        let delta_i = graph
            .edges()
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| e.incidence(i) as i64)
            .sum::<i64>();
        let g_i = graph.weight(i) as i64 + loops;
        out.push_str(&format!(
            "component {} genus {} meets {} nodes weight {}\n",
            graph.name(i),
            g_i,
            delta_i,
            2 * g_i - 2 + delta_i
        ));
    }
    out.push_str(&format!(
        "stability {}\n",
        graph.classify_stability(caps.subcurves)?
    ));
    let separating: Vec<String> = graph
        .separating_nodes()
        .iter()
        .map(|&k| graph.edges()[k].label.clone())
        .collect();
    out.push_str(&format!("separating nodes [{}]\n", separating.join(",")));
    let tails: Vec<String> = graph
        .tails()
        .iter()
        .map(|t| format!("{{{}}}", name_list(&t.members)))
        .collect();
    out.push_str(&format!("tails [{}]\n", tails.join(" ")));
    out.push_str(&format!(
        "separating lines [{}]\n",
        name_list(&graph.separating_lines())
    ));
    match graph.b_pairs() {
        Ok(pairs) => {
            let rendered: Vec<String> = pairs
                .iter()
                .map(|&(c, d)| format!("({},{})", graph.name(c), graph.name(d)))
                .collect();
            out.push_str(&format!("B-pairs [{}]\n", rendered.join(" ")));
            let blocks: Vec<String> = graph
                .b_decomposition(caps.subcurves)?
                .iter()
                .map(|b| format!("{{{}}}", name_list(b)))
                .collect();
            out.push_str(&format!("B-decomposition [{}]\n", blocks.join(" ")));
        }
        Err(e) => out.push_str(&format!("B-pairs unavailable: {e}\n")),
    }
    Ok(out)
}

fn cmd_balanced(graph: &DualGraph, degree: i64, caps: Caps) -> Result<String> {
    let set = enumerate_balanced(graph, degree, caps.subcurves, caps.boxes)?;
    let mut out = String::new();
    for member in &set.members {
        out.push_str(&format!("{member}\n"));
    }
    out.push_str(&format!(
        "{} balanced multidegrees of degree {degree}\n",
        set.members.len()
    ));
    Ok(out)
}

fn cmd_h0(
    graph: &DualGraph,
    degrees: &str,
    random: bool,
    seed: u64,
) -> Result<String> {
    let curve = realized(graph)?;
    let entries = parse_multidegree(degrees)?;
    if entries.len() != graph.vertex_count() {
        bail!(
            "multidegree has {} entries for {} components",
            entries.len(),
            graph.vertex_count()
        );
    }
    let bundle = if random {
        let mut rng = seeded_rng(seed);
        random_bundle(&curve, entries.clone(), &mut rng)
    } else {
        LineBundle::new(
            curve.clone(),
            entries.clone(),
            curve.branches().iter().map(|_| Q::one()).collect(),
        )?
    };
    Ok(format!(
        "h0 = {} at multidegree {}\n",
        h0(&bundle),
        Multidegree::new(entries)
    ))
}

/// Unconditional probe of the low-degree bound on a stored example
/// bundle: the balanced configurations bundled with the suite violate
/// it, witnessing that the theorem's hypotheses are necessary.
fn low_degree_probe(input: &str) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for ex in example_suite()? {
        if ex.label != input {
            continue;
        }
        let total: i64 = ex.bundle.multidegree().iter().sum();
        if !(1..=4).contains(&total) {
            continue;
        }
        let h = h0(&ex.bundle) as i64;
        let bound = total / 2 + 1;
        out.push(VerificationReport::check(
            "clifford-low-degree-probe",
            ex.label,
            format!("h0 <= {bound}"),
            format!("h0 = {h}"),
            h <= bound,
            format!("stored bundle, multidegree {:?}", ex.bundle.multidegree()),
        ));
    }
    Ok(out)
}

fn cmd_verify(
    theorem: TheoremId,
    input: &str,
    seed: u64,
    samples: u32,
    caps: Caps,
) -> Result<Vec<VerificationReport>> {
    let graph = load_graph(input)?;
    let curve = realized(&graph)?;
    let g = graph.arithmetic_genus();
    let seeds = seeds_from(seed);
    let mut reports = Vec::new();
    match theorem {
        TheoremId::Riemann => {
            for d in (2 * g - 1)..=(2 * g + 2) {
                reports.extend(verify_riemann(&curve, d, &seeds, caps)?);
            }
        }
        TheoremId::CliffordUniform => {
            for total in 0..=(2 * g - 2) {
                for set in enumerate_balanced(&graph, total, caps.subcurves, caps.boxes)?
                    .members
                {
                    reports.extend(verify_clifford_uniform(&curve, &set, &seeds, caps)?);
                }
            }
        }
        TheoremId::Clifford2c => {
            for d in 0..=(2 * g) {
                reports.extend(verify_clifford_two_component(&curve, d, &seeds, caps)?);
            }
        }
        TheoremId::Extremes => {
            reports.extend(verify_degree_extremes(&curve, &seeds, caps)?);
        }
        TheoremId::Cl4 => {
            reports.extend(verify_clifford_low_degree(&curve, &seeds, caps)?);
            reports.extend(low_degree_probe(input)?);
        }
        TheoremId::G25 => {
            reports.extend(verify_g25_exclusion(&curve, samples, seed, caps)?);
        }
        TheoremId::Lemmas => {
            let mut rng = seeded_rng(seed);
            for total in -2..=(2 * g) {
                for set in enumerate_balanced(&graph, total, caps.subcurves, caps.boxes)?
                    .members
                {
                    let ones = LineBundle::new(
                        curve.clone(),
                        set.entries.clone(),
                        curve.branches().iter().map(|_| Q::one()).collect(),
                    )?;
                    reports.extend(verify_gluing_lemmas(&curve, &ones, caps)?);
                    let sampled = random_bundle(&curve, set.entries.clone(), &mut rng);
                    reports.extend(verify_gluing_lemmas(&curve, &sampled, caps)?);
                }
            }
        }
    }
    Ok(reports)
}

fn cmd_examples(only: Option<&str>, caps: Caps) -> Result<(String, usize)> {
    if let Some(label) = only {
        if label.starts_with("ct2") {
            let graph = examples::graph(label)
                .ok_or_else(|| anyhow!("no bundled example `{label}`"))?
                .map_err(|e| anyhow!("{e}"))?;
            let table = cmd_balanced(&graph, 2, caps)?;
            return Ok((format!("{label} balanced degree-2 table:\n{table}"), 0));
        }
    }
    let mut reports = counterexample_suite()?;
    if let Some(label) = only {
        reports.retain(|r| r.instance == label);
        if reports.is_empty() {
            bail!("no bundled example `{label}`");
        }
    }
    let failures = failure_count(&reports);
    Ok((render(&reports, Format::Text), failures))
}

fn cmd_classify(
    kind: ClassifyKind,
    input: Option<&str>,
    caps: Caps,
) -> Result<(String, usize)> {
    match kind {
        ClassifyKind::G25 => Ok((curvelab::theorem_lab::g25_table()?, 0)),
        ClassifyKind::Hypcomb => {
            let input = input.ok_or_else(|| anyhow!("classify hypcomb needs a curve"))?;
            let graph = load_graph(input)?;
            let realization = realized(&graph).ok();
            let reports = hypcomb_check(&graph, realization.as_ref(), caps)?;
            let failures = failure_count(&reports);
            Ok((render(&reports, Format::Text), failures))
        }
        ClassifyKind::Wh => {
            let input = input.ok_or_else(|| anyhow!("classify wh needs a curve"))?;
            let graph = load_graph(input)?;
            let realization = realized(&graph).ok();
            let out = weakly_hyperelliptic_classify(&graph, realization.as_ref(), caps)?;
            let mut text = String::new();
            for c in &out {
                text.push_str(&format!("{} {:?}: {}\n", c.multidegree, c.pattern, c.notes));
            }
            text.push_str(&format!("{} multidegrees classified\n", out.len()));
            Ok((text, 0))
        }
    }
}

fn run(cli: Cli) -> Result<(String, usize)> {
    let caps = Caps {
        subcurves: cli.cap_subcurves,
        boxes: cli.cap_box,
    };
    match &cli.command {
        Command::Invariants { input } => {
            let graph = load_graph(input)?;
            Ok((cmd_invariants(&graph, caps)?, 0))
        }
        Command::Balanced { input, degree } => {
            let graph = load_graph(input)?;
            Ok((cmd_balanced(&graph, *degree, caps)?, 0))
        }
        Command::H0 {
            input,
            degrees,
            random,
        } => {
            let graph = load_graph(input)?;
            Ok((cmd_h0(&graph, degrees, *random, cli.seed)?, 0))
        }
        Command::Verify { theorem, input } => {
            let reports = cmd_verify(*theorem, input, cli.seed, cli.samples, caps)?;
            let failures = failure_count(&reports);
            Ok((render(&reports, cli.format.into()), failures))
        }
        Command::Examples { only } => cmd_examples(only.as_deref(), caps),
        Command::Classify { kind, input } => cmd_classify(*kind, input.as_deref(), caps),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, failures)) => {
            print!("{output}");
            if failures > 0 {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
