//! `sphflex`: spherical flexibility of graphs from the command line.
//!
//! Exit status: 0 on success, 1 on a domain error (the input is well formed
//! but the computation fails or a check does not hold), 2 on a usage error.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sphflex::coloring::{enumerate_nap, flexibility_certificate, EdgeColoring};
use sphflex::continuation::{trace, TraceConfig};
use sphflex::cuts::{
    admissible_cases, count_degree_table_orbits, mu_lookup, type_table, K33Case, MU_TABLE,
};
use sphflex::facts::verify_suite;
use sphflex::graph::{Graph, Vertex};
use sphflex::io;
use sphflex::motions::{
    cda_feasible_intervals, cda_motion, cda_params_from_e, detect_k33_motion_kind, dixon1_motion,
    dixon2_motion, full_turn, polar_nap_motion, CdaBranch, Dixon1Params, Dixon2Branch,
    Dixon2Params, MotionTrajectory,
};
use sphflex::quad::{classify, QuadLengths, SignProfile};
use sphflex::tol;

const DEFAULT_SEED: u64 = 20_240_607;

#[derive(Parser)]
#[command(name = "sphflex", version, about = "Spherical flexibility of graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for every pseudo-random choice.
    #[arg(long, env = "SPHFLEX_SEED", default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
    Tabular,
}

#[derive(Subcommand)]
enum Command {
    /// List the NAP-colorings of a graph.
    Colorings {
        #[arg(long)]
        graph: PathBuf,
        /// Identify each coloring with its red/blue swap.
        #[arg(long)]
        modulo_swap: bool,
    },
    /// Decide whether a graph is flexible on the sphere.
    Certify {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Sample the polar motion induced by a NAP-coloring.
    Realize {
        #[arg(long)]
        graph: PathBuf,
        /// Coloring file; defaults to the first NAP-coloring found.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Pole vertices placed at the South pole instead of the North pole.
        #[arg(long, value_delimiter = ',')]
        south: Vec<Vertex>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace the configuration curve through a seed realization.
    Trace {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lengths: PathBuf,
        /// Realization to start from.
        #[arg(long)]
        start: PathBuf,
        #[arg(long, default_value_t = 0.02)]
        step: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 2000)]
        max_steps: usize,
        /// Leave the seed in the opposite direction.
        #[arg(long)]
        reverse: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a quadrilateral from its four lengths `12 23 34 14`.
    ClassifyQuad {
        #[arg(num_args = 4, allow_negative_numbers = true, required = true)]
        values: Vec<f64>,
        /// Values are distances λ rather than inner products δ.
        #[arg(long)]
        lambda: bool,
        #[arg(long, default_value_t = tol::COMPATIBILITY)]
        tol: f64,
    },
    /// Sample one of the three motions of K33.
    K33 {
        #[arg(long, value_enum)]
        kind: K33Kind,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Dixon 1: odd-side factors.
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.4,0.6")]
        c: Vec<f64>,
        /// Dixon 1: even-side factors.
        #[arg(long, value_delimiter = ',', default_value = "0.3,0.5,0.7")]
        d: Vec<f64>,
        /// Dixon 2: first coordinate of the axis vertices.
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.15, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        gamma: f64,
        /// Dixon 2: sampled range of the first coordinate of vertex 1.
        #[arg(long, default_value_t = 0.5)]
        p1_min: f64,
        #[arg(long, default_value_t = 0.6)]
        p1_max: f64,
        /// Dixon 2: follow the larger root.
        #[arg(long)]
        upper: bool,
        /// Constant diagonal angle: inner product of vertices 5 and 6.
        #[arg(long, default_value_t = 0.75, allow_negative_numbers = true)]
        e: f64,
        #[arg(long, default_value_t = 8.0)]
        t_min: f64,
        #[arg(long, default_value_t = 20.0)]
        t_max: f64,
        /// Constant diagonal angle: signs of the two square roots, e.g. `1,-1`.
        #[arg(long, value_delimiter = ',', default_value = "1,1", allow_negative_numbers = true)]
        branch: Vec<i8>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree tables, type tables, the μ table and feasibility verdicts.
    Tables,
    /// Recompute the built-in fact suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Facts)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum K33Kind {
    Dixon1,
    Dixon2,
    Cda,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    #[value(alias = "paper")]
    Facts,
}

/// Bad flag values found after parsing; reported with exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Command output: either printed or written to `--out`.
struct Output {
    text: String,
    /// Set when the subcommand's own verdict is a failure.
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, failed: false }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    io::parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn json_string(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value serializes");
    s.push('\n');
    s
}

fn colorings(cli: &Cli, graph: &Path, modulo_swap: bool) -> Result<Output> {
    let g = load_graph(graph)?;
    let set = enumerate_nap(&g, modulo_swap)?;
    Ok(Output::ok(match cli.format {
        Format::Structured => io::coloring_set_to_json(&g, &set) + "\n",
        Format::Tabular => {
            let mut s = String::from("index,a,b,color\n");
            for (k, c) in set.colorings.iter().enumerate() {
                for (a, b, col) in c.triples(&g) {
                    writeln!(s, "{k},{a},{b},{}", col.name())?;
                }
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{} NAP-colorings{}\n",
                set.len(),
                if modulo_swap { " modulo swap" } else { "" }
            );
            for c in &set.colorings {
                writeln!(s, "{}", io::coloring_to_text(&g, c))?;
            }
            s
        }
    }))
}

fn certify(cli: &Cli, graph: &Path) -> Result<Output> {
    let g = load_graph(graph)?;
    let cert = flexibility_certificate(&g);
    Ok(Output::ok(match cli.format {
        Format::Structured => json_string(&json!({
            "flexible": cert.is_some(),
            "certificate": cert.as_ref().map(|c| c.triples(&g)),
        })),
        Format::Tabular => format!("flexible\n{}\n", cert.is_some()),
        Format::Text => match &cert {
            Some(c) => format!(
                "flexible on the sphere\nNAP-coloring: {}\n",
                io::coloring_to_text(&g, c)
            ),
            None => "not flexible on the sphere\n".to_string(),
        },
    }))
}

fn trajectory_output(cli: &Cli, traj: &MotionTrajectory, extra: &[(&str, String)]) -> String {
    match cli.format {
        Format::Structured => io::trajectory_to_json(traj) + "\n",
        Format::Tabular => io::trajectory_to_csv(traj),
        Format::Text => {
            let statuses = traj.statuses(tol::DISTINCTNESS);
            let mut s = String::new();
            let mut line = |k: &str, v: String| {
                let _ = writeln!(s, "{k:<24}{v}");
            };
            line("motion", traj.kind.name().to_string());
            line("samples", traj.samples.len().to_string());
            line("max edge residual", format!("{:.3e}", traj.max_edge_residual()));
            line("max sphere residual", format!("{:.3e}", traj.max_sphere_residual()));
            line(
                "non-injective samples",
                statuses.iter().filter(|st| !st.injective()).count().to_string(),
            );
            line(
                "essentially distinct",
                traj.distinct_count(tol::DISTINCTNESS).to_string(),
            );
            for (k, v) in extra {
                line(k, v.clone());
            }
            s
        }
    }
}

fn realize(
    cli: &Cli,
    graph: &Path,
    coloring: Option<&Path>,
    samples: usize,
    south: &[Vertex],
) -> Result<Output> {
    let g = load_graph(graph)?;
    let c: EdgeColoring = match coloring {
        Some(p) => {
            let (cg, c) = io::parse_coloring(&read(p)?)?;
            if cg != g {
                return Err(anyhow!("coloring file is defined on a different graph"));
            }
            c
        }
        None => flexibility_certificate(&g).ok_or_else(|| anyhow!("graph has no NAP-coloring"))?,
    };
    if samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    let south: BTreeSet<Vertex> = south.iter().copied().collect();
    let traj = polar_nap_motion(&g, &c, &full_turn(samples), &south, cli.seed)?;
    Ok(Output::ok(trajectory_output(
        cli,
        &traj,
        &[("coloring", io::coloring_to_text(&g, &c))],
    )))
}

#[allow(clippy::too_many_arguments)]
fn trace_cmd(
    cli: &Cli,
    graph: &Path,
    lengths: &Path,
    start: &Path,
    step: f64,
    tol_: f64,
    max_steps: usize,
    reverse: bool,
) -> Result<Output> {
    if step.is_nan() || step <= 0.0 {
        return Err(usage("--step must be positive"));
    }
    if tol_.is_nan() || tol_ <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    let g = load_graph(graph)?;
    let lam = io::parse_lengths(&read(lengths)?)?;
    let seed = io::parse_realization(&read(start)?)?;
    let cfg = TraceConfig {
        step_size: step,
        newton_tol: tol_,
        max_steps,
        direction: if reverse { -1.0 } else { 1.0 },
        ..TraceConfig::default()
    };
    let t = trace(&g, &lam, &seed, None, &cfg)?;
    let termination = serde_json::to_value(t.termination)?
        .as_str()
        .unwrap_or_default()
        .to_string();
    Ok(Output::ok(trajectory_output(
        cli,
        &t.trajectory,
        &[("termination", termination)],
    )))
}

fn sign_text(s: SignProfile) -> String {
    let sgn = |x: i8| if x > 0 { "+1" } else { "-1" };
    match s {
        SignProfile::None => "-".to_string(),
        SignProfile::Alpha(a) => format!("alpha = {}", sgn(a)),
        SignProfile::AlphaBetaGamma(a, b, c) => {
            format!("alpha = {}, beta = {}, gamma = {}", sgn(a), sgn(b), sgn(c))
        }
    }
}

fn classify_quad(cli: &Cli, values: &[f64], lambda: bool, tol_: f64) -> Result<Output> {
    let [a, b, c, d] = <[f64; 4]>::try_from(values).map_err(|_| usage("expected four values"))?;
    let q = if lambda {
        QuadLengths::from_lambdas(a, b, c, d)
    } else {
        QuadLengths::new(a, b, c, d)
    };
    let ty = classify(&q, tol_)?;
    let rows = ty.tag.mu_rows();
    Ok(Output::ok(match cli.format {
        Format::Structured => json_string(&json!({
            "type": ty.tag.name(),
            "signs": ty.signs,
            "mu_rows": rows.iter().map(|r| {
                let (case, sub) = r.labels();
                let mu = mu_lookup(*r).expect("row exists");
                json!({"case": case, "subcase": sub, "om": mu[0], "ou": mu[1], "em": mu[2], "eu": mu[3]})
            }).collect::<Vec<_>>(),
        })),
        Format::Tabular => {
            let mut s = String::from("type,case,subcase,om,ou,em,eu\n");
            for r in &rows {
                let (case, sub) = r.labels();
                let mu = mu_lookup(*r)?;
                writeln!(s, "{},{case},{sub},{},{},{},{}", ty.tag.name(), mu[0], mu[1], mu[2], mu[3])?;
            }
            s
        }
        Format::Text => {
            let mut s = format!("type: {}\nsigns: {}\nmu rows (om ou em eu):\n", ty.tag.name(), sign_text(ty.signs));
            for r in &rows {
                let mu = mu_lookup(*r)?;
                writeln!(s, "  {:<24}{} {} {} {}", r.to_string(), mu[0], mu[1], mu[2], mu[3])?;
            }
            s
        }
    }))
}

fn interior(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * (k as f64 + 0.5) / n as f64).collect()
}

fn k33(cli: &Cli, cmd: &Command) -> Result<Output> {
    let Command::K33 {
        kind,
        samples,
        c,
        d,
        alpha,
        beta,
        gamma,
        p1_min,
        p1_max,
        upper,
        e,
        t_min,
        t_max,
        branch,
        ..
    } = cmd
    else {
        unreachable!("dispatched on K33");
    };
    if *samples < 3 {
        return Err(usage("--samples must be at least 3"));
    }
    let mut extra = Vec::new();
    let traj = match kind {
        K33Kind::Dixon1 => {
            let (c, d) = (
                <[f64; 3]>::try_from(c.as_slice()).map_err(|_| usage("--c takes three values"))?,
                <[f64; 3]>::try_from(d.as_slice()).map_err(|_| usage("--d takes three values"))?,
            );
            let p = Dixon1Params { c, d };
            let (lo, hi) = p.s_range();
            if lo >= hi {
                return Err(anyhow!("empty parameter range [{lo}, {hi}]"));
            }
            dixon1_motion(&p, &interior(lo, hi, *samples))?
        }
        K33Kind::Dixon2 => {
            let p = Dixon2Params {
                alpha: *alpha,
                beta: *beta,
                gamma: *gamma,
            };
            let br = Dixon2Branch {
                upper: *upper,
                ..Dixon2Branch::default()
            };
            let full = dixon2_motion(&p, &interior(*p1_min, *p1_max, *samples), br)?;
            let k33 = full.restricted(&[1, 2, 3, 4, 5, 6])?;
            extra.push((
                "K33 part detected as",
                detect_k33_motion_kind(&k33, 1e-9)?.name().to_string(),
            ));
            full
        }
        K33Kind::Cda => {
            let [s2, s5] = <[i8; 2]>::try_from(branch.as_slice())
                .ok()
                .filter(|b| b.iter().all(|s| s.abs() == 1))
                .ok_or_else(|| usage("--branch takes two signs, e.g. 1,-1"))?;
            let params = cda_params_from_e(*e)?;
            let br = CdaBranch { s2, s5 };
            let feasible = cda_feasible_intervals(&params, br, *t_min, *t_max, 400);
            extra.push((
                "feasible t",
                feasible
                    .iter()
                    .map(|(a, b)| format!("[{a:.4}, {b:.4}]"))
                    .collect::<Vec<_>>()
                    .join(" "),
            ));
            extra.push(("a", format!("{}", params.a)));
            let ts: Vec<f64> = (0..*samples)
                .map(|k| t_min + (t_max - t_min) * k as f64 / (*samples - 1) as f64)
                .collect();
            cda_motion(&params, &ts, br)?
        }
    };
    if *kind != K33Kind::Dixon2 {
        extra.push(("detected as", detect_k33_motion_kind(&traj, 1e-9)?.name().to_string()));
    }
    Ok(Output::ok(trajectory_output(cli, &traj, &extra)))
}

fn tables(cli: &Cli) -> Result<Output> {
    let cases = admissible_cases();
    let orbits = count_degree_table_orbits();
    let report = verify_suite();
    Ok(Output::ok(match cli.format {
        Format::Structured => json_string(&json!({
            "degree_table_orbits": orbits,
            "admissible_tables": cases.len(),
            "cases": K33Case::ALL.iter().map(|k| json!({
                "case": k.number(),
                "degrees": k.degree_table().0,
                "types": k.type_table().to_string().lines().collect::<Vec<_>>(),
                "derived_types": type_table(&k.degree_table()).to_string().lines().collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "mu_table": MU_TABLE.iter().map(|(case, mu)| {
                let (c, sub) = case.labels();
                json!({"case": c, "subcase": sub, "om": mu[0], "ou": mu[1], "em": mu[2], "eu": mu[3]})
            }).collect::<Vec<_>>(),
            "verdicts": report.facts,
        })),
        Format::Tabular => sphflex::cuts::MU_TABLE_CSV.to_string(),
        Format::Text => {
            let mut s = format!(
                "{orbits} degree tables modulo symmetry; {} admissible tables\n",
                cases.len()
            );
            for k in K33Case::ALL {
                writeln!(s, "\ncase {} degrees (margins θ after | and on the last line):", k.number())?;
                writeln!(s, "{}", k.degree_table())?;
                writeln!(s, "types:\n{}", k.type_table())?;
            }
            writeln!(s, "\nmu table (om ou em eu):")?;
            for (case, mu) in MU_TABLE {
                writeln!(s, "  {:<24}{} {} {} {}", case.to_string(), mu[0], mu[1], mu[2], mu[3])?;
            }
            writeln!(s, "\nverdicts:")?;
            for f in &report.facts {
                writeln!(s, "  {}: {}", f.name, f.computed)?;
            }
            s
        }
    }))
}

fn verify(cli: &Cli) -> Result<Output> {
    let report = verify_suite();
    let text = match cli.format {
        Format::Structured => json_string(&serde_json::to_value(&report)?),
        Format::Tabular => {
            let mut s = String::from("fact,computed,expected,passed\n");
            for f in &report.facts {
                writeln!(s, "\"{}\",\"{}\",\"{}\",{}", f.name, f.computed, f.expected, f.passed)?;
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for f in &report.facts {
                let tag = if f.passed { "PASS" } else { "FAIL" };
                writeln!(s, "{tag}  {}: computed {}, expected {}", f.name, f.computed, f.expected)?;
            }
            s
        }
    };
    Ok(Output {
        text,
        failed: !report.all_passed(),
    })
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Colorings { graph, modulo_swap } => colorings(cli, graph, *modulo_swap),
        Command::Certify { graph } => certify(cli, graph),
        Command::Realize {
            graph,
            coloring,
            samples,
            south,
            ..
        } => realize(cli, graph, coloring.as_deref(), *samples, south),
        Command::Trace {
            graph,
            lengths,
            start,
            step,
            tol,
            max_steps,
            reverse,
            ..
        } => trace_cmd(cli, graph, lengths, start, *step, *tol, *max_steps, *reverse),
        Command::ClassifyQuad { values, lambda, tol } => classify_quad(cli, values, *lambda, *tol),
        cmd @ Command::K33 { .. } => k33(cli, cmd),
        Command::Tables => tables(cli),
        Command::Verify { .. } => verify(cli),
    }
}

fn out_path(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Realize { out, .. } | Command::Trace { out, .. } | Command::K33 { out, .. } => {
            out.as_deref()
        }
        _ => None,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|out| {
        match out_path(&cli.command) {
            Some(p) => std::fs::write(p, &out.text)
                .with_context(|| format!("cannot write {}", p.display()))?,
            None => print!("{}", out.text),
        }
        Ok(out.failed)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<UsageError>() { 2 } else { 1 })
        }
    }
}
