mod source;

use std::io::{self, Write};
use std::process::ExitCode;

use charvar::certify::{
    certify_non_fp, generic_vanishing_probe, kernel_report_univariate, CertifyError, GroupDescriptor, NuDescriptor,
    Strategy,
};
use charvar::constructions::{
    bestvina_brady, flag_complex, pencil_numerology, raag, raag_complex, reduced_homology, Graph,
};
use charvar::fox::alexander_matrix;
use charvar::homology::{
    finite_cover_oracle, kernel_homology_univariate, twisted_betti, window_homology, window_slope,
    DEFAULT_WINDOW_MEMORY,
};
use charvar::jump_loci::{is_full_generic, is_full_v1, is_full_vr_product, v1_ideal};
use charvar::laurent::Character;
use charvar::sampling::DEFAULT_SEED;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use source::{parse_nu, GraphArgs, GroupArgs};

#[derive(Parser, Debug)]
#[command(name = "charvar", version, about = "Characteristic varieties and finiteness certificates for abelian kernels")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Twisted Betti numbers at a character.
    Betti {
        #[command(flatten)]
        group: GroupArgs,
        /// `generic`, `trivial`, or comma-separated rationals.
        #[arg(long = "char", default_value = "generic")]
        character: String,
        /// Evaluate at `nu^* rho` for a character `rho` of `Z^m` instead.
        #[arg(long)]
        nu: Option<String>,
    },
    /// Alexander matrix over the abelianization, or over `nu`.
    Alexander {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        nu: Option<String>,
    },
    /// Ideal of `V^1_t` and whether `V^r_1` is the whole torus.
    Jumploci {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 1, value_parser = positive)]
        r: usize,
        #[arg(long, default_value_t = 1, value_parser = positive)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Certificate that `ker nu` is not of type FP_r.
    Certify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "ones")]
        nu: String,
        #[arg(long, default_value_t = 1, value_parser = positive)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Route::Auto)]
        strategy: Route,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Sampled Betti numbers `b_{<=r}(G, nu^* rho)`.
    Probe {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "ones")]
        nu: String,
        #[arg(long, default_value_t = 1, value_parser = positive)]
        r: usize,
        #[arg(long, default_value_t = 100, value_parser = positive)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Exact homology of `ker nu` for `nu` onto `Z`.
    Kernel {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "ones")]
        nu: String,
        /// Highest degree reported (default: top degree of the chain model).
        #[arg(long)]
        top: Option<usize>,
        /// Also certify at this degree and cross-check the two.
        #[arg(long, value_parser = positive)]
        r: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Homology of truncated infinite cyclic covers.
    Window {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "ones")]
        nu: String,
        #[arg(long, default_value_t = 6, value_parser = positive)]
        radius: usize,
        /// Byte budget for the largest window.
        #[arg(long, env = "CHARVAR_MEMORY_CEILING", default_value_t = DEFAULT_WINDOW_MEMORY)]
        memory_ceiling: u64,
    },
    /// Right-angled Artin group of a graph.
    Raag {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Bestvina-Brady kernel of a graph.
    Bb {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Flag complex of a graph.
    Flag {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Numerology of the pencil on a product of curves.
    Pencil {
        #[arg(long, value_delimiter = ',', required = true)]
        genus: Vec<u32>,
    },
    /// Index-2 cover against twisted homology at `t = 1` and `t = -1`.
    Oracle {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "ones")]
        nu: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Route {
    Auto,
    Generic,
    Kunneth,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug)]
pub enum CliError {
    Lib(charvar::Error),
    Usage(String),
    Io(String),
}

impl From<charvar::Error> for CliError {
    fn from(e: charvar::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.code(),
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
        }
    }

    /// The criterion's hypotheses fail, as opposed to a malformed request.
    fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            CliError::Lib(charvar::Error::Certify(CertifyError::TrivialNu | CertifyError::FullnessNotEstablished(_)))
        )
    }

    fn detail(&self) -> Option<Value> {
        match self {
            CliError::Lib(charvar::Error::Certify(CertifyError::FullnessNotEstablished(v))) => serde_json::to_value(v).ok(),
            _ => None,
        }
    }
}

fn lib<T, E: Into<charvar::Error>>(r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Lib(e.into()))
}

/// What a subcommand produced: the JSON result and its text rendering.
struct Report {
    result: Value,
    text: String,
    /// A negative verdict the caller asked about (exit code 2).
    negative: bool,
}

impl Report {
    fn new<T: Serialize>(result: &T, text: String) -> Result<Self, CliError> {
        let result = serde_json::to_value(result).map_err(|e| CliError::Io(e.to_string()))?;
        Ok(Report { result, text, negative: false })
    }
}

/// Serialized name of a unit enum variant.
fn label<T: Serialize>(x: &T) -> String {
    serde_json::to_value(x).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Serialize)]
struct BettiResult {
    group: GroupDescriptor,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<NuDescriptor>,
    character: Character,
    betti: Vec<usize>,
    chain_ranks: Vec<usize>,
    euler_characteristic: i64,
}

fn betti(group: &GroupArgs, character: &str, nu: Option<&str>) -> Result<Report, CliError> {
    let model = group.model()?;
    let (c, nu) = match nu {
        Some(spec) => {
            let nu = parse_nu(&model, spec)?;
            (lib(model.complex(nu.as_map()))?, Some(NuDescriptor::from(&nu)))
        }
        None => (lib(model.full_complex())?, None),
    };
    let rho = lib(Character::parse(character, c.variable_count()))?;
    let b = lib(twisted_betti(&c, &rho))?;
    let text = format!("b({}) = ({})\n", rho, join(&b.betti));
    Report::new(
        &BettiResult {
            group: GroupDescriptor::of(&model),
            nu,
            character: rho,
            euler_characteristic: b.euler_characteristic(),
            betti: b.betti,
            chain_ranks: b.chain_ranks,
        },
        text,
    )
}

fn alexander(group: &GroupArgs, nu: Option<&str>) -> Result<Report, CliError> {
    let model = group.model()?;
    let map = match nu {
        Some(spec) => parse_nu(&model, spec)?.as_map().clone(),
        None => model.full_map(),
    };
    let a = lib(alexander_matrix(model.presentation(), &map))?;
    let entries = a.to_text();
    let mut text = String::new();
    for row in &entries {
        text.push_str(&format!("[ {} ]\n", row.join(" | ")));
    }
    let result = json!({
        "group": GroupDescriptor::of(&model),
        "variables": a.variable_count(),
        "rows": a.rows(),
        "cols": a.cols(),
        "entries": entries,
    });
    Report::new(&result, text)
}

fn jumploci(group: &GroupArgs, r: usize, t: usize, seed: u64) -> Result<Report, CliError> {
    let model = group.model()?;
    let ideal = if r == 1 { Some(lib(v1_ideal(model.presentation(), t))?) } else { None };
    let verdict = if !model.factors().is_empty() {
        lib(is_full_vr_product(model.factors(), r, seed))?
    } else if r == 1 {
        lib(is_full_v1(&model))?
    } else {
        lib(is_full_generic(&model, r))?
    };
    let mut text = String::new();
    if let Some(i) = &ideal {
        text.push_str(&format!("V^1_{t} ideal (minors of size {}): ", i.minor_size));
        if i.zero_ideal {
            text.push_str("zero\n");
        } else {
            text.push_str(&format!("({})\n", i.generators.join(", ")));
        }
        for c in &i.caveats {
            text.push_str(&format!("  note: {c}\n"));
        }
    }
    text.push_str(&format!("V^{r}_1 full: {} ({})\n", label(&verdict.status), label(&verdict.method)));
    if let Some(reason) = &verdict.reason {
        text.push_str(&format!("  {reason}\n"));
    }
    let result = json!({
        "group": GroupDescriptor::of(&model),
        "r": r,
        "t": t,
        "ideal": ideal,
        "fullness": verdict,
    });
    Report::new(&result, text)
}

fn certify(group: &GroupArgs, nu: &str, r: usize, route: Route, seed: u64) -> Result<Report, CliError> {
    let model = group.model()?;
    let nu = parse_nu(&model, nu)?;
    let strategy = match route {
        Route::Generic => Strategy::GenericRank,
        Route::Kunneth => Strategy::KunnethProduct,
        Route::Auto if model.factors().is_empty() => Strategy::GenericRank,
        Route::Auto => Strategy::KunnethProduct,
    };
    let cert = lib(certify_non_fp(&model, &nu, r, strategy, seed))?;
    let conclusions: Vec<String> = cert.conclusions.iter().map(label).collect();
    let mut text = format!("{}: ker nu with nu = {:?}\n", cert.group.name, cert.nu.images);
    text.push_str(&format!("conclusions (r = {r}): {}\n", conclusions.join(", ")));
    text.push_str(&format!("generic betti: ({})\n", join(&cert.evidence.generic_betti)));
    for c in &cert.citations {
        text.push_str(&format!("  [{}] {}\n", c.id, c.statement));
    }
    Report::new(&cert, text)
}

fn probe(group: &GroupArgs, nu: &str, r: usize, trials: usize, seed: u64) -> Result<Report, CliError> {
    let model = group.model()?;
    let nu = parse_nu(&model, nu)?;
    let report = lib(generic_vanishing_probe(&model, &nu, r, trials, seed))?;
    let mut text = format!("{} of {} samples have b_0..b_{r} = 0\n", report.vanishing, report.trials);
    for s in report.samples.iter().take(10) {
        text.push_str(&format!("  trial {:>3} rho = {}: ({})\n", s.trial, s.character, join(&s.betti)));
    }
    if report.samples.len() > 10 {
        text.push_str(&format!("  ... {} more\n", report.samples.len() - 10));
    }
    Report::new(&report, text)
}

fn kernel(group: &GroupArgs, nu: &str, top: Option<usize>, r: Option<usize>, seed: u64) -> Result<Report, CliError> {
    let model = group.model()?;
    let nu = parse_nu(&model, nu)?;
    let top = match top {
        Some(t) => t,
        None => lib(model.complex(nu.as_map()))?.top_degree(),
    };
    let cert = match r {
        Some(r) => certify_non_fp(&model, &nu, r, if model.factors().is_empty() { Strategy::GenericRank } else { Strategy::KunnethProduct }, seed).ok(),
        None => None,
    };
    let report = lib(kernel_report_univariate(&model, &nu, top, cert.as_ref()))?;
    let mut text = String::new();
    for d in &report.homology.degrees {
        let torsion = if d.torsion_factors.is_empty() { String::new() } else { format!(" + torsion ({})", d.torsion_factors.join(", ")) };
        text.push_str(&format!(
            "H_{}(N; Q): free rank {}{} -> {}\n",
            d.degree,
            d.free_rank,
            torsion,
            if d.infinite_dimensional { "infinite-dimensional".to_string() } else { format!("dimension {}", d.torsion_dimension) }
        ));
    }
    let mut negative = false;
    if let Some(x) = &report.cross_check {
        negative = !x.consistent;
        text.push_str(&format!("cross-check with certificate at r = {}: {}\n", x.certificate_r, if x.consistent { "consistent" } else { "INCONSISTENT" }));
    }
    let mut out = Report::new(&report, text)?;
    out.negative = negative;
    Ok(out)
}

fn window(group: &GroupArgs, nu: &str, radius: usize, ceiling: u64) -> Result<Report, CliError> {
    let model = group.model()?;
    let nu = parse_nu(&model, nu)?;
    let c = lib(model.complex(nu.as_map()))?;
    let rows = lib(window_homology(&c, radius, ceiling))?;
    let degrees = c.top_degree() + 1;
    let slopes: Vec<Option<String>> =
        (0..degrees).map(|j| window_slope(&rows, nu.target_rank(), j).map(|s| s.to_string())).collect();
    let mut text = String::from("radius  dimensions\n");
    for row in &rows {
        text.push_str(&format!("{:>6}  ({})\n", row.radius, join(&row.dimensions)));
    }
    let shown: Vec<String> = slopes.iter().map(|s| s.clone().unwrap_or_else(|| "-".into())).collect();
    text.push_str(&format!("slope per translate: ({})\n", shown.join(", ")));
    let result = json!({
        "group": GroupDescriptor::of(&model),
        "nu": NuDescriptor::from(&nu),
        "memory_ceiling": ceiling,
        "rows": rows,
        "slopes": slopes,
    });
    Report::new(&result, text)
}

fn graph_json(g: &Graph) -> Value {
    json!({ "vertex_count": g.vertex_count(), "edges": g.edges() })
}

fn raag_cmd(graph: &GraphArgs) -> Result<Report, CliError> {
    let g = graph.graph()?;
    let model = lib(raag(&g))?;
    let generic = lib(twisted_betti(&lib(model.full_complex())?, &Character::Generic))?;
    let flag = flag_complex(&g);
    let text = format!(
        "RAAG on {} vertices, {} edges; cells per degree ({}); generic betti ({})\n",
        g.vertex_count(),
        g.edges().len(),
        join(&generic.chain_ranks),
        join(&generic.betti)
    );
    let result = json!({
        "graph": graph_json(&g),
        "group": GroupDescriptor::of(&model),
        "f_vector": flag.f_vector(),
        "cells": generic.chain_ranks,
        "generic_betti": generic.betti,
    });
    Report::new(&result, text)
}

fn bb_cmd(graph: &GraphArgs) -> Result<Report, CliError> {
    let g = graph.graph()?;
    let bb = lib(bestvina_brady(&g))?;
    let homology = lib(kernel_homology_univariate(&raag_complex(&g)))?;
    let reduced = reduced_homology(&flag_complex(&g));
    let mut text = format!("flag complex reduced betti: ({})\n", join(&reduced));
    if !bb.connected {
        text.push_str("graph is disconnected: the kernel is not finitely generated\n");
    }
    for d in &homology.degrees {
        text.push_str(&format!(
            "H_{}(BB; Q): {}\n",
            d.degree,
            if d.infinite_dimensional { "infinite-dimensional".to_string() } else { format!("dimension {}", d.torsion_dimension) }
        ));
    }
    let result = json!({
        "graph": graph_json(&g),
        "connected": bb.connected,
        "nu": NuDescriptor::from(&bb.nu),
        "flag_reduced_betti": reduced,
        "kernel": homology,
    });
    Report::new(&result, text)
}

fn flag_cmd(graph: &GraphArgs) -> Result<Report, CliError> {
    let g = graph.graph()?;
    let k = flag_complex(&g);
    let reduced = reduced_homology(&k);
    let text = format!("f-vector ({}); reduced betti ({})\n", join(&k.f_vector()), join(&reduced));
    let result = json!({
        "graph": graph_json(&g),
        "dimension": k.dimension(),
        "f_vector": k.f_vector(),
        "facets": k.facets(),
        "reduced_betti": reduced,
    });
    Report::new(&result, text)
}

fn pencil(genus: &[u32]) -> Result<Report, CliError> {
    let d = lib(pencil_numerology(genus))?;
    let mut text = format!(
        "r = {}; |B_j| = ({}); |C(h)| = {}; chi(X) = {}\n",
        d.r,
        join(&d.branch_sizes),
        d.critical_points,
        d.euler_x
    );
    if let Some(v) = &d.finiteness_verdict {
        text.push_str(&format!("kernel: {v}\n"));
    }
    for n in &d.notes {
        text.push_str(&format!("  {n}\n"));
    }
    Report::new(&d, text)
}

fn oracle(group: &GroupArgs, nu: &str) -> Result<Report, CliError> {
    let model = group.model()?;
    let nu = parse_nu(&model, nu)?;
    let r = lib(finite_cover_oracle(model.presentation(), &nu))?;
    let parts: Vec<String> = r.twisted_b1.iter().map(|(label, b)| format!("{b} at {label}")).collect();
    let text = format!(
        "index-{} subgroup: {} generators, b1 = {}; twisted b1: {}; {}\n",
        r.index,
        r.subgroup_generators,
        r.subgroup_b1,
        parts.join(", "),
        if r.consistent { "consistent" } else { "INCONSISTENT" }
    );
    let negative = !r.consistent;
    let mut out = Report::new(&r, text)?;
    out.negative = negative;
    Ok(out)
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Betti { .. } => "betti",
        Command::Alexander { .. } => "alexander",
        Command::Jumploci { .. } => "jumploci",
        Command::Certify { .. } => "certify",
        Command::Probe { .. } => "probe",
        Command::Kernel { .. } => "kernel",
        Command::Window { .. } => "window",
        Command::Raag { .. } => "raag",
        Command::Bb { .. } => "bb",
        Command::Flag { .. } => "flag",
        Command::Pencil { .. } => "pencil",
        Command::Oracle { .. } => "oracle",
    }
}

fn run(c: &Command) -> Result<Report, CliError> {
    match c {
        Command::Betti { group, character, nu } => betti(group, character, nu.as_deref()),
        Command::Alexander { group, nu } => alexander(group, nu.as_deref()),
        Command::Jumploci { group, r, t, seed } => jumploci(group, *r, *t, *seed),
        Command::Certify { group, nu, r, strategy, seed } => certify(group, nu, *r, *strategy, *seed),
        Command::Probe { group, nu, r, trials, seed } => probe(group, nu, *r, *trials, *seed),
        Command::Kernel { group, nu, top, r, seed } => kernel(group, nu, *top, *r, *seed),
        Command::Window { group, nu, radius, memory_ceiling } => window(group, nu, *radius, *memory_ceiling),
        Command::Raag { graph } => raag_cmd(graph),
        Command::Bb { graph } => bb_cmd(graph),
        Command::Flag { graph } => flag_cmd(graph),
        Command::Pencil { genus } => pencil(genus),
        Command::Oracle { group, nu } => oracle(group, nu),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let command = name(&cli.command);
    match run(&cli.command) {
        Ok(report) => {
            if cli.json {
                let out = json!({ "command": command, "result": report.result });
                emit(&format!("{}\n", serde_json::to_string_pretty(&out).expect("serializable")));
            } else {
                emit(&report.text);
            }
            ExitCode::from(if report.negative { 2 } else { 0 })
        }
        Err(e) => {
            if cli.json {
                let mut error = json!({ "code": e.code(), "message": e.message() });
                if let Some(d) = e.detail() {
                    error["detail"] = d;
                }
                emit(&format!("{}\n", serde_json::to_string_pretty(&json!({ "command": command, "error": error })).expect("serializable")));
            } else {
                eprintln!("error[{}]: {}", e.code(), e.message());
            }
            ExitCode::from(if e.is_hypothesis_failure() { 2 } else { 1 })
        }
    }
}
