//! `skellim`: simplicial sets, lifting checks, comma and cone objects,
//! weighted limits and limits in finite categories from the command line.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use skellim::cert::Verdict;
use skellim::comma::{comma, cones_over, is_limit_cone};
use skellim::gen;
use skellim::hom::lifting::{default_bound, is_isofibration, is_kan, is_quasi_category, is_trivial_fibration, terminal_map, LiftingCertificate};
use skellim::limit::category::FiniteCategory;
use skellim::limit::diagram::DiagramInCat;
use skellim::limit::engine::{
    brute_force_colimit, brute_force_limit, colimit_by_skeletal_induction, compare_colimit_engines, compare_engines,
    limit_by_skeletal_induction, LimitCertificate, LimitKind,
};
use skellim::simplicial::colimits::pushout;
use skellim::simplicial::io::{map_from_json, map_to_json, sset_from_json, sset_to_json, to_dot};
use skellim::simplicial::map::SimplicialMap;
use skellim::simplicial::nerve::nerve;
use skellim::simplicial::product::product;
use skellim::simplicial::skeleton::{skeletal_filtration, skeleton};
use skellim::simplicial::sset::SimplicialSet;
use skellim::simplicial::standard::{boundary, horn, std_simplex};
use skellim::weights::{pseudo_weight, strict_limit, terminal_weight, weight_from_json, weight_to_json, weighted_limit};
use skellim::Error;

/// Exit codes beyond the verdicts: bad input or a failed computation.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "skellim", version, about = "Finite simplicial sets, lifting checks and limits by skeletal induction")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Highest dimension materialized for mapping spaces, comma objects and
    /// weighted limits.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    max_dim: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Induction,
    Brute,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Build and inspect simplicial sets.
    #[command(subcommand)]
    Sset(SsetCmd),
    /// Bounded lifting checks with certificates.
    #[command(subcommand)]
    Check(CheckCmd),
    /// The comma object `f↓g` of two maps into a common target.
    Comma {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        /// Emit the total object or its projection `(p₁, p₀)`.
        #[arg(long, value_enum, default_value_t = CommaPart::Object)]
        emit: CommaPart,
    },
    /// The object of cones over a diagram `d : X -> A`, or one of its
    /// vertices as a cone map.
    Cones {
        #[arg(long)]
        diagram: PathBuf,
        /// Emit the cone at this vertex of `Δ↓d` instead of the object.
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Limits of diagrams in finite categories.
    #[command(subcommand)]
    Limit(LimitCmd),
    /// Colimits of diagrams in finite categories, computed dually.
    Colimit(Problem),
    /// Weights.
    #[command(subcommand)]
    Weight(WeightCmd),
    /// The weighted limit `{W, F}`.
    Wlim {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Seeded random instances.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CommaPart {
    Object,
    Projection,
}

#[derive(Subcommand)]
enum SsetCmd {
    /// The standard simplex `Δⁿ`.
    Std { n: usize },
    /// The boundary `∂Δⁿ`.
    Boundary { n: usize },
    /// The horn `Λ^{n,k}`.
    Horn { n: usize, k: usize },
    /// The nerve of a `cat/1` category.
    Nerve {
        #[arg(long)]
        cat: PathBuf,
        /// Truncation dimension; required when the nerve is infinite.
        #[arg(long)]
        truncate: Option<usize>,
    },
    /// The product `X × Y`.
    Product { x: PathBuf, y: PathBuf },
    /// The pushout of a monomorphism `i : W -> Y` along `g : W -> Z`.
    Pushout {
        #[arg(long)]
        i: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// The `n`-skeleton.
    Skeleton { x: PathBuf, n: usize },
    /// The skeletal filtration: the cells attached at each stage.
    Filtration { x: PathBuf },
    /// Generator counts per dimension.
    Info { x: PathBuf },
    /// Re-serialize, or export the 1-skeleton with `--format dot`.
    Export { x: PathBuf },
}

#[derive(Args)]
struct Bound {
    /// Highest horn or boundary dimension tested.
    #[arg(long, env = "SKELLIM_BOUND", value_parser = clap::value_parser!(u64).range(1..))]
    bound: Option<u64>,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Inner horn filling.
    Qcat {
        x: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
    /// Horn filling.
    Kan {
        x: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
    /// Inner horn and isomorphism lifting for a map.
    Isofib {
        map: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
    /// Boundary lifting for a map.
    Trivfib {
        map: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
}

#[derive(Args)]
struct Problem {
    /// The category, `cat/1`.
    #[arg(long)]
    cat: PathBuf,
    /// The shape `X`, `sset/1`.
    #[arg(long)]
    shape: PathBuf,
    /// The diagram `X -> C`, `diag/1`.
    #[arg(long)]
    diagram: PathBuf,
    #[arg(long, value_enum, default_value_t = Engine::Induction)]
    engine: Engine,
    /// Products must have arity below this bound.
    #[arg(long)]
    kappa: Option<usize>,
}

#[derive(Subcommand)]
enum LimitCmd {
    /// The limit of a diagram in a finite category.
    Compute(Problem),
    /// Replay a `limcert/1` certificate, or test a cone over a map into a
    /// simplicial set for being a limit cone.
    Check {
        #[arg(long)]
        cat: Option<PathBuf>,
        #[arg(long)]
        shape: Option<PathBuf>,
        /// A `diag/1` diagram with `--cat` and `--shape`, or a `map/1`
        /// diagram `X -> A` with `--cone`.
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
        /// A cone as emitted by `cones --vertex`.
        #[arg(long)]
        cone: Option<PathBuf>,
        #[command(flatten)]
        bound: Bound,
    },
    /// The strict limit of a `weight/1` diagram of simplicial sets.
    Strict {
        #[arg(long)]
        diagram: PathBuf,
    },
}

#[derive(Subcommand)]
enum WeightCmd {
    /// The pseudo-limit weight of a shape.
    Pseudo {
        #[arg(long)]
        shape: PathBuf,
    },
    /// The terminal weight on the index of a `weight/1` diagram.
    Terminal {
        #[arg(long)]
        diagram: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// A finite lattice.
    Lattice {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        size: usize,
    },
    /// A finite join-semilattice.
    Semilattice {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        size: usize,
    },
    /// A finite poset.
    Poset {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        size: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
    },
    /// A simplicial set with bounded dimension and size.
    Sset {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 12)]
        cells: usize,
    },
    /// A monotone diagram from a shape into a poset.
    Diagram {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cat: PathBuf,
        #[arg(long)]
        shape: PathBuf,
    },
}

/// A command's result: text for stdout and the exit code.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }

    fn verdict(text: String, v: Verdict) -> Self {
        let code = match v {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Inconclusive => 2,
        };
        Outcome { text, code }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_sset(path: &Path) -> anyhow::Result<Arc<SimplicialSet>> {
    Ok(Arc::new(sset_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?))
}

fn load_map(path: &Path) -> anyhow::Result<SimplicialMap> {
    map_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_cat(path: &Path) -> anyhow::Result<FiniteCategory> {
    FiniteCategory::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn counts(x: &SimplicialSet) -> String {
    if x.is_empty() {
        return "empty".into();
    }
    x.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn emit_sset(x: &SimplicialSet, format: Format) -> String {
    match format {
        Format::Json => sset_to_json(x),
        Format::Dot => to_dot(x),
        Format::Text => format!("counts: {}\n", counts(x)),
    }
}

fn pretty(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_sset(cmd: SsetCmd, run: &RunConfig) -> anyhow::Result<Outcome> {
    let x: SimplicialSet = match cmd {
        SsetCmd::Std { n } => std_simplex(n),
        SsetCmd::Boundary { n } => boundary(n)?.0,
        SsetCmd::Horn { n, k } => horn(n, k)?.0,
        SsetCmd::Nerve { cat, truncate } => nerve(Arc::new(load_cat(&cat)?), truncate)?.sset().as_ref().clone(),
        SsetCmd::Product { x, y } => product(load_sset(&x)?, load_sset(&y)?)?.sset().as_ref().clone(),
        SsetCmd::Pushout { i, g } => pushout(&load_map(&i)?, &load_map(&g)?)?.sset.as_ref().clone(),
        SsetCmd::Skeleton { x, n } => skeleton(&load_sset(&x)?, n)?.0.as_ref().clone(),
        SsetCmd::Filtration { x } => {
            let x = load_sset(&x)?;
            let f = skeletal_filtration(&x)?;
            let stages: Vec<(usize, Vec<String>)> =
                f.stages.iter().map(|s| (s.dim, s.cells.iter().map(|&c| x.id_of(c).to_string()).collect())).collect();
            let text = match run.format {
                Format::Text => {
                    let mut t = format!("stage 0: {} vertices\n", f.base.counts()[0]);
                    for (dim, cells) in &stages {
                        t.push_str(&format!("stage {dim}: {} cells {}\n", cells.len(), cells.join(" ")));
                    }
                    t
                }
                _ => pretty(json!({
                    "vertices": f.base.gen_ids(0).map(|v| f.base.id_of(v).to_string()).collect::<Vec<_>>(),
                    "stages": stages.iter().map(|(dim, cells)| json!({ "dim": dim, "cells": cells })).collect::<Vec<_>>(),
                })),
            };
            return Ok(Outcome::ok(text));
        }
        SsetCmd::Info { x } => {
            let x = load_sset(&x)?;
            let text = match run.format {
                Format::Text => format!("counts: {}\n", counts(&x)),
                _ => pretty(json!({
                    "counts": x.counts(),
                    "dim": x.dim(),
                    "bound": x.truncation(),
                    "nerve": x.is_nerve(),
                })),
            };
            return Ok(Outcome::ok(text));
        }
        SsetCmd::Export { x } => load_sset(&x)?.as_ref().clone(),
    };
    Ok(Outcome::ok(emit_sset(&x, run.format)))
}

fn bound_or(b: &Bound, default: usize) -> usize {
    b.bound.map_or(default, |b| b as usize)
}

fn emit_cert(cert: &LiftingCertificate, format: Format) -> Outcome {
    let text = match format {
        Format::Text => {
            let mut t = format!("{}: {:?} (bound {}, tested {})\n", cert.property, cert.verdict, cert.bound, cert.tested);
            if let Some(w) = &cert.witness {
                t.push_str(&format!("witness: {:?}\n", w.square));
            }
            t
        }
        _ => cert.to_json(),
    };
    Outcome::verdict(text, cert.verdict)
}

fn cmd_check(cmd: CheckCmd, run: &RunConfig) -> anyhow::Result<Outcome> {
    let cert = match cmd {
        CheckCmd::Qcat { x, bound } => {
            let x = load_sset(&x)?;
            is_quasi_category(&x, bound_or(&bound, default_bound(&terminal_map(x.clone()))))?
        }
        CheckCmd::Kan { x, bound } => {
            let x = load_sset(&x)?;
            is_kan(&x, bound_or(&bound, default_bound(&terminal_map(x.clone()))))?
        }
        CheckCmd::Isofib { map, bound } => {
            let p = load_map(&map)?;
            is_isofibration(&p, bound_or(&bound, default_bound(&p)))?
        }
        CheckCmd::Trivfib { map, bound } => {
            let p = load_map(&map)?;
            is_trivial_fibration(&p, bound_or(&bound, default_bound(&p)))?
        }
    };
    Ok(emit_cert(&cert, run.format))
}

fn cmd_comma(f: &Path, g: &Path, emit: CommaPart, run: &RunConfig) -> anyhow::Result<Outcome> {
    let c = comma(&load_map(f)?, &load_map(g)?, run.max_dim as usize)?;
    Ok(Outcome::ok(match emit {
        CommaPart::Object => emit_sset(c.total(), run.format),
        CommaPart::Projection => map_to_json(&c.projection),
    }))
}

fn cmd_cones(diagram: &Path, vertex: Option<String>, run: &RunConfig) -> anyhow::Result<Outcome> {
    let d = load_map(diagram)?;
    let cones = cones_over(d.target().clone(), d.source().clone(), &d, run.max_dim as usize)?;
    match vertex {
        None => Ok(Outcome::ok(emit_sset(cones.sset(), run.format))),
        Some(id) => {
            let x = cones.sset();
            let Some(v) = x.lookup(&id).filter(|g| g.dim() == 0) else { bail!("`{id}` is not a vertex of the cone object") };
            let cell = cones.cell_of(skellim::simplicial::sset::Simplex::nondegenerate(v));
            Ok(Outcome::ok(map_to_json(&cones.model.maps.to_map(&cell.1)?)))
        }
    }
}

struct LimitProblem {
    c: FiniteCategory,
    d: DiagramInCat,
}

fn load_problem(cat: &Path, shape: &Path, diagram: &Path) -> anyhow::Result<LimitProblem> {
    let c = load_cat(cat)?;
    let x = load_sset(shape)?;
    let d = DiagramInCat::from_json(&c, x, &read(diagram)?).with_context(|| format!("in {}", diagram.display()))?;
    Ok(LimitProblem { c, d })
}

fn emit_limit(cert: &LimitCertificate, format: Format) -> String {
    match format {
        Format::Text => {
            let legs: Vec<String> = cert.legs.iter().map(|(v, m)| format!("{v}: {m}")).collect();
            format!("apex {}\nlegs {}\n", cert.apex, legs.join(", "))
        }
        _ => cert.to_json(),
    }
}

fn cmd_limit(p: &Problem, kind: LimitKind, run: &RunConfig) -> anyhow::Result<Outcome> {
    let LimitProblem { c, d } = load_problem(&p.cat, &p.shape, &p.diagram)?;
    let none = || Error::MissingLimit {
        kind: if kind == LimitKind::Limit { "limit" } else { "colimit" },
        stage: "brute force".into(),
        detail: "no terminal cone".into(),
    };
    let cert = match (p.engine, kind) {
        (Engine::Induction, LimitKind::Limit) => limit_by_skeletal_induction(&c, &d, p.kappa)?,
        (Engine::Induction, LimitKind::Colimit) => colimit_by_skeletal_induction(&c, &d, p.kappa)?,
        (Engine::Brute, LimitKind::Limit) => brute_force_limit(&c, &d).ok_or_else(none)?,
        (Engine::Brute, LimitKind::Colimit) => brute_force_colimit(&c, &d)?.ok_or_else(none)?,
        (Engine::Both, _) => {
            let cmp = match kind {
                LimitKind::Limit => compare_engines(&c, &d, p.kappa)?,
                LimitKind::Colimit => compare_colimit_engines(&c, &d, p.kappa)?,
            };
            let apex = |x: &Option<LimitCertificate>| x.as_ref().map(|c| c.apex.clone());
            if !cmp.agree {
                let text = pretty(json!({
                    "agree": false,
                    "induction": apex(&cmp.induction),
                    "induction_error": cmp.missing.as_ref().map(|e| e.to_string()),
                    "brute": apex(&cmp.brute),
                }));
                return Ok(Outcome { text, code: 1 });
            }
            match (cmp.induction, cmp.missing) {
                (Some(cert), _) => cert,
                (None, Some(e)) => return Err(e.into()),
                (None, None) => return Err(none().into()),
            }
        }
    };
    Ok(Outcome::ok(emit_limit(&cert, run.format)))
}

fn cmd_limit_check(
    cat: Option<PathBuf>,
    shape: Option<PathBuf>,
    diagram: &Path,
    cert: Option<PathBuf>,
    cone: Option<PathBuf>,
    bound: &Bound,
    run: &RunConfig,
) -> anyhow::Result<Outcome> {
    match (cat, shape, cert, cone) {
        (Some(cat), Some(shape), Some(cert), None) => {
            let LimitProblem { c, d } = load_problem(&cat, &shape, diagram)?;
            let cert = LimitCertificate::from_json(&c, &d, &read(&cert)?)?;
            let ok = cert.replay(&c, &d)?;
            let text = match run.format {
                Format::Text => format!("replay: {}\n", if ok { "valid" } else { "invalid" }),
                _ => pretty(json!({ "replay": ok, "apex": cert.apex })),
            };
            Ok(Outcome::verdict(text, if ok { Verdict::Yes } else { Verdict::No }))
        }
        (None, None, None, Some(cone)) => {
            let d = load_map(diagram)?;
            let cone = load_map(&cone)?;
            let max_dim = run.max_dim as usize;
            let cones = cones_over(d.target().clone(), d.source().clone(), &d, max_dim)?;
            let x = cones.sset();
            let lambda = x
                .gen_ids(0)
                .map(skellim::simplicial::sset::Simplex::nondegenerate)
                .find(|&v| cones.model.maps.to_map(&cones.cell_of(v).1).is_ok_and(|m| m.same_as(&cone)))
                .context("the cone is not a cone over the diagram")?;
            let check = is_limit_cone(&cones, lambda, bound_or(bound, 3), max_dim)?;
            Ok(emit_cert(&check.certificate, run.format))
        }
        _ => bail!("use either --cat, --shape and --cert, or --cone"),
    }
}

fn cmd_weight(cmd: WeightCmd) -> anyhow::Result<Outcome> {
    let w = match cmd {
        WeightCmd::Pseudo { shape } => pseudo_weight(&load_sset(&shape)?)?,
        WeightCmd::Terminal { diagram } => terminal_weight(&weight_from_json(&read(&diagram)?)?.index),
    };
    Ok(Outcome::ok(weight_to_json(&w)))
}

fn cmd_wlim(weight: Option<&Path>, diagram: &Path, run: &RunConfig) -> anyhow::Result<Outcome> {
    let f = weight_from_json(&read(diagram)?).with_context(|| format!("in {}", diagram.display()))?;
    let lim = match weight {
        Some(w) => {
            let w = weight_from_json(&read(w)?).with_context(|| format!("in {}", w.display()))?;
            weighted_limit(&w, &f, run.max_dim as usize)?
        }
        None => strict_limit(&f, run.max_dim as usize)?,
    };
    Ok(Outcome::ok(emit_sset(lim.sset(), run.format)))
}

fn cmd_gen(cmd: GenCmd, run: &RunConfig) -> anyhow::Result<Outcome> {
    let text = match cmd {
        GenCmd::Lattice { seed, size } => gen::lattice(&mut gen::rng(seed), size).to_json()?,
        GenCmd::Semilattice { seed, size } => gen::join_semilattice(&mut gen::rng(seed), size).to_json()?,
        GenCmd::Poset { seed, size, density } => {
            if !(0.0..=1.0).contains(&density) {
                bail!("density must lie in [0, 1]");
            }
            gen::poset(&mut gen::rng(seed), size, density).to_json()?
        }
        GenCmd::Sset { seed, dim, cells } => emit_sset(&gen::sset(&mut gen::rng(seed), dim, cells), run.format),
        GenCmd::Diagram { seed, cat, shape } => {
            let c = load_cat(&cat)?;
            gen::monotone_diagram(&mut gen::rng(seed), &c, load_sset(&shape)?)?.to_json(&c)
        }
    };
    Ok(Outcome::ok(text))
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let run = &cli.run;
    match cli.command {
        Command::Sset(cmd) => cmd_sset(cmd, run),
        Command::Check(cmd) => cmd_check(cmd, run),
        Command::Comma { f, g, emit } => cmd_comma(&f, &g, emit, run),
        Command::Cones { diagram, vertex } => cmd_cones(&diagram, vertex, run),
        Command::Limit(LimitCmd::Compute(p)) => cmd_limit(&p, LimitKind::Limit, run),
        Command::Limit(LimitCmd::Check { cat, shape, diagram, cert, cone, bound }) => {
            cmd_limit_check(cat, shape, &diagram, cert, cone, &bound, run)
        }
        Command::Limit(LimitCmd::Strict { diagram }) => cmd_wlim(None, &diagram, run),
        Command::Colimit(p) => cmd_limit(&p, LimitKind::Colimit, run),
        Command::Weight(cmd) => cmd_weight(cmd),
        Command::Wlim { weight, diagram } => cmd_wlim(Some(&weight), &diagram, run),
        Command::Gen(cmd) => cmd_gen(cmd, run),
    }
}

/// Errors as JSON on stderr; missing limits name their stage.
fn report(err: &anyhow::Error) -> (String, u8) {
    let mut value = json!({ "error": format!("{err:#}") });
    let mut code = EXIT_ERROR;
    if let Some(e) = err.downcast_ref::<Error>() {
        match e {
            Error::MissingLimit { kind, stage, detail } => {
                value["missing"] = json!({ "kind": kind, "stage": stage, "detail": detail });
                code = 1;
            }
            Error::KappaExceeded { stage, arity, kappa } => {
                value["kappa_exceeded"] = json!({ "stage": stage, "arity": arity, "kappa": kappa });
            }
            Error::Schema { path, reason } => value["schema"] = json!({ "path": path, "reason": reason }),
            _ => {}
        }
    }
    (pretty(value), code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.run.format == Format::Dot && !matches!(&cli.command, Command::Sset(_) | Command::Comma { .. } | Command::Cones { .. } | Command::Wlim { .. } | Command::Gen(GenCmd::Sset { .. })) {
        eprint!("{}", pretty(json!({ "error": "--format dot applies to simplicial set outputs only" })));
        return ExitCode::from(EXIT_ERROR);
    }
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            let (text, code) = report(&e);
            eprint!("{text}");
            ExitCode::from(code)
        }
    }
}
