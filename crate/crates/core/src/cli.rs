//! Command-line front end. Every command writes a JSON [`Report`]; the exit
//! code is 0 when all verdicts pass, 1 when a verification fails and 2 on
//! malformed input.

use crate::algebra::rational::{to_strings, DisplayVec};
use crate::ce::{bch, ce_cohomology, ce_product_check, chain_dims, check_class, gauge_action, homotopy_check, mc_check};
use crate::derivations::{der_complex, deru, DeruMode};
use crate::dgla::{check_structure, DgLieAlgebra, SharedDgla};
use crate::error::DgError;
use crate::freelie::{Presentation, Rho};
use crate::gluing::{boundary_connected_sum, forget_tilde, glue_headline_g, xi_comparison};
use crate::io::{self, InputError};
use crate::models::{build_block_g, build_g, outer_action_check, twisted_action, GAlgebra, GInput, ManifoldModel, CHECK_LIMIT};
use crate::report::{all_pass, InputHash, Report, Verdict};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

#[derive(Debug, Parser)]
#[command(name = "dglie", version, about = "Exact computations with dg Lie algebra models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Leave the elapsed time out of the report.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Window {
    #[arg(long, allow_negative_numbers = true)]
    pub min: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub max: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    TrivialDifferential,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ModeArgs {
    /// Assert that the action on indecomposables is semisimple.
    #[arg(long)]
    pub assert_semisimple: bool,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

impl ModeArgs {
    fn given(&self) -> bool {
        self.assert_semisimple || self.mode.is_some()
    }

    fn resolve(&self) -> Result<DeruMode, Failure> {
        match (self.mode, self.assert_semisimple) {
            (Some(ModeArg::TrivialDifferential), _) => Ok(DeruMode::TrivialDifferential),
            (None, true) => Ok(DeruMode::SemisimpleAsserted),
            (None, false) => Err(Failure::Input(
                "unipotent derivations need --assert-semisimple or --mode trivial-differential".into(),
            )),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a presentation.
    Check { input: PathBuf },
    /// Homology of a presentation.
    Homology {
        input: PathBuf,
        #[command(flatten)]
        window: Window,
    },
    /// Indecomposables, optionally relative to a sub.
    Indec {
        input: PathBuf,
        #[arg(long)]
        sub: Option<String>,
    },
    /// The derivation complex, or its unipotent part when a mode is given.
    Der {
        input: PathBuf,
        #[command(flatten)]
        window: Window,
        #[arg(long)]
        sub: Option<String>,
        #[arg(long)]
        rho: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Chevalley–Eilenberg cohomology of a structure table; with a second
    /// table, the product comparison.
    Ce {
        input: PathBuf,
        other: Option<PathBuf>,
        #[arg(long)]
        max: i64,
        /// Dimension of the trivial coefficient module.
        #[arg(long, default_value_t = 1)]
        coeff_dim: usize,
    },
    /// Build and check a manifold model.
    Model { input: PathBuf },
    /// The stabilized model.
    Tilde { input: PathBuf },
    /// The extension-by-zero comparison of unipotent derivations.
    Xi {
        input: PathBuf,
        #[arg(long)]
        max: i64,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// The block dg Lie algebra of a manifold model.
    BlockG {
        input: PathBuf,
        #[arg(long)]
        max: i64,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// The twisted semidirect product for a presentation, subs and ρ. The
    /// first --sub is the one derivations vanish on, the second the one
    /// indecomposables are taken relative to.
    G {
        input: PathBuf,
        #[arg(long)]
        sub: Vec<String>,
        #[arg(long)]
        rho: Option<PathBuf>,
        #[arg(long)]
        max: i64,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// The gluing map of block algebras along a boundary connected sum.
    Glue {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        max: i64,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// The boundary connected sum of two models.
    ConnectedSum { left: PathBuf, right: PathBuf },
    /// Homology ranks of the forgetful comparison for the stabilized model.
    Forget {
        input: PathBuf,
        #[arg(long)]
        max: i64,
    },
    /// Exponentials of degree-0 derivations and BCH.
    Exp {
        input: PathBuf,
        derivations: PathBuf,
        #[arg(long)]
        sub: Option<String>,
    },
    /// Maurer–Cartan check and gauge action in the twisted Hom complex.
    Mc {
        input: PathBuf,
        job: PathBuf,
        #[command(flatten)]
        window: Window,
    },
    /// Check a homotopy `f ≃ g` over interval forms.
    Homotopy {
        source: PathBuf,
        target: PathBuf,
        job: PathBuf,
        #[arg(long)]
        sub: Option<String>,
    },
}

#[derive(Debug)]
enum Failure {
    /// Malformed input; exit 2.
    Input(String),
    /// A computation refused or a check failed; exit 1.
    Check(DgError),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<DgError> for Failure {
    fn from(e: DgError) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Check(e)
        }
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    report: Report,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<(String, String), Failure> {
        let (text, sha256) = io::read_file(path)?;
        let file = path.display().to_string();
        self.report.inputs.push(InputHash { path: file.clone(), sha256 });
        Ok((file, text))
    }

    /// A presentation; on validation failure the verdicts go into the
    /// report and `None` is returned.
    fn presentation(&mut self, path: &Path) -> Result<Option<Arc<Presentation>>, Failure> {
        let (file, text) = self.read(path)?;
        let p = io::parse_presentation(&file, &text)?;
        let v = p.validate();
        let ok = all_pass(&v);
        self.report.verdicts(v);
        Ok(ok.then(|| Arc::new(p)))
    }

    fn model(&mut self, path: &Path) -> Result<ManifoldModel, Failure> {
        let (file, text) = self.read(path)?;
        let data = io::parse_model_data(&file, &text)?;
        data.build().map_err(|e| match e {
            DgError::InvalidPresentation(_) => Failure::Check(e),
            e => Failure::from(e).with_file(&file),
        })
    }

    fn rho(&mut self, path: Option<&Path>, p: &Presentation) -> Result<Rho, Failure> {
        match path {
            None => Ok(Rho::zero(p, Default::default())),
            Some(path) => {
                let (file, text) = self.read(path)?;
                Ok(io::parse_rho(&file, &text, p)?)
            }
        }
    }
}

impl Failure {
    fn with_file(self, file: &str) -> Failure {
        match self {
            Failure::Input(m) => Failure::Input(format!("{file}: {m}")),
            f => f,
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Homology { .. } => "homology",
        Command::Indec { .. } => "indec",
        Command::Der { .. } => "der",
        Command::Ce { .. } => "ce",
        Command::Model { .. } => "model",
        Command::Tilde { .. } => "tilde",
        Command::Xi { .. } => "xi",
        Command::BlockG { .. } => "block-g",
        Command::G { .. } => "g",
        Command::Glue { .. } => "glue",
        Command::ConnectedSum { .. } => "connected-sum",
        Command::Forget { .. } => "forget",
        Command::Exp { .. } => "exp",
        Command::Mc { .. } => "mc",
        Command::Homotopy { .. } => "homotopy",
    }
}

fn check_window(w: &Window) -> Outcome {
    if w.min > w.max {
        return Err(Failure::Input(format!("empty window: --min {} exceeds --max {}", w.min, w.max)));
    }
    Ok(())
}

fn dims_rows(g: &dyn DgLieAlgebra, lo: i64, hi: i64) -> Vec<serde_json::Value> {
    (lo..=hi).map(|k| json!({"degree": k, "dim": g.dim(k)})).collect()
}

fn betti_rows(lo: i64, betti: &[usize]) -> Vec<serde_json::Value> {
    betti.iter().enumerate().map(|(i, b)| json!({"degree": lo + i as i64, "betti": b})).collect()
}

fn g_tables(ctx: &mut Ctx, g: &GAlgebra, max: i64) -> Outcome {
    let rows: Vec<_> = (-1..=max)
        .map(|k| json!({"degree": k, "der": g.der.dim(k), "hom": g.hom.dim(k), "dim": g.algebra.dim(k)}))
        .collect();
    ctx.report.table("dims", rows);
    if max >= 1 {
        let b = g.betti(0, max - 1)?;
        ctx.report.table("betti", betti_rows(0, &b));
    }
    ctx.report.verdicts(g.verdicts.clone());
    ctx.report.verdicts(g.structure(CHECK_LIMIT));
    Ok(())
}

fn dispatch(ctx: &mut Ctx, command: &Command) -> Outcome {
    match command {
        Command::Check { input } => {
            if let Some(p) = ctx.presentation(input)? {
                let lie = p.lie();
                let rows: Vec<_> = (0..p.ngens())
                    .map(|i| json!({"name": lie.name(i), "degree": lie.gen_degree(i), "d": lie.format(p.d_of(i))}))
                    .collect();
                ctx.report.table("generators", rows);
            }
        }
        Command::Homology { input, window } => {
            check_window(window)?;
            if let Some(p) = ctx.presentation(input)? {
                let h = p.homology(window.min, window.max)?;
                let b: Vec<usize> = h.iter().map(|g| g.betti).collect();
                ctx.report.table("betti", betti_rows(window.min, &b));
                let dims: Vec<_> = (window.min..=window.max).map(|k| json!({"degree": k, "dim": p.lie().dim(k)})).collect();
                ctx.report.table("dims", dims);
            }
        }
        Command::Indec { input, sub } => {
            if let Some(p) = ctx.presentation(input)? {
                let ind = p.indecomposables(sub.as_deref())?;
                let rows: Vec<_> = ind.basis().entries().iter().map(|(n, d)| json!({"name": n, "degree": d})).collect();
                ctx.report.table("indecomposables", rows);
                ctx.report.table("minimal", p.is_minimal(sub.as_deref())?);
            }
        }
        Command::Der { input, window, sub, rho, mode } => {
            check_window(window)?;
            let Some(p) = ctx.presentation(input)? else { return Ok(()) };
            let slice = if mode.given() {
                if window.min < 0 {
                    return Err(Failure::Input("unipotent derivations are reported in degrees >= 0; raise --min".into()));
                }
                let m = mode.resolve()?;
                let rho = match rho {
                    Some(path) => Some(ctx.rho(Some(path), &p)?),
                    None => None,
                };
                deru(&p, sub.as_deref(), rho.as_ref(), window.max + 1, m)?
            } else {
                if rho.is_some() {
                    return Err(Failure::Input("--rho only applies to unipotent derivations; give a mode".into()));
                }
                der_complex(&p, sub.as_deref(), window.min - 1, window.max + 1)?
            };
            ctx.report.table("dims", dims_rows(&slice, window.min, window.max));
            let b: Vec<usize> = slice.homology(window.min, window.max).map_err(DgError::from)?.iter().map(|g| g.betti).collect();
            ctx.report.table("betti", betti_rows(window.min, &b));
            let (lo, hi) = slice.window();
            ctx.report.verdicts(check_structure(&slice, lo, hi, CHECK_LIMIT));
        }
        Command::Ce { input, other, max, coeff_dim } => {
            let (file, text) = ctx.read(input)?;
            let g: SharedDgla = Arc::new(io::parse_table(&file, &text)?);
            let (lo, hi) = g.window();
            ctx.report.verdicts(check_structure(g.as_ref(), lo, hi, CHECK_LIMIT));
            ctx.report.table("chain_dims", chain_dims(g.clone(), *max)?);
            let b = ce_cohomology(g.clone(), *coeff_dim, *max)?;
            ctx.report.table("cohomology", betti_rows(0, &b));
            if let Some(other) = other {
                let (file, text) = ctx.read(other)?;
                let h: SharedDgla = Arc::new(io::parse_table(&file, &text)?);
                ctx.report.verdicts(ce_product_check(g, h, *coeff_dim, *coeff_dim, *max)?);
            }
        }
        Command::Model { input } => {
            let m = ctx.model(input)?;
            ctx.report.verdicts(m.presentation().validate());
            ctx.report.table("omega", m.presentation().format(m.omega()));
            ctx.report.table("presentation", io::presentation_to_json(m.presentation()));
        }
        Command::Tilde { input } => {
            let m = ctx.model(input)?;
            let t = m.tilde()?;
            ctx.report.verdicts(t.presentation.validate());
            for (name, f) in [("inclusion", &t.inclusion), ("projection", &t.projection)] {
                ctx.report.verdicts(f.check(None, None).into_iter().map(|mut v| {
                    v.check = format!("{name}: {}", v.check);
                    v
                }));
            }
            ctx.report.table("presentation", io::presentation_to_json(&t.presentation));
        }
        Command::Xi { input, max, mode } => {
            let m = ctx.model(input)?;
            let c = xi_comparison(&m, *max, mode.resolve()?)?;
            let rows: Vec<_> = c
                .degrees
                .iter()
                .enumerate()
                .map(|(i, k)| json!({"degree": k, "left": c.left_betti[i], "right": c.right_betti[i], "xi_rank": c.xi_rank[i]}))
                .collect();
            ctx.report.table("homology", rows);
            ctx.report.verdicts(c.verdicts);
        }
        Command::BlockG { input, max, mode } => {
            let m = ctx.model(input)?;
            let g = build_block_g(&m, *max, mode.resolve()?)?;
            g_tables(ctx, &g, *max)?;
        }
        Command::G { input, sub, rho, max, mode } => {
            if sub.len() > 2 {
                return Err(Failure::Input("at most two --sub flags".into()));
            }
            let m = mode.resolve()?;
            let Some(p) = ctx.presentation(input)? else { return Ok(()) };
            for s in sub {
                p.sub(s)?;
            }
            let rho = ctx.rho(rho.as_deref(), &p)?;
            let g = build_g(GInput {
                presentation: &p,
                a: sub.first().map(String::as_str),
                b: sub.get(1).map(String::as_str),
                rho: &rho,
                max: *max,
                mode: m,
            })?;
            g_tables(ctx, &g, *max)?;
        }
        Command::Glue { left, right, max, mode } => {
            let m = mode.resolve()?;
            let (a, b) = (ctx.model(left)?, ctx.model(right)?);
            let g = glue_headline_g(&a, &b, *max, m, mode.assert_semisimple)?;
            let rows: Vec<_> = g
                .maps
                .iter()
                .map(|(k, f)| {
                    json!({"degree": k, "left": g.left.algebra.dim(*k), "right": g.right.algebra.dim(*k),
                           "sum": g.sum.algebra.dim(*k), "rank": f.rank()})
                })
                .collect();
            ctx.report.table("gluing", rows);
            ctx.report.verdicts(g.verdicts);
        }
        Command::ConnectedSum { left, right } => {
            let (a, b) = (ctx.model(left)?, ctx.model(right)?);
            let (s, _, v) = boundary_connected_sum(&a, &b)?;
            ctx.report.verdicts(s.presentation().validate());
            ctx.report.verdicts([v]);
            ctx.report.table("omega", s.presentation().format(s.omega()));
            ctx.report.table("model", io::model_to_json(&s));
        }
        Command::Forget { input, max } => {
            let m = ctx.model(input)?;
            let c = forget_tilde(&m, *max)?;
            let rows: Vec<_> = c
                .degrees
                .iter()
                .enumerate()
                .map(|(i, k)| {
                    json!({"degree": k, "left": c.left_betti[i], "pullback": c.pullback_betti[i], "right": c.right_betti[i],
                           "left_projection_rank": c.left_projection_rank[i], "right_projection_rank": c.right_projection_rank[i]})
                })
                .collect();
            ctx.report.table("homology", rows);
            ctx.report.verdicts(c.verdicts);
        }
        Command::Exp { input, derivations, sub } => {
            let Some(p) = ctx.presentation(input)? else { return Ok(()) };
            if let Some(s) = sub {
                p.sub(s)?;
            }
            let (file, text) = ctx.read(derivations)?;
            let (class, ders) = io::parse_derivations(&file, &text, &p)?;
            let mut images = Vec::new();
            let mut exps = Vec::new();
            for (i, theta) in ders.iter().enumerate() {
                let e = theta.exp()?;
                let inv = theta.neg().exp()?;
                ctx.report.verdicts(e.check(sub.as_deref(), None).into_iter().map(|mut v| {
                    v.check = format!("e(theta{i}): {}", v.check);
                    v
                }));
                ctx.report.verdicts([Verdict::from_result(
                    format!("e(theta{i}) has inverse e(-theta{i})"),
                    if e.compose(&inv).is_identity() && inv.compose(&e).is_identity() { Ok(()) } else { Err("composite is not the identity".into()) },
                )]);
                let lie = p.lie();
                let row: serde_json::Map<String, serde_json::Value> =
                    (0..p.ngens()).map(|g| (lie.name(g).to_string(), json!(p.format(e.image(g))))).collect();
                images.push(row);
                exps.push(e);
            }
            if ders.len() >= 2 {
                check_class(&crate::ce::bch::Derivations, &ders, class)?;
                for i in 0..ders.len() - 1 {
                    let z = bch(&crate::ce::bch::Derivations, &ders[i], &ders[i + 1], class)?;
                    let lhs = z.exp()?;
                    let rhs = exps[i].compose(&exps[i + 1]);
                    ctx.report.verdicts([Verdict::from_result(
                        format!("e(bch(theta{i},theta{})) = e(theta{i}) e(theta{})", i + 1, i + 1),
                        if lhs == rhs { Ok(()) } else { Err("the automorphisms differ".into()) },
                    )]);
                }
            }
            ctx.report.table("exp", images);
        }
        Command::Mc { input, job, window } => {
            check_window(window)?;
            if window.min > -1 || window.max < 0 {
                return Err(Failure::Input("the window must contain degrees -1 and 0".into()));
            }
            let m = ctx.model(input)?;
            let action = twisted_action(&m, window.min, window.max)?;
            let (file, text) = ctx.read(job)?;
            let hom = action.hom().clone();
            let (values, theta) = io::parse_mc(&file, &text, m.presentation(), hom.pi())?;
            let tau = hom.from_raw(-1, &hom.raw_from_values(-1, &values)).expect("the untruncated Hom is full");
            let x = action
                .der()
                .coords(&theta)
                .ok_or_else(|| Failure::Check(DgError::Invalid("theta does not vanish on omega".into())))?;
            let (ok, residual) = mc_check(hom.as_ref(), &tau)?;
            ctx.report.verdicts([Verdict::from_result(
                "tau is Maurer-Cartan",
                if ok { Ok(()) } else { Err(format!("residual {}", DisplayVec(&residual))) },
            )]);
            ctx.report.verdicts(outer_action_check(&action, window.min, window.max, CHECK_LIMIT));
            let moved = gauge_action(&action, &x, &tau)?;
            let (ok2, residual2) = mc_check(hom.as_ref(), &moved)?;
            ctx.report.verdicts([Verdict::from_result(
                "gauge image is Maurer-Cartan",
                if ok2 { Ok(()) } else { Err(format!("residual {}", DisplayVec(&residual2))) },
            )]);
            ctx.report.table("tau", to_strings(&tau));
            ctx.report.table("gauge", to_strings(&moved));
            ctx.report.table("residual", to_strings(&residual2));
        }
        Command::Homotopy { source, target, job, sub } => {
            let Some(s) = ctx.presentation(source)? else { return Ok(()) };
            let t = if source == target {
                s.clone()
            } else {
                let Some(t) = ctx.presentation(target)? else { return Ok(()) };
                t
            };
            if let Some(name) = sub {
                s.sub_generators(name)?;
            }
            let (file, text) = ctx.read(job)?;
            let (f, g, h) = io::parse_homotopy(&file, &text, &s, &t)?;
            ctx.report.verdicts(homotopy_check(&h, &f, &g, sub.as_deref())?);
        }
    }
    Ok(())
}

fn write_atomic(path: &Path, body: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, body)?;
    std::fs::rename(&tmp, path)
}

/// Runs one command; `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let mut ctx = Ctx {
        report: Report {
            command: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
            ..Report::default()
        },
    };
    match dispatch(&mut ctx, &cli.command) {
        Ok(()) => {}
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(Failure::Check(e)) => {
            ctx.report.verdicts([Verdict::fail(command_name(&cli.command), e.to_string())]);
            ctx.report.error = Some(e.to_string());
        }
    }
    let mut report = ctx.report;
    report.pass = all_pass(&report.verdicts) && report.error.is_none();
    if !cli.no_timing {
        report.elapsed_us = Some(start.elapsed().as_micros() as u64);
    }
    let body = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{body}"),
    }
    if report.pass {
        0
    } else {
        for v in report.verdicts.iter().filter(|v| !v.pass) {
            eprintln!("failed: {}: {}", v.check, v.witness.as_deref().unwrap_or(""));
        }
        1
    }
}
