//! Command dispatch for the `fuscat` binary.
//!
//! [`run`] parses arguments, executes one command against a workspace and
//! returns the exit status with the rendered report. Exit status is 0 when
//! the verdict holds, 1 when it does not, 2 on usage or data errors.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use fuscat_core::characters::{character_table_with, CharacterOptions, CharacterTable};
use fuscat_core::cohomology::{cyclic_representative, h3_order, MAX_H3_GROUP_ORDER};
use fuscat_core::equivariant::{
    check_equivariant_sequence, equivariant_simples, forgetful_functor,
};
use fuscat_core::functors::{index2_check, verify_exact_sequence};
use fuscat_core::groups::{named, FiniteGroup};
use fuscat_core::io::{self, to_canonical, Entity, LoadOptions, Manifest, Workspace};
use fuscat_core::pointed::{build_pointed_exact_sequence, is_simple_eno, is_simple_pointed};
use fuscat_core::tolerance::Tolerances;
use fuscat_core::{corpus, FpData, FusionRing};

#[derive(Debug, Parser)]
#[command(
    name = "fuscat",
    version,
    about = "Fusion rings, tensor functors and exact sequences"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// First seed of the character-table perturbation sequence.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

/// Workspace documents; `builtin:NAME` loads a corpus document.
#[derive(Debug, Args)]
struct Sources {
    #[arg(required = true)]
    paths: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every entity against its axioms, reporting witnesses.
    Validate(Sources),
    /// Frobenius-Perron dimensions of a ring.
    Fpdim {
        #[command(flatten)]
        src: Sources,
        #[arg(long)]
        ring: Option<String>,
    },
    /// Validity, dominance, normality, kernel, FP index and monad checks.
    FunctorCheck {
        #[command(flatten)]
        src: Sources,
        #[arg(long)]
        functor: Option<String>,
    },
    /// Exactness of `embed` followed by `functor`.
    ExactCheck {
        #[command(flatten)]
        src: Sources,
        #[arg(long)]
        embed: String,
        #[arg(long)]
        functor: String,
    },
    /// Structure of a dominant functor of FP index 2.
    Index2Check {
        #[command(flatten)]
        src: Sources,
        #[arg(long)]
        functor: Option<String>,
    },
    /// Classes, normal subgroups and simplicity of a group.
    Group {
        #[arg(required_unless_present = "builtin")]
        paths: Vec<String>,
        #[arg(long)]
        group: Option<String>,
        /// A named group: Zn, Sn, An, Dn, Q8.
        #[arg(long, conflicts_with = "paths")]
        builtin: Option<String>,
    },
    /// Pointed categories.
    #[command(subcommand)]
    Pointed(PointedCommand),
    /// Cocycle identity, coboundary test and H^3 order.
    Cocycle {
        paths: Vec<String>,
        #[arg(long)]
        id: Option<String>,
        /// Emit the standard representative on Z/N instead.
        #[arg(long, requires = "q", conflicts_with = "paths")]
        cyclic: Option<usize>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Simples, forgetful functor and exact sequence of an equivariantization.
    Equivariantize {
        #[command(flatten)]
        src: Sources,
        #[arg(long)]
        action: Option<String>,
    },
    /// Character table and representation ring of a group.
    Repring {
        #[arg(required_unless_present = "builtin")]
        paths: Vec<String>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, conflicts_with = "paths")]
        builtin: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum PointedCommand {
    /// Simplicity of C(G, alpha), with a witness subgroup when not simple.
    SimpleCheck {
        #[command(flatten)]
        src: Sources,
        #[arg(long)]
        id: Option<String>,
    },
    /// C(N, 1) -> C(G, infl alpha) -> C(Q, alpha) for an exact group sequence.
    BuildSeq {
        #[arg(long)]
        groups: String,
        #[arg(long)]
        cocycle: String,
        #[arg(long)]
        sequence: Option<String>,
        #[arg(long)]
        cocycle_id: Option<String>,
    },
}

/// Exit status and rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
}

impl From<fuscat_core::Error> for CliError {
    fn from(e: fuscat_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<io::LoadErrors> for CliError {
    fn from(e: io::LoadErrors) -> Self {
        CliError::Data(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// A command report: ordered fields plus an optional verdict.
struct Report {
    command: &'static str,
    fields: Vec<(String, Value)>,
    verdict: bool,
    /// Extra human-readable lines (tables, matrices).
    detail: Vec<String>,
}

impl Report {
    fn new(command: &'static str, tol: &Tolerances<f64>) -> Self {
        Report {
            command,
            fields: vec![
                ("tolerance_object".into(), json!(tol.object)),
                ("tolerance_aggregate".into(), json!(tol.aggregate)),
            ],
            verdict: true,
            detail: Vec::new(),
        }
    }

    fn field(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.into(), value.into()));
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut fields = Map::new();
                for (k, v) in &self.fields {
                    fields.insert(k.clone(), v.clone());
                }
                let doc = json!({
                    "command": self.command,
                    "verdict": self.verdict,
                    "fields": fields,
                });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
            }
            Format::Human => {
                let mut out = format!("{}\n", self.command);
                for (k, v) in &self.fields {
                    out.push_str(&format!("  {k}: {}\n", human(v)));
                }
                for line in &self.detail {
                    out.push_str(&format!("  {line}\n"));
                }
                out.push_str(&format!("verdict: {}\n", self.verdict));
                out
            }
        }
    }
}

fn human(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            if x != 0.0 && x.abs() < 1e-4 {
                format!("{x:e}")
            } else {
                format!("{x:.10}")
            }
        }
        Value::String(s) => s.clone(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(human).collect::<Vec<_>>().join(", ")
        ),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Rounds to 10 decimals so that reports do not depend on the last bits.
fn num(x: f64) -> Value {
    json!((x * 1e10).round() / 1e10)
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Short form of a dimension: an integer when it is one.
fn short(x: f64) -> String {
    if (x - x.round()).abs() < 1e-9 {
        format!("{}", x.round())
    } else {
        format!("{x:.10}")
    }
}

fn parse_tolerances(env: Option<&str>) -> CliResult<Tolerances<f64>> {
    let Some(text) = env else {
        return Ok(Tolerances::default());
    };
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parsed: Vec<f64> = parts.iter().filter_map(|p| p.parse().ok()).collect();
    match parsed[..] {
        [a, b] if parts.len() == 2 && a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite() => {
            Ok(Tolerances::new(a, b))
        }
        _ => Err(CliError::Usage(format!(
            "FUSCAT_TOL must be two positive reals separated by a comma, got '{text}'"
        ))),
    }
}

fn load(paths: &[String], opts: LoadOptions) -> CliResult<Workspace> {
    if let [single] = paths {
        if let Some(name) = single.strip_prefix("builtin:") {
            return Ok(corpus::workspace(name)?);
        }
    }
    let paths: Vec<PathBuf> = paths.iter().map(PathBuf::from).collect();
    Ok(io::load_many(&paths, opts)?)
}

fn pick<'a, V>(
    map: &'a std::collections::BTreeMap<String, V>,
    id: Option<&str>,
    kind: &str,
) -> CliResult<(&'a str, &'a V)> {
    match id {
        Some(id) => map
            .get_key_value(id)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| CliError::Usage(format!("no {kind} with id '{id}'"))),
        None if map.len() == 1 => {
            let (k, v) = map.iter().next().expect("one entry");
            Ok((k.as_str(), v))
        }
        None => Err(CliError::Usage(format!(
            "choose a {kind} among: {}",
            map.keys().cloned().collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// `Zn`, `Sn`, `An`, `Dn`, `Q8` or `1`.
fn builtin_group(name: &str) -> CliResult<std::sync::Arc<FiniteGroup>> {
    let bad = || CliError::Usage(format!("unknown builtin group '{name}'"));
    if name == "1" {
        return Ok(named::trivial());
    }
    if name == "Q8" {
        return Ok(named::quaternion());
    }
    let (head, n) = name.split_at(1);
    let n: usize = n.parse().map_err(|_| bad())?;
    match (head, n) {
        ("Z", 1..=1000) => Ok(named::cyclic(n)),
        ("S", 1..=6) => Ok(named::symmetric(n)),
        ("A", 1..=6) => Ok(named::alternating(n)),
        ("D", 3..=500) => Ok(named::dihedral(n)),
        _ => Err(bad()),
    }
}

fn labels_of(ring: &FusionRing, set: &BTreeSet<usize>) -> Value {
    Value::Array(set.iter().map(|&i| json!(ring.label(i))).collect())
}

fn matrix_lines(title: &str, m: &[Vec<u64>]) -> Vec<String> {
    let mut out = vec![format!("{title}:")];
    out.extend(m.iter().map(|row| {
        format!(
            "  {}",
            row.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        )
    }));
    out
}

/// Runs one invocation. `tol_env` is the value of `FUSCAT_TOL`, if set.
pub fn run<I, S>(args: I, tol_env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let result = parse_tolerances(tol_env).and_then(|tol| execute(&cli, tol));
    match result {
        Ok(Output::Report(r)) => Outcome {
            code: if r.verdict { 0 } else { 1 },
            stdout: r.render(cli.format),
            stderr: String::new(),
        },
        Ok(Output::Document(text)) => Outcome {
            code: 0,
            stdout: text,
            stderr: String::new(),
        },
        Err(CliError::Usage(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("usage error: {m}\n"),
        },
        Err(CliError::Data(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
    }
}

enum Output {
    Report(Report),
    Document(String),
}

fn execute(cli: &Cli, tol: Tolerances<f64>) -> CliResult<Output> {
    let opts = CharacterOptions {
        seed: cli.seed,
        ..CharacterOptions::default()
    };
    let strict = LoadOptions::default();
    let report = match &cli.command {
        Command::Validate(src) => validate(
            &load(
                &src.paths,
                LoadOptions {
                    check_axioms: false,
                },
            )?,
            tol,
        ),
        Command::Fpdim { src, ring } => fpdim(&load(&src.paths, strict)?, ring.as_deref(), tol)?,
        Command::FunctorCheck { src, functor } => {
            functor_check(&load(&src.paths, strict)?, functor.as_deref(), tol)?
        }
        Command::ExactCheck {
            src,
            embed,
            functor,
        } => exact_check(&load(&src.paths, strict)?, embed, functor, tol)?,
        Command::Index2Check { src, functor } => {
            index2(&load(&src.paths, strict)?, functor.as_deref(), tol)?
        }
        Command::Group {
            paths,
            group,
            builtin,
        } => {
            let g = match builtin {
                Some(name) => builtin_group(name)?,
                None => pick(&load(paths, strict)?.groups, group.as_deref(), "group")?
                    .1
                    .clone(),
            };
            group_report(&g, tol)?
        }
        Command::Pointed(PointedCommand::SimpleCheck { src, id }) => {
            let ws = load(&src.paths, strict)?;
            let (id, p) = pick(&ws.pointed, id.as_deref(), "pointed category")?;
            let v = is_simple_pointed(p)?;
            let mut r = Report::new("pointed simple-check", &tol);
            r.field("id", id);
            r.field("group_order", p.group().order());
            r.field("cocycle_trivial", p.alpha().is_zero());
            r.field("simple", v.simple);
            r.field("no_fusion_subcategories", is_simple_eno(p));
            r.field(
                "witness",
                v.witness.map_or(Value::Null, |w| {
                    Value::Array(w.iter().map(|&g| json!(p.group().name(g))).collect())
                }),
            );
            r.verdict = v.simple;
            r
        }
        Command::Pointed(PointedCommand::BuildSeq {
            groups,
            cocycle,
            sequence,
            cocycle_id,
        }) => {
            let ws = load(&[groups.clone(), cocycle.clone()], strict)?;
            let (sid, ext) = pick(&ws.sequences, sequence.as_deref(), "sequence")?;
            let (cid, alpha) = pick(&ws.cocycles, cocycle_id.as_deref(), "cocycle")?;
            if alpha.group().as_ref() != ext.quotient_group().as_ref() {
                return Err(CliError::Data(format!(
                    "cocycle '{cid}' does not live on the quotient of sequence '{sid}'"
                )));
            }
            let seq = build_pointed_exact_sequence(ext, alpha, tol)?;
            let mut r = Report::new("pointed build-seq", &tol);
            r.field("sequence", sid);
            r.field("cocycle", cid);
            r.field("middle_cocycle_trivial", seq.middle.alpha().is_zero());
            r.field("middle_cocycle_is_cocycle", seq.middle.alpha().is_cocycle());
            exactness_fields(&mut r, &seq.report, seq.functor.source());
            r.verdict = seq.report.verdict;
            r
        }
        Command::Cocycle {
            paths,
            id,
            cyclic,
            q,
        } => {
            if let Some(n) = cyclic {
                let w = cyclic_representative(*n, q.unwrap_or(0))?;
                let zn = format!("Z{n}");
                let doc = Manifest {
                    include: Vec::new(),
                    entities: vec![
                        Entity::group(&zn, w.group()),
                        Entity::cocycle(&format!("omega{}", q.unwrap_or(0)), &zn, &w),
                    ],
                };
                return Ok(Output::Document(to_canonical(&doc)));
            }
            if paths.is_empty() {
                return Err(CliError::Usage(
                    "give a workspace or --cyclic N --q Q".into(),
                ));
            }
            let ws = load(
                paths,
                LoadOptions {
                    check_axioms: false,
                },
            )?;
            let (id, a) = pick(&ws.cocycles, id.as_deref(), "cocycle")?;
            let mut r = Report::new("cocycle", &tol);
            let closed = a.is_cocycle();
            r.field("id", id);
            r.field("group_order", a.group().order());
            r.field("modulus", a.modulus());
            r.field("is_cocycle", closed);
            r.field(
                "is_coboundary",
                if closed {
                    json!(a.is_coboundary()?)
                } else {
                    Value::Null
                },
            );
            r.field(
                "h3_order",
                if a.group().order() <= MAX_H3_GROUP_ORDER {
                    json!(h3_order(a.group(), a.modulus())?)
                } else {
                    Value::Null
                },
            );
            r.verdict = closed;
            r
        }
        Command::Equivariantize { src, action } => {
            let ws = load(&src.paths, strict)?;
            let (id, a) = pick(&ws.actions, action.as_deref(), "action")?;
            let es = equivariant_simples(a, &opts, tol)?;
            let u = forgetful_functor(a, &es);
            let rep = check_equivariant_sequence(a, &es, &u, &opts, tol)?;
            let mut r = Report::new("equivariantize", &tol);
            r.field("id", id);
            r.field("group_order", a.group().order());
            r.field("simples", json!(es.labels()));
            r.field("fpdim", nums(&es.dims()));
            r.field(
                "degrees",
                json!(es.simples.iter().map(|s| s.degree).collect::<Vec<_>>()),
            );
            r.field("fpdim_equivariant", num(es.total));
            r.field("fpdim_ring", num(rep.fpdim_ring));
            r.field(
                "dimension_identity",
                format!(
                    "{} = {} x {}",
                    short(es.total),
                    a.group().order(),
                    short(rep.fpdim_ring)
                ),
            );
            r.field("dimension_residual", rep.dimension_residual);
            r.field("unit_column", rep.unit_column);
            r.field("dominant", rep.dominant);
            r.field("normal", rep.normal);
            r.field(
                "kernel",
                json!(rep
                    .kernel
                    .iter()
                    .map(|&s| es.labels()[s].clone())
                    .collect::<Vec<_>>()),
            );
            r.field("kernel_is_unit_orbit", rep.kernel_is_unit_orbit);
            r.field("kernel_matches_rep_g", rep.kernel_matches_rep_g);
            r.detail = matrix_lines("forgetful functor", u.matrix());
            r.verdict = rep.passes;
            r
        }
        Command::Repring {
            paths,
            group,
            builtin,
        } => {
            let g = match builtin {
                Some(name) => builtin_group(name)?,
                None => pick(&load(paths, strict)?.groups, group.as_deref(), "group")?
                    .1
                    .clone(),
            };
            let t: CharacterTable<f64> = character_table_with(&g, &opts)?;
            let ring = t.rep_fusion_ring()?;
            let valid = ring.validate();
            let degrees = t.degrees();
            let mut r = Report::new("repring", &tol);
            r.field("group_order", g.order());
            r.field("degrees", json!(degrees));
            r.field("sum_of_squares", degrees.iter().map(|d| d * d).sum::<u64>());
            r.field("row_residual", t.row_residual());
            r.field("column_residual", t.column_residual());
            r.field("ring_valid", valid.is_valid());
            r.detail = to_canonical(&Entity::ring("rep", &ring))
                .lines()
                .map(String::from)
                .collect();
            r.verdict = valid.is_valid();
            r
        }
    };
    Ok(Output::Report(report))
}

fn validate(ws: &Workspace, tol: Tolerances<f64>) -> Report {
    let mut r = Report::new("validate", &tol);
    let mut invalid = Vec::new();
    let mut witnesses = Vec::new();
    for (id, ring) in &ws.rings {
        let v = ring.validate();
        if !v.is_valid() {
            invalid.push(id.clone());
            witnesses.extend(v.violations.iter().map(|x| format!("ring {id}: {x}")));
        }
    }
    for (id, f) in &ws.functors {
        let v = f.validate();
        if !v.is_valid() {
            invalid.push(id.clone());
            witnesses.extend(v.violations.iter().map(|x| format!("functor {id}: {x}")));
        }
    }
    for (id, a) in &ws.actions {
        let v = a.validate();
        if !v.is_valid() {
            invalid.push(id.clone());
            witnesses.extend(v.violations.iter().map(|x| format!("action {id}: {x}")));
        }
    }
    for (id, a) in &ws.cocycles {
        if !a.is_cocycle() {
            invalid.push(id.clone());
            witnesses.push(format!("cocycle {id}: fails the 3-cocycle identity"));
        }
    }
    r.field("entities", ws.entities().count());
    r.field("invalid", json!(invalid));
    r.field("violations", json!(witnesses));
    r.verdict = invalid.is_empty();
    r
}

fn fpdim(ws: &Workspace, id: Option<&str>, tol: Tolerances<f64>) -> CliResult<Report> {
    let (id, ring) = pick(&ws.rings, id, "ring")?;
    let fp: FpData<f64> = ring.fpdim()?;
    let mut r = Report::new("fpdim", &tol);
    r.field("ring", id);
    r.field("labels", json!(ring.labels()));
    r.field("fpdim", nums(&fp.dims));
    r.field("total", num(fp.total));
    Ok(r)
}

fn functor_check(ws: &Workspace, id: Option<&str>, tol: Tolerances<f64>) -> CliResult<Report> {
    let (id, f) = pick(&ws.functors, id, "functor")?;
    let fp_s: FpData<f64> = f.source().fpdim()?;
    let fp_t: FpData<f64> = f.target().fpdim()?;
    let valid = f.validate();
    let monad = f.monad_checks(&fp_s, &fp_t, tol);
    let mut r = Report::new("functor-check", &tol);
    r.field("functor", id);
    r.field("valid", valid.is_valid());
    r.field(
        "violations",
        json!(valid
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()),
    );
    r.field("dominant", monad.dominant);
    r.field("normal", monad.functor_normal);
    let kernel = f.kernel_simples(&fp_s, tol.object)?;
    r.field("kernel", labels_of(f.source(), &kernel));
    r.field(
        "fp_index",
        if monad.dominant {
            num(f.fp_index(&fp_s, &fp_t, tol.aggregate)?)
        } else {
            Value::Null
        },
    );
    r.field("monad_normal", monad.monad_normal);
    r.field("fpdim_t1", num(monad.fpdim_t1));
    r.field(
        "index_residual",
        monad.index_residual.map_or(Value::Null, |x| json!(x)),
    );
    r.field(
        "module_residual",
        monad.module_residual.map_or(Value::Null, |x| json!(x)),
    );
    r.field("monad_agreement", monad.passes);
    r.detail = matrix_lines("matrix", f.matrix());
    r.detail.extend(matrix_lines("monad", &monad.monad));
    r.verdict = valid.is_valid() && monad.passes;
    Ok(r)
}

fn exactness_fields(r: &mut Report, e: &fuscat_core::ExactnessReport<f64>, middle: &FusionRing) {
    r.field("embedding_valid", e.embedding_valid);
    r.field("embedding_into_kernel", e.embedding_into_kernel);
    r.field("image_equals_kernel", e.image_equals_kernel);
    r.field("dominant", e.dominant);
    r.field("normal", e.normal);
    r.field("kernel", labels_of(middle, &e.kernel));
    r.field("fpdim_sub", num(e.fpdim_sub));
    r.field("fpdim_middle", num(e.fpdim_middle));
    r.field("fpdim_quotient", num(e.fpdim_quotient));
    r.field(
        "fpdim_identity",
        format!(
            "{} = {} x {}",
            short(e.fpdim_middle),
            short(e.fpdim_sub),
            short(e.fpdim_quotient)
        ),
    );
    r.field("multiplicativity_residual", e.multiplicativity_residual);
    r.field("fpdimy_max_residual", e.fpdimy_max_residual);
    r.field("consistent", e.consistent);
}

fn exact_check(
    ws: &Workspace,
    embed: &str,
    functor: &str,
    tol: Tolerances<f64>,
) -> CliResult<Report> {
    let (_, i) = pick(&ws.functors, Some(embed), "functor")?;
    let (_, f) = pick(&ws.functors, Some(functor), "functor")?;
    let e = verify_exact_sequence(i, f, tol)?;
    let mut r = Report::new("exact-check", &tol);
    r.field("embedding", embed);
    r.field("functor", functor);
    exactness_fields(&mut r, &e, f.source());
    r.verdict = e.verdict;
    Ok(r)
}

fn index2(ws: &Workspace, id: Option<&str>, tol: Tolerances<f64>) -> CliResult<Report> {
    let (id, f) = pick(&ws.functors, id, "functor")?;
    let fp_s: FpData<f64> = f.source().fpdim()?;
    let fp_t: FpData<f64> = f.target().fpdim()?;
    let rep = index2_check(f, &fp_s, &fp_t, tol)?;
    let mut r = Report::new("index2-check", &tol);
    r.field("functor", id);
    r.field("fp_index", num(rep.fp_index));
    r.field(
        "j",
        rep.j.map_or(Value::Null, |j| json!(f.source().label(j))),
    );
    r.field("j_invertible", rep.j_invertible);
    r.field("j_squares_to_unit", rep.j_squares_to_unit);
    r.field("normal", rep.normal);
    r.field("kernel", labels_of(f.source(), &rep.kernel));
    r.verdict = rep.passes;
    Ok(r)
}

fn group_report(g: &FiniteGroup, tol: Tolerances<f64>) -> CliResult<Report> {
    let mut r = Report::new("group", &tol);
    r.field("order", g.order());
    r.field("abelian", g.is_abelian());
    r.field(
        "class_sizes",
        json!(g
            .conjugacy_classes()
            .iter()
            .map(|c| c.len())
            .collect::<Vec<_>>()),
    );
    let normals = g.normal_subgroups()?;
    r.field(
        "normal_subgroup_orders",
        json!(normals.iter().map(|n| n.len()).collect::<Vec<_>>()),
    );
    r.field("simple", g.is_simple()?);
    r.detail = normals
        .iter()
        .map(|n| {
            if n.len() > 24 {
                return format!("normal: order {}", n.len());
            }
            format!(
                "normal: {{{}}}",
                n.iter()
                    .map(|&x| g.name(x).to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    Ok(r)
}
