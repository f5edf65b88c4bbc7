mod parse;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sig22::catalog::{default_grid, full_grid, SpaceSpec};
use sig22::geometry::{
    classify_so12_with, fixed_point, fixed_point_residual, model_metric, pullback_check, IsometryGroup, Model, PARABOLIC_TOL,
};
use sig22::groups::AffineElement;
use sig22::numeric::{Matrix, Scalar, Tolerance};
use sig22::registry;
use sig22::report::Status;
use sig22::verify::{verify, verify_grid, Options, Sizes};
use sig22::Error;

const TOL_ENV: &str = "SIG22_TOL";

#[derive(Parser)]
#[command(name = "sig22", version, about = "Non-semisimple symmetric spaces of signature (2,2): catalog and verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Families, parameter domains and supported structures
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Run the verification suite for one space or a grid
    Verify(VerifyArgs),
    /// Fixed point of (b, A) on a Z or Z' model
    FixedPoint {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form metric at a chart point
    Metric {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[command(flatten)]
        common: Common,
    },
    /// Apply an isometry to a point and check the pullback there
    Act {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// transvection part: (z,a1..a4,t) for X1/X2/Y, (z1,z2,a,l1,l2) for N
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        /// linear part: automorphism (identity, theta, delta:d1,d2, o11:M; join with +), SL±(2) matrix for N, or A for Z/Z'
        #[arg(long = "A", allow_hyphen_values = true)]
        a: Option<String>,
        /// translation for Z/Z'
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Conjugacy type of an element of SO0(1,2)
    ClassifySo12 {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = PARABOLIC_TOL)]
        parabolic_tol: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Default)]
struct SpaceArgs {
    #[arg(long)]
    space: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eps1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eps2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
}

impl SpaceArgs {
    fn given(&self) -> BTreeMap<String, String> {
        [("eps1", &self.eps1), ("eps2", &self.eps2), ("lambda", &self.lambda), ("nu", &self.nu), ("kappa", &self.kappa), ("eps", &self.eps), ("c", &self.c)]
            .into_iter()
            .filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v)))
            .collect()
    }

    fn spec(&self) -> Result<SpaceSpec, Error> {
        let name = self.space.as_deref().ok_or_else(|| Error::InvalidParameter("--space is required".into()))?;
        registry::parse_spec(name, &self.given())
    }
}

#[derive(Args)]
struct Common {
    /// absolute and relative tolerance (default 1e-9, or $SIG22_TOL)
    #[arg(long)]
    tol: Option<f64>,
    /// print JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridKind {
    Default,
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// verify a parameter grid instead of one space
    #[arg(long, value_enum, conflicts_with = "space")]
    grid: Option<GridKind>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// write the JSON report here
    #[arg(long)]
    json: Option<std::path::PathBuf>,
    /// only checks whose name starts with this (repeatable)
    #[arg(long)]
    check: Vec<String>,
    /// small sample counts
    #[arg(long)]
    quick: bool,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidParameter(_) | Error::OffManifold(_) | Error::NotInGroup(_) | Error::Dimension(_) | Error::Unsupported(_) => 2,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn tolerance(flag: Option<f64>) -> Result<Tolerance, Failure> {
    let t = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s.trim().parse::<f64>().map_err(|_| usage(format!("{TOL_ENV}={s:?} is not a number")))?,
            Err(_) => return Ok(Tolerance::default()),
        },
    };
    if !(t > 0.0 && t.is_finite()) {
        return Err(usage(format!("tolerance must be positive, got {t}")));
    }
    Ok(Tolerance { abs_tol: t, rel_tol: t })
}

fn render_vec(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::render).collect()
}

fn render_matrix(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| render_vec(&m.row(i))).collect()
}

fn print_matrix(m: &Matrix) {
    let rows = render_matrix(m);
    let w = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for r in rows {
        println!("  [{}]", r.iter().map(|x| format!("{x:>w$}")).collect::<Vec<_>>().join("  "));
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn catalog_list(json_out: bool) -> Result<u8, Failure> {
    let fams = registry::families();
    if json_out {
        let arr: Vec<Value> = fams
            .iter()
            .map(|f| {
                json!({
                    "family": f.name(),
                    "params": f.params().iter().map(|p| json!({"name": p.name, "domain": p.domain})).collect::<Vec<_>>(),
                    "supports": f.supports(),
                    "default_grid": f.grid(false).iter().map(SpaceSpec::label).collect::<Vec<_>>(),
                })
            })
            .collect();
        print_json(&Value::Array(arr));
        return Ok(0);
    }
    for f in &fams {
        let params: Vec<String> = f.params().iter().map(|p| format!("{} in {}", p.name, p.domain.describe())).collect();
        let s = f.supports();
        let yn = |b: bool| if b { "yes" } else { "no" };
        println!("{}({})", f.name(), f.params().iter().map(|p| p.name).collect::<Vec<_>>().join(", "));
        println!("  parameters:   {}", params.join("; "));
        println!("  hermitian J:  {}", yn(s.hermitian_j));
        println!("  para J:       {}", yn(s.para_j));
        println!("  chart:        {}", yn(s.coordinate_chart));
        println!("  embeddings:   {}", if s.embeddings.is_empty() { "none".to_string() } else { s.embeddings.join(", ") });
        println!("  fixed points: {}", yn(s.fixed_point_solver));
    }
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let tol = tolerance(a.tol)?;
    let opts = Options { tol, seed: a.seed, sizes: if a.quick { Sizes::quick() } else { Sizes::default() }, only: a.check };
    let (passed, json_text) = match a.grid {
        Some(kind) => {
            let specs = match kind {
                GridKind::Default => default_grid(),
                GridKind::Full => full_grid(),
            };
            let rep = verify_grid(&specs, &opts);
            for r in &rep.reports {
                let fails: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
                println!("{:<5} {:<16} {} checks{}", status_word(r.status), r.space.label, r.checks.len(), if fails.is_empty() { String::new() } else { format!("; failed: {}", fails.join(", ")) });
            }
            println!("{} of {} spaces pass", rep.reports.iter().filter(|r| r.passed()).count(), rep.reports.len());
            (rep.status == Status::Pass, serde_json::to_string_pretty(&rep).expect("json"))
        }
        None => {
            let spec = a.space.spec()?;
            let rep = verify(&spec, &opts);
            println!("{}  seed {}  tol {:e}", rep.space.label, rep.seed, tol.abs_tol);
            for c in &rep.checks {
                let note = c.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default();
                println!("  {:<5} {:<46} {:>24}  n={}{}", status_word(c.status), c.name, c.max_residual.render(), c.samples, note);
            }
            println!("{}", status_word(rep.status));
            (rep.passed(), serde_json::to_string_pretty(&rep).expect("json"))
        }
    };
    if let Some(path) = a.json {
        std::fs::write(&path, json_text + "\n").map_err(|e| Failure { code: 1, msg: format!("writing {}: {e}", path.display()) })?;
    }
    Ok(if passed { 0 } else { 1 })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
    }
}

fn cmd_fixed_point(space: SpaceArgs, b: &str, a: &str, common: Common) -> Result<u8, Failure> {
    let tol = tolerance(common.tol)?;
    let spec = space.spec()?;
    let g = AffineElement::new(parse::vector_of(b, 3, "--b")?, parse::matrix(a, 3)?);
    let p = fixed_point(&spec, &g, &tol)?;
    let residuals = p.as_ref().map(|p| fixed_point_residual(&spec, &g, p)).transpose()?;
    if common.json {
        print_json(&json!({
            "space": spec.label(),
            "point": p.as_deref().map(render_vec),
            "action_residual": residuals.map(|r| r.0.render()),
            "model_residual": residuals.map(|r| r.1.render()),
        }));
    } else {
        match (&p, residuals) {
            (Some(p), Some((act, on))) => {
                println!("point ({})", render_vec(p).join(", "));
                println!("action residual {}", act.render());
                println!("model residual  {}", on.render());
            }
            _ => println!("no fixed point"),
        }
    }
    Ok(0)
}

fn cmd_metric(space: SpaceArgs, point: &str, common: Common) -> Result<u8, Failure> {
    let spec = space.spec()?;
    let model = model_metric(&spec)?;
    let p = parse::vector_of(point, model.dim(), "--point")?;
    let g = model.metric(&p);
    if common.json {
        print_json(&json!({"space": spec.label(), "chart": model.chart(), "point": render_vec(&p), "metric": render_matrix(&g)}));
    } else {
        println!("{} chart ({}) at ({})", spec.label(), model.chart(), render_vec(&p).join(", "));
        print_matrix(&g);
    }
    Ok(0)
}

fn cmd_act(space: SpaceArgs, point: &str, g: Option<String>, a: Option<String>, b: Option<String>, common: Common) -> Result<u8, Failure> {
    let tol = tolerance(common.tol)?;
    let spec = space.spec()?;
    let group = IsometryGroup::for_spec(&spec)?;
    let model = Model::for_spec(&spec)?;
    let x = parse::element(&spec, g.as_deref(), a.as_deref(), b.as_deref(), &tol)?;
    let p = parse::vector_of(point, group.point_dim(), "--point")?;
    if let Model::Embedded(e) = &model {
        e.check_point(&p, &tol)?;
    }
    let q = group.act(&x, &p);
    let pull = pullback_check(&model, &group, &x, std::slice::from_ref(&p), &tol)?;
    if common.json {
        print_json(&json!({"space": spec.label(), "point": render_vec(&p), "image": render_vec(&q), "pullback_residual": pull.render()}));
    } else {
        println!("image ({})", render_vec(&q).join(", "));
        println!("pullback residual {}", pull.render());
    }
    Ok(if pull.within(1e-10) { 0 } else { 1 })
}

fn cmd_classify(a: &str, parabolic_tol: f64, common: Common) -> Result<u8, Failure> {
    let tol = tolerance(common.tol)?;
    let m = parse::matrix(a, 3)?;
    let class = classify_so12_with(&m, &tol, parabolic_tol)?;
    if common.json {
        print_json(&json!({"class": class.name(), "trace": m.trace().render()}));
    } else {
        println!("{}", class.name());
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Catalog { cmd: CatalogCmd::List { json } } => catalog_list(json),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::FixedPoint { space, b, a, common } => cmd_fixed_point(space, &b, &a, common),
        Cmd::Metric { space, point, common } => cmd_metric(space, &point, common),
        Cmd::Act { space, point, g, a, b, common } => cmd_act(space, &point, g, a, b, common),
        Cmd::ClassifySo12 { a, parabolic_tol, common } => cmd_classify(&a, parabolic_tol, common),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
