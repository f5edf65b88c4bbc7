//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::time::Instant;

use sig22::catalog::{full_grid, Family, SpaceSpec};
use sig22::geometry::{fixed_point, fixed_point_residual, IsometryGroup};
use sig22::groups::AffineElement;
use sig22::numeric::{Scalar, Tolerance};
use sig22::report::{CheckReport, Status};
use sig22::sampling;
use sig22::verify::{verify_grid, Options, VerificationReport};

const SEED: u64 = 0;
const TRIPLE_SECONDS: f64 = 5.0;
const FLOAT_BOUND: f64 = 1e-10;
const LOOSE_BOUND: f64 = 1e-9;

struct Outcome {
    problems: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { problems: Vec::new(), detail: String::new() }
    }
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }
}

fn run(specs: &[SpaceSpec], only: &[&str]) -> Vec<VerificationReport> {
    let opts = Options { seed: SEED, only: only.iter().map(|s| s.to_string()).collect(), ..Options::default() };
    verify_grid(specs, &opts).reports
}

fn checks<'a>(reports: &'a [VerificationReport], prefix: &'a str) -> impl Iterator<Item = (&'a VerificationReport, &'a CheckReport)> + 'a {
    reports.iter().flat_map(move |r| r.checks.iter().filter(move |c| c.name.starts_with(prefix)).map(move |c| (r, c)))
}

/// Every matching check passes within `bound` (exactly when `exact`), and
/// every report has at least one.
fn all_within(o: &mut Outcome, reports: &[VerificationReport], prefix: &str, bound: f64, exact: impl Fn(&SpaceSpec) -> bool, specs: &[SpaceSpec]) -> f64 {
    let mut worst: f64 = 0.0;
    for (spec, r) in specs.iter().zip(reports) {
        let mut seen = false;
        for c in r.checks.iter().filter(|c| c.name.starts_with(prefix)) {
            seen = true;
            worst = worst.max(c.max_residual.value);
            let ok = c.status == Status::Pass && if exact(spec) { c.max_residual.is_exact_zero() } else { c.max_residual.within(bound) };
            o.require(ok, || format!("{} {}: {} ({})", r.space.label, c.name, c.max_residual.render(), c.note.clone().unwrap_or_default()));
        }
        o.require(seen, || format!("{}: no {prefix} checks ran", r.space.label));
    }
    worst
}

fn family_specs(grid: &[SpaceSpec], fams: &[Family]) -> Vec<SpaceSpec> {
    grid.iter().filter(|s| fams.contains(&s.family())).cloned().collect()
}

fn catalog_soundness(grid: &[SpaceSpec]) -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let reports = run(grid, &["triple"]);
    let secs = start.elapsed().as_secs_f64();
    o.require(grid.len() >= 40, || format!("grid has {} specs", grid.len()));
    all_within(&mut o, &reports, "triple/", 0.0, |_| true, grid);
    let names = ["jacobi", "cocycle", "theta-involution", "theta-isometry", "theta-automorphism", "ad-invariance", "nondegenerate", "transvection", "signature"];
    for r in &reports {
        for n in names {
            o.require(r.checks.iter().any(|c| c.name == format!("triple/{n}")), || format!("{}: triple/{n} missing", r.space.label));
        }
    }
    o.require(secs < TRIPLE_SECONDS, || format!("took {secs:.2} s"));
    o.detail = format!("{} specs, all exact, {secs:.2} s", grid.len());
    o
}

fn metric_agreement(grid: &[SpaceSpec]) -> Outcome {
    let mut o = Outcome::new();
    let specs = family_specs(grid, &[Family::X1, Family::X2, Family::N, Family::Y]);
    let reports = run(&specs, &["metric"]);
    let worst = all_within(&mut o, &reports, "metric/", FLOAT_BOUND, |s| s.family() == Family::N, &specs);
    for (_, c) in checks(&reports, "metric/") {
        o.require(c.samples >= 50, || format!("{} has {} samples", c.name, c.samples));
    }
    o.detail = format!("{} chart spaces x 50 points, max {worst:.1e}, N exact", specs.len());
    o
}

fn isometry_suite(grid: &[SpaceSpec]) -> Outcome {
    let mut o = Outcome::new();
    let reports = run(grid, &["isometry"]);
    let worst = all_within(&mut o, &reports, "isometry/", FLOAT_BOUND, |_| false, grid);
    for (spec, r) in grid.iter().zip(&reports) {
        let group = IsometryGroup::for_spec(spec).unwrap();
        let note = r.checks.iter().find(|c| c.name == "isometry/pullback").and_then(|c| c.note.clone()).unwrap_or_default();
        for f in sampling::factor_names(&group) {
            o.require(note.contains(f), || format!("{}: factor {f} not exercised", r.space.label));
        }
        let balanced = matches!(spec, SpaceSpec::X1 { eps1, eps2, lambda } if eps1 != eps2 && *lambda == Scalar::int(1));
        o.require(!balanced || note.contains("o11-boost"), || format!("{}: O(1,1) boost missing", r.space.label));
        for (_, c) in checks(std::slice::from_ref(r), "isometry/pullback") {
            o.require(c.samples >= 2000, || format!("{}: {} pullback samples", r.space.label, c.samples));
        }
    }
    o.detail = format!("{} spaces x 100 elements x 20 points, max {worst:.1e}", grid.len());
    o
}

fn plane_waves(grid: &[SpaceSpec]) -> Outcome {
    let mut o = Outcome::new();
    let reports = run(grid, &["curvature"]);
    all_within(&mut o, &reports, "curvature/parallel-fields", 0.0, |_| true, grid);
    let dim = |fam: Family| -> Vec<String> {
        let mut d: Vec<String> = checks(&reports, "curvature/parallel-fields")
            .filter(|(r, _)| r.space.family == fam.name())
            .filter_map(|(_, c)| c.note.as_ref().and_then(|n| n.split(',').next()).map(|s| s.trim_start_matches("dimension ").to_string()))
            .collect();
        d.dedup();
        d
    };
    for (fam, want) in [(Family::X1, "1"), (Family::X2, "1"), (Family::Y, "1"), (Family::N, "2")] {
        o.require(dim(fam) == [want], || format!("{}: dimensions {:?}", fam.name(), dim(fam)));
    }
    o.detail = format!("X1 {:?}, X2 {:?}, Y {:?}, N {:?} (Z {:?}, Zprime {:?})", dim(Family::X1), dim(Family::X2), dim(Family::Y), dim(Family::N), dim(Family::Z), dim(Family::Zprime));
    o
}

fn structures(grid: &[SpaceSpec]) -> Outcome {
    let mut o = Outcome::new();
    let reports = run(grid, &["structures"]);
    for (spec, r) in grid.iter().zip(&reports) {
        let fam = spec.family();
        for (kind, present) in [("hermitian-j", matches!(fam, Family::N | Family::Z)), ("para-j", matches!(fam, Family::N | Family::Zprime))] {
            let prefix = format!("structures/{kind}");
            let found: Vec<&CheckReport> = r.checks.iter().filter(|c| c.name.starts_with(&prefix)).collect();
            if present {
                let ok = !found.is_empty() && found.iter().all(|c| c.status == Status::Pass && c.max_residual.is_exact_zero());
                o.require(ok, || format!("{}: {kind} should exist and pass exactly", r.space.label));
            } else {
                let ok = found.len() == 1 && found[0].status == Status::Skipped;
                o.require(ok, || format!("{}: {kind} should be absent", r.space.label));
            }
        }
    }
    o.detail = "hermitian exactly on N, Z; para exactly on N, Zprime".into();
    o
}

fn extrinsic(grid: &[SpaceSpec]) -> Outcome {
    let mut o = Outcome::new();
    let specs = family_specs(grid, &[Family::N, Family::Z, Family::Zprime]);
    let reports = run(&specs, &["extrinsic"]);
    let mut names: Vec<String> = Vec::new();
    let mut worst: f64 = 0.0;
    for (r, c) in checks(&reports, "extrinsic/") {
        let exact = !c.name.ends_with("/reflection") && !c.name.ends_with("/signature");
        let ok = c.status == Status::Pass && if exact { c.max_residual.is_exact_zero() } else { c.max_residual.within(FLOAT_BOUND) };
        o.require(ok, || format!("{} {}: {}", r.space.label, c.name, c.max_residual.render()));
        if c.name.ends_with("/reflection") {
            worst = worst.max(c.max_residual.value);
            o.require(c.samples >= 1000, || format!("{} {}: {} samples", r.space.label, c.name, c.samples));
            let emb = c.name.trim_start_matches("extrinsic/").trim_end_matches("/reflection").to_string();
            if !names.contains(&emb) {
                names.push(emb);
            }
        }
    }
    o.require(names.len() == 4, || format!("embeddings covered: {names:?}"));
    for n in ["extrinsic/iota-pullback", "extrinsic/complex-coordinates"] {
        o.require(checks(&reports, n).count() == 2, || format!("{n} missing for N"));
    }
    o.detail = format!("{} on {} spaces, reflections max {worst:.1e}, base points and iota exact", names.join(", "), specs.len());
    o
}

fn fixed_points(grid: &[SpaceSpec]) -> Outcome {
    let mut o = Outcome::new();
    let tol = Tolerance::default();
    // absolute residuals on Z(1,c), sampled here independently of the check
    let mut worst_abs: f64 = 0.0;
    let mut missing = 0;
    let compact = family_specs(grid, &[Family::Z]).into_iter().filter(|s| matches!(s, SpaceSpec::Z { eps: 1, .. })).collect::<Vec<_>>();
    for spec in &compact {
        let mut rng = sampling::rng(SEED ^ 0x5a);
        for _ in 0..1000 {
            let g = AffineElement::new(sampling::floats(&mut rng, 3, -2.0, 2.0), sampling::random_so3(&mut rng));
            match fixed_point(spec, &g, &tol).unwrap() {
                Some(p) => {
                    let (act, on) = fixed_point_residual(spec, &g, &p).unwrap();
                    worst_abs = worst_abs.max(act.value);
                    o.require(on.within(FLOAT_BOUND), || format!("{}: off the model by {:.1e}", spec.label(), on.value));
                }
                None => missing += 1,
            }
        }
    }
    o.require(missing == 0, || format!("{missing} compact elements without a fixed point"));
    o.require(worst_abs <= LOOSE_BOUND, || format!("compact action residual {worst_abs:.1e}"));

    let specs = family_specs(grid, &[Family::Z, Family::Zprime]);
    let reports = run(&specs, &["fixed-point"]);
    let worst = all_within(&mut o, &reports, "fixed-point/", LOOSE_BOUND, |_| false, &specs);
    for (r, c) in checks(&reports, "fixed-point/").filter(|(_, c)| c.name.ends_with("/found")) {
        let want = if c.name.contains("compact") { 1000 } else { 200 };
        o.require(c.samples == want, || format!("{} {}: {} samples", r.space.label, c.name, c.samples));
    }
    o.detail = format!(
        "{} x 1000 compact (absolute {worst_abs:.1e}); 200 elliptic / hyperbolic per Z(-1,c), Zprime(c) (relative {worst:.1e})",
        compact.len()
    );
    o
}

fn round_trip(grid: &[SpaceSpec]) -> Outcome {
    let mut o = Outcome::new();
    let reports = run(grid, &["roundtrip"]);
    let worst = all_within(&mut o, &reports, "roundtrip/", LOOSE_BOUND, |s| s.family() == Family::N, grid);
    o.detail = format!("{} spaces, max {worst:.1e}, N exact", grid.len());
    o
}

fn main_theorem_ingredients(grid: &[SpaceSpec], fixed: &Outcome) -> Outcome {
    let mut o = Outcome::new();
    let specs = family_specs(grid, &[Family::Z, Family::Zprime]).into_iter().filter(|s| !matches!(s, SpaceSpec::Z { eps: 1, .. })).collect::<Vec<_>>();
    let reports = run(&specs, &["so12"]);
    all_within(&mut o, &reports, "so12/", 0.0, |_| true, &specs);
    for (r, c) in checks(&reports, "so12/conjugation") {
        o.require(c.samples >= 100, || format!("{}: {} conjugations", r.space.label, c.samples));
    }
    o.require(fixed.problems.is_empty(), || "fixed-point criterion failed".into());
    o.detail = format!("stand-in only: {} x 100 conjugations plus the fixed-point criterion; the non-existence proof is not computed", specs.len());
    o
}

fn main() {
    let grid = full_grid();
    let fixed = fixed_points(&grid);
    let ninth = main_theorem_ingredients(&grid, &fixed);
    let results = vec![
        ("catalog soundness", catalog_soundness(&grid)),
        ("metric agreement", metric_agreement(&grid)),
        ("isometry suite", isometry_suite(&grid)),
        ("plane-wave invariants", plane_waves(&grid)),
        ("hermitian and para structures", structures(&grid)),
        ("extrinsic embeddings", extrinsic(&grid)),
        ("fixed points", fixed),
        ("group-algebra round trip", round_trip(&grid)),
        ("main theorem ingredients", ninth),
    ];
    let mut failed = 0;
    for (i, (title, o)) in results.iter().enumerate() {
        let ok = o.problems.is_empty();
        println!("{} {}. {title}: {}", if ok { "PASS" } else { "FAIL" }, i + 1, o.detail);
        for p in o.problems.iter().take(10) {
            println!("       {p}");
        }
        if o.problems.len() > 10 {
            println!("       ... {} more", o.problems.len() - 10);
        }
        failed += usize::from(!ok);
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
