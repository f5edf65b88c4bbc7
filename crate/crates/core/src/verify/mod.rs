//! Verification runs: every check relevant to a space, collected into a
//! flat, versioned report.

mod checks;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::SpaceSpec;
use crate::numeric::Tolerance;
use crate::report::{CheckReport, Status};

pub use checks::{checks, Check};

pub const SCHEMA: &str = "sig22-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Sample counts used by the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sizes {
    pub metric_points: usize,
    pub isometry_elements: usize,
    pub isometry_points: usize,
    pub homomorphism_pairs: usize,
    pub group_law_samples: usize,
    pub reflection_bases: usize,
    pub reflection_samples: usize,
    pub iota_samples: usize,
    pub fixed_points_compact: usize,
    pub fixed_points_lorentzian: usize,
    pub conjugations: usize,
    pub inner_automorphisms: usize,
}

impl Default for Sizes {
    fn default() -> Self {
        Sizes {
            metric_points: 50,
            isometry_elements: 100,
            isometry_points: 20,
            homomorphism_pairs: 100,
            group_law_samples: 100,
            reflection_bases: 10,
            reflection_samples: 100,
            iota_samples: 50,
            fixed_points_compact: 1000,
            fixed_points_lorentzian: 200,
            conjugations: 100,
            inner_automorphisms: 200,
        }
    }
}

impl Sizes {
    /// Small counts for fast smoke runs.
    pub fn quick() -> Self {
        Sizes {
            metric_points: 5,
            isometry_elements: 12,
            isometry_points: 3,
            homomorphism_pairs: 10,
            group_law_samples: 10,
            reflection_bases: 2,
            reflection_samples: 10,
            iota_samples: 5,
            fixed_points_compact: 20,
            fixed_points_lorentzian: 10,
            conjugations: 10,
            inner_automorphisms: 10,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub tol: Tolerance,
    pub seed: u64,
    pub sizes: Sizes,
    /// Run only checks whose name starts with one of these.
    pub only: Vec<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options { tol: Tolerance::default(), seed: 0, sizes: Sizes::default(), only: Vec::new() }
    }
}

/// What a check sees.
pub struct Context<'a> {
    pub spec: &'a SpaceSpec,
    pub tol: &'a Tolerance,
    pub sizes: &'a Sizes,
    /// seed for this check, derived from the run seed and the check name
    pub seed: u64,
}

impl Context<'_> {
    /// A check's float bound, tightened by a smaller run tolerance.
    pub fn bound(&self, b: f64) -> f64 {
        b.min(self.tol.abs_tol)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceReport {
    pub family: String,
    pub label: String,
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ToleranceReport {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub space: SpaceReport,
    pub tolerance: ToleranceReport,
    pub seed: u64,
    pub status: Status,
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub status: Status,
    pub reports: Vec<VerificationReport>,
}

/// Pass iff every non-skipped check passes.
pub fn overall(checks: &[CheckReport]) -> Status {
    if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn check_seed(seed: u64, name: &str) -> u64 {
    seed ^ fnv1a(name)
}

pub fn verify(spec: &SpaceSpec, opts: &Options) -> VerificationReport {
    let selected: Vec<Box<dyn Check>> = checks()
        .into_iter()
        .filter(|c| c.applies(spec))
        .filter(|c| opts.only.is_empty() || opts.only.iter().any(|o| c.name().starts_with(o.as_str())))
        .collect();
    let results: Vec<Vec<CheckReport>> = selected
        .par_iter()
        .map(|c| {
            let ctx = Context { spec, tol: &opts.tol, sizes: &opts.sizes, seed: check_seed(opts.seed, c.name()) };
            match c.run(&ctx) {
                Ok(r) => r,
                Err(e) => vec![CheckReport::boolean(c.name(), false, 0).with_note(e.to_string())],
            }
        })
        .collect();
    let checks: Vec<CheckReport> = results.into_iter().flatten().collect();
    VerificationReport {
        schema: SCHEMA,
        tool_version: VERSION,
        space: SpaceReport {
            family: spec.family().name().to_string(),
            label: spec.label(),
            params: spec.params().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        },
        tolerance: ToleranceReport { abs_tol: opts.tol.abs_tol, rel_tol: opts.tol.rel_tol },
        seed: opts.seed,
        status: overall(&checks),
        checks,
    }
}

/// Verify every spec, in order.
pub fn verify_grid(specs: &[SpaceSpec], opts: &Options) -> GridReport {
    let reports: Vec<VerificationReport> = specs.par_iter().map(|s| verify(s, opts)).collect();
    let status = if reports.iter().all(VerificationReport::passed) { Status::Pass } else { Status::Fail };
    GridReport { schema: SCHEMA, tool_version: VERSION, status, reports }
}
