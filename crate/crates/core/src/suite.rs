//! The per-instance verification suite and the parallel grid runner.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{
    six_term_verify, verify_eta, verify_prism_bockstein, CohomologyError, DegreePolicy,
    SequenceCohomology,
};
use crate::config::{InstanceSpec, RunConfig};
use crate::report::{Claim, InstanceDescriptor, Status, VerificationReport};
use crate::sequences::{
    build_sequence, verify_arason, verify_b_identities, verify_four_term, verify_kernel_diagram,
    verify_m4_structure, verify_oldlemma14, SequenceFamily,
};

pub const TOOL_NAME: &str = "cohomkern";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Options for one instance run.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub degrees: Vec<usize>,
    pub samples: usize,
    pub timings: bool,
    pub policy: DegreePolicy,
}

impl SuiteOptions {
    pub fn from_config(cfg: &RunConfig) -> Self {
        SuiteOptions {
            degrees: cfg.degrees.clone(),
            samples: cfg.samples,
            timings: cfg.timings,
            policy: DegreePolicy::default(),
        }
    }
}

/// Deterministic per-instance generator: one ChaCha stream per grid position.
pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

struct Collector {
    rep: VerificationReport,
    timings: bool,
}

impl Collector {
    /// Runs one stage, stamping its claims with the stage time when enabled.
    fn stage<E: std::fmt::Display>(
        &mut self,
        name: &str,
        f: impl FnOnce() -> Result<Vec<Claim>, E>,
    ) {
        let start = Instant::now();
        let mut claims = match f() {
            Ok(c) => c,
            Err(e) => vec![Claim::new(format!("{name}.error"), false, e.to_string())],
        };
        if self.timings {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            for c in &mut claims {
                c.timing_ms = Some(ms);
            }
        }
        self.rep.claims.extend(claims);
    }

    /// Like `stage`, also merging the recorded ranks.
    fn stage_report<E: std::fmt::Display>(
        &mut self,
        name: &str,
        f: impl FnOnce() -> Result<VerificationReport, E>,
    ) {
        let mut ranks = BTreeMap::new();
        self.stage(name, || {
            f().map(|r| {
                ranks = r.ranks;
                r.claims
            })
        });
        self.rep.ranks.extend(ranks);
    }
}

fn skipped(id: String, e: &CohomologyError) -> Vec<Claim> {
    vec![Claim::info(id, format!("skipped: {e}"))]
}

/// Runs every applicable check on one instance.
pub fn verify_instance(
    spec: &InstanceSpec,
    opts: &SuiteOptions,
    rng: &mut ChaCha8Rng,
) -> VerificationReport {
    let g = match spec.group() {
        Ok(g) => g,
        Err(e) => {
            let mut rep = VerificationReport::new(InstanceDescriptor {
                d: spec.d,
                s: spec.s,
                t: spec.t,
                family: spec.family.to_string(),
            });
            rep.check("group.valid", false, e.to_string());
            return rep;
        }
    };
    let seq = match build_sequence(g, spec.family) {
        Ok(seq) => seq,
        Err(e) => {
            let mut rep =
                VerificationReport::new(InstanceDescriptor::new(&g, spec.family.to_string()));
            rep.check("sequence.build", false, e.to_string());
            return rep;
        }
    };
    let mut col = Collector {
        rep: VerificationReport::new(seq.descriptor()),
        timings: opts.timings,
    };
    col.stage_report("four_term", || {
        Ok::<_, std::convert::Infallible>(verify_four_term(&seq))
    });
    if spec.family == SequenceFamily::Semidirect {
        col.stage_report("blemma", || verify_b_identities(g));
    }
    if g.s() % 2 == 0 {
        col.stage_report("m4", || verify_m4_structure(&seq));
        col.stage_report("diagram", || verify_kernel_diagram(&seq));
    }
    if g.s() == 2 {
        col.stage_report("oldlemma14", || verify_oldlemma14(&seq));
    }
    if spec.family == SequenceFamily::Cyclic && g.d() == 2 {
        let max_n = opts.degrees.iter().copied().max().unwrap_or(0).min(2);
        col.stage("arason", || -> Result<_, std::convert::Infallible> {
            Ok(verify_arason(max_n, opts.samples, &opts.policy, rng).claims)
        });
    }

    let sc = SequenceCohomology::new(&seq, &opts.policy);
    for &n in &opts.degrees {
        col.stage(&format!("eta.n{n}"), || {
            match verify_eta(&sc, n, opts.samples, rng) {
                Err(e @ CohomologyError::DegreeTooLarge { .. }) => {
                    Ok(skipped(format!("eta.n{n}"), &e))
                }
                other => other,
            }
        });
        col.stage(
            &format!("prism_bockstein.n{n}"),
            || match verify_prism_bockstein(&sc, n, opts.samples, rng) {
                Err(e @ CohomologyError::DegreeTooLarge { .. }) => {
                    Ok(skipped(format!("prism_bockstein.n{n}"), &e))
                }
                other => other,
            },
        );
        col.stage(&format!("sixterm.n{n}"), || match six_term_verify(&sc, n) {
            Ok((rep, _)) => Ok(rep.claims),
            Err(e @ CohomologyError::DegreeTooLarge { .. }) => {
                Ok(skipped(format!("sixterm.n{n}"), &e))
            }
            Err(e) => Err(e),
        });
    }
    let mut rep = col.rep;
    rep.claims.sort_by(|a, b| a.id.cmp(&b.id));
    rep.claims.dedup_by(|a, b| a.id == b.id);
    rep
}

/// Claim tallies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub claims: usize,
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = Summary {
            instances: reports.len(),
            ..Default::default()
        };
        for c in reports.iter().flat_map(|r| &r.claims) {
            s.claims += 1;
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Info => s.info += 1,
            }
        }
        s
    }
}

/// The full machine-readable output of a verify run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub instances: Vec<VerificationReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the suite over every configured instance, in parallel up to `cfg.jobs`,
/// returning reports in configuration order.
pub fn run_suite(cfg: &RunConfig) -> SuiteReport {
    let opts = SuiteOptions::from_config(cfg);
    let run = || {
        cfg.instances
            .par_iter()
            .enumerate()
            .map(|(k, spec)| verify_instance(spec, &opts, &mut instance_rng(cfg.seed, k)))
            .collect::<Vec<_>>()
    };
    let instances = match rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
    {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let summary = Summary::of(&instances);
    SuiteReport {
        tool: TOOL_NAME,
        version: TOOL_VERSION,
        config: cfg.clone(),
        instances,
        summary,
    }
}
