//! The `cohomkern` command line: `verify`, `cohomology` and `eta`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cohomology::{
    cohomology_group, is_cocycle, Cochain, CochainJson, CohomologyError, CohomologySummary,
    DegreePolicy, SequenceCohomology, ZnModule,
};
use crate::config::{ConfigError, GroupList, InstanceSpec, RunConfig, Settings};
use crate::report::Status;
use crate::sequences::build_sequence;
use crate::suite::{instance_rng, run_suite, TOOL_NAME, TOOL_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cohomkern",
    version,
    about = "Exact cohomology checks for four-term sequences over metacyclic groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the verification suite over the selected instances.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Print every claim, not only failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Compute Hⁿ of a module reduced mod d.
    Cohomology {
        #[command(flatten)]
        common: CommonArgs,
        /// One of M1, M2, M3, M4, M3prime (alias Delta), ring, trivial.
        #[arg(long, default_value = "M1")]
        module: String,
    },
    /// Compare generic η with its closed form on a cocycle.
    Eta {
        #[command(flatten)]
        common: CommonArgs,
        /// Degree of the input cocycle in Hⁿ(M̄₄).
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// JSON cochain file; when absent, cocycles are sampled.
        #[arg(long)]
        cocycle: Option<PathBuf>,
    },
}

/// Flags shared by all subcommands; unset flags fall back to the config file.
#[derive(Debug, Args, Clone, Default)]
pub struct CommonArgs {
    /// Group as metacyclic:d,s,t (repeatable); default is the acceptance grid.
    #[arg(long)]
    pub group: Vec<String>,
    /// Sequence family: cyclic, dihedral or semidirect.
    #[arg(long)]
    pub family: Option<String>,
    /// Degrees such as 0..1, 0,2 or 1.
    #[arg(long)]
    pub degrees: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the JSON report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Number of instances run in parallel.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Record per-claim timings (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
    /// Key-value (TOML) config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl CommonArgs {
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let flags = Settings {
            group: if self.group.is_empty() {
                None
            } else {
                Some(GroupList::Many(self.group.clone()))
            },
            family: self.family.clone(),
            degrees: self.degrees.clone(),
            samples: self.samples,
            seed: self.seed,
            json: self.json.clone(),
            jobs: self.jobs,
            timings: self.timings.then_some(true),
        };
        let file = match &self.config {
            Some(p) => Settings::from_file(p)?,
            None => Settings::default(),
        };
        RunConfig::resolve(flags.over(file))
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("{0}")]
    Other(String),
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Verify { common, verbose } => cmd_verify(common, *verbose),
        Command::Cohomology { common, module } => cmd_cohomology(common, module),
        Command::Eta {
            common,
            degree,
            cocycle,
        } => cmd_eta(common, *degree, cocycle.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("output serializes");
    std::fs::write(path, text + "\n")
        .map_err(|e| CliError::Other(format!("cannot write {}: {e}", path.display())))
}

fn cmd_verify(common: &CommonArgs, verbose: bool) -> Result<i32, CliError> {
    let cfg = common.resolve()?;
    let report = run_suite(&cfg);
    let mut out = std::io::stdout().lock();
    for rep in &report.instances {
        let i = &rep.instance;
        let fails = rep
            .claims
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count();
        let _ = writeln!(
            out,
            "metacyclic:{},{},{} {}: {} claims, {} failed",
            i.d,
            i.s,
            i.t,
            i.family,
            rep.claims.len(),
            fails
        );
        for c in &rep.claims {
            if verbose || c.status == Status::Fail {
                let _ = writeln!(out, "  [{:?}] {}: {}", c.status, c.id, c.detail);
            }
        }
    }
    let s = report.summary;
    let _ = writeln!(
        out,
        "summary: {} instances, {} claims, {} pass, {} fail, {} info",
        s.instances, s.claims, s.pass, s.fail, s.info
    );
    if let Some(path) = &cfg.json {
        write_json(path, &report)?;
    }
    Ok(if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAILURE
    })
}

/// Resolves a module name against an instance; all modules are reduced mod d.
pub fn named_module(sc: &SequenceCohomology, name: &str) -> Result<ZnModule, ConfigError> {
    let d = sc.d();
    match name.to_ascii_lowercase().as_str() {
        "m1" => Ok(sc.bar[0].clone()),
        "m2" => Ok(sc.bar[1].clone()),
        "m3" => Ok(sc.bar[2].clone()),
        "m4" => Ok(sc.bar[3].clone()),
        "m3prime" | "delta" => Ok(sc.delta.clone()),
        "ring" | "fullring" => Ok(ZnModule::regular(&sc.table, d)),
        "trivial" => Ok(ZnModule::trivial("trivial", d, 1, sc.table.order())),
        other => Err(ConfigError::Usage(format!(
            "unknown module '{other}'; expected M1, M2, M3, M4, M3prime, ring or trivial"
        ))),
    }
}

fn instance_cohomology(spec: &InstanceSpec) -> Result<SequenceCohomology, CliError> {
    let g = spec.group().map_err(ConfigError::from)?;
    let seq = build_sequence(g, spec.family).map_err(|e| CliError::Other(e.to_string()))?;
    Ok(SequenceCohomology::new(&seq, &DegreePolicy::default()))
}

#[derive(Serialize)]
struct CohomologyRecord {
    instance: InstanceSpec,
    #[serde(flatten)]
    group: CohomologySummary,
    generators: Vec<CochainJson>,
}

#[derive(Serialize)]
struct CohomologyOutput {
    tool: &'static str,
    version: &'static str,
    config: RunConfig,
    results: Vec<CohomologyRecord>,
}

fn cmd_cohomology(common: &CommonArgs, module: &str) -> Result<i32, CliError> {
    let cfg = common.resolve()?;
    let mut results = Vec::new();
    for spec in &cfg.instances {
        let sc = instance_cohomology(spec)?;
        let m = named_module(&sc, module)?;
        for &n in &cfg.degrees {
            let h = cohomology_group(&sc.table, &m, n, &sc.policy)?;
            let factors = h.invariant_factors();
            let shown = if factors.is_empty() {
                "trivial".to_string()
            } else {
                format!("{factors:?}")
            };
            println!("{} H^{n}({}) = {shown}", spec.label(), m.name);
            let generators: Vec<CochainJson> = h
                .generators()
                .iter()
                .map(|c| c.to_json(&sc.table, &m.name))
                .collect();
            for (k, g) in generators.iter().enumerate() {
                println!(
                    "  generator {k} (order {}): {}",
                    factors[k],
                    serde_json::to_string(&g.entries).expect("serializes")
                );
            }
            results.push(CohomologyRecord {
                instance: *spec,
                group: h.summary(),
                generators,
            });
        }
    }
    if let Some(path) = &cfg.json {
        write_json(
            path,
            &CohomologyOutput {
                tool: TOOL_NAME,
                version: TOOL_VERSION,
                config: cfg.clone(),
                results,
            },
        )?;
    }
    Ok(EXIT_OK)
}

/// Outcome of comparing two η outputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Cohomologous,
    Different,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Equal => "equal",
            Verdict::Cohomologous => "cohomologous",
            Verdict::Different => "different",
        })
    }
}

/// Compares generic η with the closed form on one cocycle of Hⁿ(M̄₄).
pub fn compare_eta(
    sc: &SequenceCohomology,
    c: &Cochain,
) -> Result<(Cochain, Cochain, Verdict), CohomologyError> {
    if !is_cocycle(&sc.table, &sc.bar[3], c) {
        return Err(CohomologyError::NotACocycle(
            "input cochain has nonzero coboundary".into(),
        ));
    }
    let generic = sc.eta(c)?;
    let closed = sc.eta_closed(c);
    let verdict = if generic == closed {
        Verdict::Equal
    } else if sc.cohomologous(&sc.bar[0], &generic, &closed)? {
        Verdict::Cohomologous
    } else {
        Verdict::Different
    };
    Ok((generic, closed, verdict))
}

#[derive(Serialize)]
struct EtaRecord {
    instance: InstanceSpec,
    input: CochainJson,
    generic: CochainJson,
    closed: CochainJson,
    verdict: Verdict,
}

#[derive(Serialize)]
struct EtaOutput {
    tool: &'static str,
    version: &'static str,
    config: RunConfig,
    degree: usize,
    results: Vec<EtaRecord>,
}

fn cmd_eta(common: &CommonArgs, degree: usize, cocycle: Option<&Path>) -> Result<i32, CliError> {
    let cfg = common.resolve()?;
    if cocycle.is_some() && cfg.instances.len() != 1 {
        return Err(ConfigError::Usage("--cocycle needs exactly one --group".into()).into());
    }
    let mut results = Vec::new();
    for (k, spec) in cfg.instances.iter().enumerate() {
        let sc = instance_cohomology(spec)?;
        sc.policy.check(degree + 1, sc.table.order())?;
        let inputs = match cocycle {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Other(format!("cannot read {}: {e}", path.display())))?;
                let json: CochainJson = serde_json::from_str(&text)
                    .map_err(|e| ConfigError::Usage(format!("{}: {e}", path.display())))?;
                if json.degree != degree || json.modulus != sc.d() {
                    return Err(ConfigError::Usage(format!(
                        "cochain has degree {} modulus {}, expected degree {degree} modulus {}",
                        json.degree,
                        json.modulus,
                        sc.d()
                    ))
                    .into());
                }
                vec![Cochain::from_json(&json, &sc.table, sc.bar[3].rank)?]
            }
            None => {
                let h = sc.h(4, degree)?;
                let mut rng = instance_rng(cfg.seed, k);
                (0..cfg.samples.max(1))
                    .map(|_| h.random_cocycle(&mut rng))
                    .collect()
            }
        };
        for c in &inputs {
            let (generic, closed, verdict) = compare_eta(&sc, c)?;
            println!("{} n={degree}: verdict {verdict}", spec.label());
            results.push(EtaRecord {
                instance: *spec,
                input: c.to_json(&sc.table, "M4"),
                generic: generic.to_json(&sc.table, "M1"),
                closed: closed.to_json(&sc.table, "M1"),
                verdict,
            });
        }
    }
    let failed = results
        .iter()
        .filter(|r| r.verdict == Verdict::Different)
        .count();
    println!("summary: {} cocycles, {} differ", results.len(), failed);
    if let Some(path) = &cfg.json {
        write_json(
            path,
            &EtaOutput {
                tool: TOOL_NAME,
                version: TOOL_VERSION,
                config: cfg.clone(),
                degree,
                results,
            },
        )?;
    }
    Ok(if failed == 0 {
        EXIT_OK
    } else {
        EXIT_CLAIM_FAILURE
    })
}
