//! Run configuration: instance specs, degree ranges, sampling, output, and
//! the key-value config file merged under command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::groups::{infer_family, make_group, Family, GroupError, MetacyclicGroup};
use crate::sequences::SequenceFamily;

/// Environment variable capping d.
pub const MAX_D_ENV: &str = "COHOMKERN_MAX_D";
pub const DEFAULT_MAX_D: u64 = 50;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("config file {path}: {detail}")]
    File { path: PathBuf, detail: String },
}

/// One (d, s, t, family) instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub d: u64,
    pub s: u64,
    pub t: u64,
    pub family: SequenceFamily,
}

impl InstanceSpec {
    pub fn new(d: u64, s: u64, t: u64, family: SequenceFamily) -> Self {
        InstanceSpec { d, s, t, family }
    }

    /// Builds and validates the group, including the sequence-family conditions.
    pub fn group(&self) -> Result<MetacyclicGroup, GroupError> {
        let family = match self.family {
            SequenceFamily::Cyclic => Family::Cyclic,
            SequenceFamily::DihedralClassic => Family::Dihedral,
            SequenceFamily::Semidirect => Family::Semidirect,
        };
        make_group(self.d, self.s, self.t, family)
    }

    pub fn label(&self) -> String {
        format!(
            "metacyclic:{},{},{} {}",
            self.d, self.s, self.t, self.family
        )
    }
}

/// The default acceptance grid.
pub fn default_grid() -> Vec<InstanceSpec> {
    use SequenceFamily::*;
    [
        (2, 1, 1, Cyclic),
        (3, 1, 1, Cyclic),
        (5, 1, 1, Cyclic),
        (3, 2, 2, DihedralClassic),
        (5, 2, 4, DihedralClassic),
        (7, 2, 6, DihedralClassic),
        (3, 2, 2, Semidirect),
        (5, 4, 2, Semidirect),
        (13, 4, 5, Semidirect),
    ]
    .into_iter()
    .map(|(d, s, t, f)| InstanceSpec::new(d, s, t, f))
    .collect()
}

/// Parses "metacyclic:d,s,t" (the prefix is optional) into (d, s, t).
pub fn parse_group_spec(text: &str) -> Result<(u64, u64, u64), ConfigError> {
    let body = text.trim();
    let body = body.strip_prefix("metacyclic:").unwrap_or(body);
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    let bad = || {
        ConfigError::Usage(format!(
            "group spec '{text}' must look like metacyclic:d,s,t"
        ))
    };
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums = parts
        .iter()
        .map(|p| p.parse::<u64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((nums[0], nums[1], nums[2]))
}

/// Parses "a..b", "a..=b" (both inclusive), "a,b,c" or "a".
pub fn parse_degrees(text: &str) -> Result<Vec<usize>, ConfigError> {
    let bad = || {
        ConfigError::Usage(format!(
            "degree range '{text}' must look like 0..1, 0,1 or 2"
        ))
    };
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let mut out: Vec<usize> = if let Some((a, b)) = text.split_once("..") {
        let (lo, hi) = (num(a)?, num(b.trim_start_matches('='))?);
        if lo > hi {
            return Err(bad());
        }
        (lo..=hi).collect()
    } else {
        text.split(',').map(num).collect::<Result<_, _>>()?
    };
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// The cap on d from the environment.
pub fn max_d_from_env() -> Result<u64, ConfigError> {
    match std::env::var(MAX_D_ENV) {
        Ok(v) => v.trim().parse::<u64>().map_err(|_| {
            ConfigError::Usage(format!("{MAX_D_ENV} must be a positive integer, got '{v}'"))
        }),
        Err(_) => Ok(DEFAULT_MAX_D),
    }
}

/// Optional settings shared by flags and the config file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(default)]
    pub group: Option<GroupList>,
    pub family: Option<String>,
    pub degrees: Option<String>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub json: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub timings: Option<bool>,
}

/// A single group spec or a list of them.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupList {
    One(String),
    Many(Vec<String>),
}

impl GroupList {
    fn into_vec(self) -> Vec<String> {
        match self {
            GroupList::One(s) => vec![s],
            GroupList::Many(v) => v,
        }
    }
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Settings, ConfigError> {
        let err = |detail: String| ConfigError::File {
            path: path.to_path_buf(),
            detail,
        };
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        toml::from_str(&text).map_err(|e| err(e.to_string()))
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            group: self.group.or(base.group),
            family: self.family.or(base.family),
            degrees: self.degrees.or(base.degrees),
            samples: self.samples.or(base.samples),
            seed: self.seed.or(base.seed),
            json: self.json.or(base.json),
            jobs: self.jobs.or(base.jobs),
            timings: self.timings.or(base.timings),
        }
    }
}

/// Fully resolved configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub instances: Vec<InstanceSpec>,
    pub degrees: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub json: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: usize,
    pub timings: bool,
}

impl RunConfig {
    /// Resolves settings; every instance is validated before returning.
    pub fn resolve(settings: Settings) -> Result<RunConfig, ConfigError> {
        let max_d = max_d_from_env()?;
        let family = settings
            .family
            .as_deref()
            .map(|f| {
                f.parse::<SequenceFamily>()
                    .map_err(|e| ConfigError::Usage(e.to_string()))
            })
            .transpose()?;
        let instances = match settings.group {
            None => {
                let grid = default_grid();
                match family {
                    Some(f) => grid.into_iter().filter(|i| i.family == f).collect(),
                    None => grid,
                }
            }
            Some(list) => list
                .into_vec()
                .iter()
                .map(|text| {
                    let (d, s, t) = parse_group_spec(text)?;
                    let f = match family {
                        Some(f) => f,
                        None => SequenceFamily::default_for(infer_family(d, s, t))
                            .expect("every group family has a sequence family"),
                    };
                    Ok(InstanceSpec::new(d, s, t, f))
                })
                .collect::<Result<Vec<_>, ConfigError>>()?,
        };
        if instances.is_empty() {
            return Err(ConfigError::Usage("no instances selected".into()));
        }
        for inst in &instances {
            if inst.d > max_d {
                return Err(GroupError::TooLarge {
                    d: inst.d,
                    max: max_d,
                }
                .into());
            }
            inst.group()?;
        }
        let degrees = parse_degrees(settings.degrees.as_deref().unwrap_or("0..1"))?;
        let jobs = settings.jobs.unwrap_or(1);
        if jobs == 0 {
            return Err(ConfigError::Usage("--jobs must be at least 1".into()));
        }
        Ok(RunConfig {
            instances,
            degrees,
            samples: settings.samples.unwrap_or(20),
            seed: settings.seed.unwrap_or(0),
            json: settings.json,
            jobs,
            timings: settings.timings.unwrap_or(false),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs_and_degrees() {
        assert_eq!(parse_group_spec("metacyclic:5,4,2").unwrap(), (5, 4, 2));
        assert_eq!(parse_group_spec("3,2,2").unwrap(), (3, 2, 2));
        assert!(parse_group_spec("metacyclic:5,4").is_err());
        assert_eq!(parse_degrees("0..1").unwrap(), vec![0, 1]);
        assert_eq!(parse_degrees("0..=2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_degrees("2,0").unwrap(), vec![0, 2]);
        assert!(parse_degrees("2..1").is_err());
    }

    #[test]
    fn resolve_infers_family_and_rejects_bad_order() {
        let s = Settings {
            group: Some(GroupList::One("metacyclic:3,2,2".into())),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(s).unwrap();
        assert_eq!(cfg.instances[0].family, SequenceFamily::DihedralClassic);
        let s = Settings {
            group: Some(GroupList::One("metacyclic:7,2,2".into())),
            ..Default::default()
        };
        assert!(matches!(
            RunConfig::resolve(s),
            Err(ConfigError::Group(GroupError::InvalidOrder { .. }))
        ));
    }

    #[test]
    fn flags_win_over_file() {
        let file: Settings =
            toml::from_str("group = \"metacyclic:5,4,2\"\nseed = 7\nsamples = 3\n").unwrap();
        let flags = Settings {
            seed: Some(9),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(flags.over(file)).unwrap();
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.samples, 3);
        assert_eq!(
            cfg.instances,
            vec![InstanceSpec::new(5, 4, 2, SequenceFamily::Semidirect)]
        );
    }
}
