//! Machine-readable verification records.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::groups::MetacyclicGroup;

/// Outcome of a single checked claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Computed data that is recorded rather than asserted.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<f64>,
}

impl Claim {
    pub fn new(id: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Claim {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            timing_ms: None,
        }
    }

    pub fn info(id: impl Into<String>, detail: impl Into<String>) -> Self {
        Claim {
            id: id.into(),
            status: Status::Info,
            detail: detail.into(),
            timing_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    pub d: u64,
    pub s: u64,
    pub t: u64,
    pub family: String,
}

impl InstanceDescriptor {
    pub fn new(g: &MetacyclicGroup, family: impl Into<String>) -> Self {
        InstanceDescriptor {
            d: g.d(),
            s: g.s(),
            t: g.t(),
            family: family.into(),
        }
    }
}

/// Claims about one instance, kept sorted by id.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: InstanceDescriptor,
    pub claims: Vec<Claim>,
    pub ranks: BTreeMap<String, usize>,
}

impl VerificationReport {
    pub fn new(instance: InstanceDescriptor) -> Self {
        VerificationReport {
            instance,
            claims: Vec::new(),
            ranks: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
    }

    pub fn check(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(Claim::new(id, ok, detail));
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.claims.extend(other.claims);
        self.ranks.extend(other.ranks);
    }

    pub fn sort(&mut self) {
        self.claims.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(Claim::passed)
    }

    pub fn failures(&self) -> Vec<&Claim> {
        self.claims.iter().filter(|c| !c.passed()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn strip_timings(&mut self) {
        for c in &mut self.claims {
            c.timing_ms = None;
        }
    }
}
