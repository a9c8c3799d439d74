//! Four-term exact sequences of Z/d²[G]-modules with homotopies, their
//! verification, the structural diagrams around M₃ and M₄, and the Arason
//! sequence for G = Z/2.

mod arason;
mod four_term;
mod structure;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::group_ring::RingError;
use crate::groups::{Family, MetacyclicGroup};

pub use arason::{arason_check, build_arason, verify_arason, ArasonData};
pub use four_term::{build_sequence, exactness_check, verify_four_term, FourTermSequence};
pub use structure::{
    verify_b_identities, verify_kernel_diagram, verify_m4_structure, verify_oldlemma14,
};

/// Construction families for the four-term sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SequenceFamily {
    #[serde(rename = "cyclic")]
    Cyclic,
    #[serde(rename = "dihedral-classic")]
    DihedralClassic,
    #[serde(rename = "semidirect")]
    Semidirect,
}

impl SequenceFamily {
    /// The sequence family matching a group family.
    pub fn default_for(f: Family) -> Option<SequenceFamily> {
        match f {
            Family::Cyclic | Family::Arason => Some(SequenceFamily::Cyclic),
            Family::Dihedral => Some(SequenceFamily::DihedralClassic),
            Family::Semidirect => Some(SequenceFamily::Semidirect),
        }
    }

    pub fn all() -> [SequenceFamily; 3] {
        [
            SequenceFamily::Cyclic,
            SequenceFamily::DihedralClassic,
            SequenceFamily::Semidirect,
        ]
    }

    /// Checks the numeric conditions the construction needs.
    pub fn check_group(&self, g: &MetacyclicGroup) -> Result<(), SequenceError> {
        let (d, s, t) = (g.d(), g.s(), g.t());
        let ok = match self {
            SequenceFamily::Cyclic => s == 1,
            SequenceFamily::DihedralClassic => s == 2 && t == d - 1 && d % 2 == 1,
            SequenceFamily::Semidirect => {
                s % 2 == 0 && d % 2 == 1 && g.theta((s / 2) as i64) == d - 1
            }
        };
        if ok {
            Ok(())
        } else {
            Err(SequenceError::FamilyMismatch(format!(
                "{self} sequence is not defined for {}",
                g.descriptor()
            )))
        }
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceFamily::Cyclic => "cyclic",
            SequenceFamily::DihedralClassic => "dihedral-classic",
            SequenceFamily::Semidirect => "semidirect",
        })
    }
}

impl FromStr for SequenceFamily {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cyclic" => Ok(SequenceFamily::Cyclic),
            "dihedral" | "dihedral-classic" => Ok(SequenceFamily::DihedralClassic),
            "semidirect" => Ok(SequenceFamily::Semidirect),
            other => Err(SequenceError::FamilyMismatch(format!(
                "unknown sequence family '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("construction failure: {0}")]
    ConstructionFailure(#[from] RingError),
}
