//! JSON dump of a witness with its exact trace ledger.

use serde::{Deserialize, Serialize};

use crate::horn::{HornTriple, TripleRecord, Variant};

use super::linalg::fmt_q;
use super::subspace::{Subspace, Trace};
use super::witness::{FlagTriple, PnReport};
use super::FlagError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDump {
    pub flag: String,
    /// `"i/n"`.
    pub level: String,
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub label: String,
    pub value: String,
    pub relation: String,
    pub bound: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDump {
    #[serde(rename = "N")]
    pub ambient: usize,
    pub triple: TripleRecord,
    pub p: Vec<Vec<String>>,
    pub levels: Vec<LevelDump>,
    pub ledger: Vec<LedgerEntry>,
    pub holds: bool,
}

fn basis_strings(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().iter().map(|row| row.iter().map(fmt_q).collect()).collect()
}

fn trace_string(t: Trace) -> String {
    if *t.denom() == 1 {
        t.numer().to_string()
    } else {
        format!("{}/{}", t.numer(), t.denom())
    }
}

impl WitnessDump {
    pub fn new(p: &Subspace, t: &HornTriple, flags: &FlagTriple, report: &PnReport) -> Result<Self, FlagError> {
        let n = t.n();
        let mut levels = Vec::new();
        for (name, flag, set) in [("e", &flags.e, &t.i), ("f", &flags.f, &t.j), ("g", &flags.g, &t.k)] {
            for &i in set.elements() {
                levels.push(LevelDump {
                    flag: name.into(),
                    level: format!("{i}/{n}"),
                    basis: basis_strings(&flag.at(i, n)?),
                });
            }
        }
        Ok(WitnessDump {
            ambient: flags.ambient(),
            triple: t.to_record(Variant::Tilde),
            p: basis_strings(p),
            levels,
            ledger: report
                .checks
                .iter()
                .map(|c| LedgerEntry {
                    label: c.label.clone(),
                    value: trace_string(c.value),
                    relation: if c.upper { "<=" } else { ">=" }.into(),
                    bound: trace_string(c.bound),
                    holds: c.holds(),
                })
                .collect(),
            holds: report.holds(),
        })
    }
}
