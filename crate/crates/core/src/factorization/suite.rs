//! Cross-checks tying chordality, nice partitions, factorization and
//! modular chains together on one graph.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lattice::{FlatChain, IntersectionLattice, LatticeOptions};
use crate::partition::{ArrangementPartition, SetPartitions};

use super::chains::{chain_to_partition, partition_to_modular_chain};
use super::enumerate::{enumerate_nice_partitions, EnumerationOptions};
use super::nice::{is_nice, verify_factorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Theorem {
    /// Chordal iff some nice partition exists.
    T1,
    /// Every nice partition comes from a modular chain it round-trips with.
    T2,
    /// Nice iff the factorization identity holds at every flat.
    T3,
    /// A maximal chain induces a nice partition iff it is modular.
    T4,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4];
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Theorem {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "T1" => Ok(Theorem::T1),
            "T2" => Ok(Theorem::T2),
            "T3" => Ok(Theorem::T3),
            "T4" => Ok(Theorem::T4),
            other => Err(format!("unknown check {other:?}, expected T1..T4")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A resource bound kept the check from running.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub theorem: Theorem,
    pub status: CheckStatus,
    /// Number of objects (partitions or chains) examined.
    pub checked: usize,
    /// Replayable data for a failure, or the reason for a skip.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub theorems: Vec<Theorem>,
    pub lattice: LatticeOptions,
    pub enumeration: EnumerationOptions,
    /// T3 runs over all set partitions only up to this many hyperplanes.
    pub max_bell_hyperplanes: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            theorems: Theorem::ALL.to_vec(),
            lattice: LatticeOptions::default(),
            enumeration: EnumerationOptions::default(),
            max_bell_hyperplanes: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub chordal: bool,
    pub nice_partitions: Option<usize>,
    pub outcomes: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != CheckStatus::Fail)
    }

    pub fn failed(&self) -> bool {
        !self.passed()
    }

    pub fn skipped(&self) -> bool {
        self.outcomes.iter().any(|o| o.status == CheckStatus::Skipped)
    }

    pub fn outcome(&self, t: Theorem) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.theorem == t)
    }
}

fn labels(l: &IntersectionLattice, pi: &ArrangementPartition) -> Value {
    let a = l.arrangement();
    json!(pi
        .parts()
        .iter()
        .map(|p| p.iter().map(|h| a.label(h)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn outcome(theorem: Theorem, checked: usize, witness: Option<Value>) -> CheckOutcome {
    CheckOutcome {
        theorem,
        status: if witness.is_some() {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        },
        checked,
        witness,
    }
}

fn skipped(theorem: Theorem, reason: String) -> CheckOutcome {
    CheckOutcome {
        theorem,
        status: CheckStatus::Skipped,
        checked: 0,
        witness: Some(json!({ "reason": reason })),
    }
}

fn check_round_trip(l: &IntersectionLattice, pi: &ArrangementPartition) -> Option<Value> {
    let fail = |why: String| Some(json!({ "partition": labels(l, pi), "reason": why }));
    let rec = match partition_to_modular_chain(l, pi) {
        Ok(rec) => rec,
        Err(e) => return fail(e.to_string()),
    };
    let chain = json!(rec.chain.ids());
    if !l.is_maximal_chain(&rec.chain) {
        return fail(format!("chain {chain} is not maximal"));
    }
    if let Some(&x) = rec
        .chain
        .ids()
        .iter()
        .find(|&&x| !l.is_modular_element(x) || !l.is_modular_brylawski(x))
    {
        return fail(format!("chain {chain} has non-modular flat {x}"));
    }
    match chain_to_partition(l, &rec.chain) {
        Ok(back) if back == *pi => None,
        Ok(back) => fail(format!("chain {chain} induces {}", labels(l, &back))),
        Err(e) => fail(e.to_string()),
    }
}

/// Runs the selected checks on `g`. Fails only if the lattice itself exceeds
/// its bound; other bounds mark the affected check as skipped.
pub fn theorem_suite(g: &Graph, options: &SuiteOptions) -> Result<SuiteReport> {
    let a = Arrangement::graphical(g)?;
    let l = IntersectionLattice::build_with(&a, options.lattice)?;
    let chordal = g.is_chordal();
    let wants = |t| options.theorems.contains(&t);

    let nice = if wants(Theorem::T1) || wants(Theorem::T2) {
        Some(enumerate_nice_partitions(&l, options.enumeration))
    } else {
        None
    };
    let mut outcomes = Vec::new();
    if wants(Theorem::T1) {
        outcomes.push(match nice.as_ref().unwrap() {
            Ok(list) if list.is_empty() == chordal => outcome(
                Theorem::T1,
                1,
                Some(json!({ "chordal": chordal, "nice_partitions": list.len() })),
            ),
            Ok(list) => outcome(Theorem::T1, list.len().max(1), None),
            Err(e) => skipped(Theorem::T1, e.to_string()),
        });
    }
    if wants(Theorem::T2) {
        outcomes.push(match nice.as_ref().unwrap() {
            Ok(list) => outcome(
                Theorem::T2,
                list.len(),
                list.iter().find_map(|pi| check_round_trip(&l, pi)),
            ),
            Err(e) => skipped(Theorem::T2, e.to_string()),
        });
    }
    if wants(Theorem::T3) {
        let m = a.len();
        outcomes.push(if m > options.max_bell_hyperplanes {
            skipped(
                Theorem::T3,
                Error::EnumerationBoundExceeded {
                    found: m,
                    bound: options.max_bell_hyperplanes,
                }
                .to_string(),
            )
        } else {
            let mut checked = 0;
            let witness = SetPartitions::new(m).find_map(|rgs| {
                checked += 1;
                let pi = ArrangementPartition::from_labels(&rgs);
                let nice = is_nice(&l, &pi).map(|c| c.is_nice()).unwrap_or(false);
                let factors = verify_factorization(&l, &pi);
                (nice != factors).then(|| {
                    json!({ "partition": labels(&l, &pi), "nice": nice, "factorization": factors })
                })
            });
            outcome(Theorem::T3, checked, witness)
        });
    }
    if wants(Theorem::T4) {
        let mut checked = 0;
        let witness = std::cell::RefCell::new(None);
        l.visit_maximal_chains(
            |_| witness.borrow().is_some(),
            |ids| {
                checked += 1;
                let chain = FlatChain(ids.to_vec());
                let pi = chain_to_partition(&l, &chain).expect("visited chains are maximal");
                let nice = is_nice(&l, &pi).expect("induced partitions cover A").is_nice();
                let modular = ids.iter().all(|&x| l.is_modular_element(x));
                if nice != modular {
                    *witness.borrow_mut() =
                        Some(json!({ "chain": ids, "nice": nice, "modular": modular }));
                }
            },
        );
        outcomes.push(outcome(Theorem::T4, checked, witness.into_inner()));
    }
    Ok(SuiteReport {
        n: g.n(),
        edges: g.edges().to_vec(),
        chordal,
        nice_partitions: nice.and_then(|r| r.ok()).map(|v| v.len()),
        outcomes,
    })
}
