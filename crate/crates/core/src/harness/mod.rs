//! Exhaustive verification of the proposition registry over instance
//! universes, and search for separating instances.

mod context;
mod maps_props;
mod module_props;
mod product_props;
mod ring_props;
pub mod search;
mod universe;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub use context::Harness;
pub use universe::{default_mcs, Bounds, ModuleEntry, ProductEntry, Universe};

/// Outcome of checking one proposition over a universe.
#[derive(Clone, Debug, Serialize)]
pub struct PropReport {
    pub prop_id: String,
    pub title: String,
    pub instances_checked: u64,
    pub hypothesis_met: u64,
    /// Instances outside the hypothesis, including the excluded ones.
    pub hypothesis_not_met: u64,
    /// Instances failing an asserted side condition, by reason.
    pub excluded: BTreeMap<String, u64>,
    /// Counters that do not affect the verdict.
    pub diagnostics: BTreeMap<String, u64>,
    pub violation_count: u64,
    /// The first violations, fully described.
    pub violations: Vec<Value>,
    pub errors: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub const MAX_LISTED_VIOLATIONS: usize = 20;

impl PropReport {
    fn new(id: &str, title: &str) -> PropReport {
        PropReport {
            prop_id: id.to_string(),
            title: title.to_string(),
            instances_checked: 0,
            hypothesis_met: 0,
            hypothesis_not_met: 0,
            excluded: BTreeMap::new(),
            diagnostics: BTreeMap::new(),
            violation_count: 0,
            violations: Vec::new(),
            errors: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0 && self.errors.is_empty()
    }

    pub(crate) fn met(&mut self) {
        self.instances_checked += 1;
        self.hypothesis_met += 1;
    }

    pub(crate) fn not_met(&mut self) {
        self.instances_checked += 1;
        self.hypothesis_not_met += 1;
    }

    pub(crate) fn exclude(&mut self, reason: &str) {
        self.not_met();
        *self.excluded.entry(reason.to_string()).or_insert(0) += 1;
    }

    pub(crate) fn diag(&mut self, key: &str) {
        *self.diagnostics.entry(key.to_string()).or_insert(0) += 1;
    }

    /// Records the conclusion of a met instance.
    pub(crate) fn conclude(&mut self, ok: bool, instance: impl FnOnce() -> Value) {
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < MAX_LISTED_VIOLATIONS {
                self.violations.push(instance());
            }
        }
    }
}

type PropFn = fn(&Harness, &mut PropReport) -> Result<()>;

/// The proposition registry, in report order.
pub const REGISTRY: [(&str, &str); 27] = [
    ("P01", "directed union"),
    ("P02", "finite intersection"),
    ("P03", "colon by an element"),
    ("P04", "colon by an ideal"),
    ("P05", "ideal-times-submodule characterization"),
    ("P06", "multiplication module product criterion"),
    ("P07", "colon by s·a outside (δ(N:M) : s²)"),
    ("P08", "colon by s·a as a union"),
    ("P09", "restriction to K"),
    ("P10", "passage to (N:M)"),
    ("P11", "return from (N:M) in multiplication modules"),
    ("P12", "(N:M)N ⊄ φ(N) criterion"),
    ("P13", "N² ⊆ φ(N) and √N = √φ(N)"),
    ("P14", "idempotent reductions"),
    ("P15", "quotient by φ(N)"),
    ("P16", "shrinking S"),
    ("P17", "saturation"),
    ("P18", "localization"),
    ("P19", "four-way localization equivalence"),
    ("P20", "colon and reduction under projections"),
    ("P21", "image under projections"),
    ("P22", "preimage under projections"),
    ("P23", "quotient correspondence"),
    ("P24", "product with φ₂(M₂) ≠ M₂"),
    ("P25", "product with φ₂(M₂) = M₂"),
    ("P26", "product splitting"),
    ("P27", "product with factors swapped"),
];

fn prop_fn(id: &str) -> Option<PropFn> {
    Some(match id {
        "P01" => module_props::p01,
        "P02" => module_props::p02,
        "P03" => module_props::p03,
        "P04" => module_props::p04,
        "P05" => module_props::p05,
        "P06" => module_props::p06,
        "P07" => module_props::p07,
        "P08" => module_props::p08,
        "P09" => module_props::p09,
        "P10" => ring_props::p10,
        "P11" => ring_props::p11,
        "P12" => ring_props::p12,
        "P13" => ring_props::p13,
        "P14" => ring_props::p14,
        "P15" => ring_props::p15,
        "P16" => ring_props::p16,
        "P17" => ring_props::p17,
        "P18" => ring_props::p18,
        "P19" => ring_props::p19,
        "P20" => maps_props::p20,
        "P21" => maps_props::p21,
        "P22" => maps_props::p22,
        "P23" => maps_props::p23,
        "P24" => product_props::p24,
        "P25" => product_props::p25,
        "P26" => product_props::p26,
        "P27" => product_props::p27,
        _ => return None,
    })
}

impl Harness {
    /// Runs one registry entry. Errors inside the check are recorded in the
    /// report rather than returned.
    pub fn verify(&self, prop_id: &str) -> Result<PropReport> {
        let f = prop_fn(prop_id).ok_or_else(|| Error::UnknownProp(prop_id.to_string()))?;
        let title = REGISTRY.iter().find(|(id, _)| *id == prop_id).map(|(_, t)| *t).unwrap_or("");
        let mut report = PropReport::new(prop_id, title);
        let start = Instant::now();
        if let Err(e) = f(self, &mut report) {
            report.errors.push(e.to_string());
        }
        report.elapsed = start.elapsed();
        Ok(report)
    }

    pub fn run_suite(&self) -> Vec<PropReport> {
        REGISTRY.iter().map(|(id, _)| self.verify(id).expect("registry ids are known")).collect()
    }
}

pub fn verify_proposition(prop_id: &str, universe: &Universe) -> Result<PropReport> {
    prop_fn(prop_id).ok_or_else(|| Error::UnknownProp(prop_id.to_string()))?;
    Harness::new(universe)?.verify(prop_id)
}

pub fn run_suite(universe: &Universe) -> Result<Vec<PropReport>> {
    Ok(Harness::new(universe)?.run_suite())
}

/// Builds a JSON object from string pairs, keys sorted.
pub(crate) fn instance(pairs: &[(&str, String)]) -> Value {
    let map: serde_json::Map<String, Value> =
        pairs.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect();
    Value::Object(map)
}
