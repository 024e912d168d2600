//! WebAssembly entry points. Each takes scenario text and returns a JSON
//! report, or a JSON object `{"error": ...}` when the input is rejected.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use sprimary::harness::search::{search_separating_instance, Property};
use sprimary::harness::Universe;
use sprimary::maps::ReductionFn;
use sprimary::report;
use sprimary::scenario::{parse_scenario, Instance, Scenario};

fn respond(command: &str, text: &str, f: impl FnOnce(&Scenario, &Instance) -> Result<Value, String>) -> String {
    let out = match parse_scenario(text).map_err(|e| e.to_string()).and_then(|s| {
        let inst = s.instance().map_err(|e| e.to_string())?;
        f(&s, &inst).map(|p| report::envelope(command, Some(&s), p, 0))
    }) {
        Ok(v) => v,
        Err(e) => json!({ "error": e }),
    };
    report::render(&out)
}

/// Verdict, δ-S-primary comparison and hierarchy row for the scenario's submodule.
#[wasm_bindgen]
pub fn classify(scenario: &str) -> String {
    respond("classify", scenario, |_, inst| report::classify_payload(inst).map_err(|e| e.to_string()))
}

/// Every submodule of the scenario's module with its classification.
#[wasm_bindgen]
pub fn lattice(scenario: &str) -> String {
    respond("lattice", scenario, |_, inst| report::lattice_payload(inst).map_err(|e| e.to_string()))
}

/// The largest submodule that is φ-δ-S-primary but not δ-S-primary.
#[wasm_bindgen]
pub fn separate(scenario: &str) -> String {
    respond("search", scenario, |s, inst| {
        if matches!(inst.phi, ReductionFn::Product { .. }) {
            return Err("product reductions are not searched here".into());
        }
        let mut u = Universe::empty();
        u.modules.push(sprimary::harness::ModuleEntry {
            name: inst.module.to_string(),
            module: inst.module.clone(),
            mcs: vec![inst.mcs.clone()],
        });
        let a = Property::PhiDeltaSPrimary { phi: inst.phi.clone(), delta: inst.delta.clone(), mcs: s.mcs.clone() };
        let b = Property::DeltaSPrimary { delta: inst.delta.clone(), mcs: s.mcs.clone() };
        let found = search_separating_instance(&a, &b, &u).map_err(|e| e.to_string())?;
        Ok(report::search_payload("phi-delta-s-primary", "delta-s-primary", found.as_ref()))
    })
}
