//! Machine-readable reports. Every report is a JSON object whose keys are
//! emitted in sorted order, so identical inputs give identical bytes.

use serde_json::{json, Map, Value};

use crate::checker::{classify, find_twin_zeros, hierarchy, Hierarchy, Verdict};
use crate::error::{Error, Result};
use crate::harness::search::Found;
use crate::harness::PropReport;
use crate::maps::{format_reduced, ExpansionFn, ReductionFn};
use crate::mcs::Mcs;
use crate::module::{Module, Submodule};
use crate::scenario::{Instance, Scenario};

/// Bumped on any change to the shape of a report.
pub const SCHEMA_VERSION: u64 = 1;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Twin zeros listed per witness.
const MAX_TWIN_ZEROS: usize = 20;

/// Wraps a payload with the version fields, the command and its exit status.
pub fn envelope(command: &str, scenario: Option<&Scenario>, payload: Value, exit_status: i32) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "command": command,
        "scenario": scenario.map(scenario_echo),
        "payload": payload,
        "exit_status": exit_status,
    })
}

pub fn scenario_echo(s: &Scenario) -> Value {
    json!({
        "ring": s.ring_text(),
        "orders": s.orders,
        "factor_components": s.factor_components,
        "split": s.split,
        "submodule": s.submodule_text(),
        "mcs": s.mcs_text(),
        "delta": s.delta.to_string(),
        "phi": s.phi.to_string(),
        "max_module_size": s.options.max_module_size,
        "ideal_bound": s.options.ideal_bound,
    })
}

/// Pretty-printed text with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn elems(n: &Submodule) -> Vec<String> {
    let m = n.module();
    n.elements().map(|x| m.format_elem(x)).collect()
}

pub fn status(v: &Verdict) -> &'static str {
    if !v.precondition_ok {
        "vacuous-fail"
    } else if v.holds {
        "holds"
    } else {
        "fails"
    }
}

/// The verdict fields verbatim, with elements formatted.
pub fn verdict_json(module: &Module, v: &Verdict) -> Value {
    json!({
        "status": status(v),
        "holds": v.holds,
        "precondition_ok": v.precondition_ok,
        "witnesses": v.witnesses.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "counterexample": v.counterexample.as_ref().map(|c| json!({
            "a": c.a.to_string(),
            "m": module.format_elem(c.m),
        })),
        "colon": v.colon.to_string(),
        "expanded": v.expanded.to_string(),
        "reduced": format_reduced(&v.reduced),
        "checked_bound": v.checked_bound,
    })
}

pub fn hierarchy_json(h: &Hierarchy) -> Value {
    json!({
        "prime": h.prime,
        "primary": h.primary,
        "phi_prime": h.phi_prime,
        "s_prime": h.s_prime,
        "s_primary": h.s_primary,
        "phi_delta_primary": h.phi_delta_primary,
        "delta_s_primary": h.delta_s_primary,
        "phi_delta_s_primary": h.phi_delta_s_primary,
    })
}

fn twin_zeros_json(n: &Submodule, phi: &ReductionFn, delta: &ExpansionFn, mcs: &Mcs, v: &Verdict) -> Result<Value> {
    let Some(s) = v.witnesses.first() else { return Ok(Value::Null) };
    let all = find_twin_zeros(n, phi, delta, mcs, s)?;
    let m = n.module();
    let listed: Vec<Value> =
        all.iter().take(MAX_TWIN_ZEROS).map(|t| json!({ "a": t.a.to_string(), "m": m.format_elem(t.m) })).collect();
    Ok(json!({ "s": s.to_string(), "count": all.len(), "listed": listed }))
}

fn submodule_of(inst: &Instance) -> Result<&Submodule> {
    inst.submodule.as_ref().ok_or_else(|| Error::Precondition("this command needs `[submodule] generators`".into()))
}

/// Full classification of the scenario's submodule, the δ-S-primary
/// comparison (`φ = ∅`), and the hierarchy row.
pub fn classify_payload(inst: &Instance) -> Result<Value> {
    let n = submodule_of(inst)?;
    let m = &inst.module;
    let v = classify(n, &inst.phi, &inst.delta, &inst.mcs)?;
    let plain = classify(n, &ReductionFn::Empty, &inst.delta, &inst.mcs)?;
    let h = hierarchy(n, &inst.phi, &inst.delta, &inst.mcs)?;
    Ok(json!({
        "module": m.to_string(),
        "submodule": n.format_generators(),
        "elements": elems(n),
        "phi": inst.phi.to_string(),
        "delta": inst.delta.to_string(),
        "mcs": inst.mcs.to_string(),
        "verdict": verdict_json(m, &v),
        "delta_s_verdict": verdict_json(m, &plain),
        "hierarchy": hierarchy_json(&h),
        "twin_zeros": twin_zeros_json(n, &inst.phi, &inst.delta, &inst.mcs, &v)?,
    }))
}

/// Every submodule with its classification under the scenario's data.
pub fn lattice_payload(inst: &Instance) -> Result<Value> {
    let m = &inst.module;
    let mut rows = Vec::new();
    for n in m.submodules() {
        let mut row = Map::new();
        row.insert("submodule".into(), json!(n.format_generators()));
        row.insert("elements".into(), json!(elems(&n)));
        row.insert("size".into(), json!(n.len()));
        row.insert("proper".into(), json!(n.is_proper()));
        if n.is_proper() {
            let v = classify(&n, &inst.phi, &inst.delta, &inst.mcs)?;
            let h = hierarchy(&n, &inst.phi, &inst.delta, &inst.mcs)?;
            row.insert("status".into(), json!(status(&v)));
            row.insert("witnesses".into(), json!(v.witnesses.iter().map(|s| s.to_string()).collect::<Vec<_>>()));
            row.insert("reduced".into(), json!(format_reduced(&v.reduced)));
            row.insert("hierarchy".into(), hierarchy_json(&h));
        } else {
            row.insert("status".into(), json!("not proper"));
        }
        rows.push(Value::Object(row));
    }
    Ok(json!({
        "module": m.to_string(),
        "phi": inst.phi.to_string(),
        "delta": inst.delta.to_string(),
        "mcs": inst.mcs.to_string(),
        "count": rows.len(),
        "submodules": rows,
    }))
}

/// Summary of the universe a suite ran over.
#[derive(Clone, Debug)]
pub struct UniverseSummary {
    pub modules: usize,
    pub products: usize,
    pub dropped: usize,
    pub max_module_size: u64,
    pub ideal_bound: u64,
}

pub fn verify_payload(reports: &[PropReport], u: &UniverseSummary) -> Value {
    let failing: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.prop_id.as_str()).collect();
    let violations: u64 = reports.iter().map(|r| r.violation_count).sum();
    json!({
        "universe": {
            "modules": u.modules,
            "products": u.products,
            "dropped_by_size_bound": u.dropped,
            "max_module_size": u.max_module_size,
            "ideal_bound": u.ideal_bound,
        },
        "reports": reports,
        "summary": {
            "propositions": reports.len(),
            "violations": violations,
            "failing": failing,
        },
    })
}

pub fn search_payload(holds: &str, fails: &str, found: Option<&Found>) -> Value {
    json!({
        "holds": holds,
        "fails": fails,
        "found": found.map(|f| serde_json::to_value(f).expect("plain strings")),
    })
}
