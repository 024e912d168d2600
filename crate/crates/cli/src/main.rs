use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::Value;

use sprimary::harness::search::{search_separating_instance, McsSpec, Property};
use sprimary::harness::{Harness, PropReport, Universe, REGISTRY};
use sprimary::maps::{ExpansionFn, ReductionFn};
use sprimary::module::DEFAULT_MAX_MODULE_SIZE;
use sprimary::report::{self, UniverseSummary};
use sprimary::ring::Ring;
use sprimary::scenario::{self, FnSpec, Instance, Scenario};

#[derive(Parser)]
#[command(name = "sprimary", version, about = "Classify submodules and verify the proposition registry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the scenario's submodule.
    Classify {
        /// Scenario file, or `-` for standard input.
        scenario: PathBuf,
    },
    /// Classify every submodule of the scenario's module.
    Lattice { scenario: PathBuf },
    /// Check registry entries over the standard universe or a scenario's module.
    Verify {
        /// `all` or a comma-separated list of ids such as `P05,P12`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Drop universe modules larger than this.
        #[arg(long, default_value_t = DEFAULT_MAX_MODULE_SIZE)]
        max_module_size: u64,
        /// Largest generator of the integer ideals used for properties over all of Z.
        #[arg(long, default_value_t = 60)]
        ideal_bound: u64,
        /// Seeds the evaluation order; reports are always emitted in registry order.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the scenario's module as the universe.
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Test hook: classification ignores the δ branch whenever φ(N) ≠ ∅.
        #[arg(long, hide = true)]
        corrupt_classify: bool,
    },
    /// Find a submodule with one property and without another.
    Search {
        #[arg(long, value_enum)]
        holds: PropertyName,
        #[arg(long, value_enum)]
        fails: PropertyName,
        /// Take φ, δ, S and the searched module from a scenario.
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Reduction φ in scenario syntax, e.g. `power(2)`; overrides the scenario [default: empty]
        #[arg(long)]
        phi: Option<String>,
        /// Expansion δ in scenario syntax, e.g. `rad`; overrides the scenario [default: id]
        #[arg(long)]
        delta: Option<String>,
        /// Generators of S, e.g. `(2), (3)` or `one`; overrides the scenario [default: one]
        #[arg(long)]
        mcs: Option<String>,
        /// Drop standard-universe modules larger than this.
        #[arg(long, default_value_t = DEFAULT_MAX_MODULE_SIZE)]
        max_module_size: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyName {
    Prime,
    Primary,
    PhiPrime,
    DeltaSPrimary,
    PhiDeltaSPrimary,
    PhiDeltaPrimary,
    FactorPrimary,
    ProductPrimary,
}

impl PropertyName {
    fn label(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

/// A failure that maps to exit status 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> UsageError {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, code)) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_scenario(path: &PathBuf) -> Result<Scenario, UsageError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?
    };
    scenario::parse_scenario(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<(String, u8), UsageError> {
    let (command, scenario, payload, code) = match &cli.command {
        Command::Classify { scenario } => {
            let s = read_scenario(scenario)?;
            let payload = report::classify_payload(&s.instance()?)?;
            ("classify", Some(s), payload, 0)
        }
        Command::Lattice { scenario } => {
            let s = read_scenario(scenario)?;
            let payload = report::lattice_payload(&s.instance()?)?;
            ("lattice", Some(s), payload, 0)
        }
        Command::Verify { suite, max_module_size, ideal_bound, seed, scenario, corrupt_classify } => {
            let s = scenario.as_ref().map(read_scenario).transpose()?;
            let ids = suite_ids(suite)?;
            let (universe, dropped) = verify_universe(s.as_ref(), *max_module_size, *ideal_bound, *corrupt_classify)?;
            let reports = run_reports(&universe, &ids, *seed)?;
            let summary = UniverseSummary {
                modules: universe.modules.len(),
                products: universe.products.len(),
                dropped,
                max_module_size: *max_module_size,
                ideal_bound: *ideal_bound,
            };
            let code = if reports.iter().all(PropReport::passed) { 0 } else { 1 };
            ("verify", s, report::verify_payload(&reports, &summary), code)
        }
        Command::Search { holds, fails, scenario, phi, delta, mcs, max_module_size } => {
            let s = scenario.as_ref().map(read_scenario).transpose()?;
            let inst = s.as_ref().map(Scenario::instance).transpose()?;
            let data = SearchData::new(s.as_ref(), inst.as_ref(), phi, delta, mcs)?;
            let a = data.property(*holds)?;
            let b = data.property(*fails)?;
            let universe = match &inst {
                Some(i) => scenario_universe(i)?,
                None => bounded_standard(*max_module_size)?.0,
            };
            let found = search_separating_instance(&a, &b, &universe)?;
            ("search", s, report::search_payload(&holds.label(), &fails.label(), found.as_ref()), 0)
        }
    };
    let envelope = report::envelope(command, scenario.as_ref(), payload, code as i32);
    let text = match cli.format {
        Format::Machine => report::render(&envelope),
        Format::Human => human(command, &envelope["payload"]),
    };
    Ok((text, code))
}

fn suite_ids(suite: &str) -> Result<Vec<String>, UsageError> {
    if suite == "all" {
        return Ok(REGISTRY.iter().map(|(id, _)| id.to_string()).collect());
    }
    let mut ids = Vec::new();
    for id in suite.split(',').map(str::trim) {
        let canonical = REGISTRY
            .iter()
            .find(|(r, _)| r.eq_ignore_ascii_case(id))
            .ok_or_else(|| UsageError(format!("unknown proposition `{id}`; expected all or P01..P27")))?;
        ids.push(canonical.0.to_string());
    }
    Ok(ids)
}

/// The standard universe without modules above the bound.
fn bounded_standard(bound: u64) -> Result<(Universe, usize), UsageError> {
    let mut u = Universe::standard()?;
    let before = u.modules.len() + u.products.len();
    u.modules.retain(|e| e.module.size() as u64 <= bound);
    u.products.retain(|e| e.product.module.size() as u64 <= bound);
    u.bounds.max_module_size = bound;
    let dropped = before - u.modules.len() - u.products.len();
    Ok((u, dropped))
}

fn scenario_universe(inst: &Instance) -> Result<Universe, UsageError> {
    let standard = Universe::standard()?;
    let mut u = Universe::over_modules(vec![inst.module.clone()], &standard.params)?;
    u.factor_expansions = standard.factor_expansions;
    u.factor_reductions = standard.factor_reductions;
    if let Some(pm) = &inst.product {
        u.add_product(pm.left.clone(), pm.right.clone())?;
    }
    Ok(u)
}

fn verify_universe(
    s: Option<&Scenario>,
    bound: u64,
    ideal_bound: u64,
    corrupt: bool,
) -> Result<(Universe, usize), UsageError> {
    let (mut u, dropped) = match s {
        Some(s) => (scenario_universe(&s.instance()?)?, 0),
        None => bounded_standard(bound)?,
    };
    u.bounds.ideal_bound = ideal_bound;
    u.corrupt_classify = corrupt;
    Ok((u, dropped))
}

/// Evaluates in a seeded order and returns reports in the requested order.
fn run_reports(u: &Universe, ids: &[String], seed: u64) -> Result<Vec<PropReport>, UsageError> {
    let harness = Harness::new(u)?;
    let mut order: Vec<&String> = ids.iter().collect();
    order.shuffle(&mut StdRng::seed_from_u64(seed));
    let mut done: BTreeMap<&String, PropReport> = BTreeMap::new();
    for id in order {
        done.insert(id, harness.verify(id)?);
    }
    Ok(ids.iter().map(|id| done.remove(id).expect("every id evaluated")).collect())
}

/// φ, δ and S for a search, from flags over a scenario over defaults.
struct SearchData {
    phi: FnSpec,
    delta: FnSpec,
    mcs: McsSpec,
    ring: Ring,
    split: usize,
}

impl SearchData {
    fn new(
        s: Option<&Scenario>,
        inst: Option<&Instance>,
        phi: &Option<String>,
        delta: &Option<String>,
        mcs: &Option<String>,
    ) -> Result<SearchData, UsageError> {
        let pick = |flag: &Option<String>, from: Option<FnSpec>, default: &str| -> Result<FnSpec, UsageError> {
            match flag {
                Some(t) => Ok(scenario::parse_function(t)?),
                None => Ok(from.unwrap_or(FnSpec::Plain(default.into()))),
            }
        };
        Ok(SearchData {
            phi: pick(phi, s.map(|s| s.phi.clone()), "empty")?,
            delta: pick(delta, s.map(|s| s.delta.clone()), "id")?,
            mcs: match mcs {
                Some(t) => scenario::parse_mcs(t)?,
                None => s.map(|s| s.mcs.clone()).unwrap_or(McsSpec::One),
            },
            ring: inst.map(|i| i.ring.clone()).unwrap_or_else(Ring::integers),
            split: s.and_then(|s| s.split).unwrap_or(1),
        })
    }

    fn pair<T>(
        &self,
        spec: &FnSpec,
        field: &str,
        f: impl Fn(&FnSpec, &Ring) -> Result<T, scenario::ScenarioError>,
    ) -> Result<[T; 2], UsageError> {
        let FnSpec::Prod(a, b) = spec else {
            return Err(UsageError(format!("{field}: product properties need `prod(left;right)`")));
        };
        let (r1, r2) = self.halves();
        Ok([f(a, &r1)?, f(b, &r2)?])
    }

    fn halves(&self) -> (Ring, Ring) {
        let c = self.ring.components();
        if c.len() > self.split {
            (
                Ring::from_components(c[..self.split].to_vec()).expect("nonempty"),
                Ring::from_components(c[self.split..].to_vec()).expect("nonempty"),
            )
        } else {
            (self.ring.clone(), self.ring.clone())
        }
    }

    fn mcs_pair(&self) -> [McsSpec; 2] {
        match &self.mcs {
            McsSpec::One => [McsSpec::One, McsSpec::One],
            McsSpec::Generated(g) => {
                let k = self.split;
                [
                    McsSpec::Generated(g.iter().map(|t| t[..k.min(t.len())].to_vec()).collect()),
                    McsSpec::Generated(g.iter().map(|t| t[k.min(t.len())..].to_vec()).collect()),
                ]
            }
        }
    }

    fn expansion(&self) -> Result<ExpansionFn, UsageError> {
        Ok(scenario::expansion(&self.delta, &self.ring, Some(self.split), "delta")?)
    }

    fn reduction(&self) -> Result<ReductionFn, UsageError> {
        if matches!(self.phi, FnSpec::Prod(..)) {
            return Err(UsageError("phi: product reductions apply only to product properties".into()));
        }
        Ok(scenario::reduction(&self.phi, &self.ring, None, "phi")?)
    }

    fn property(&self, name: PropertyName) -> Result<Property, UsageError> {
        Ok(match name {
            PropertyName::Prime => Property::Prime,
            PropertyName::Primary => Property::Primary,
            PropertyName::PhiPrime => Property::PhiPrime(self.reduction()?),
            PropertyName::DeltaSPrimary => Property::DeltaSPrimary { delta: self.expansion()?, mcs: self.mcs.clone() },
            PropertyName::PhiDeltaSPrimary => {
                Property::PhiDeltaSPrimary { phi: self.reduction()?, delta: self.expansion()?, mcs: self.mcs.clone() }
            }
            PropertyName::PhiDeltaPrimary => {
                Property::PhiDeltaPrimary { phi: self.reduction()?, delta: self.expansion()? }
            }
            PropertyName::FactorPrimary | PropertyName::ProductPrimary => {
                let phi = self.pair(&self.phi, "phi", |f, r| scenario::reduction(f, r, None, "phi"))?;
                let delta = self.pair(&self.delta, "delta", |f, r| scenario::expansion(f, r, None, "delta"))?;
                let mcs = self.mcs_pair();
                if matches!(name, PropertyName::FactorPrimary) {
                    Property::FactorPrimary { phi, delta, mcs }
                } else {
                    Property::ProductPrimary { phi, delta, mcs }
                }
            }
        })
    }
}

fn s(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn list(v: &Value) -> String {
    v.as_array().map(|a| a.iter().map(s).collect::<Vec<_>>().join(", ")).unwrap_or_default()
}

fn verdict_lines(out: &mut String, label: &str, v: &Value) {
    out.push_str(&format!("{label}: {}\n", s(&v["status"])));
    out.push_str(&format!(
        "  (N:M) = {}, δ(N:M) = {}, φ(N) = {}\n",
        s(&v["colon"]),
        s(&v["expanded"]),
        s(&v["reduced"])
    ));
    if !v["witnesses"].as_array().is_some_and(|a| a.is_empty()) {
        out.push_str(&format!("  witnesses s: {}\n", list(&v["witnesses"])));
    }
    if let Some(c) = v["counterexample"].as_object() {
        out.push_str(&format!("  counterexample (a, m) = ({}, {})\n", s(&c["a"]), s(&c["m"])));
    }
}

fn flags(h: &Value) -> String {
    let keys = [
        ("prime", "prime"),
        ("primary", "primary"),
        ("phi_prime", "φ-prime"),
        ("s_prime", "S-prime"),
        ("s_primary", "S-primary"),
        ("phi_delta_primary", "φ-δ-primary"),
        ("delta_s_primary", "δ-S-primary"),
        ("phi_delta_s_primary", "φ-δ-S-primary"),
    ];
    keys.iter()
        .map(|(k, name)| format!("{name}={}", if h[k] == Value::Bool(true) { "yes" } else { "no" }))
        .collect::<Vec<_>>()
        .join(" ")
}

fn human(command: &str, p: &Value) -> String {
    let mut out = String::new();
    match command {
        "classify" => {
            out.push_str(&format!(
                "module {}\nN = {} = {{{}}}\n",
                s(&p["module"]),
                s(&p["submodule"]),
                list(&p["elements"])
            ));
            out.push_str(&format!("φ = {}, δ = {}, S = {}\n", s(&p["phi"]), s(&p["delta"]), s(&p["mcs"])));
            verdict_lines(&mut out, "φ-δ-S-primary", &p["verdict"]);
            verdict_lines(&mut out, "δ-S-primary", &p["delta_s_verdict"]);
            out.push_str(&format!("hierarchy: {}\n", flags(&p["hierarchy"])));
            if let Some(t) = p["twin_zeros"].as_object() {
                let pairs: Vec<String> = t["listed"]
                    .as_array()
                    .map(|a| a.iter().map(|x| format!("({}, {})", s(&x["a"]), s(&x["m"]))).collect())
                    .unwrap_or_default();
                out.push_str(&format!("twin zeros at s = {}: {} [{}]\n", s(&t["s"]), s(&t["count"]), pairs.join(", ")));
            }
        }
        "lattice" => {
            out.push_str(&format!(
                "module {} with φ = {}, δ = {}, S = {}: {} submodules\n",
                s(&p["module"]),
                s(&p["phi"]),
                s(&p["delta"]),
                s(&p["mcs"]),
                s(&p["count"])
            ));
            for row in p["submodules"].as_array().into_iter().flatten() {
                out.push_str(&format!(
                    "{:<16} size {:<5} {}",
                    s(&row["submodule"]),
                    s(&row["size"]),
                    s(&row["status"])
                ));
                if row["hierarchy"].is_object() {
                    out.push_str(&format!("  {}", flags(&row["hierarchy"])));
                }
                out.push('\n');
            }
        }
        "verify" => {
            let u = &p["universe"];
            out.push_str(&format!(
                "universe: {} modules, {} products ({} dropped above size {}), ideal bound {}\n",
                s(&u["modules"]),
                s(&u["products"]),
                s(&u["dropped_by_size_bound"]),
                s(&u["max_module_size"]),
                s(&u["ideal_bound"])
            ));
            for r in p["reports"].as_array().into_iter().flatten() {
                let excluded: u64 =
                    r["excluded"].as_object().map(|m| m.values().filter_map(Value::as_u64).sum()).unwrap_or(0);
                let ok = r["violation_count"] == 0 && r["errors"].as_array().is_some_and(|e| e.is_empty());
                out.push_str(&format!(
                    "{} {} checked={} met={} not_met={} excluded={} violations={} {}\n",
                    s(&r["prop_id"]),
                    if ok { "PASS" } else { "FAIL" },
                    s(&r["instances_checked"]),
                    s(&r["hypothesis_met"]),
                    s(&r["hypothesis_not_met"]),
                    excluded,
                    s(&r["violation_count"]),
                    s(&r["title"]),
                ));
                for e in r["errors"].as_array().into_iter().flatten() {
                    out.push_str(&format!("  error: {}\n", s(e)));
                }
                if let Some(first) = r["violations"].as_array().and_then(|v| v.first()) {
                    out.push_str(&format!("  first violation: {first}\n"));
                }
            }
            let sm = &p["summary"];
            out.push_str(&format!(
                "{} propositions, {} violations, failing: [{}]\n",
                s(&sm["propositions"]),
                s(&sm["violations"]),
                list(&sm["failing"])
            ));
        }
        "search" => {
            out.push_str(&format!("holds {}, fails {}: ", s(&p["holds"]), s(&p["fails"])));
            match p["found"].as_object() {
                Some(f) => out.push_str(&format!(
                    "found N = {} = {{{}}} in {}\n",
                    s(&f["submodule"]),
                    list(&f["elements"]),
                    s(&f["module"])
                )),
                None => out.push_str("none\n"),
            }
        }
        _ => unreachable!("known commands"),
    }
    out
}
