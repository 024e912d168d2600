//! Scenario files: a sectioned `key = value` text format describing one
//! classification problem.
//!
//! ```text
//! [ring]
//! components = Z
//! [module]
//! orders = 18
//! [submodule]
//! generators = (3)
//! [mcs]
//! generators = one
//! [delta]
//! function = rad
//! [phi]
//! function = mulJ(2)
//! ```

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::error::Error;
use crate::harness::search::McsSpec;
use crate::maps::{ExpansionFn, ParamIdeal, ReductionFn};
use crate::mcs::Mcs;
use crate::module::{Module, ProductModule, Submodule, DEFAULT_MAX_MODULE_SIZE};
use crate::ring::{Component, Ring};

/// Largest value accepted for `options.max_module_size`.
pub const MODULE_SIZE_CEILING: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Semantic { field: String, message: String },
    #[error("{field}: size {size} exceeds the bound {bound}")]
    Bound { field: String, size: u64, bound: u64 },
}

fn semantic(field: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Semantic { field: field.to_string(), message: message.into() }
}

fn from_core(field: &str, e: Error) -> ScenarioError {
    match e {
        Error::SizeBound { size, bound } => ScenarioError::Bound { field: field.to_string(), size, bound },
        e => semantic(field, e.to_string()),
    }
}

/// A function from one of the catalogs, as written: `rad`, `res(2)`,
/// `power(2)`, `prod(rad;id)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FnSpec {
    Plain(String),
    Param(String, Vec<i64>),
    Prod(Box<FnSpec>, Box<FnSpec>),
}

impl fmt::Display for FnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnSpec::Plain(name) => write!(f, "{name}"),
            FnSpec::Param(name, args) => write!(f, "{name}({})", join(args, ",")),
            FnSpec::Prod(a, b) => write!(f, "prod({a};{b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_module_size: u64,
    pub ideal_bound: u64,
}

impl Default for Options {
    fn default() -> Options {
        Options { max_module_size: DEFAULT_MAX_MODULE_SIZE, ideal_bound: 60 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub ring: Vec<Component>,
    pub orders: Vec<u64>,
    /// Ring component acting on each cyclic factor.
    pub factor_components: Vec<usize>,
    /// Number of ring components on the left of a product decomposition.
    pub split: Option<usize>,
    /// Generators of `N` as coordinate tuples; `None` when absent.
    pub submodule: Option<Vec<Vec<i64>>>,
    pub mcs: McsSpec,
    pub delta: FnSpec,
    pub phi: FnSpec,
    pub options: Options,
}

/// A scenario with every reference resolved.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ring: Ring,
    pub module: Module,
    pub product: Option<Arc<ProductModule>>,
    pub submodule: Option<Submodule>,
    pub mcs: Mcs,
    pub delta: ExpansionFn,
    pub phi: ReductionFn,
}

const SECTIONS: [(&str, &[&str]); 7] = [
    ("ring", &["components"]),
    ("module", &["orders", "factor_components", "split"]),
    ("submodule", &["generators"]),
    ("mcs", &["generators"]),
    ("delta", &["function"]),
    ("phi", &["function"]),
    ("options", &["max_module_size", "ideal_bound"]),
];

struct Entry {
    line: usize,
    column: usize,
    value: String,
}

/// Parses and validates a scenario.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let entries = split_sections(text)?;
    let get = |section: &str, key: &str| entries.iter().find(|(s, k, _)| s == section && k == key).map(|(_, _, e)| e);

    let ring = match get("ring", "components") {
        Some(e) => Cursor::new(e).comma_list(Cursor::component)?,
        None => return Err(semantic("ring.components", "missing")),
    };
    let orders = match get("module", "orders") {
        Some(e) => Cursor::new(e).comma_list(Cursor::u64)?,
        None => return Err(semantic("module.orders", "missing")),
    };
    let factor_components = match get("module", "factor_components") {
        Some(e) => Cursor::new(e).comma_list(|c| c.u64().map(|x| x as usize))?,
        None => default_components(&ring, &orders),
    };
    let split = get("module", "split").map(|e| Cursor::new(e).single(|c| c.u64().map(|x| x as usize))).transpose()?;
    let submodule = get("submodule", "generators").map(|e| Cursor::new(e).tuple_list()).transpose()?;
    let mcs = match get("mcs", "generators") {
        Some(e) => Cursor::new(e).mcs()?,
        None => McsSpec::One,
    };
    let delta = match get("delta", "function") {
        Some(e) => Cursor::new(e).single(Cursor::function)?,
        None => FnSpec::Plain("id".into()),
    };
    let phi = match get("phi", "function") {
        Some(e) => Cursor::new(e).single(Cursor::function)?,
        None => FnSpec::Plain("empty".into()),
    };
    let mut options = Options::default();
    if let Some(e) = get("options", "max_module_size") {
        options.max_module_size = Cursor::new(e).single(Cursor::u64)?;
    }
    if let Some(e) = get("options", "ideal_bound") {
        options.ideal_bound = Cursor::new(e).single(Cursor::u64)?;
    }
    let scenario = Scenario { ring, orders, factor_components, split, submodule, mcs, delta, phi, options };
    scenario.instance()?;
    Ok(scenario)
}

/// Every factor on component 0 for a single-component ring, factor `i` on
/// component `i` when the counts match, otherwise left empty for
/// validation to report.
fn default_components(ring: &[Component], orders: &[u64]) -> Vec<usize> {
    if ring.len() == 1 {
        vec![0; orders.len()]
    } else if ring.len() == orders.len() {
        (0..orders.len()).collect()
    } else {
        Vec::new()
    }
}

fn split_sections(text: &str) -> Result<Vec<(String, String, Entry)>, ScenarioError> {
    let mut out: Vec<(String, String, Entry)> = Vec::new();
    let mut seen_sections: Vec<String> = Vec::new();
    let mut current: Option<(String, &[&str])> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let col = |byte: usize| content[..byte].chars().count() + 1;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(syntax(line, col(indent + trimmed.len()), "expected `]` closing the section header"));
            };
            let name = name.trim();
            let Some((_, keys)) = SECTIONS.iter().find(|(s, _)| *s == name) else {
                return Err(syntax(line, col(indent + 1), format!("unknown section `{name}`")));
            };
            if seen_sections.iter().any(|s| s == name) {
                return Err(syntax(line, col(indent + 1), format!("section `{name}` appears twice")));
            }
            seen_sections.push(name.to_string());
            current = Some((name.to_string(), keys));
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(syntax(line, col(content.len()), "expected `key = value`"));
        };
        let key = content[..eq].trim();
        let Some((section, keys)) = &current else {
            return Err(syntax(line, col(indent), "key outside any section"));
        };
        if key.is_empty() {
            return Err(syntax(line, col(eq), "missing key before `=`"));
        }
        if !keys.contains(&key) {
            return Err(syntax(line, col(indent), format!("unknown key `{key}` in section `{section}`")));
        }
        if out.iter().any(|(s, k, _)| s == section && k == key) {
            return Err(syntax(line, col(indent), format!("key `{key}` appears twice")));
        }
        let value = &content[eq + 1..];
        out.push((section.clone(), key.to_string(), Entry { line, column: col(eq + 1), value: value.to_string() }));
    }
    Ok(out)
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Syntax { line, column, message: message.into() }
}

/// A position-tracking reader over one value.
struct Cursor {
    line: usize,
    column: usize,
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(e: &Entry) -> Cursor {
        Cursor { line: e.line, column: e.column, chars: e.value.chars().collect(), pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> ScenarioError {
        syntax(self.line, self.column + self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect(&mut self, c: char) -> Result<(), ScenarioError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<(), ScenarioError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn single<T>(&mut self, f: impl Fn(&mut Cursor) -> Result<T, ScenarioError>) -> Result<T, ScenarioError> {
        let v = f(self)?;
        self.finish()?;
        Ok(v)
    }

    /// Comma-separated items; an empty value gives an empty list.
    fn comma_list<T>(&mut self, f: impl Fn(&mut Cursor) -> Result<T, ScenarioError>) -> Result<Vec<T>, ScenarioError> {
        let mut out = Vec::new();
        if self.at_end() {
            return Ok(out);
        }
        loop {
            out.push(f(self)?);
            if !self.eat(',') {
                break;
            }
        }
        self.finish()?;
        Ok(out)
    }

    fn digits(&mut self) -> Result<String, ScenarioError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a decimal integer"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn u64(&mut self) -> Result<u64, ScenarioError> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    fn i64(&mut self) -> Result<i64, ScenarioError> {
        let neg = self.eat('-');
        let start = self.pos;
        let d = self.digits()?;
        let v: i64 = d.parse().map_err(|_| {
            self.pos = start;
            self.error("integer out of range")
        })?;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Result<String, ScenarioError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn component(&mut self) -> Result<Component, ScenarioError> {
        let start = self.pos;
        let name = self.ident()?;
        if name == "Z" {
            return Ok(Component::Integers);
        }
        match name.strip_prefix("Z_").map(str::parse::<u64>) {
            Some(Ok(n)) => Ok(Component::Residue(n)),
            _ => {
                self.pos = start;
                self.skip_ws();
                Err(self.error(format!("expected `Z` or `Z_n`, found `{name}`")))
            }
        }
    }

    fn tuple(&mut self) -> Result<Vec<i64>, ScenarioError> {
        self.expect('(')?;
        let mut out = vec![self.i64()?];
        while self.eat(',') {
            out.push(self.i64()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn tuple_list(&mut self) -> Result<Vec<Vec<i64>>, ScenarioError> {
        self.comma_list(Cursor::tuple)
    }

    fn mcs(&mut self) -> Result<McsSpec, ScenarioError> {
        if self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            let name = self.ident()?;
            if name != "one" {
                return Err(self.error(format!("expected `one` or tuples, found `{name}`")));
            }
            self.finish()?;
            return Ok(McsSpec::One);
        }
        let gens = self.tuple_list()?;
        if gens.is_empty() {
            return Err(self.error("expected `one` or tuples"));
        }
        Ok(McsSpec::Generated(gens))
    }

    fn function(&mut self) -> Result<FnSpec, ScenarioError> {
        let name = self.ident()?;
        if !self.eat('(') {
            return Ok(FnSpec::Plain(name));
        }
        if name == "prod" {
            let a = self.function()?;
            self.expect(';')?;
            let b = self.function()?;
            self.expect(')')?;
            return Ok(FnSpec::Prod(Box::new(a), Box::new(b)));
        }
        let mut args = vec![self.i64()?];
        while self.eat(',') {
            args.push(self.i64()?);
        }
        self.expect(')')?;
        Ok(FnSpec::Param(name, args))
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn tuples(xs: &[Vec<i64>]) -> String {
    xs.iter().map(|t| format!("({})", join(t, ","))).collect::<Vec<_>>().join(", ")
}

fn component_name(c: &Component) -> String {
    match c {
        Component::Integers => "Z".into(),
        Component::Residue(n) => format!("Z_{n}"),
    }
}

impl Scenario {
    pub fn ring_text(&self) -> String {
        self.ring.iter().map(component_name).collect::<Vec<_>>().join(", ")
    }

    pub fn submodule_text(&self) -> Option<String> {
        self.submodule.as_deref().map(tuples)
    }

    pub fn mcs_text(&self) -> String {
        match &self.mcs {
            McsSpec::One => "one".into(),
            McsSpec::Generated(g) => tuples(g),
        }
    }

    /// Canonical text form; parses back to an equal scenario.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("[ring]\ncomponents = {}\n\n", self.ring_text()));
        s.push_str(&format!("[module]\norders = {}\n", join(&self.orders, ", ")));
        s.push_str(&format!("factor_components = {}\n", join(&self.factor_components, ", ")));
        if let Some(k) = self.split {
            s.push_str(&format!("split = {k}\n"));
        }
        if let Some(t) = self.submodule_text() {
            s.push_str(&format!("\n[submodule]\ngenerators = {t}\n"));
        }
        s.push_str(&format!("\n[mcs]\ngenerators = {}\n", self.mcs_text()));
        s.push_str(&format!("\n[delta]\nfunction = {}\n", self.delta));
        s.push_str(&format!("\n[phi]\nfunction = {}\n", self.phi));
        s.push_str(&format!(
            "\n[options]\nmax_module_size = {}\nideal_bound = {}\n",
            self.options.max_module_size, self.options.ideal_bound
        ));
        s
    }

    /// Resolves every reference, reporting the first offending field.
    pub fn instance(&self) -> Result<Instance, ScenarioError> {
        let bound = self.options.max_module_size;
        if bound > MODULE_SIZE_CEILING {
            return Err(ScenarioError::Bound {
                field: "options.max_module_size".into(),
                size: bound,
                bound: MODULE_SIZE_CEILING,
            });
        }
        let ring = Ring::from_components(self.ring.clone()).map_err(|e| from_core("ring.components", e))?;
        if self.orders.is_empty() {
            return Err(semantic("module.orders", "a module needs at least one cyclic factor"));
        }
        let size = self.orders.iter().fold(1u64, |acc, &o| acc.saturating_mul(o));
        if size > bound {
            return Err(ScenarioError::Bound { field: "module.orders".into(), size, bound });
        }
        if self.factor_components.len() != self.orders.len() {
            return Err(semantic(
                "module.factor_components",
                format!("{} entries given for {} cyclic factors", self.factor_components.len(), self.orders.len()),
            ));
        }
        let (module, product) = match self.split {
            None => (
                Module::with_bound(&ring, &self.orders, &self.factor_components, bound)
                    .map_err(|e| from_core("module.orders", e))?,
                None,
            ),
            Some(k) => {
                let pm = self.product_module(k, bound)?;
                (pm.module.clone(), Some(Arc::new(pm)))
            }
        };
        let submodule = match &self.submodule {
            None => None,
            Some(gens) => {
                let ids = gens
                    .iter()
                    .map(|g| module.from_coords(g))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| from_core("submodule.generators", e))?;
                Some(module.generated(&ids))
            }
        };
        let mcs = match self.mcs.resolve(&ring) {
            Ok(Some(s)) => s,
            Ok(None) => {
                return Err(semantic(
                    "mcs.generators",
                    format!("generators must have {} components and generate a set without 0", ring.len()),
                ))
            }
            Err(e) => return Err(from_core("mcs.generators", e)),
        };
        let delta = expansion(&self.delta, &ring, self.split, "delta.function")?;
        let phi = reduction(&self.phi, &ring, product.as_ref(), "phi.function")?;
        Ok(Instance { ring, module, product, submodule, mcs, delta, phi })
    }

    fn product_module(&self, k: usize, bound: u64) -> Result<ProductModule, ScenarioError> {
        let field = "module.split";
        if k == 0 || k >= self.ring.len() {
            return Err(semantic(field, format!("must lie strictly between 0 and {}", self.ring.len())));
        }
        let j = self.factor_components.iter().take_while(|&&c| c < k).count();
        if self.factor_components[j..].iter().any(|&c| c < k) {
            return Err(semantic(field, "factors of the left ring must precede those of the right ring"));
        }
        if j == 0 || j == self.orders.len() {
            return Err(semantic(field, "both sides need at least one cyclic factor"));
        }
        let left_ring = Ring::from_components(self.ring[..k].to_vec()).map_err(|e| from_core(field, e))?;
        let right_ring = Ring::from_components(self.ring[k..].to_vec()).map_err(|e| from_core(field, e))?;
        let right_comps: Vec<usize> = self.factor_components[j..].iter().map(|c| c - k).collect();
        let left = Module::with_bound(&left_ring, &self.orders[..j], &self.factor_components[..j], bound)
            .map_err(|e| from_core("module.orders", e))?;
        let right = Module::with_bound(&right_ring, &self.orders[j..], &right_comps, bound)
            .map_err(|e| from_core("module.orders", e))?;
        ProductModule::new(&left, &right).map_err(|e| from_core("module.orders", e))
    }
}

fn param_ideal(args: &[i64], ring: &Ring, field: &str) -> Result<ParamIdeal, ScenarioError> {
    let p = ParamIdeal(args.to_vec());
    p.resolve(ring).map_err(|e| from_core(field, e))?;
    Ok(p)
}

fn ring_halves(ring: &Ring, split: usize) -> (Ring, Ring) {
    let c = ring.components();
    (
        Ring::from_components(c[..split].to_vec()).expect("nonempty"),
        Ring::from_components(c[split..].to_vec()).expect("nonempty"),
    )
}

/// Resolves an expansion function over `ring`.
pub fn expansion(spec: &FnSpec, ring: &Ring, split: Option<usize>, field: &str) -> Result<ExpansionFn, ScenarioError> {
    let unknown = || semantic(field, format!("unknown expansion function `{spec}`"));
    Ok(match spec {
        FnSpec::Plain(name) => match name.as_str() {
            "id" => ExpansionFn::Id,
            "rad" => ExpansionFn::Rad,
            "ann" => ExpansionFn::Ann,
            _ => return Err(unknown()),
        },
        FnSpec::Param(name, args) => match name.as_str() {
            "res" => ExpansionFn::Res(param_ideal(args, ring, field)?),
            "plus" => ExpansionFn::PlusJ(param_ideal(args, ring, field)?),
            _ => return Err(unknown()),
        },
        FnSpec::Prod(a, b) => {
            let Some(k) = split.filter(|&k| k > 0 && k < ring.len()) else {
                return Err(semantic(field, "product functions need `module.split`"));
            };
            let (r1, r2) = ring_halves(ring, k);
            ExpansionFn::Product {
                left: Box::new(expansion(a, &r1, None, field)?),
                right: Box::new(expansion(b, &r2, None, field)?),
                split: k,
            }
        }
    })
}

/// Resolves a reduction function; product functions need `product`.
pub fn reduction(
    spec: &FnSpec,
    ring: &Ring,
    product: Option<&Arc<ProductModule>>,
    field: &str,
) -> Result<ReductionFn, ScenarioError> {
    let unknown = || semantic(field, format!("unknown reduction function `{spec}`"));
    Ok(match spec {
        FnSpec::Plain(name) => match name.as_str() {
            "empty" => ReductionFn::Empty,
            "zero" => ReductionFn::Zero,
            "id" => ReductionFn::Id,
            "colonM" => ReductionFn::ColonM,
            _ => return Err(unknown()),
        },
        FnSpec::Param(name, args) => match name.as_str() {
            "power" => match args.as_slice() {
                [k] if *k >= 1 && *k <= u32::MAX as i64 => ReductionFn::Power(*k as u32),
                _ => return Err(semantic(field, "power takes one exponent k >= 1")),
            },
            "mulJ" => ReductionFn::MulJ(param_ideal(args, ring, field)?),
            _ => return Err(unknown()),
        },
        FnSpec::Prod(a, b) => {
            let Some(pm) = product else {
                return Err(semantic(field, "product functions need `module.split`"));
            };
            ReductionFn::Product {
                left: Box::new(reduction(a, pm.left.ring(), None, field)?),
                right: Box::new(reduction(b, pm.right.ring(), None, field)?),
                module: pm.clone(),
            }
        }
    })
}

/// Parses one function expression such as `prod(rad;plus(2))`.
pub fn parse_function(text: &str) -> Result<FnSpec, ScenarioError> {
    Cursor::new(&Entry { line: 1, column: 1, value: text.to_string() }).single(Cursor::function)
}

/// Parses an m.c.s. value: `one` or a list of tuples.
pub fn parse_mcs(text: &str) -> Result<McsSpec, ScenarioError> {
    Cursor::new(&Entry { line: 1, column: 1, value: text.to_string() }).mcs()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z18: &str = "[ring]\ncomponents = Z\n[module]\norders = 18\n[submodule]\ngenerators = (3)\n\
                       [mcs]\ngenerators = one\n[delta]\nfunction = rad\n[phi]\nfunction = mulJ(2)\n";

    #[test]
    fn parses_the_z18_scenario() {
        let s = parse_scenario(Z18).unwrap();
        assert_eq!(s.ring, vec![Component::Integers]);
        assert_eq!(s.orders, vec![18]);
        assert_eq!(s.submodule, Some(vec![vec![3]]));
        assert_eq!(s.mcs, McsSpec::One);
        assert_eq!(s.delta, FnSpec::Plain("rad".into()));
        assert_eq!(s.phi, FnSpec::Param("mulJ".into(), vec![2]));
    }

    #[test]
    fn round_trips() {
        let s = parse_scenario(Z18).unwrap();
        assert_eq!(parse_scenario(&s.serialize()).unwrap(), s);
        let p = "[ring]\ncomponents = Z_4, Z_6\n[module]\norders = 4, 6\nsplit = 1\n[submodule]\n\
                 generators = (2,0), (0,3)\n[mcs]\ngenerators = (1,5)\n[delta]\nfunction = prod(rad;plus(2))\n\
                 [phi]\nfunction = prod(power(2);zero)\n";
        let s = parse_scenario(p).unwrap();
        assert_eq!(parse_scenario(&s.serialize()).unwrap(), s);
    }

    #[test]
    fn rejects_empty_module() {
        let e = parse_scenario("[ring]\ncomponents = Z\n[module]\norders =\n").unwrap_err();
        assert!(matches!(e, ScenarioError::Semantic { ref field, .. } if field == "module.orders"), "{e}");
    }

    #[test]
    fn rejects_huge_modules_at_parse_time() {
        let e = parse_scenario("[ring]\ncomponents = Z\n[module]\norders = 1000000000\n").unwrap_err();
        assert!(matches!(e, ScenarioError::Bound { size: 1_000_000_000, .. }), "{e}");
    }

    #[test]
    fn unknown_keys_report_their_position() {
        let e = parse_scenario("[ring]\ncomponents = Z\n  colour = red\n").unwrap_err();
        assert_eq!(e, syntax(3, 3, "unknown key `colour` in section `ring`"));
        let e = parse_scenario("[ring]\ncomponents = Z_x\n").unwrap_err();
        assert!(matches!(e, ScenarioError::Syntax { line: 2, column: 14, .. }), "{e}");
    }

    #[test]
    fn parameter_ideal_from_another_ring_names_the_field() {
        let text = "[ring]\ncomponents = Z\n[module]\norders = 6\n[phi]\nfunction = mulJ(2,3)\n";
        let e = parse_scenario(text).unwrap_err();
        assert!(matches!(e, ScenarioError::Semantic { ref field, .. } if field == "phi.function"), "{e}");
    }
}
