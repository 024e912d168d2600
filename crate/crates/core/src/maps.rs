//! Expansion functions on ideals and reduction functions on submodules.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::{ProductModule, Submodule};
use crate::ring::{Ideal, Ring};

/// A parameter ideal. A single generator is broadcast to every ring
/// component (so `2` means `2Z`, or `2R` on a product ring).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamIdeal(pub Vec<i64>);

impl ParamIdeal {
    pub fn int(k: i64) -> ParamIdeal {
        ParamIdeal(vec![k])
    }

    pub fn resolve(&self, ring: &Ring) -> Result<Ideal> {
        if self.0.len() == 1 {
            Ok(Ideal::of_int(ring, self.0[0]))
        } else if self.0.len() == ring.len() {
            Ideal::new(ring, &self.0)
        } else {
            Err(Error::RingMismatch(format!("parameter ideal {self} does not belong to {ring}")))
        }
    }
}

impl fmt::Display for ParamIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExpansionFn {
    Id,
    Rad,
    /// `I ↦ (I : J)`
    Res(ParamIdeal),
    /// `I ↦ ann(ann(I))`
    Ann,
    /// `I ↦ I + J`
    PlusJ(ParamIdeal),
    /// `I_1 × I_2 ↦ δ_1(I_1) × δ_2(I_2)`, splitting after `split` ring components.
    Product {
        left: Box<ExpansionFn>,
        right: Box<ExpansionFn>,
        split: usize,
    },
}

impl fmt::Display for ExpansionFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpansionFn::Id => write!(f, "id"),
            ExpansionFn::Rad => write!(f, "rad"),
            ExpansionFn::Res(j) => write!(f, "res({j})"),
            ExpansionFn::Ann => write!(f, "ann"),
            ExpansionFn::PlusJ(j) => write!(f, "plus({j})"),
            ExpansionFn::Product { left, right, .. } => write!(f, "prod({left};{right})"),
        }
    }
}

impl ExpansionFn {
    pub fn apply(&self, ideal: &Ideal) -> Result<Ideal> {
        match self {
            ExpansionFn::Id => Ok(ideal.clone()),
            ExpansionFn::Rad => Ok(ideal.radical()),
            ExpansionFn::Res(j) => ideal.colon(&j.resolve(ideal.ring())?),
            ExpansionFn::Ann => Ok(ideal.annihilator().annihilator()),
            ExpansionFn::PlusJ(j) => ideal.sum(&j.resolve(ideal.ring())?),
            ExpansionFn::Product { left, right, split } => {
                if *split == 0 || *split >= ideal.ring().len() {
                    return Err(Error::Unsupported(format!("{self} needs a product ring, got {}", ideal.ring())));
                }
                let (a, b) = ideal.split(*split);
                Ok(Ideal::product_of(&left.apply(&a)?, &right.apply(&b)?))
            }
        }
    }

    /// Parameter ideals mentioned anywhere in the function.
    pub fn params(&self) -> Vec<ParamIdeal> {
        match self {
            ExpansionFn::Res(j) | ExpansionFn::PlusJ(j) => vec![j.clone()],
            ExpansionFn::Product { left, right, .. } => {
                let mut out = left.params();
                out.extend(right.params());
                out
            }
            _ => Vec::new(),
        }
    }

    /// The catalog used by the harness: identity, radical, residual and
    /// sum by each parameter, and the double annihilator.
    pub fn catalog(params: &[i64]) -> Vec<ExpansionFn> {
        let mut out = vec![ExpansionFn::Id, ExpansionFn::Rad, ExpansionFn::Ann];
        for &j in params {
            out.push(ExpansionFn::Res(ParamIdeal::int(j)));
            out.push(ExpansionFn::PlusJ(ParamIdeal::int(j)));
        }
        out
    }
}

/// `None` stands for the empty set `∅`.
pub type Reduced = Option<Submodule>;

pub fn reduced_contains(r: &Reduced, x: usize) -> bool {
    r.as_ref().is_some_and(|s| s.contains(x))
}

pub fn reduced_subset(a: &Reduced, b: &Reduced) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) => a.is_subset(b),
    }
}

pub fn format_reduced(r: &Reduced) -> String {
    match r {
        None => "∅".to_string(),
        Some(s) => s.to_string(),
    }
}

#[derive(Clone, Debug)]
pub enum ReductionFn {
    Empty,
    Zero,
    Id,
    /// `N ↦ (N:M)^{k-1} N`
    Power(u32),
    /// `N ↦ (N:M) M`
    ColonM,
    /// `N ↦ J N` for a fixed ideal `J`
    MulJ(ParamIdeal),
    /// `N_1 × N_2 ↦ φ_1(N_1) × φ_2(N_2)` on a product module.
    Product {
        left: Box<ReductionFn>,
        right: Box<ReductionFn>,
        module: Arc<ProductModule>,
    },
}

impl PartialEq for ReductionFn {
    fn eq(&self, other: &Self) -> bool {
        use ReductionFn::*;
        match (self, other) {
            (Empty, Empty) | (Zero, Zero) | (Id, Id) | (ColonM, ColonM) => true,
            (Power(a), Power(b)) => a == b,
            (MulJ(a), MulJ(b)) => a == b,
            (Product { left: l1, right: r1, module: m1 }, Product { left: l2, right: r2, module: m2 }) => {
                l1 == l2 && r1 == r2 && m1.module == m2.module
            }
            _ => false,
        }
    }
}

impl fmt::Display for ReductionFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionFn::Empty => write!(f, "empty"),
            ReductionFn::Zero => write!(f, "zero"),
            ReductionFn::Id => write!(f, "id"),
            ReductionFn::Power(k) => write!(f, "power({k})"),
            ReductionFn::ColonM => write!(f, "colonM"),
            ReductionFn::MulJ(j) => write!(f, "mulJ({j})"),
            ReductionFn::Product { left, right, .. } => write!(f, "prod({left};{right})"),
        }
    }
}

impl ReductionFn {
    pub fn apply(&self, n: &Submodule) -> Result<Reduced> {
        let m = n.module();
        Ok(match self {
            ReductionFn::Empty => None,
            ReductionFn::Zero => Some(m.zero_submodule()),
            ReductionFn::Id => Some(n.clone()),
            ReductionFn::Power(k) => {
                if *k == 0 {
                    return Err(Error::Unsupported("power reductions need k >= 1".into()));
                }
                let i = m.annihilator_of_quotient(n).power(k - 1);
                Some(m.ideal_action(&i, n))
            }
            ReductionFn::ColonM => Some(m.ideal_action(&m.annihilator_of_quotient(n), &m.full())),
            ReductionFn::MulJ(j) => Some(m.ideal_action(&j.resolve(m.ring())?, n)),
            ReductionFn::Product { left, right, module } => {
                if &module.module != m {
                    return Err(Error::ParentMismatch);
                }
                let (n1, n2) = module.factors(n);
                match (left.apply(&n1)?, right.apply(&n2)?) {
                    (Some(a), Some(b)) => Some(module.submodule(&a, &b)),
                    _ => None,
                }
            }
        })
    }

    pub fn catalog(params: &[i64]) -> Vec<ReductionFn> {
        let mut out = vec![
            ReductionFn::Empty,
            ReductionFn::Zero,
            ReductionFn::Id,
            ReductionFn::Power(2),
            ReductionFn::Power(3),
            ReductionFn::ColonM,
        ];
        for &j in params {
            out.push(ReductionFn::MulJ(ParamIdeal::int(j)));
        }
        out
    }
}

/// `δ_1 ≤ δ_2` on the given ideals. Returns the first ideal where it fails.
pub fn expansion_leq(a: &ExpansionFn, b: &ExpansionFn, universe: &[Ideal]) -> Result<Option<Ideal>> {
    for i in universe {
        if !a.apply(i)?.is_subset(&b.apply(i)?) {
            return Ok(Some(i.clone()));
        }
    }
    Ok(None)
}

pub fn reduction_leq(a: &ReductionFn, b: &ReductionFn, universe: &[Submodule]) -> Result<Option<Submodule>> {
    for n in universe {
        if !reduced_subset(&a.apply(n)?, &b.apply(n)?) {
            return Ok(Some(n.clone()));
        }
    }
    Ok(None)
}

/// `δ(I ∩ J) = δ(I) ∩ δ(J)` for all pairs.
pub fn expansion_has_intersection_property(d: &ExpansionFn, universe: &[Ideal]) -> Result<bool> {
    for i in universe {
        for j in universe {
            if d.apply(&i.intersection(j)?)? != d.apply(i)?.intersection(&d.apply(j)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `φ(N ∩ K) = φ(N) ∩ φ(K)` for all pairs.
pub fn reduction_has_intersection_property(p: &ReductionFn, universe: &[Submodule]) -> Result<bool> {
    for n in universe {
        for k in universe {
            let lhs = p.apply(&n.intersection(k))?;
            let rhs = match (p.apply(n)?, p.apply(k)?) {
                (Some(a), Some(b)) => Some(a.intersection(&b)),
                _ => None,
            };
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Monotone and extensive on every pair `I ⊆ J` of the universe.
pub fn expansion_axioms_hold(d: &ExpansionFn, universe: &[Ideal]) -> Result<bool> {
    for i in universe {
        let di = d.apply(i)?;
        if !i.is_subset(&di) {
            return Ok(false);
        }
        for j in universe {
            if i.is_subset(j) && !di.is_subset(&d.apply(j)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Monotone and reductive on every pair `N ⊆ K` of the universe.
pub fn reduction_axioms_hold(p: &ReductionFn, universe: &[Submodule]) -> Result<bool> {
    for n in universe {
        let pn = p.apply(n)?;
        if !reduced_subset(&pn, &Some(n.clone())) {
            return Ok(false);
        }
        for k in universe {
            if n.is_subset(k) && !reduced_subset(&pn, &p.apply(k)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
