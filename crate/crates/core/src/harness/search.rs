//! Search for a submodule satisfying one property and failing another.

use std::sync::Arc;

use serde::Serialize;

use super::Universe;
use crate::checker::classify;
use crate::error::{Error, Result};
use crate::maps::{ExpansionFn, ReductionFn};
use crate::mcs::Mcs;
use crate::module::{Module, ProductModule, Submodule};
use crate::ring::{Elem, Ring};

/// A multiplicatively closed set given independently of a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum McsSpec {
    One,
    /// Closure of the listed elements, each given by its components.
    Generated(Vec<Vec<i64>>),
}

impl McsSpec {
    /// The set over `ring`, or `None` when the generators do not fit it.
    pub fn resolve(&self, ring: &Ring) -> Result<Option<Mcs>> {
        match self {
            McsSpec::One => Ok(Some(Mcs::one(ring))),
            McsSpec::Generated(gens) => {
                if gens.iter().any(|g| g.len() != ring.len()) {
                    return Ok(None);
                }
                let elems: Vec<Elem> = gens.iter().map(|g| ring.elem(g)).collect::<Result<_>>()?;
                match Mcs::closure(ring, &elems) {
                    Ok(s) => Ok(Some(s)),
                    Err(Error::McsContainsZero) => Ok(None),
                    Err(e) => Err(e),
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum Property {
    Prime,
    Primary,
    PhiPrime(ReductionFn),
    DeltaSPrimary {
        delta: ExpansionFn,
        mcs: McsSpec,
    },
    PhiDeltaSPrimary {
        phi: ReductionFn,
        delta: ExpansionFn,
        mcs: McsSpec,
    },
    PhiDeltaPrimary {
        phi: ReductionFn,
        delta: ExpansionFn,
    },
    /// Each factor of `N_1 × N_2` is primary for its own data.
    FactorPrimary {
        phi: [ReductionFn; 2],
        delta: [ExpansionFn; 2],
        mcs: [McsSpec; 2],
    },
    /// `N_1 × N_2` is primary for the induced product data.
    ProductPrimary {
        phi: [ReductionFn; 2],
        delta: [ExpansionFn; 2],
        mcs: [McsSpec; 2],
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Found {
    pub module: String,
    pub submodule: String,
    pub elements: Vec<String>,
}

impl Property {
    fn is_product(&self) -> bool {
        matches!(self, Property::FactorPrimary { .. } | Property::ProductPrimary { .. })
    }

    /// `None` when the property does not apply to this instance (ring
    /// mismatch, or product data on a non-product).
    fn holds(
        &self,
        n: &Submodule,
        product: Option<(&Arc<ProductModule>, &Submodule, &Submodule)>,
    ) -> Result<Option<bool>> {
        let ring = n.module().ring();
        let one = Mcs::one(ring);
        let verdict = |phi: &ReductionFn, delta: &ExpansionFn, s: &Mcs| -> Result<Option<bool>> {
            match classify(n, phi, delta, s) {
                Ok(v) => Ok(Some(v.holds)),
                Err(Error::NotProper) => Ok(Some(false)),
                Err(Error::Unsupported(_)) | Err(Error::RingMismatch(_)) => Ok(None),
                Err(e) => Err(e),
            }
        };
        match self {
            Property::Prime => crate::checker::is_prime(n).map(|v| Some(v.holds)).or_else(not_proper),
            Property::Primary => crate::checker::is_primary(n).map(|v| Some(v.holds)).or_else(not_proper),
            Property::PhiPrime(phi) => match crate::checker::is_phi_prime(n, phi) {
                Ok(v) => Ok(Some(v.holds)),
                Err(Error::Unsupported(_)) => Ok(None),
                Err(e) => not_proper(e),
            },
            Property::DeltaSPrimary { delta, mcs } => match mcs.resolve(ring)? {
                Some(s) => verdict(&ReductionFn::Empty, delta, &s),
                None => Ok(None),
            },
            Property::PhiDeltaSPrimary { phi, delta, mcs } => match mcs.resolve(ring)? {
                Some(s) => verdict(phi, delta, &s),
                None => Ok(None),
            },
            Property::PhiDeltaPrimary { phi, delta } => verdict(phi, delta, &one),
            Property::FactorPrimary { phi, delta, mcs } => {
                let Some((_, n1, n2)) = product else { return Ok(None) };
                let mut all = true;
                for (i, part) in [n1, n2].into_iter().enumerate() {
                    let r = part.module().ring();
                    let Some(s) = mcs[i].resolve(r)? else { return Ok(None) };
                    match classify(part, &phi[i], &delta[i], &s) {
                        Ok(v) => all &= v.holds,
                        Err(Error::NotProper) => all = false,
                        Err(Error::Unsupported(_)) | Err(Error::RingMismatch(_)) => return Ok(None),
                        Err(e) => return Err(e),
                    }
                }
                Ok(Some(all))
            }
            Property::ProductPrimary { phi, delta, mcs } => {
                let Some((pm, _, _)) = product else { return Ok(None) };
                let (Some(s1), Some(s2)) = (mcs[0].resolve(pm.left.ring())?, mcs[1].resolve(pm.right.ring())?) else {
                    return Ok(None);
                };
                let p = ReductionFn::Product {
                    left: Box::new(phi[0].clone()),
                    right: Box::new(phi[1].clone()),
                    module: pm.clone(),
                };
                let d = ExpansionFn::Product {
                    left: Box::new(delta[0].clone()),
                    right: Box::new(delta[1].clone()),
                    split: pm.left.ring().len(),
                };
                verdict(&p, &d, &Mcs::product(&s1, &s2))
            }
        }
    }
}

fn not_proper(e: Error) -> Result<Option<bool>> {
    match e {
        Error::NotProper => Ok(Some(false)),
        e => Err(e),
    }
}

/// Submodules from largest to smallest, ties in lattice order.
fn canonical_order(m: &Module) -> Vec<Submodule> {
    let mut lattice = m.submodules();
    lattice.sort_by_key(|n| std::cmp::Reverse(n.len()));
    lattice
}

fn found(name: &str, n: &Submodule) -> Found {
    let m = n.module();
    Found {
        module: name.to_string(),
        submodule: n.format_generators(),
        elements: n.elements().map(|x| m.format_elem(x)).collect(),
    }
}

/// The first instance in canonical order with `a` true and `b` false.
/// Products are searched when either property concerns products, modules
/// otherwise.
pub fn search_separating_instance(a: &Property, b: &Property, universe: &Universe) -> Result<Option<Found>> {
    if a.is_product() || b.is_product() {
        for e in &universe.products {
            let pm = &e.product;
            let left = canonical_order(&pm.left);
            let right = canonical_order(&pm.right);
            for n1 in &left {
                for n2 in &right {
                    let n = pm.submodule(n1, n2);
                    let ctx = Some((pm, n1, n2));
                    if a.holds(&n, ctx)? == Some(true) && b.holds(&n, ctx)? == Some(false) {
                        return Ok(Some(found(&e.name, &n)));
                    }
                }
            }
        }
        return Ok(None);
    }
    for e in &universe.modules {
        for n in canonical_order(&e.module) {
            if a.holds(&n, None)? == Some(true) && b.holds(&n, None)? == Some(false) {
                return Ok(Some(found(&e.name, &n)));
            }
        }
    }
    Ok(None)
}
