use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::maps::{ExpansionFn, ReductionFn};
use crate::mcs::Mcs;
use crate::module::{Module, ProductModule, DEFAULT_MAX_MODULE_SIZE};
use crate::ring::{Elem, Ring};

#[derive(Clone, Debug)]
pub struct Bounds {
    pub max_module_size: u64,
    /// Largest generator of the integer ideals used where a property of
    /// `δ` over all ideals of `Z` is needed.
    pub ideal_bound: u64,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { max_module_size: DEFAULT_MAX_MODULE_SIZE, ideal_bound: 60 }
    }
}

#[derive(Clone, Debug)]
pub struct ModuleEntry {
    pub name: String,
    pub module: Module,
    pub mcs: Vec<Mcs>,
}

#[derive(Clone, Debug)]
pub struct ProductEntry {
    pub name: String,
    pub product: Arc<ProductModule>,
    pub left_mcs: Vec<Mcs>,
    pub right_mcs: Vec<Mcs>,
}

#[derive(Clone, Debug)]
pub struct Universe {
    pub modules: Vec<ModuleEntry>,
    pub products: Vec<ProductEntry>,
    pub expansions: Vec<ExpansionFn>,
    pub reductions: Vec<ReductionFn>,
    /// Catalogs applied to each factor of a product.
    pub factor_expansions: Vec<ExpansionFn>,
    pub factor_reductions: Vec<ReductionFn>,
    /// Generators of the parameter ideals `J`.
    pub params: Vec<i64>,
    pub bounds: Bounds,
    /// Test hook: makes classification ignore the δ branch whenever
    /// `φ(N) ≠ ∅`, so that the suite can be seen to fail.
    pub corrupt_classify: bool,
}

/// Single-element closures, deduplicated by their materialized set.
pub fn single_closures(ring: &Ring) -> Result<Vec<Mcs>> {
    let mut out = vec![Mcs::one(ring)];
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    seen.insert(out[0].elements().map(|e| e.to_vec()).unwrap_or_default());
    for x in ring.elements().ok_or_else(|| Error::Unsupported("closures need a finite ring".into()))? {
        match Mcs::closure(ring, std::slice::from_ref(&x)) {
            Ok(s) => {
                let key = s.elements().expect("finite").to_vec();
                if seen.insert(key) {
                    out.push(s);
                }
            }
            Err(Error::McsContainsZero) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `{1}` and the closures of the given integers.
pub fn integer_closures(gens: &[i64]) -> Vec<Mcs> {
    let z = Ring::integers();
    let mut out = vec![Mcs::one(&z)];
    out.extend(gens.iter().map(|&g| Mcs::closure(&z, &[Elem(vec![g])]).expect("nonzero")));
    out
}

impl Universe {
    pub fn empty() -> Universe {
        Universe {
            modules: Vec::new(),
            products: Vec::new(),
            expansions: Vec::new(),
            reductions: Vec::new(),
            factor_expansions: Vec::new(),
            factor_reductions: Vec::new(),
            params: Vec::new(),
            bounds: Bounds::default(),
            corrupt_classify: false,
        }
    }

    /// A universe over the given modules with the full catalogs and the
    /// default set of m.c.s. per ring.
    pub fn over_modules(modules: Vec<Module>, params: &[i64]) -> Result<Universe> {
        let mut u = Universe::empty();
        u.params = params.to_vec();
        u.expansions = ExpansionFn::catalog(params);
        u.reductions = ReductionFn::catalog(params);
        for m in modules {
            let mcs = default_mcs(m.ring())?;
            u.modules.push(ModuleEntry { name: m.to_string(), module: m, mcs });
        }
        Ok(u)
    }

    /// The standard universe: the finite rings `Z_4, Z_6, Z_8, Z_12, Z_18,
    /// Z_2×Z_3, Z_4×Z_9` on themselves; the `Z`-modules `Z_n` for
    /// `n ∈ {4, 6, 8, 12, 18, 36}`, `Z_2⊕Z_2` and `Z_2⊕Z_4`; products of the
    /// rings `Z_2, Z_3, Z_4, Z_6` on themselves and `Z_4 × Z_3` over `Z × Z_3`.
    pub fn standard() -> Result<Universe> {
        let params = [2, 3];
        let z = Ring::integers();
        let mut modules = Vec::new();
        for moduli in [vec![4u64], vec![6], vec![8], vec![12], vec![18], vec![2, 3], vec![4, 9]] {
            modules.push(Module::ring_on_itself(&Ring::residues(&moduli)?)?);
        }
        for n in [4u64, 6, 8, 12, 18, 36] {
            modules.push(Module::new(&z, &[n], &[0])?);
        }
        modules.push(Module::new(&z, &[2, 2], &[0, 0])?);
        modules.push(Module::new(&z, &[2, 4], &[0, 0])?);
        let mut u = Universe::over_modules(modules, &params)?;
        u.factor_expansions =
            vec![ExpansionFn::Id, ExpansionFn::Rad, ExpansionFn::PlusJ(crate::maps::ParamIdeal::int(2))];
        u.factor_reductions = vec![
            ReductionFn::Empty,
            ReductionFn::Zero,
            ReductionFn::Id,
            ReductionFn::Power(2),
            ReductionFn::MulJ(crate::maps::ParamIdeal::int(2)),
        ];
        let factors = [2u64, 3, 4, 6];
        for &a in &factors {
            for &b in &factors {
                let left = Module::ring_on_itself(&Ring::residues(&[a])?)?;
                let right = Module::ring_on_itself(&Ring::residues(&[b])?)?;
                u.add_product(left, right)?;
            }
        }
        let left = Module::new(&z, &[4], &[0])?;
        let right = Module::ring_on_itself(&Ring::residues(&[3])?)?;
        u.add_product(left, right)?;
        Ok(u)
    }

    pub fn add_product(&mut self, left: Module, right: Module) -> Result<()> {
        let left_mcs = default_mcs(left.ring())?;
        let right_mcs = default_mcs(right.ring())?;
        let product = Arc::new(ProductModule::new(&left, &right)?);
        self.products.push(ProductEntry { name: format!("({left}) × ({right})"), product, left_mcs, right_mcs });
        Ok(())
    }

    /// Every module within the size bound.
    pub fn validate(&self) -> Result<()> {
        let bound = self.bounds.max_module_size;
        let sizes =
            self.modules.iter().map(|e| e.module.size()).chain(self.products.iter().map(|p| p.product.module.size()));
        for size in sizes {
            if size as u64 > bound {
                return Err(Error::SizeBound { size: size as u64, bound });
            }
        }
        for e in &self.modules {
            if e.mcs.iter().any(|s| s.ring() != e.module.ring()) {
                return Err(Error::RingMismatch(format!("m.c.s. list of {}", e.name)));
            }
        }
        Ok(())
    }

    /// The distinct rings of the universe.
    pub fn rings(&self) -> Vec<Ring> {
        let mut out: Vec<Ring> = Vec::new();
        for r in self.modules.iter().map(|e| e.module.ring().clone()) {
            if !out.contains(&r) {
                out.push(r);
            }
        }
        out
    }
}

/// `{1}` and the closures of single elements: `2..=6` over `Z`, every
/// element of a finite ring, and `{1}` together with the integer
/// generators `2, 3` embedded in the first component for mixed rings.
pub fn default_mcs(ring: &Ring) -> Result<Vec<Mcs>> {
    if ring.is_finite() {
        single_closures(ring)
    } else if ring.is_integers() {
        Ok(integer_closures(&[2, 3, 4, 5, 6]))
    } else {
        let mut out = vec![Mcs::one(ring)];
        for g in [2, 3] {
            let mut e = ring.one();
            e.0[0] = g;
            out.push(Mcs::closure(ring, &[e])?);
        }
        Ok(out)
    }
}
