use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde_json::Value;

use super::universe::{ProductEntry, Universe};
use crate::arith::lcm;
use crate::checker::Evaluator;
use crate::error::Result;
use crate::maps::{format_reduced, ExpansionFn, Reduced, ReductionFn};
use crate::mcs::Mcs;
use crate::module::{Module, Submodule};
use crate::ring::{Component, Ideal};

/// Scalar bounds for a module: its exponents, joined with the parameter
/// generators on integer components.
pub(crate) fn module_bounds(m: &Module, params: &[i64]) -> Vec<u64> {
    let ring = m.ring();
    m.exponents()
        .iter()
        .enumerate()
        .map(|(c, &e)| match ring.components()[c] {
            Component::Integers => params.iter().fold(e.max(1), |l, &p| lcm(l, p.unsigned_abs().max(1))),
            Component::Residue(_) => e,
        })
        .collect()
}

pub(crate) struct McsCtx {
    pub mcs: Mcs,
    pub image: Vec<usize>,
}

/// Precomputed data for one module of the universe.
pub(crate) struct ModCtx {
    pub name: String,
    pub module: Module,
    pub ev: Evaluator,
    pub lattice: Vec<Submodule>,
    pub index: HashMap<Submodule, usize>,
    /// `(N:M)` per lattice element.
    pub colon: Vec<Ideal>,
    pub mcs: Vec<McsCtx>,
    /// `φ(N)` per reduction, per lattice element.
    pub reduced: Vec<Vec<Reduced>>,
    /// `δ(N:M)` per expansion, per lattice element, with its mask.
    pub expanded: Vec<Vec<Ideal>>,
    pub dmask: Vec<Vec<Vec<bool>>>,
    witness_cache: Mutex<HashMap<WitnessKey, Arc<Option<Vec<usize>>>>>,
}

/// Lattice element, reduction, expansion and m.c.s. indices.
type WitnessKey = (usize, usize, usize, usize);

impl ModCtx {
    pub fn new(
        name: &str,
        module: &Module,
        mcs: &[Mcs],
        reductions: &[ReductionFn],
        expansions: &[ExpansionFn],
        bounds: &[u64],
        corrupt: bool,
    ) -> Result<ModCtx> {
        let ev = Evaluator::new(module, bounds).corrupting(corrupt);
        let lattice = module.submodules();
        let index = lattice.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        let colon: Vec<Ideal> = lattice.iter().map(|n| module.annihilator_of_quotient(n)).collect();
        let mcs =
            mcs.iter().map(|s| Ok(McsCtx { image: ev.mcs_image(s)?, mcs: s.clone() })).collect::<Result<Vec<_>>>()?;
        let reduced = reductions
            .iter()
            .map(|p| lattice.iter().map(|n| p.apply(n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let expanded = expansions
            .iter()
            .map(|d| colon.iter().map(|i| d.apply(i)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let dmask = expanded
            .iter()
            .map(|row| row.iter().map(|i| ev.ideal_mask(i)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ModCtx {
            name: name.to_string(),
            module: module.clone(),
            ev,
            lattice,
            index,
            colon,
            mcs,
            reduced,
            expanded,
            dmask,
            witness_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn idx(&self, n: &Submodule) -> usize {
        self.index[n]
    }

    pub fn proper(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.lattice.len()).filter(|&i| self.lattice[i].is_proper())
    }

    pub fn fmask(&self, p: usize, n: usize) -> Option<&[bool]> {
        self.reduced[p][n].as_ref().map(|r| r.mask())
    }

    /// `δ(N:M) ∩ S = ∅`.
    pub fn precondition(&self, n: usize, d: usize, s: usize) -> bool {
        !self.mcs[s].image.iter().any(|&x| self.dmask[d][n][x])
    }

    /// Admissible `s` for `(N, φ, δ, S)`, or `None` when `N` is not proper
    /// or `δ(N:M)` meets `S`.
    pub fn witnesses(&self, n: usize, p: usize, d: usize, s: usize) -> Arc<Option<Vec<usize>>> {
        let key = (n, p, d, s);
        if let Some(w) = self.witness_cache.lock().expect("cache").get(&key) {
            return w.clone();
        }
        let w = if self.lattice[n].is_proper() && self.precondition(n, d, s) {
            Some(self.ev.witnesses(self.lattice[n].mask(), self.fmask(p, n), &self.dmask[d][n], &self.mcs[s].image))
        } else {
            None
        };
        let w = Arc::new(w);
        self.witness_cache.lock().expect("cache").insert(key, w.clone());
        w
    }

    /// Whether `(N, φ, δ, S)` is primary at the scalar index `at`.
    pub fn primary_at(&self, n: usize, p: usize, d: usize, s: usize, at: usize) -> bool {
        self.witnesses(n, p, d, s).as_ref().as_ref().is_some_and(|w| w.contains(&at))
    }

    pub fn holds(&self, n: usize, p: usize, d: usize, s: usize) -> bool {
        self.witnesses(n, p, d, s).as_ref().as_ref().is_some_and(|w| !w.is_empty())
    }

    pub fn describe(&self, n: usize, p: &ReductionFn, d: &ExpansionFn, s: usize) -> Vec<(&'static str, String)> {
        vec![
            ("module", self.name.clone()),
            ("N", self.lattice[n].format_generators()),
            ("phi", p.to_string()),
            ("phi(N)", format_reduced(&self.reduced_by(p, n))),
            ("delta", d.to_string()),
            ("S", self.mcs[s].mcs.to_string()),
        ]
    }

    fn reduced_by(&self, p: &ReductionFn, n: usize) -> Reduced {
        p.apply(&self.lattice[n]).ok().flatten()
    }

    pub fn elem(&self, a: usize) -> String {
        self.ev.elem(a).to_string()
    }
}

/// Precomputed data for one product entry.
pub(crate) struct ProdCtx {
    pub name: String,
    pub entry: ProductEntry,
    pub left: ModCtx,
    pub right: ModCtx,
    pub ev: Evaluator,
    /// `(S_1 × S_2)` images per pair of factor m.c.s. indices.
    pub images: Vec<Vec<Vec<usize>>>,
}

impl ProdCtx {
    /// Product-domain index of `(a, b)` given factor-domain indices.
    pub fn pair_scalar(&self, a: usize, b: usize) -> usize {
        let mut e = self.left.ev.elem(a).0.clone();
        e.extend(self.right.ev.elem(b).0.iter().copied());
        self.ev.index_of(&crate::ring::Elem(e))
    }
}

pub struct Harness {
    pub(crate) universe: Universe,
    pub(crate) mods: Vec<ModCtx>,
    pub(crate) prods: Vec<ProdCtx>,
}

impl Harness {
    pub fn new(universe: &Universe) -> Result<Harness> {
        universe.validate()?;
        let u = universe;
        let mods = u
            .modules
            .iter()
            .map(|e| {
                let b = module_bounds(&e.module, &u.params);
                ModCtx::new(&e.name, &e.module, &e.mcs, &u.reductions, &u.expansions, &b, u.corrupt_classify)
            })
            .collect::<Result<Vec<_>>>()?;
        let prods = u
            .products
            .iter()
            .map(|e| {
                let pm = &e.product;
                let lb = module_bounds(&pm.left, &u.params);
                let rb = module_bounds(&pm.right, &u.params);
                let left = ModCtx::new(
                    "left",
                    &pm.left,
                    &e.left_mcs,
                    &u.factor_reductions,
                    &u.factor_expansions,
                    &lb,
                    u.corrupt_classify,
                )?;
                let right = ModCtx::new(
                    "right",
                    &pm.right,
                    &e.right_mcs,
                    &u.factor_reductions,
                    &u.factor_expansions,
                    &rb,
                    u.corrupt_classify,
                )?;
                let mut b = lb.clone();
                b.extend(rb);
                let ev = Evaluator::new(&pm.module, &b).corrupting(u.corrupt_classify);
                let images = e
                    .left_mcs
                    .iter()
                    .map(|s1| {
                        e.right_mcs.iter().map(|s2| ev.mcs_image(&Mcs::product(s1, s2))).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ProdCtx { name: e.name.clone(), entry: e.clone(), left, right, ev, images })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Harness { universe: universe.clone(), mods, prods })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub(crate) fn phis(&self) -> &[ReductionFn] {
        &self.universe.reductions
    }

    pub(crate) fn deltas(&self) -> &[ExpansionFn] {
        &self.universe.expansions
    }
}

pub(crate) fn obj(pairs: Vec<(&str, String)>) -> Value {
    super::instance(&pairs)
}
