//! Decision procedures for φ-δ-S-primary submodules and ideals, the three
//! equivalent conditions on ideals times submodules, and twin zeros.
//!
//! Quantifiers over ring elements run over a [`Domain`] whose integer
//! components use a modulus `L` divisible by the module exponent and by every
//! ideal generator mentioned; an ideal that the domain cannot resolve is an
//! error, never a silent approximation.

use std::collections::BTreeSet;

use crate::arith::lcm;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::maps::{ExpansionFn, Reduced, ReductionFn};
use crate::mcs::Mcs;
use crate::module::{Module, Submodule};
use crate::ring::{Component, Elem, Ideal, Ring};

/// Per-component scalar bounds covering the given modules and ideals.
pub fn bounds(ring: &Ring, modules: &[&Module], ideals: &[&Ideal]) -> Vec<u64> {
    (0..ring.len())
        .map(|c| {
            let mut l = 1;
            for m in modules {
                l = lcm(l, m.exponents()[c]);
            }
            if ring.components()[c] == Component::Integers {
                for i in ideals {
                    let g = i.gens()[c];
                    if g != 0 {
                        l = lcm(l, g);
                    }
                }
            }
            l
        })
        .collect()
}

/// Bounds covering a module, an ideal and every parameter of `δ`.
pub fn bounds_for(module: &Module, ideals: &[&Ideal], delta: &ExpansionFn) -> Result<Vec<u64>> {
    let params: Vec<Ideal> = delta.params().iter().map(|p| p.resolve(module.ring())).collect::<Result<_>>()?;
    let mut all: Vec<&Ideal> = ideals.to_vec();
    all.extend(params.iter());
    Ok(bounds(module.ring(), &[module], &all))
}

/// A module together with a scalar domain and its action table.
pub struct Evaluator {
    module: Module,
    dom: Domain,
    act: Vec<u32>,
    corrupt_delta: bool,
}

impl Evaluator {
    pub fn new(module: &Module, bounds: &[u64]) -> Evaluator {
        let dom = Domain::new(module.ring(), bounds);
        let size = module.size();
        let mut act = Vec::with_capacity(dom.len() * size);
        for a in dom.elems() {
            act.extend(module.action_table(a));
        }
        Evaluator { module: module.clone(), dom, act, corrupt_delta: false }
    }

    /// Test hook: when set, the δ branch of the primary condition is
    /// treated as always satisfied whenever `φ(N) ≠ ∅`.
    pub fn corrupting(mut self, on: bool) -> Evaluator {
        self.corrupt_delta = on;
        self
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn domain(&self) -> &Domain {
        &self.dom
    }

    pub fn bounds(&self) -> Vec<u64> {
        self.dom.moduli().to_vec()
    }

    pub fn act(&self, a: usize, m: usize) -> usize {
        self.act[a * self.module.size() + m] as usize
    }

    fn row(&self, a: usize) -> &[u32] {
        let n = self.module.size();
        &self.act[a * n..(a + 1) * n]
    }

    pub fn index_of(&self, x: &Elem) -> usize {
        self.dom.index_of(x)
    }

    pub fn elem(&self, i: usize) -> &Elem {
        self.dom.elem(i)
    }

    /// Membership of every representative in `ideal`.
    pub fn ideal_mask(&self, ideal: &Ideal) -> Result<Vec<bool>> {
        if ideal.ring() != self.module.ring() {
            return Err(Error::RingMismatch(format!("{} vs {}", ideal.ring(), self.module.ring())));
        }
        if !self.dom.resolves(ideal) {
            return Err(Error::Unsupported(format!(
                "ideal {ideal} is not decided by scalar bounds {:?}",
                self.dom.moduli()
            )));
        }
        Ok(self.dom.mask(ideal))
    }

    /// Class representatives of `S`.
    pub fn mcs_image(&self, s: &Mcs) -> Result<Vec<usize>> {
        if s.ring() != self.module.ring() {
            return Err(Error::RingMismatch(format!("{} vs {}", s.ring(), self.module.ring())));
        }
        Ok(s.image(&self.dom))
    }

    /// `{m : am ∈ T}`, with `T = ∅` for `None`.
    pub fn colon_mask(&self, target: Option<&[bool]>, a: usize) -> Vec<bool> {
        match target {
            None => vec![false; self.module.size()],
            Some(t) => self.row(a).iter().map(|&x| t[x as usize]).collect(),
        }
    }

    /// `aK ⊆ T`.
    pub fn scales_into(&self, a: usize, k: &Submodule, t: &[bool]) -> bool {
        let row = self.row(a);
        k.elements().all(|x| t[row[x] as usize])
    }

    /// `a·K` as a submodule.
    pub fn scale(&self, a: usize, k: &Submodule) -> Submodule {
        let row = self.row(a);
        let mut mask = vec![false; self.module.size()];
        for x in k.elements() {
            mask[row[x] as usize] = true;
        }
        Submodule::from_mask(&self.module, mask)
    }

    /// First `(a, m)` with `am ∈ N \ F`, `sm ∉ N` and `sa ∉ D`, where `m`
    /// ranges over `scope` (all of `M` when `None`).
    pub fn violation(
        &self,
        n: &[bool],
        f: Option<&[bool]>,
        d: &[bool],
        s: usize,
        scope: Option<&[usize]>,
    ) -> Option<(usize, usize)> {
        if self.corrupt_delta && f.is_some() {
            return None;
        }
        let srow = self.row(s);
        let all: Vec<usize>;
        let ms: &[usize] = match scope {
            Some(sc) => sc,
            None => {
                all = self.module.elements().collect();
                &all
            }
        };
        for a in 0..self.dom.len() {
            if d[self.dom.mul(s, a)] {
                continue;
            }
            let row = self.row(a);
            for &m in ms {
                let x = row[m] as usize;
                if n[x] && !f.is_some_and(|f| f[x]) && !n[srow[m] as usize] {
                    return Some((a, m));
                }
            }
        }
        None
    }

    /// Every `s` in `s_image` at which the primary condition holds.
    pub fn witnesses(&self, n: &[bool], f: Option<&[bool]>, d: &[bool], s_image: &[usize]) -> Vec<usize> {
        s_image.iter().copied().filter(|&s| self.violation(n, f, d, s, None).is_none()).collect()
    }

    /// Full classification of `N` given the already computed `(N:M)`,
    /// `δ(N:M)` and `φ(N)`.
    pub fn verdict(
        &self,
        n: &Submodule,
        reduced: &Reduced,
        colon: &Ideal,
        expanded: &Ideal,
        mcs: &Mcs,
    ) -> Result<Verdict> {
        let d = self.ideal_mask(expanded)?;
        let image = self.mcs_image(mcs)?;
        let precondition_ok = !image.iter().any(|&s| d[s]);
        let f = reduced.as_ref().map(|r| r.mask());
        let mut v = Verdict {
            precondition_ok,
            holds: false,
            witnesses: Vec::new(),
            witness_ids: Vec::new(),
            counterexample: None,
            checked_bound: self.bounds(),
            colon: colon.clone(),
            expanded: expanded.clone(),
            reduced: reduced.clone(),
        };
        if !precondition_ok {
            return Ok(v);
        }
        v.witness_ids = self.witnesses(n.mask(), f, &d, &image);
        v.witnesses = v.witness_ids.iter().map(|&s| self.dom.elem(s).clone()).collect();
        v.holds = !v.witness_ids.is_empty();
        if !v.holds {
            let one = self.dom.one();
            let (a, m) = self.violation(n.mask(), f, &d, one, None).expect("s = 1 fails when every s fails");
            v.counterexample = Some(Counterexample { a: self.dom.elem(a).clone(), m });
        }
        Ok(v)
    }

    /// Witnesses of the ideal condition: `ab ∈ I \ Φ ⇒ sa ∈ I or sb ∈ Δ`.
    pub fn ideal_witnesses(&self, i: &[bool], phi: Option<&[bool]>, delta: &[bool], s_image: &[usize]) -> Vec<usize> {
        s_image.iter().copied().filter(|&s| self.ideal_violation(i, phi, delta, s).is_none()).collect()
    }

    pub fn ideal_violation(
        &self,
        i: &[bool],
        phi: Option<&[bool]>,
        delta: &[bool],
        s: usize,
    ) -> Option<(usize, usize)> {
        let n = self.dom.len();
        for a in 0..n {
            if i[self.dom.mul(s, a)] {
                continue;
            }
            for b in 0..n {
                let ab = self.dom.mul(a, b);
                if i[ab] && !phi.is_some_and(|p| p[ab]) && !delta[self.dom.mul(s, b)] {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// One generator per distinct principal ideal among the representatives.
    pub fn principal_reps(&self) -> Vec<usize> {
        let ring = self.module.ring();
        let mut seen = BTreeSet::new();
        (0..self.dom.len()).filter(|&i| seen.insert(Ideal::principal(ring, self.dom.elem(i)))).collect()
    }

    /// The conditions (1), (2), (3) at each `s` of `s_image`.
    pub fn ik_rows(&self, setting: &Setting, lattice: &[Submodule], s_image: &[usize]) -> Result<IkRows> {
        let m = &self.module;
        let n = setting.n.mask();
        let f = setting.reduced.as_ref().map(|r| r.mask());
        let d = self.ideal_mask(&setting.expanded)?;
        let ring = m.ring();

        // Pairs (I, K) with IK ⊆ N and IK ⊄ φ(N); independent of s.
        let reps = self.principal_reps();
        let mut qualifying: Vec<(usize, usize)> = Vec::new();
        for &x in &reps {
            for (ki, k) in lattice.iter().enumerate() {
                let ik = self.scale(x, k);
                let inside = ik.elements().all(|y| n[y]);
                let escapes = match f {
                    None => true,
                    Some(f) => ik.elements().any(|y| !f[y]),
                };
                if inside && escapes {
                    qualifying.push((x, ki));
                }
            }
        }

        let mut rows = Vec::new();
        let mut reading_mismatches = 0;
        for &s in s_image {
            let s_elem = self.dom.elem(s);
            let c1 = self.violation(n, f, &d, s, None).is_none();

            let quotient = setting.colon.colon(&Ideal::principal(ring, s_elem))?;
            let via_module = m.colon_ring(setting.n, &self.scale(s, &m.full()))?;
            if via_module != quotient {
                reading_mismatches += 1;
            }
            let e = self.ideal_mask(&setting.delta.apply(&quotient)?)?;
            let ns = self.colon_mask(Some(n), s);
            let c2 = (0..self.dom.len()).filter(|&a| !e[a]).all(|a| {
                let na = self.colon_mask(Some(n), a);
                let fa = self.colon_mask(f, a);
                na.iter().zip(&ns).all(|(&x, &y)| !x || y) || na == fa
            });

            let c3 = qualifying.iter().all(|&(x, ki)| d[self.dom.mul(s, x)] || self.scales_into(s, &lattice[ki], n));
            rows.push(IkRow { s: s_elem.clone(), s_id: s, c1, c2, c3 });
        }
        Ok(IkRows { rows, reading_mismatches })
    }

    /// Twin zeros at `s`: `am ∈ φ(N)`, `sm ∉ N`, `sa ∉ δ(N:M)`.
    pub fn twin_zeros(&self, setting: &Setting, s: usize) -> Result<Vec<(usize, usize)>> {
        let d = self.ideal_mask(&setting.expanded)?;
        let n = setting.n.mask();
        let Some(f) = setting.reduced.as_ref().map(|r| r.mask()) else {
            return Ok(Vec::new());
        };
        let srow = self.row(s);
        let mut out = Vec::new();
        for a in 0..self.dom.len() {
            if d[self.dom.mul(s, a)] {
                continue;
            }
            let row = self.row(a);
            for m in self.module.elements() {
                if f[row[m] as usize] && !n[srow[m] as usize] {
                    out.push((a, m));
                }
            }
        }
        Ok(out)
    }

    /// Whether `N` is free of twin zeros with respect to `IK`, where `I` is
    /// generated by the representative `x`.
    pub fn free_wrt(&self, setting: &Setting, s: usize, x: usize, k: &Submodule) -> Result<bool> {
        let zeros: BTreeSet<(usize, usize)> = self.twin_zeros(setting, s)?.into_iter().collect();
        let members: BTreeSet<usize> = (0..self.dom.len()).map(|r| self.dom.mul(x, r)).collect();
        Ok(!members.iter().any(|&a| k.elements().any(|m| zeros.contains(&(a, m)))))
    }

    /// Whether `(I, K)` qualifies: `K` proper, `IK ⊆ N`, `IK ⊄ φ(N)`.
    pub fn qualifies(&self, setting: &Setting, x: usize, k: &Submodule) -> bool {
        if !k.is_proper() {
            return false;
        }
        let ik = self.scale(x, k);
        ik.is_subset(setting.n) && !crate::maps::reduced_subset(&Some(ik), &setting.reduced)
    }
}

/// The data of one classification problem, with derived ideals computed.
pub struct Setting<'a> {
    pub n: &'a Submodule,
    pub reduced: Reduced,
    pub colon: Ideal,
    pub expanded: Ideal,
    pub delta: &'a ExpansionFn,
}

impl<'a> Setting<'a> {
    pub fn new(n: &'a Submodule, phi: &ReductionFn, delta: &'a ExpansionFn) -> Result<Setting<'a>> {
        let colon = n.module().annihilator_of_quotient(n);
        let expanded = delta.apply(&colon)?;
        Ok(Setting { n, reduced: phi.apply(n)?, colon, expanded, delta })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub a: Elem,
    pub m: usize,
}

/// Outcome of a classification.
#[derive(Clone, Debug)]
pub struct Verdict {
    /// `δ(N:M) ∩ S = ∅`; when false the classification is refused and
    /// `holds` is false.
    pub precondition_ok: bool,
    pub holds: bool,
    /// Admissible `s`, as class representatives.
    pub witnesses: Vec<Elem>,
    pub witness_ids: Vec<usize>,
    /// A violating pair at `s = 1` when no `s` is admissible.
    pub counterexample: Option<Counterexample>,
    pub checked_bound: Vec<u64>,
    pub colon: Ideal,
    pub expanded: Ideal,
    pub reduced: Reduced,
}

#[derive(Clone, Debug)]
pub struct IkRow {
    pub s: Elem,
    pub s_id: usize,
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
}

#[derive(Clone, Debug)]
pub struct IkRows {
    pub rows: Vec<IkRow>,
    /// Count of `s` where `((N:M) : s)` differs from `(N : sM)`.
    pub reading_mismatches: usize,
}

impl IkRows {
    pub fn exists(&self) -> (bool, bool, bool) {
        (self.rows.iter().any(|r| r.c1), self.rows.iter().any(|r| r.c2), self.rows.iter().any(|r| r.c3))
    }

    pub fn per_s_disagreements(&self) -> usize {
        self.rows.iter().filter(|r| !(r.c1 == r.c2 && r.c2 == r.c3)).count()
    }
}

fn evaluator_for(setting: &Setting, mcs: &Mcs) -> Result<Evaluator> {
    let m = setting.n.module();
    if mcs.ring() != m.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", mcs.ring(), m.ring())));
    }
    if !setting.n.is_proper() {
        return Err(Error::NotProper);
    }
    let b = bounds_for(m, &[&setting.colon, &setting.expanded], setting.delta)?;
    Ok(Evaluator::new(m, &b))
}

/// Decides whether `N` is φ-δ-S-primary, collecting every admissible `s`.
pub fn classify(n: &Submodule, phi: &ReductionFn, delta: &ExpansionFn, mcs: &Mcs) -> Result<Verdict> {
    let setting = Setting::new(n, phi, delta)?;
    let ev = evaluator_for(&setting, mcs)?;
    ev.verdict(n, &setting.reduced, &setting.colon, &setting.expanded, mcs)
}

pub fn is_prime(n: &Submodule) -> Result<Verdict> {
    classify(n, &ReductionFn::Empty, &ExpansionFn::Id, &Mcs::one(n.module().ring()))
}

pub fn is_primary(n: &Submodule) -> Result<Verdict> {
    classify(n, &ReductionFn::Empty, &ExpansionFn::Rad, &Mcs::one(n.module().ring()))
}

pub fn is_phi_prime(n: &Submodule, phi: &ReductionFn) -> Result<Verdict> {
    classify(n, phi, &ExpansionFn::Id, &Mcs::one(n.module().ring()))
}

pub fn is_phi_delta_primary(n: &Submodule, phi: &ReductionFn, delta: &ExpansionFn) -> Result<Verdict> {
    classify(n, phi, delta, &Mcs::one(n.module().ring()))
}

pub fn is_delta_s_primary(n: &Submodule, delta: &ExpansionFn, mcs: &Mcs) -> Result<Verdict> {
    classify(n, &ReductionFn::Empty, delta, mcs)
}

pub fn is_s_prime(n: &Submodule, mcs: &Mcs) -> Result<Verdict> {
    classify(n, &ReductionFn::Empty, &ExpansionFn::Id, mcs)
}

pub fn is_s_primary(n: &Submodule, mcs: &Mcs) -> Result<Verdict> {
    classify(n, &ReductionFn::Empty, &ExpansionFn::Rad, mcs)
}

/// The classical notions side by side for one submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hierarchy {
    pub prime: bool,
    pub primary: bool,
    pub phi_prime: bool,
    pub s_prime: bool,
    pub s_primary: bool,
    pub phi_delta_primary: bool,
    pub delta_s_primary: bool,
    pub phi_delta_s_primary: bool,
}

pub fn hierarchy(n: &Submodule, phi: &ReductionFn, delta: &ExpansionFn, mcs: &Mcs) -> Result<Hierarchy> {
    Ok(Hierarchy {
        prime: is_prime(n)?.holds,
        primary: is_primary(n)?.holds,
        phi_prime: is_phi_prime(n, phi)?.holds,
        s_prime: is_s_prime(n, mcs)?.holds,
        s_primary: is_s_primary(n, mcs)?.holds,
        phi_delta_primary: is_phi_delta_primary(n, phi, delta)?.holds,
        delta_s_primary: is_delta_s_primary(n, delta, mcs)?.holds,
        phi_delta_s_primary: classify(n, phi, delta, mcs)?.holds,
    })
}

fn s_index(ev: &Evaluator, mcs: &Mcs, s: &Elem) -> Result<usize> {
    if !mcs.contains(s) {
        return Err(Error::Precondition(format!("{s} is not in {mcs}")));
    }
    Ok(ev.index_of(s))
}

/// `(c1, c2, c3)` at a fixed `s ∈ S`.
pub fn ik_conditions(
    n: &Submodule,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mcs: &Mcs,
    s: &Elem,
) -> Result<(bool, bool, bool)> {
    let setting = Setting::new(n, phi, delta)?;
    let ev = evaluator_for(&setting, mcs)?;
    let d = ev.ideal_mask(&setting.expanded)?;
    if ev.mcs_image(mcs)?.iter().any(|&x| d[x]) {
        return Err(Error::Precondition("δ(N:M) meets S".into()));
    }
    let si = s_index(&ev, mcs, s)?;
    let rows = ev.ik_rows(&setting, &n.module().submodules(), &[si])?;
    let r = &rows.rows[0];
    Ok((r.c1, r.c2, r.c3))
}

/// The three conditions at every class of `S`.
pub fn ik_profile(n: &Submodule, phi: &ReductionFn, delta: &ExpansionFn, mcs: &Mcs) -> Result<IkRows> {
    let setting = Setting::new(n, phi, delta)?;
    let ev = evaluator_for(&setting, mcs)?;
    let d = ev.ideal_mask(&setting.expanded)?;
    let image = ev.mcs_image(mcs)?;
    if image.iter().any(|&x| d[x]) {
        return Err(Error::Precondition("δ(N:M) meets S".into()));
    }
    ev.ik_rows(&setting, &n.module().submodules(), &image)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinZero {
    pub a: Elem,
    pub m: usize,
}

fn primary_at(ev: &Evaluator, setting: &Setting, mcs: &Mcs, s: &Elem) -> Result<usize> {
    let si = s_index(ev, mcs, s)?;
    let d = ev.ideal_mask(&setting.expanded)?;
    if ev.mcs_image(mcs)?.iter().any(|&x| d[x]) {
        return Err(Error::Precondition("δ(N:M) meets S".into()));
    }
    let f = setting.reduced.as_ref().map(|r| r.mask());
    if ev.violation(setting.n.mask(), f, &d, si, None).is_some() {
        return Err(Error::Precondition(format!("N is not φ-δ-S-primary at s = {s}")));
    }
    Ok(si)
}

/// All twin zeros of `N` at `s`, with `a` ranging over class representatives.
pub fn find_twin_zeros(
    n: &Submodule,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mcs: &Mcs,
    s: &Elem,
) -> Result<Vec<TwinZero>> {
    let setting = Setting::new(n, phi, delta)?;
    let ev = evaluator_for(&setting, mcs)?;
    let si = primary_at(&ev, &setting, mcs, s)?;
    Ok(ev.twin_zeros(&setting, si)?.into_iter().map(|(a, m)| TwinZero { a: ev.elem(a).clone(), m }).collect())
}

/// Free of twin zeros with respect to `IK`. Errors when `(I, K)` does not
/// qualify (`K` proper, `IK ⊆ N`, `IK ⊄ φ(N)`).
#[allow(clippy::too_many_arguments)]
pub fn is_free_twin_zero(
    n: &Submodule,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mcs: &Mcs,
    s: &Elem,
    ideal: &Ideal,
    k: &Submodule,
) -> Result<bool> {
    let setting = Setting::new(n, phi, delta)?;
    let m = n.module();
    let b = bounds_for(m, &[&setting.colon, &setting.expanded, ideal], delta)?;
    let ev = Evaluator::new(m, &b);
    let si = primary_at(&ev, &setting, mcs, s)?;
    let x = ev.index_of(&ideal.generator());
    if !ev.qualifies(&setting, x, k) {
        return Err(Error::Precondition("IK must lie in N but not in φ(N), with K proper".into()));
    }
    ev.free_wrt(&setting, si, x, k)
}

/// Free of twin zeros with respect to every qualifying `IK`.
pub fn free_twin_zero_global(
    n: &Submodule,
    phi: &ReductionFn,
    delta: &ExpansionFn,
    mcs: &Mcs,
    s: &Elem,
) -> Result<bool> {
    let setting = Setting::new(n, phi, delta)?;
    let ev = evaluator_for(&setting, mcs)?;
    let si = primary_at(&ev, &setting, mcs, s)?;
    for x in ev.principal_reps() {
        for k in n.module().submodules() {
            if ev.qualifies(&setting, x, &k) && !ev.free_wrt(&setting, si, x, &k)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `∀ qualifying (I, K): sK ⊆ N or sI ⊆ δ(N:M)`, computed without twin zeros.
pub fn twin_zero_criterion(n: &Submodule, phi: &ReductionFn, delta: &ExpansionFn, mcs: &Mcs, s: &Elem) -> Result<bool> {
    let setting = Setting::new(n, phi, delta)?;
    let ev = evaluator_for(&setting, mcs)?;
    let si = primary_at(&ev, &setting, mcs, s)?;
    let d = ev.ideal_mask(&setting.expanded)?;
    for x in ev.principal_reps() {
        for k in n.module().submodules() {
            if ev.qualifies(&setting, x, &k) && !d[ev.domain().mul(si, x)] && !ev.scales_into(si, &k, n.mask()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Ideal-level verdict: `I` proper with `I ∩ S = ∅`, and `ab ∈ I \ Φ`
/// forces `sa ∈ I` or `sb ∈ δ(I)`. `reduced = None` stands for `∅`.
#[derive(Clone, Debug)]
pub struct IdealVerdict {
    pub precondition_ok: bool,
    pub holds: bool,
    pub witnesses: Vec<Elem>,
    pub counterexample: Option<(Elem, Elem)>,
}

pub fn classify_ideal(ideal: &Ideal, reduced: Option<&Ideal>, delta: &ExpansionFn, mcs: &Mcs) -> Result<IdealVerdict> {
    let ring = ideal.ring();
    if mcs.ring() != ring {
        return Err(Error::RingMismatch(format!("{} vs {}", mcs.ring(), ring)));
    }
    if ideal.is_unit() {
        return Err(Error::NotProper);
    }
    let expanded = delta.apply(ideal)?;
    let params: Vec<Ideal> = delta.params().iter().map(|p| p.resolve(ring)).collect::<Result<_>>()?;
    let mut all: Vec<&Ideal> = vec![ideal, &expanded];
    all.extend(reduced);
    all.extend(params.iter());
    let b = bounds(ring, &[], &all);
    let dom = Domain::new(ring, &b);
    let i = dom.mask(ideal);
    let phi = reduced.map(|r| dom.mask(r));
    let d = dom.mask(&expanded);
    let image = mcs.image(&dom);
    let precondition_ok = !image.iter().any(|&s| i[s]);
    let mut v = IdealVerdict { precondition_ok, holds: false, witnesses: Vec::new(), counterexample: None };
    if !precondition_ok {
        return Ok(v);
    }
    let viol = |s: usize| -> Option<(usize, usize)> {
        for a in 0..dom.len() {
            if i[dom.mul(s, a)] {
                continue;
            }
            for bb in 0..dom.len() {
                let ab = dom.mul(a, bb);
                if i[ab] && !phi.as_ref().is_some_and(|p| p[ab]) && !d[dom.mul(s, bb)] {
                    return Some((a, bb));
                }
            }
        }
        None
    };
    v.witnesses = image.iter().copied().filter(|&s| viol(s).is_none()).map(|s| dom.elem(s).clone()).collect();
    v.holds = !v.witnesses.is_empty();
    if !v.holds {
        let (a, bb) = viol(dom.one()).expect("s = 1 fails when every s fails");
        v.counterexample = Some((dom.elem(a).clone(), dom.elem(bb).clone()));
    }
    Ok(v)
}
