//! Finite modules with the natural scalar action, their submodule lattices,
//! colon operations, quotients, products and homomorphisms.
//!
//! A module is stored as `A / K` where `A = Z_{o_1} ⊕ … ⊕ Z_{o_k}` is a sum
//! of cyclic groups, each attached to one ring component acting on it, and
//! `K` is a submodule of `A` (trivial for a plain cyclic sum). Elements are
//! indexed `0..|M|` in the order of their least coset representative in `A`,
//! so index 0 is always zero.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::arith::{divides, lcm};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::ring::{Component, Elem, Ideal, Ring};

pub const DEFAULT_MAX_MODULE_SIZE: u64 = 2500;

struct Inner {
    ring: Ring,
    orders: Vec<u64>,
    comps: Vec<usize>,
    /// Ambient indices of the relation submodule `K` (sorted).
    relations: Vec<u32>,
    /// Ambient index of each element's least coset representative.
    reps: Vec<u32>,
    /// Ambient index -> element index.
    rep_of: Vec<u32>,
    coords: Vec<Vec<u64>>,
    /// Scalar representatives covering the module's exponent.
    scalars: Domain,
}

#[derive(Clone)]
pub struct Module(Arc<Inner>);

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring
                && self.0.orders == other.0.orders
                && self.0.comps == other.0.comps
                && self.0.relations == other.0.relations)
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.orders.iter().map(|o| format!("Z_{o}")).collect();
        write!(f, "{}", parts.join("+"))?;
        if self.0.relations.len() > 1 {
            write!(f, " / <{} relations>", self.0.relations.len())?;
        }
        write!(f, " over {}", self.0.ring)
    }
}

fn ambient_size(orders: &[u64]) -> u64 {
    orders.iter().product()
}

fn encode(orders: &[u64], coords: &[u64]) -> usize {
    let mut idx = 0usize;
    for (o, c) in orders.iter().zip(coords) {
        idx = idx * *o as usize + *c as usize;
    }
    idx
}

fn decode(orders: &[u64], mut idx: usize) -> Vec<u64> {
    let mut out = vec![0; orders.len()];
    for (i, o) in orders.iter().enumerate().rev() {
        out[i] = (idx % *o as usize) as u64;
        idx /= *o as usize;
    }
    out
}

impl Module {
    /// `Z_{o_1} ⊕ … ⊕ Z_{o_k}` where factor `i` is acted on by ring
    /// component `comps[i]`.
    pub fn new(ring: &Ring, orders: &[u64], comps: &[usize]) -> Result<Module> {
        Module::with_bound(ring, orders, comps, DEFAULT_MAX_MODULE_SIZE)
    }

    pub fn with_bound(ring: &Ring, orders: &[u64], comps: &[usize], bound: u64) -> Result<Module> {
        if orders.is_empty() {
            return Err(Error::InvalidModule("a module needs at least one cyclic factor".into()));
        }
        if orders.len() != comps.len() {
            return Err(Error::InvalidModule("every cyclic factor needs a ring component".into()));
        }
        let mut size: u64 = 1;
        for (&o, &c) in orders.iter().zip(comps) {
            if o == 0 {
                return Err(Error::InvalidModule("cyclic orders must be positive".into()));
            }
            match ring.components().get(c) {
                None => {
                    return Err(Error::InvalidModule(format!("ring {ring} has no component {c}")));
                }
                Some(Component::Residue(n)) if !divides(o, *n) => {
                    return Err(Error::InvalidModule(format!("Z_{n} does not act naturally on Z_{o}")));
                }
                _ => {}
            }
            size = size.saturating_mul(o);
            if size > bound {
                return Err(Error::SizeBound { size, bound });
            }
        }
        Ok(Module::build(ring.clone(), orders.to_vec(), comps.to_vec(), vec![0]))
    }

    /// A finite ring as a module over itself.
    pub fn ring_on_itself(ring: &Ring) -> Result<Module> {
        let orders: Vec<u64> = ring
            .components()
            .iter()
            .map(|c| match c {
                Component::Residue(n) => Ok(*n),
                Component::Integers => Err(Error::InvalidModule("Z on itself is infinite".into())),
            })
            .collect::<Result<_>>()?;
        let comps: Vec<usize> = (0..orders.len()).collect();
        Module::new(ring, &orders, &comps)
    }

    fn build(ring: Ring, orders: Vec<u64>, comps: Vec<usize>, relations: Vec<u32>) -> Module {
        let n = ambient_size(&orders) as usize;
        let rel: HashSet<u32> = relations.iter().copied().collect();
        let mut rep_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if rep_of[a] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(a as u32);
            let ca = decode(&orders, a);
            for &k in &relations {
                let ck = decode(&orders, k as usize);
                let sum: Vec<u64> = ca.iter().zip(&ck).zip(&orders).map(|((x, y), o)| (x + y) % o).collect();
                rep_of[encode(&orders, &sum)] = id;
            }
        }
        debug_assert!(rel.contains(&0));
        let coords = reps.iter().map(|&a| decode(&orders, a as usize)).collect();
        let exps: Vec<u64> = (0..ring.len())
            .map(|c| orders.iter().zip(&comps).filter(|(_, &k)| k == c).fold(1, |acc, (&o, _)| lcm(acc, o)))
            .collect();
        let scalars = Domain::new(&ring, &exps);
        Module(Arc::new(Inner { ring, orders, comps, relations, reps, rep_of, coords, scalars }))
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn orders(&self) -> &[u64] {
        &self.0.orders
    }

    pub fn factor_components(&self) -> &[usize] {
        &self.0.comps
    }

    pub fn is_quotient(&self) -> bool {
        self.0.relations.len() > 1
    }

    pub fn size(&self) -> usize {
        self.0.reps.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    /// Scalar representatives sufficient to realize every scalar action.
    pub fn scalars(&self) -> &Domain {
        &self.0.scalars
    }

    /// Per ring component, a multiple of the exponent of the part of the
    /// module it acts on (1 if it acts on nothing).
    pub fn exponents(&self) -> Vec<u64> {
        (0..self.0.ring.len()).map(|c| self.0.scalars.modulus(c)).collect()
    }

    /// Coordinates of the least coset representative.
    pub fn coords(&self, x: usize) -> &[u64] {
        &self.0.coords[x]
    }

    pub fn format_elem(&self, x: usize) -> String {
        let c = self.coords(x);
        if c.len() == 1 {
            c[0].to_string()
        } else {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }

    pub fn from_coords(&self, coords: &[i64]) -> Result<usize> {
        if coords.len() != self.0.orders.len() {
            return Err(Error::InvalidModule(format!(
                "element has {} coordinates, module has {} factors",
                coords.len(),
                self.0.orders.len()
            )));
        }
        let c: Vec<u64> = coords.iter().zip(&self.0.orders).map(|(&x, &o)| x.rem_euclid(o as i64) as u64).collect();
        Ok(self.0.rep_of[encode(&self.0.orders, &c)] as usize)
    }

    fn ambient_index(&self, c: &[u64]) -> usize {
        self.0.rep_of[encode(&self.0.orders, c)] as usize
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let c: Vec<u64> =
            self.0.coords[x].iter().zip(&self.0.coords[y]).zip(&self.0.orders).map(|((a, b), o)| (a + b) % o).collect();
        self.ambient_index(&c)
    }

    pub fn neg(&self, x: usize) -> usize {
        let c: Vec<u64> = self.0.coords[x].iter().zip(&self.0.orders).map(|(a, o)| (o - a % o) % o).collect();
        self.ambient_index(&c)
    }

    pub fn act(&self, r: &Elem, x: usize) -> usize {
        let c: Vec<u64> = self.0.coords[x]
            .iter()
            .zip(&self.0.orders)
            .zip(&self.0.comps)
            .map(|((a, &o), &k)| {
                let s = r.0[k].rem_euclid(o as i64) as u128;
                ((s * *a as u128) % o as u128) as u64
            })
            .collect();
        self.ambient_index(&c)
    }

    /// Table `r·x` for every element, `r` given as a ring element.
    pub fn action_table(&self, r: &Elem) -> Vec<u32> {
        self.elements().map(|x| self.act(r, x) as u32).collect()
    }

    fn unit_vector(&self, c: usize) -> Elem {
        Elem((0..self.0.ring.len()).map(|k| i64::from(k == c)).collect())
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule::from_elems(self, vec![0])
    }

    pub fn full(&self) -> Submodule {
        Submodule::from_elems(self, self.elements().map(|x| x as u32).collect())
    }

    /// `R·x`.
    pub fn cyclic(&self, x: usize) -> Submodule {
        let mut set = BTreeSet::new();
        for r in self.0.scalars.elems() {
            set.insert(self.act(r, x) as u32);
        }
        Submodule::from_elems(self, set.into_iter().collect())
    }

    /// Submodule generated by a set of elements.
    pub fn generated(&self, gens: &[usize]) -> Submodule {
        let mut acc = self.zero_submodule();
        for &g in gens {
            if !acc.contains(g) {
                acc = acc.sum(&self.cyclic(g));
            }
        }
        acc
    }

    /// The subset closure of an arbitrary element set under addition and the
    /// component idempotents; used as an independent check of `generated`.
    pub fn closure_of(&self, set: &[usize]) -> Submodule {
        let mut seen: BTreeSet<usize> = set.iter().copied().collect();
        seen.insert(0);
        let units: Vec<Elem> = (0..self.0.ring.len()).map(|c| self.unit_vector(c)).collect();
        loop {
            let cur: Vec<usize> = seen.iter().copied().collect();
            let mut grew = false;
            for &a in &cur {
                for e in &units {
                    grew |= seen.insert(self.act(e, a));
                }
                for &b in &cur {
                    grew |= seen.insert(self.add(a, b));
                }
            }
            if !grew {
                break;
            }
        }
        Submodule::from_elems(self, seen.into_iter().map(|x| x as u32).collect())
    }

    /// The complete submodule lattice sorted by `(size, elements)`.
    pub fn submodules(&self) -> Vec<Submodule> {
        let mut cyclics: Vec<Submodule> = self.elements().map(|x| self.cyclic(x)).collect();
        cyclics.sort();
        cyclics.dedup();
        let mut found: BTreeSet<Submodule> = BTreeSet::new();
        let mut queue = vec![self.zero_submodule()];
        found.insert(self.zero_submodule());
        while let Some(s) = queue.pop() {
            for c in &cyclics {
                if c.is_subset(&s) {
                    continue;
                }
                let t = s.sum(c);
                if found.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
        found.into_iter().collect()
    }

    /// `(N :_R K) = {r : rK ⊆ N}`.
    pub fn colon_ring(&self, n: &Submodule, k: &Submodule) -> Result<Ideal> {
        if n.module != *self || k.module != *self {
            return Err(Error::ParentMismatch);
        }
        let ring = &self.0.ring;
        let gens: Vec<i64> = (0..ring.len())
            .map(|c| {
                let limit = match ring.components()[c] {
                    Component::Integers => self.0.scalars.modulus(c),
                    Component::Residue(m) => m,
                };
                (1..=limit)
                    .find(|&d| {
                        if !divides(d, limit) {
                            return false;
                        }
                        let mut r = vec![0i64; ring.len()];
                        r[c] = d as i64;
                        let r = Elem(r);
                        k.elems.iter().all(|&x| n.contains(self.act(&r, x as usize)))
                    })
                    .unwrap_or(limit) as i64
            })
            .collect();
        Ideal::new(ring, &gens)
    }

    /// `(N : M)`.
    pub fn annihilator_of_quotient(&self, n: &Submodule) -> Ideal {
        self.colon_ring(n, &self.full()).expect("same module")
    }

    /// `(N :_M I) = {m : Im ⊆ N}`.
    pub fn colon_module(&self, n: &Submodule, ideal: &Ideal) -> Result<Submodule> {
        if ideal.ring() != &self.0.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", ideal.ring(), self.0.ring)));
        }
        Ok(self.colon_elem(n, &ideal.generator()))
    }

    /// `(N :_M a) = {m : am ∈ N}`.
    pub fn colon_elem(&self, n: &Submodule, a: &Elem) -> Submodule {
        let elems = self.elements().filter(|&m| n.contains(self.act(a, m))).map(|m| m as u32).collect();
        Submodule::from_elems(self, elems)
    }

    /// `IK`, the image of `K` under the ideal `I`.
    pub fn ideal_action(&self, ideal: &Ideal, k: &Submodule) -> Submodule {
        self.scale(&ideal.generator(), k)
    }

    /// `aK = {ak : k ∈ K}`.
    pub fn scale(&self, a: &Elem, k: &Submodule) -> Submodule {
        let set: BTreeSet<u32> = k.elems.iter().map(|&x| self.act(a, x as usize) as u32).collect();
        Submodule::from_elems(self, set.into_iter().collect())
    }

    pub fn is_multiplication_module(&self) -> bool {
        self.submodules().iter().all(|n| {
            let i = self.annihilator_of_quotient(n);
            self.ideal_action(&i, &self.full()) == *n
        })
    }

    /// `NK = (N:M)(K:M)M` in a multiplication module.
    pub fn submodule_product(&self, n: &Submodule, k: &Submodule) -> Result<Submodule> {
        if !self.is_multiplication_module() {
            return Err(Error::NotMultiplication);
        }
        Ok(self.submodule_product_unchecked(n, k))
    }

    pub(crate) fn submodule_product_unchecked(&self, n: &Submodule, k: &Submodule) -> Submodule {
        let i = self.annihilator_of_quotient(n);
        let j = self.annihilator_of_quotient(k);
        self.ideal_action(&i.product(&j).expect("same ring"), &self.full())
    }

    /// `√N = √(N:M)·M` in a multiplication module.
    pub fn submodule_radical(&self, n: &Submodule) -> Result<Submodule> {
        if !self.is_multiplication_module() {
            return Err(Error::NotMultiplication);
        }
        Ok(self.submodule_radical_unchecked(n))
    }

    pub(crate) fn submodule_radical_unchecked(&self, n: &Submodule) -> Submodule {
        let i = self.annihilator_of_quotient(n).radical();
        self.ideal_action(&i, &self.full())
    }

    /// `M / K` together with the natural projection.
    pub fn quotient(&self, k: &Submodule) -> Result<(Module, ModuleMap)> {
        if k.module != *self {
            return Err(Error::ParentMismatch);
        }
        let mut rel: Vec<u32> = Vec::new();
        for a in 0..ambient_size(&self.0.orders) as usize {
            if k.contains(self.0.rep_of[a] as usize) {
                rel.push(a as u32);
            }
        }
        let target = Module::build(self.0.ring.clone(), self.0.orders.clone(), self.0.comps.clone(), rel);
        let table = self.elements().map(|x| target.ambient_index(&self.0.coords[x]) as u32).collect();
        let map = ModuleMap { source: self.clone(), target: target.clone(), table, kind: MapKind::Projection };
        Ok((target, map))
    }

    /// `M_1 × M_2` over `R_1 × R_2`, acting componentwise.
    pub fn direct_product(a: &Module, b: &Module) -> Result<Module> {
        Module::direct_product_bounded(a, b, DEFAULT_MAX_MODULE_SIZE)
    }

    pub fn direct_product_bounded(a: &Module, b: &Module, bound: u64) -> Result<Module> {
        let size = (a.size() as u64) * (b.size() as u64);
        if size > bound {
            return Err(Error::SizeBound { size, bound });
        }
        let ring = Ring::product(&a.0.ring, &b.0.ring);
        let shift = a.0.ring.len();
        let orders: Vec<u64> = a.0.orders.iter().chain(&b.0.orders).copied().collect();
        let comps: Vec<usize> = a.0.comps.iter().copied().chain(b.0.comps.iter().map(|c| c + shift)).collect();
        let nb = ambient_size(&b.0.orders) as u32;
        let mut rel = Vec::new();
        for &x in &a.0.relations {
            for &y in &b.0.relations {
                rel.push(x * nb + y);
            }
        }
        rel.sort_unstable();
        Ok(Module::build(ring, orders, comps, rel))
    }
}

/// A direct product `M_1 × M_2` remembering its factors.
#[derive(Clone, Debug)]
pub struct ProductModule {
    pub left: Module,
    pub right: Module,
    pub module: Module,
}

impl ProductModule {
    pub fn new(left: &Module, right: &Module) -> Result<ProductModule> {
        Ok(ProductModule { left: left.clone(), right: right.clone(), module: Module::direct_product(left, right)? })
    }

    pub fn pair(&self, x: usize, y: usize) -> usize {
        let mut c = self.left.coords(x).to_vec();
        c.extend_from_slice(self.right.coords(y));
        self.module.ambient_index(&c)
    }

    pub fn unpair(&self, z: usize) -> (usize, usize) {
        let c = self.module.coords(z);
        let k = self.left.orders().len();
        (self.left.ambient_index(&c[..k]), self.right.ambient_index(&c[k..]))
    }

    pub fn submodule(&self, n1: &Submodule, n2: &Submodule) -> Submodule {
        let mut elems: Vec<u32> = Vec::with_capacity(n1.len() * n2.len());
        for &x in &n1.elems {
            for &y in &n2.elems {
                elems.push(self.pair(x as usize, y as usize) as u32);
            }
        }
        elems.sort_unstable();
        Submodule::from_elems(&self.module, elems)
    }

    /// Splits a submodule of the product into its two coordinate projections.
    pub fn factors(&self, n: &Submodule) -> (Submodule, Submodule) {
        let mut a = BTreeSet::new();
        let mut b = BTreeSet::new();
        for &z in &n.elems {
            let (x, y) = self.unpair(z as usize);
            a.insert(x as u32);
            b.insert(y as u32);
        }
        (
            Submodule::from_elems(&self.left, a.into_iter().collect()),
            Submodule::from_elems(&self.right, b.into_iter().collect()),
        )
    }

    pub fn injection_left(&self) -> ModuleMap {
        let table = self.left.elements().map(|x| self.pair(x, 0) as u32).collect();
        ModuleMap { source: self.left.clone(), target: self.module.clone(), table, kind: MapKind::Injection }
    }

    pub fn injection_right(&self) -> ModuleMap {
        let table = self.right.elements().map(|y| self.pair(0, y) as u32).collect();
        ModuleMap { source: self.right.clone(), target: self.module.clone(), table, kind: MapKind::Injection }
    }
}

/// A submodule given by its sorted element set.
#[derive(Clone)]
pub struct Submodule {
    module: Module,
    elems: Vec<u32>,
    mask: Vec<bool>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems && self.module == other.module
    }
}

impl Eq for Submodule {}

impl std::hash::Hash for Submodule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elems.hash(state);
    }
}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.elems.len(), &self.elems).cmp(&(other.elems.len(), &other.elems))
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|&x| self.module.format_elem(x as usize)).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Submodule {
    /// Wraps a sorted element set; the caller guarantees closure.
    pub(crate) fn from_elems(module: &Module, elems: Vec<u32>) -> Submodule {
        let mut mask = vec![false; module.size()];
        for &x in &elems {
            mask[x as usize] = true;
        }
        Submodule { module: module.clone(), elems, mask }
    }

    /// Builds a submodule from an element set, checking closure.
    pub fn from_set(module: &Module, set: &[usize]) -> Result<Submodule> {
        let s = module.closure_of(set);
        if s.len() != set.iter().collect::<BTreeSet<_>>().len() || !set.iter().all(|&x| s.contains(x)) {
            return Err(Error::InvalidModule("element set is not a submodule".into()));
        }
        Ok(s)
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.elems.iter().map(|&x| x as usize)
    }

    pub fn element_ids(&self) -> &[u32] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    /// Membership flags indexed by module element.
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Wraps a membership mask; the caller guarantees closure.
    pub(crate) fn from_mask(module: &Module, mask: Vec<bool>) -> Submodule {
        let elems = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32).collect();
        Submodule { module: module.clone(), elems, mask }
    }

    pub fn is_zero(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_proper(&self) -> bool {
        self.elems.len() < self.module.size()
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.elems.len() <= other.elems.len() && self.elems.iter().all(|&x| other.mask[x as usize])
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        let elems = self.elems.iter().copied().filter(|&x| other.mask[x as usize]).collect();
        Submodule::from_elems(&self.module, elems)
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        let mut mask = self.mask.clone();
        for &c in &other.elems {
            if mask[c as usize] {
                continue;
            }
            for &a in &self.elems {
                mask[self.module.add(a as usize, c as usize)] = true;
            }
        }
        let elems = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32).collect();
        Submodule { module: self.module.clone(), elems, mask }
    }

    /// Minimal-cardinality generating set, ties broken lexicographically.
    pub fn generators(&self) -> Vec<usize> {
        if self.is_zero() {
            return Vec::new();
        }
        let cand: Vec<usize> = self.elements().filter(|&x| x != 0).collect();
        for k in 1..=cand.len() {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let gens: Vec<usize> = idx.iter().map(|&i| cand[i]).collect();
                if self.module.generated(&gens) == *self {
                    return gens;
                }
                let mut i = k;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if idx[i] < cand.len() - k + i {
                        idx[i] += 1;
                        for j in i + 1..k {
                            idx[j] = idx[j - 1] + 1;
                        }
                        break;
                    }
                    if i == 0 {
                        i = usize::MAX;
                        break;
                    }
                }
                if i == usize::MAX {
                    break;
                }
            }
        }
        cand
    }

    pub fn format_generators(&self) -> String {
        let g: Vec<String> = self.generators().iter().map(|&x| self.module.format_elem(x)).collect();
        if g.is_empty() {
            return format!("<{}>", self.module.format_elem(0));
        }
        format!("<{}>", g.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Projection,
    Injection,
    Identity,
    Composition,
}

/// An R-linear map given by its table on source elements.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    table: Vec<u32>,
    kind: MapKind,
}

impl ModuleMap {
    pub fn identity(m: &Module) -> ModuleMap {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            table: m.elements().map(|x| x as u32).collect(),
            kind: MapKind::Identity,
        }
    }

    /// `g ∘ f`.
    pub fn compose(f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
        if f.target != g.source {
            return Err(Error::ParentMismatch);
        }
        Ok(ModuleMap {
            source: f.source.clone(),
            target: g.target.clone(),
            table: f.table.iter().map(|&x| g.table[x as usize]).collect(),
            kind: MapKind::Composition,
        })
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x] as usize
    }

    /// Exhaustive additivity and scalar-linearity check.
    pub fn is_linear(&self) -> bool {
        let s = &self.source;
        let t = &self.target;
        // A component injection M_i -> M_1 × M_2 is linear along R_i -> R_1 × R_2.
        let sc = s.ring().components();
        let tc = t.ring().components();
        let embed: Box<dyn Fn(&Elem) -> Elem> = if sc == tc {
            Box::new(|r: &Elem| r.clone())
        } else if tc.starts_with(sc) {
            let pad = tc.len() - sc.len();
            Box::new(move |r: &Elem| Elem(r.0.iter().copied().chain(std::iter::repeat_n(0, pad)).collect()))
        } else if tc.ends_with(sc) {
            let pad = tc.len() - sc.len();
            Box::new(move |r: &Elem| Elem(std::iter::repeat_n(0, pad).chain(r.0.iter().copied()).collect()))
        } else {
            return false;
        };
        for x in s.elements() {
            for y in s.elements() {
                if self.apply(s.add(x, y)) != t.add(self.apply(x), self.apply(y)) {
                    return false;
                }
            }
            for r in s.scalars().elems() {
                if self.apply(s.act(r, x)) != t.act(&embed(r), self.apply(x)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &y in &self.table {
            hit[y as usize] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn kernel(&self) -> Submodule {
        self.preimage(&self.target.zero_submodule()).expect("same module")
    }

    pub fn image(&self, n: &Submodule) -> Result<Submodule> {
        if n.module != self.source {
            return Err(Error::ParentMismatch);
        }
        let set: BTreeSet<u32> = n.elems.iter().map(|&x| self.table[x as usize]).collect();
        Ok(Submodule::from_elems(&self.target, set.into_iter().collect()))
    }

    pub fn preimage(&self, n: &Submodule) -> Result<Submodule> {
        if n.module != self.target {
            return Err(Error::ParentMismatch);
        }
        let elems = self.source.elements().filter(|&x| n.contains(self.table[x] as usize)).map(|x| x as u32).collect();
        Ok(Submodule::from_elems(&self.source, elems))
    }
}
