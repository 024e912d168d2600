//! Naive element-enumeration oracles, written from the textbook
//! definitions without the library's canonical forms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use sprimary::maps::{ExpansionFn, ReductionFn};
use sprimary::mcs::Mcs;
use sprimary::module::{Module, Submodule};
use sprimary::ring::{Component, Elem, Ideal, Ring};

pub type Set = BTreeSet<Elem>;

/// Ring elements modulo the annihilator of `M`: all of a finite ring, or
/// residues modulo the exponent of a `Z`-module.
pub struct Scalars {
    pub ring: Ring,
    pub elems: Vec<Elem>,
    /// Exponent of the module when the ring is `Z`.
    pub exponent: Option<i64>,
}

impl Scalars {
    pub fn of_ring(ring: &Ring) -> Scalars {
        Scalars { ring: ring.clone(), elems: ring.elements().expect("finite ring"), exponent: None }
    }

    pub fn of_module(m: &Module) -> Option<Scalars> {
        let ring = m.ring();
        if ring.is_finite() {
            Some(Scalars::of_ring(ring))
        } else if ring.is_integers() {
            let e = m.orders().iter().fold(1u64, |a, &b| lcm(a, b)) as i64;
            Some(Scalars { ring: ring.clone(), elems: (0..e).map(|r| Elem(vec![r])).collect(), exponent: Some(e) })
        } else {
            None
        }
    }

    pub fn norm(&self, x: &Elem) -> Elem {
        match self.exponent {
            Some(e) => Elem(vec![x.0[0].rem_euclid(e)]),
            None => Elem(
                self.ring
                    .components()
                    .iter()
                    .zip(&x.0)
                    .map(|(c, &v)| match c {
                        Component::Residue(n) => v.rem_euclid(*n as i64),
                        Component::Integers => unreachable!("finite ring"),
                    })
                    .collect(),
            ),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.norm(&Elem(a.0.iter().zip(&b.0).map(|(x, y)| x * y).collect()))
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.norm(&Elem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    pub fn zero(&self) -> Elem {
        self.norm(&self.ring.zero())
    }

    pub fn one(&self) -> Elem {
        self.norm(&self.ring.one())
    }

    /// `r, r², …` until the sequence repeats.
    pub fn powers(&self, r: &Elem) -> Vec<Elem> {
        let mut out: Vec<Elem> = Vec::new();
        let mut x = r.clone();
        while !out.contains(&x) {
            out.push(x.clone());
            x = self.mul(&x, r);
        }
        out
    }

    /// Elements of `S` as residues: closure of the generators under
    /// multiplication, starting from 1.
    pub fn mcs(&self, s: &Mcs) -> Vec<Elem> {
        let gens: Vec<Elem> = s.generators().iter().map(|g| self.norm(g)).collect();
        let mut seen: Set = [self.one()].into_iter().collect();
        let mut frontier = vec![self.one()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = self.mul(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    // Ideal operations on element sets.

    pub fn ideal_set(&self, i: &Ideal) -> Set {
        let g = i.generator();
        self.elems.iter().map(|r| self.mul(r, &g)).collect()
    }

    /// All finite sums of seed elements.
    pub fn additive_closure(&self, seed: &Set) -> Set {
        let mut out: Set = [self.zero()].into_iter().collect();
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in seed {
                let y = self.add(&x, g);
                if out.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        out
    }

    pub fn sum(&self, a: &Set, b: &Set) -> Set {
        a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).map(|(x, y)| self.add(x, y)).collect()
    }

    pub fn product(&self, a: &Set, b: &Set) -> Set {
        let seed: Set = a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).map(|(x, y)| self.mul(x, y)).collect();
        self.additive_closure(&seed)
    }

    pub fn colon(&self, a: &Set, b: &Set) -> Set {
        self.elems.iter().filter(|r| b.iter().all(|y| a.contains(&self.mul(r, y)))).cloned().collect()
    }

    pub fn radical(&self, a: &Set) -> Set {
        self.elems.iter().filter(|r| self.powers(r).iter().any(|p| a.contains(p))).cloned().collect()
    }

    pub fn annihilator(&self, a: &Set) -> Set {
        let z = self.zero();
        self.elems.iter().filter(|r| a.iter().all(|y| self.mul(r, y) == z)).cloned().collect()
    }

    pub fn expand(&self, delta: &ExpansionFn, i: &Set) -> Set {
        match delta {
            ExpansionFn::Id => i.clone(),
            ExpansionFn::Rad => self.radical(i),
            ExpansionFn::Ann => self.annihilator(&self.annihilator(i)),
            ExpansionFn::Res(j) => self.colon(i, &self.ideal_set(&j.resolve(&self.ring).unwrap())),
            ExpansionFn::PlusJ(j) => self.sum(i, &self.ideal_set(&j.resolve(&self.ring).unwrap())),
            ExpansionFn::Product { .. } => unimplemented!("product expansions are not enumerated"),
        }
    }

    // Module side.

    pub fn act(&self, m: &Module, r: &Elem, x: usize) -> usize {
        m.act(r, x)
    }

    /// `(N : M) = {r : rM ⊆ N}`.
    pub fn module_colon(&self, n: &Submodule) -> Set {
        let m = n.module();
        self.elems.iter().filter(|r| m.elements().all(|x| n.contains(m.act(r, x)))).cloned().collect()
    }

    pub fn submodule_closure(&self, m: &Module, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out: BTreeSet<usize> = [0].into_iter().collect();
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in seed {
                let y = m.add(x, g);
                if out.insert(y) {
                    frontier.push(y);
                }
            }
        }
        out
    }

    /// `I·K` as an element set.
    pub fn ideal_times(&self, m: &Module, i: &Set, k: &BTreeSet<usize>) -> BTreeSet<usize> {
        let seed = i.iter().flat_map(|r| k.iter().map(move |&x| m.act(r, x))).collect();
        self.submodule_closure(m, &seed)
    }

    /// `φ(N)` by enumeration; `None` for `∅`.
    pub fn reduce(&self, phi: &ReductionFn, n: &Submodule) -> Option<BTreeSet<usize>> {
        let m = n.module();
        let nset: BTreeSet<usize> = n.elements().collect();
        let colon = self.module_colon(n);
        match phi {
            ReductionFn::Empty => None,
            ReductionFn::Zero => Some([0].into_iter().collect()),
            ReductionFn::Id => Some(nset),
            ReductionFn::Power(k) => {
                let mut i: Set = [self.one()].into_iter().collect();
                for _ in 1..*k {
                    i = self.product(&i, &colon);
                }
                Some(self.ideal_times(m, &i, &nset))
            }
            ReductionFn::ColonM => Some(self.ideal_times(m, &colon, &m.elements().collect())),
            ReductionFn::MulJ(j) => Some(self.ideal_times(m, &self.ideal_set(&j.resolve(&self.ring).unwrap()), &nset)),
            ReductionFn::Product { .. } => unimplemented!("product reductions are not enumerated"),
        }
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// All ideals of a finite ring: one per tuple of component divisors.
pub fn all_ideals(ring: &Ring) -> Vec<Ideal> {
    let mut tuples: Vec<Vec<i64>> = vec![Vec::new()];
    for c in ring.components() {
        let Component::Residue(n) = c else { panic!("finite rings only") };
        let divisors: Vec<i64> = (1..=*n as i64).filter(|d| *n as i64 % d == 0).collect();
        tuples =
            tuples.into_iter().flat_map(|t| divisors.iter().map(move |&d| [t.clone(), vec![d]].concat())).collect();
    }
    tuples.iter().map(|g| Ideal::new(ring, g).unwrap()).collect()
}

/// The φ-δ-S condition at `s` read literally: `rm ∈ N \ φ(N)` forces
/// `sm ∈ N` or `sr ∈ D`.
pub fn condition_at(
    sc: &Scalars,
    n: &Submodule,
    phi: &Option<BTreeSet<usize>>,
    d: &dyn Fn(&Elem) -> bool,
    s: &Elem,
) -> bool {
    let m = n.module();
    for r in &sc.elems {
        for x in m.elements() {
            let rx = m.act(r, x);
            if n.contains(rx)
                && !phi.as_ref().is_some_and(|f| f.contains(&rx))
                && !n.contains(m.act(s, x))
                && !d(&sc.mul(s, r))
            {
                return false;
            }
        }
    }
    true
}

/// Membership vector over the element indices of a [`Table`].
pub type Bits = Vec<bool>;

/// A finite ring by its addition and multiplication tables, elements
/// indexed in mixed radix over the component moduli.
pub struct Table {
    pub elems: Vec<Elem>,
    pub len: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl Table {
    pub fn new(ring: &Ring) -> Table {
        let moduli: Vec<i64> = ring
            .components()
            .iter()
            .map(|c| match c {
                Component::Residue(n) => *n as i64,
                Component::Integers => panic!("finite rings only"),
            })
            .collect();
        let mut elems: Vec<Elem> = vec![Elem(Vec::new())];
        for &n in &moduli {
            elems =
                elems.into_iter().flat_map(|e| (0..n).map(move |v| Elem([e.0.clone(), vec![v]].concat()))).collect();
        }
        let index = |v: Vec<i64>| v.iter().zip(&moduli).fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize);
        let len = elems.len();
        let mut add = vec![0u32; len * len];
        let mut mul = vec![0u32; len * len];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let s = a.0.iter().zip(&b.0).zip(&moduli).map(|((x, y), n)| (x + y) % n).collect();
                let p = a.0.iter().zip(&b.0).zip(&moduli).map(|((x, y), n)| (x * y) % n).collect();
                add[i * len + j] = index(s) as u32;
                mul[i * len + j] = index(p) as u32;
            }
        }
        Table { elems, len, add, mul }
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i * self.len + j] as usize
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.len + j] as usize
    }

    pub fn one(&self) -> usize {
        self.elems.iter().position(|e| e.0.iter().all(|&x| x == 1)).expect("moduli are at least 2")
    }

    /// The library ideal read through its membership test.
    pub fn bits(&self, ideal: &Ideal) -> Bits {
        self.elems.iter().map(|x| ideal.contains(x)).collect()
    }

    /// Multiples of the generator.
    pub fn principal(&self, g: usize) -> Bits {
        let mut out = vec![false; self.len];
        for r in 0..self.len {
            out[self.mul(r, g)] = true;
        }
        out
    }

    /// The additive subgroup generated by `seed`, grown one coset at a time.
    pub fn span(&self, seed: &Bits) -> Bits {
        let mut h = vec![false; self.len];
        h[0] = true;
        for g in (0..self.len).filter(|&g| seed[g]) {
            if h[g] {
                continue;
            }
            let members: Vec<usize> = (0..self.len).filter(|&x| h[x]).collect();
            let mut shift = g;
            while !h[shift] {
                for &x in &members {
                    h[self.add(x, shift)] = true;
                }
                shift = self.add(shift, g);
            }
        }
        h
    }

    pub fn sum(&self, a: &Bits, b: &Bits) -> Bits {
        let seed: Bits = a.iter().zip(b).map(|(&x, &y)| x || y).collect();
        self.span(&seed)
    }

    pub fn product(&self, a: &Bits, b: &Bits) -> Bits {
        let mut seed = vec![false; self.len];
        let bs: Vec<usize> = (0..self.len).filter(|&y| b[y]).collect();
        for x in (0..self.len).filter(|&x| a[x]) {
            for &y in &bs {
                seed[self.mul(x, y)] = true;
            }
        }
        self.span(&seed)
    }

    pub fn colon(&self, a: &Bits, b: &Bits) -> Bits {
        let bs: Vec<usize> = (0..self.len).filter(|&y| b[y]).collect();
        (0..self.len).map(|r| bs.iter().all(|&y| a[self.mul(r, y)])).collect()
    }

    pub fn radical(&self, a: &Bits) -> Bits {
        (0..self.len)
            .map(|r| {
                let mut seen = vec![false; self.len];
                let mut x = r;
                while !seen[x] {
                    if a[x] {
                        return true;
                    }
                    seen[x] = true;
                    x = self.mul(x, r);
                }
                false
            })
            .collect()
    }

    pub fn annihilator(&self, a: &Bits) -> Bits {
        let zero = Bits::from_iter((0..self.len).map(|x| x == 0));
        self.colon(&zero, a)
    }
}
