//! Multiplicatively closed subsets given by generators.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{divides, prime_factors};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::ring::{Component, Elem, Ideal, Ring};

/// `S = {products of generator powers}`, always containing 1 and never 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mcs {
    ring: Ring,
    generators: Vec<Elem>,
    /// Full closure, materialized on finite rings.
    closure: Option<Vec<Elem>>,
}

impl fmt::Debug for Mcs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mcs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "{{1}}");
        }
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

impl Mcs {
    pub fn one(ring: &Ring) -> Mcs {
        Mcs::closure(ring, &[]).expect("{1} never contains 0")
    }

    /// Multiplicative closure of `generators` with 1 adjoined.
    pub fn closure(ring: &Ring, generators: &[Elem]) -> Result<Mcs> {
        let mut gens: Vec<Elem> = Vec::new();
        for g in generators {
            if g.0.len() != ring.len() {
                return Err(Error::RingMismatch(format!("generator {g} does not belong to {ring}")));
            }
            let norm = Elem(
                ring.components()
                    .iter()
                    .zip(&g.0)
                    .map(|(c, &x)| match c {
                        Component::Integers => x.abs(),
                        Component::Residue(n) => x.rem_euclid(*n as i64),
                    })
                    .collect(),
            );
            if norm != ring.one() && !gens.contains(&norm) {
                gens.push(norm);
            }
        }
        gens.sort();
        // Class-level closure at L = 1 decides whether the zero element is reachable.
        let probe = Domain::new(ring, &vec![1; ring.len()]);
        if Mcs::image_in(ring, &gens, &probe).contains(&probe.zero()) {
            return Err(Error::McsContainsZero);
        }
        let closure = if ring.is_finite() {
            let d = Domain::new(ring, &vec![1; ring.len()]);
            Some(Mcs::image_in(ring, &gens, &d).into_iter().map(|i| d.elem(i).clone()).collect())
        } else {
            None
        };
        Ok(Mcs { ring: ring.clone(), generators: gens, closure })
    }

    /// `S_1 × S_2` as a subset of `R_1 × R_2`.
    pub fn product(a: &Mcs, b: &Mcs) -> Mcs {
        let ring = Ring::product(&a.ring, &b.ring);
        let mut gens = Vec::new();
        for g in &a.generators {
            let mut v = g.0.clone();
            v.extend(b.ring.one().0);
            gens.push(Elem(v));
        }
        for g in &b.generators {
            let mut v = a.ring.one().0;
            v.extend(g.0.iter().copied());
            gens.push(Elem(v));
        }
        Mcs::closure(&ring, &gens).expect("product of m.c.s. without 0 has no 0")
    }

    fn image_in(ring: &Ring, gens: &[Elem], dom: &Domain) -> Vec<usize> {
        debug_assert_eq!(dom.ring(), ring);
        let mut seen = BTreeSet::new();
        let mut frontier = vec![dom.one()];
        seen.insert(dom.one());
        let gi: Vec<usize> = gens.iter().map(|g| dom.index_of(g)).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gi {
                let y = dom.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// The materialized closure (finite rings only).
    pub fn elements(&self) -> Option<&[Elem]> {
        self.closure.as_deref()
    }

    /// Indices of the class representatives of `S` inside `dom`.
    pub fn image(&self, dom: &Domain) -> Vec<usize> {
        Mcs::image_in(&self.ring, &self.generators, dom)
    }

    /// `{s mod L : s ∈ S}` for `S ⊆ Z`. Residue 0 may appear when a product
    /// of generators is divisible by `L`.
    pub fn residues(&self, modulus: u64) -> Result<Vec<u64>> {
        if !self.ring.is_integers() {
            return Err(Error::Unsupported("residues are defined for subsets of Z".into()));
        }
        let dom = Domain::new(&self.ring, &[modulus.max(1)]);
        let mut out: Vec<u64> =
            self.image(&dom).into_iter().map(|i| (dom.elem(i).0[0] as u64) % modulus.max(1)).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Whether `S ∩ I ≠ ∅`.
    pub fn intersects_ideal(&self, ideal: &Ideal) -> Result<bool> {
        if ideal.ring() != &self.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", ideal.ring(), self.ring)));
        }
        let dom = Domain::covering(&self.ring, &[], &[ideal]);
        let mask = dom.mask(ideal);
        Ok(self.image(&dom).into_iter().any(|i| mask[i]))
    }

    /// Exact membership. Integer components are decided by factoring over
    /// the generators.
    pub fn contains(&self, x: &Elem) -> bool {
        if let Some(cl) = &self.closure {
            return cl.contains(x);
        }
        if self.ring.is_integers() {
            let gens: Vec<u64> = self.generators.iter().map(|g| g.0[0] as u64).collect();
            return monoid_contains(&gens, x.0[0].unsigned_abs());
        }
        false
    }

    pub fn is_subset(&self, other: &Mcs) -> bool {
        self.ring == other.ring && self.generators.iter().all(|g| other.contains(g))
    }

    /// `S* = {x : x/1 is a unit in S⁻¹R}`.
    ///
    /// On finite rings `x/1` is a unit iff `u(xy − s) = 0` for some
    /// `y ∈ R` and `u, s ∈ S`, which is decided by enumeration. Over `Z` the
    /// saturation is the closure of the prime factors of the generators
    /// (signs are dropped: `−1` acts like `1` in every predicate here).
    pub fn saturation(&self) -> Result<Mcs> {
        if let Some(cl) = &self.closure {
            let elems = self.ring.elements().expect("finite");
            let mut sat = Vec::new();
            for x in &elems {
                let unit = elems.iter().any(|y| {
                    let xy = self.ring.mul(x, y);
                    cl.iter().any(|s| {
                        let diff = self.ring.add(&xy, &self.ring.mul(&self.ring.from_int(-1), s));
                        cl.iter().any(|u| self.ring.is_zero(&self.ring.mul(u, &diff)))
                    })
                });
                if unit {
                    sat.push(x.clone());
                }
            }
            return Mcs::closure(&self.ring, &sat);
        }
        if self.ring.is_integers() {
            let mut primes: Vec<i64> =
                self.generators.iter().flat_map(|g| prime_factors(g.0[0] as u64)).map(|p| p as i64).collect();
            primes.sort_unstable();
            primes.dedup();
            let gens: Vec<Elem> = primes.into_iter().map(|p| Elem(vec![p])).collect();
            return Mcs::closure(&self.ring, &gens);
        }
        Err(Error::Unsupported("saturation on rings mixing Z and residue components".into()))
    }
}

/// Whether `x` is a product of powers of `gens` (all positive integers).
pub fn monoid_contains(gens: &[u64], x: u64) -> bool {
    if x == 1 {
        return true;
    }
    if x == 0 {
        return false;
    }
    gens.iter().any(|&g| g > 1 && divides(g, x) && monoid_contains(gens, x / g))
}
