//! Finite scalar domains used to decide quantifiers over ring elements.
//!
//! Over `Z` a predicate about `a` that only involves a module of exponent
//! `e` and ideals `kZ` with `k | L` (where `e | L`) depends on `a` only
//! through the class `(a mod L, a == 0)`. The domain keeps one
//! representative per class: `0` for zero, and `1..=L` for the nonzero
//! classes (`L` stands for a nonzero multiple of `L`). Residue components
//! are enumerated in full. Multiplication of representatives is exact on
//! classes, so the domain is closed under products.

use crate::arith::{divides, lcm};
use crate::ring::{Component, Elem, Ideal, Ring};

#[derive(Clone, Debug)]
pub struct Domain {
    ring: Ring,
    /// Per component: `L` for integer components, `n` for residue components.
    moduli: Vec<u64>,
    /// Number of representatives per component.
    sizes: Vec<usize>,
    elems: Vec<Elem>,
    mul: Vec<u32>,
}

impl Domain {
    /// `bounds[i]` is the modulus `L` for integer component `i`; entries for
    /// residue components are ignored.
    pub fn new(ring: &Ring, bounds: &[u64]) -> Domain {
        assert_eq!(bounds.len(), ring.len());
        let moduli: Vec<u64> = ring
            .components()
            .iter()
            .zip(bounds)
            .map(|(c, &b)| match c {
                Component::Integers => b.max(1),
                Component::Residue(n) => *n,
            })
            .collect();
        let sizes: Vec<usize> = ring
            .components()
            .iter()
            .zip(&moduli)
            .map(|(c, &m)| match c {
                Component::Integers => m as usize + 1,
                Component::Residue(_) => m as usize,
            })
            .collect();
        let mut elems = vec![Vec::new()];
        for &s in &sizes {
            let mut next = Vec::with_capacity(elems.len() * s);
            for prefix in &elems {
                for x in 0..s as i64 {
                    let mut e = prefix.clone();
                    e.push(x);
                    next.push(e);
                }
            }
            elems = next;
        }
        let elems: Vec<Elem> = elems.into_iter().map(Elem).collect();
        let mut dom = Domain { ring: ring.clone(), moduli, sizes, elems, mul: Vec::new() };
        let n = dom.elems.len();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let p = dom.index_of(&ring.mul(&dom.elems[i], &dom.elems[j]));
                mul[i * n + j] = p as u32;
                mul[j * n + i] = p as u32;
            }
        }
        dom.mul = mul;
        dom
    }

    /// Domain whose integer components use `L = lcm(exponent, ideal generators)`.
    pub fn covering(ring: &Ring, exponents: &[u64], ideals: &[&Ideal]) -> Domain {
        let bounds: Vec<u64> = (0..ring.len())
            .map(|c| {
                let mut l = exponents.get(c).copied().unwrap_or(1).max(1);
                for i in ideals {
                    let g = i.gens()[c];
                    if g != 0 {
                        l = lcm(l, g);
                    }
                }
                l
            })
            .collect();
        Domain::new(ring, &bounds)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn elem(&self, i: usize) -> &Elem {
        &self.elems[i]
    }

    /// Modulus `L` used for component `c`.
    pub fn modulus(&self, c: usize) -> u64 {
        self.moduli[c]
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    fn canon_comp(&self, c: usize, x: i64) -> i64 {
        match self.ring.components()[c] {
            Component::Integers => {
                if x == 0 {
                    0
                } else {
                    let l = self.moduli[c] as i64;
                    let r = x.rem_euclid(l);
                    if r == 0 {
                        l
                    } else {
                        r
                    }
                }
            }
            Component::Residue(n) => x.rem_euclid(n as i64),
        }
    }

    pub fn canonical(&self, x: &Elem) -> Elem {
        Elem(x.0.iter().enumerate().map(|(c, &v)| self.canon_comp(c, v)).collect())
    }

    pub fn index_of(&self, x: &Elem) -> usize {
        let mut idx = 0usize;
        for (c, &v) in x.0.iter().enumerate() {
            idx = idx * self.sizes[c] + self.canon_comp(c, v) as usize;
        }
        idx
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.elems.len() + j] as usize
    }

    pub fn one(&self) -> usize {
        self.index_of(&self.ring.one())
    }

    pub fn zero(&self) -> usize {
        self.index_of(&self.ring.zero())
    }

    /// Whether the ideal's membership is decided exactly by this domain.
    pub fn resolves(&self, ideal: &Ideal) -> bool {
        self.ring.components().iter().enumerate().all(|(c, comp)| match comp {
            Component::Integers => {
                let g = ideal.gens()[c];
                g == 0 || divides(g, self.moduli[c])
            }
            Component::Residue(_) => true,
        })
    }

    /// Membership mask of an ideal over the representatives.
    pub fn mask(&self, ideal: &Ideal) -> Vec<bool> {
        debug_assert!(self.resolves(ideal), "ideal {ideal} not resolved by domain {:?}", self.moduli);
        self.elems.iter().map(|e| ideal.contains(e)).collect()
    }

    /// The distinct principal ideals generated by representatives; this is
    /// every ideal of the ring up to the classes the domain distinguishes.
    pub fn principal_ideals(&self) -> Vec<Ideal> {
        let mut out: Vec<Ideal> = self.elems.iter().map(|e| Ideal::principal(&self.ring, e)).collect();
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_classes_keep_zero_apart() {
        let d = Domain::new(&Ring::integers(), &[6]);
        assert_eq!(d.len(), 7);
        assert_eq!(d.canonical(&Elem(vec![12])), Elem(vec![6]));
        assert_eq!(d.canonical(&Elem(vec![0])), Elem(vec![0]));
        assert_eq!(d.canonical(&Elem(vec![-1])), Elem(vec![5]));
        let two = d.index_of(&Elem(vec![2]));
        let three = d.index_of(&Elem(vec![3]));
        assert_eq!(d.elem(d.mul(two, three)), &Elem(vec![6]));
        assert!(!Ideal::zero(&Ring::integers()).contains(d.elem(d.mul(two, three))));
    }

    #[test]
    fn residue_domain_is_the_ring() {
        let r = Ring::residues(&[4, 3]).unwrap();
        let d = Domain::new(&r, &[0, 0]);
        assert_eq!(d.len(), 12);
        assert_eq!(d.elems(), &r.elements().unwrap()[..]);
    }
}
