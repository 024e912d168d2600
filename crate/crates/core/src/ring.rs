//! Rings built from integer and residue components, and their ideals.
//!
//! Every ring is a finite product `C_1 × … × C_k` where each `C_i` is either
//! `Z` or `Z_n`. Every ideal of such a ring is a product of principal
//! component ideals, so an ideal is stored as one canonical nonnegative
//! generator per component:
//!
//! * `Z`: `k ≥ 0` meaning `kZ`;
//! * `Z_n`: a divisor `d` of `n` meaning `dZ_n`, with `d = n` for the zero ideal.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{divides, gcd, lcm, radical};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    Integers,
    Residue(u64),
}

impl Component {
    pub fn reduce(self, x: i64) -> i64 {
        match self {
            Component::Integers => x,
            Component::Residue(n) => x.rem_euclid(n as i64),
        }
    }

    /// Canonical generator of the principal ideal generated by `x`.
    pub fn canonical_gen(self, x: i64) -> u64 {
        match self {
            Component::Integers => x.unsigned_abs(),
            Component::Residue(n) => gcd(x.rem_euclid(n as i64) as u64, n),
        }
    }

    fn zero_gen(self) -> u64 {
        match self {
            Component::Integers => 0,
            Component::Residue(n) => n,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ring {
    comps: Arc<[Component]>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|c| match c {
                Component::Integers => "Z".to_string(),
                Component::Residue(n) => format!("Z_{n}"),
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A ring element, one value per component. Residue components are kept
/// reduced into `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub Vec<i64>);

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl Ring {
    pub fn integers() -> Ring {
        Ring { comps: Arc::from(vec![Component::Integers]) }
    }

    pub fn residues(moduli: &[u64]) -> Result<Ring> {
        if moduli.is_empty() {
            return Err(Error::InvalidRing("a product ring needs at least one component".into()));
        }
        if let Some(bad) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidRing(format!("modulus {bad} is smaller than 2")));
        }
        Ok(Ring { comps: moduli.iter().map(|&n| Component::Residue(n)).collect() })
    }

    pub fn from_components(comps: Vec<Component>) -> Result<Ring> {
        if comps.is_empty() {
            return Err(Error::InvalidRing("a product ring needs at least one component".into()));
        }
        for c in &comps {
            if let Component::Residue(n) = c {
                if *n < 2 {
                    return Err(Error::InvalidRing(format!("modulus {n} is smaller than 2")));
                }
            }
        }
        Ok(Ring { comps: comps.into() })
    }

    /// `R_1 × R_2`, acting componentwise.
    pub fn product(a: &Ring, b: &Ring) -> Ring {
        let comps: Vec<Component> = a.comps.iter().chain(b.comps.iter()).copied().collect();
        Ring { comps: comps.into() }
    }

    pub fn components(&self) -> &[Component] {
        &self.comps
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(|c| matches!(c, Component::Residue(_)))
    }

    pub fn is_integers(&self) -> bool {
        self.comps.len() == 1 && self.comps[0] == Component::Integers
    }

    pub fn order(&self) -> Option<u64> {
        self.comps
            .iter()
            .map(|c| match c {
                Component::Residue(n) => Some(*n),
                Component::Integers => None,
            })
            .product()
    }

    /// All elements in lexicographic order (finite rings only).
    pub fn elements(&self) -> Option<Vec<Elem>> {
        let moduli: Vec<u64> = self
            .comps
            .iter()
            .map(|c| match c {
                Component::Residue(n) => Some(*n),
                Component::Integers => None,
            })
            .collect::<Option<_>>()?;
        let mut out = vec![Vec::new()];
        for n in moduli {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for prefix in &out {
                for x in 0..n as i64 {
                    let mut e = prefix.clone();
                    e.push(x);
                    next.push(e);
                }
            }
            out = next;
        }
        Some(out.into_iter().map(Elem).collect())
    }

    pub fn elem(&self, values: &[i64]) -> Result<Elem> {
        if values.len() != self.comps.len() {
            return Err(Error::RingMismatch(format!(
                "element has {} components, ring {} has {}",
                values.len(),
                self,
                self.comps.len()
            )));
        }
        Ok(Elem(self.comps.iter().zip(values).map(|(c, &x)| c.reduce(x)).collect()))
    }

    /// The element with the same integer in every component.
    pub fn from_int(&self, x: i64) -> Elem {
        Elem(self.comps.iter().map(|c| c.reduce(x)).collect())
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn zero(&self) -> Elem {
        self.from_int(0)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(
            self.comps
                .iter()
                .zip(a.0.iter().zip(&b.0))
                .map(|(c, (&x, &y))| match c {
                    Component::Integers => x * y,
                    Component::Residue(n) => ((x as i128 * y as i128).rem_euclid(*n as i128)) as i64,
                })
                .collect(),
        )
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(self.comps.iter().zip(a.0.iter().zip(&b.0)).map(|(c, (&x, &y))| c.reduce(x + y)).collect())
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.comps.iter().zip(&a.0).all(|(c, &x)| match c {
            Component::Integers => x == 1 || x == -1,
            Component::Residue(n) => gcd(x.rem_euclid(*n as i64) as u64, *n) == 1,
        })
    }

    fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{self} vs {other}")))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<u64>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ring
            .comps
            .iter()
            .zip(&self.gens)
            .map(|(c, g)| match c {
                Component::Integers => format!("{g}Z"),
                Component::Residue(n) if g == n => format!("0Z_{n}"),
                Component::Residue(n) => format!("{g}Z_{n}"),
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl Ideal {
    /// Builds an ideal from raw per-component generators, canonicalizing them.
    pub fn new(ring: &Ring, gens: &[i64]) -> Result<Ideal> {
        if gens.len() != ring.len() {
            return Err(Error::RingMismatch(format!(
                "ideal has {} generators, ring {} has {} components",
                gens.len(),
                ring,
                ring.len()
            )));
        }
        Ok(Ideal { ring: ring.clone(), gens: ring.comps.iter().zip(gens).map(|(c, &g)| c.canonical_gen(g)).collect() })
    }

    pub fn principal(ring: &Ring, x: &Elem) -> Ideal {
        Ideal { ring: ring.clone(), gens: ring.comps.iter().zip(&x.0).map(|(c, &g)| c.canonical_gen(g)).collect() }
    }

    /// The ideal generated by the integer `k` in every component (e.g. `2Z`).
    pub fn of_int(ring: &Ring, k: i64) -> Ideal {
        Ideal::principal(ring, &ring.from_int(k))
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal { ring: ring.clone(), gens: vec![1; ring.len()] }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal { ring: ring.clone(), gens: ring.comps.iter().map(|c| c.zero_gen()).collect() }
    }

    /// Componentwise product `I_1 × I_2` in `R_1 × R_2`.
    pub fn product_of(a: &Ideal, b: &Ideal) -> Ideal {
        Ideal { ring: Ring::product(&a.ring, &b.ring), gens: a.gens.iter().chain(&b.gens).copied().collect() }
    }

    /// Splits an ideal of `R_1 × R_2` at component index `at`.
    pub fn split(&self, at: usize) -> (Ideal, Ideal) {
        let r1 = Ring { comps: self.ring.comps[..at].into() };
        let r2 = Ring { comps: self.ring.comps[at..].into() };
        (Ideal { ring: r1, gens: self.gens[..at].to_vec() }, Ideal { ring: r2, gens: self.gens[at..].to_vec() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    /// The canonical generator as a ring element.
    pub fn generator(&self) -> Elem {
        Elem(self.ring.comps.iter().zip(&self.gens).map(|(c, &g)| c.reduce(g as i64)).collect())
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().all(|&g| g == 1)
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.ring.comps.iter().zip(self.gens.iter().zip(&x.0)).all(|(c, (&g, &v))| match c {
            Component::Integers => divides(g, v.unsigned_abs()),
            Component::Residue(n) => (v.rem_euclid(*n as i64) as u64).is_multiple_of(g),
        })
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.gens.iter().zip(&other.gens).all(|(&a, &b)| divides(b, a))
    }

    fn zip_with(&self, other: &Ideal, f: impl Fn(Component, u64, u64) -> u64) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        Ok(Ideal {
            ring: self.ring.clone(),
            gens: self
                .ring
                .comps
                .iter()
                .zip(self.gens.iter().zip(&other.gens))
                .map(|(&c, (&a, &b))| f(c, a, b))
                .collect(),
        })
    }

    fn map(&self, f: impl Fn(Component, u64) -> u64) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            gens: self.ring.comps.iter().zip(&self.gens).map(|(&c, &a)| f(c, a)).collect(),
        }
    }

    /// `(I : J) = {r : rJ ⊆ I}`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.zip_with(other, |c, i, j| match c {
            Component::Integers => match (i, j) {
                (_, 0) => 1,
                (0, _) => 0,
                _ => i / gcd(i, j),
            },
            Component::Residue(_) => i / gcd(i, j),
        })
    }

    /// `(I : x) = {r : rx ∈ I}`.
    pub fn colon_elem(&self, x: &Elem) -> Ideal {
        let j = Ideal::principal(&self.ring, x);
        self.colon(&j).expect("same ring")
    }

    pub fn radical(&self) -> Ideal {
        self.map(|_, g| radical(g))
    }

    pub fn annihilator(&self) -> Ideal {
        self.map(|c, g| match c {
            Component::Integers => {
                if g == 0 {
                    1
                } else {
                    0
                }
            }
            Component::Residue(n) => n / g,
        })
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.zip_with(other, |_, a, b| gcd(a, b))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.zip_with(other, |c, a, b| match c {
            Component::Integers => a * b,
            Component::Residue(n) => gcd((a * b) % n, n),
        })
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.zip_with(other, |_, a, b| lcm(a, b))
    }

    /// `I^k`, with `I^0 = R`.
    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// Element set (finite rings only).
    pub fn elements(&self) -> Option<Vec<Elem>> {
        Some(self.ring.elements()?.into_iter().filter(|x| self.contains(x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }

    #[test]
    fn colon_over_integers() {
        let i = Ideal::of_int(&z(), 6);
        let j = Ideal::of_int(&z(), 4);
        assert_eq!(i.colon(&j).unwrap(), Ideal::of_int(&z(), 3));
        for k in 0..10 {
            let i = Ideal::of_int(&z(), k);
            assert_eq!(i.colon(&Ideal::unit(&z())).unwrap(), i);
        }
        assert!(Ideal::of_int(&z(), 5).colon(&Ideal::zero(&z())).unwrap().is_unit());
        assert_eq!(Ideal::zero(&z()).colon(&Ideal::of_int(&z(), 3)).unwrap(), Ideal::zero(&z()));
    }

    #[test]
    fn colon_by_unit_in_z18() {
        let r = Ring::residues(&[18]).unwrap();
        let i = Ideal::of_int(&r, 3);
        assert_eq!(i.colon(&Ideal::unit(&r)).unwrap(), i);
    }

    #[test]
    fn radicals() {
        assert_eq!(Ideal::of_int(&z(), 12).radical(), Ideal::of_int(&z(), 6));
        assert_eq!(Ideal::zero(&z()).radical(), Ideal::zero(&z()));
        let r = Ring::residues(&[12]).unwrap();
        assert_eq!(Ideal::of_int(&r, 4).radical(), Ideal::of_int(&r, 2));
        assert_eq!(Ideal::zero(&r).radical(), Ideal::of_int(&r, 6));
    }

    #[test]
    fn annihilators() {
        let r = Ring::residues(&[18]).unwrap();
        assert_eq!(Ideal::of_int(&r, 3).annihilator(), Ideal::of_int(&r, 6));
        assert!(Ideal::zero(&z()).annihilator().is_unit());
        assert_eq!(Ideal::of_int(&z(), 7).annihilator(), Ideal::zero(&z()));
        let r12 = Ring::residues(&[12]).unwrap();
        let i = Ideal::of_int(&r12, 4);
        assert_eq!(i.annihilator().annihilator(), i);
    }

    #[test]
    fn sum_product_intersection() {
        assert_eq!(Ideal::of_int(&z(), 4).sum(&Ideal::of_int(&z(), 6)).unwrap(), Ideal::of_int(&z(), 2));
        let r = Ring::residues(&[12]).unwrap();
        assert_eq!(Ideal::of_int(&r, 2).product(&Ideal::of_int(&r, 3)).unwrap(), Ideal::of_int(&r, 6));
        let i = Ideal::of_int(&r, 4);
        assert_eq!(i.intersection(&Ideal::unit(&r)).unwrap(), i);
    }

    #[test]
    fn mismatch_is_an_error() {
        let r = Ring::residues(&[12]).unwrap();
        assert!(matches!(Ideal::of_int(&r, 2).sum(&Ideal::of_int(&z(), 2)), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let r = Ring::residues(&[12, 9]).unwrap();
        for e in r.elements().unwrap() {
            let i = Ideal::principal(&r, &e);
            let again = Ideal::principal(&r, &i.generator());
            assert_eq!(i, again);
        }
        assert_eq!(Ideal::of_int(&z(), -6), Ideal::of_int(&z(), 6));
    }

    #[test]
    fn bad_moduli_rejected() {
        assert!(Ring::residues(&[]).is_err());
        assert!(Ring::residues(&[1]).is_err());
    }
}
