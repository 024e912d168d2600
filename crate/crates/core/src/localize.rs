//! Fraction modules `S⁻¹M` built from formal pairs `(m, s)`, identified with
//! `M / T_S` through the canonical map `m ↦ m/1`, and localized ideals
//! represented by their contractions to `R`.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::mcs::Mcs;
use crate::module::{Module, ModuleMap, Submodule};
use crate::ring::{Component, Ideal};

/// Results of the structural self-checks run at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationChecks {
    /// Every pair of fractions in one class is related directly.
    pub transitive: bool,
    /// Addition of fractions is well defined on classes.
    pub additive: bool,
    /// Each `s ∈ S` permutes the classes.
    pub s_bijective: bool,
    /// `m ↦ m/1` is onto the classes.
    pub canonical_surjective: bool,
    /// `m/1 = 0` exactly when `m ∈ T_S`.
    pub kernel_is_torsion: bool,
}

impl LocalizationChecks {
    pub fn all(&self) -> bool {
        self.transitive && self.additive && self.s_bijective && self.canonical_surjective && self.kernel_is_torsion
    }
}

pub struct FractionModule {
    base: Module,
    mcs: Mcs,
    /// Scalar indices of the classes of `S` acting on `M`.
    s_image: Vec<usize>,
    /// Class of the pair `(m, s_image[j])`, stored at `m * |S| + j`.
    class_of: Vec<u32>,
    class_count: usize,
    torsion: Submodule,
    quotient: Module,
    projection: ModuleMap,
    /// Class index -> element of `M / T_S`.
    class_to_quotient: Vec<u32>,
    checks: LocalizationChecks,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl FractionModule {
    pub fn new(m: &Module, s: &Mcs) -> Result<FractionModule> {
        if s.ring() != m.ring() {
            return Err(Error::RingMismatch(format!("{} vs {}", s.ring(), m.ring())));
        }
        let dom = m.scalars();
        let s_image = s.image(dom);
        let k = s_image.len();
        let size = m.size();
        let pairs = size * k;
        let act = |a: usize, x: usize| m.act(dom.elem(a), x);
        let s_tables: Vec<Vec<u32>> = s_image.iter().map(|&u| m.action_table(dom.elem(u))).collect();
        let killed = |x: usize| s_tables.iter().any(|t| t[x] == 0);

        // (m, s) ~ (m', s') iff some u ∈ S kills s'm − sm'.
        let related = |p: usize, q: usize| {
            let (x, i) = (p / k, s_image[p % k]);
            let (y, j) = (q / k, s_image[q % k]);
            killed(m.add(act(j, x), m.neg(act(i, y))))
        };
        let mut parent: Vec<usize> = (0..pairs).collect();
        for p in 0..pairs {
            for q in p + 1..pairs {
                if related(p, q) {
                    let (a, b) = (find(&mut parent, p), find(&mut parent, q));
                    if a != b {
                        parent[b.max(a)] = a.min(b);
                    }
                }
            }
        }
        let mut class_of = vec![0u32; pairs];
        let mut root_id = vec![u32::MAX; pairs];
        let mut class_count = 0usize;
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (p, class) in class_of.iter_mut().enumerate() {
            let r = find(&mut parent, p);
            if root_id[r] == u32::MAX {
                root_id[r] = class_count as u32;
                class_count += 1;
                members.push(Vec::new());
            }
            *class = root_id[r];
            members[root_id[r] as usize].push(p);
        }
        let transitive = members.iter().all(|c| c.iter().all(|&p| c.iter().all(|&q| p == q || related(p, q))));

        let one = s_image.iter().position(|&u| u == dom.one()).expect("1 ∈ S");
        let unit_class = |x: usize| class_of[x * k + one] as usize;

        // (x/u) + (y/v) = (vx + uy)/(uv); checked against fractions y/1.
        let pair_index = |x: usize, u: usize| x * k + s_image.iter().position(|&t| t == u).expect("S is closed");
        let mut additive = true;
        'add: for c in &members {
            let (x0, u0) = (c[0] / k, s_image[c[0] % k]);
            for y in m.elements() {
                let want = class_of[pair_index(m.add(x0, act(u0, y)), u0)];
                for &p in c {
                    let (x, u) = (p / k, s_image[p % k]);
                    if class_of[pair_index(m.add(x, act(u, y)), u)] != want {
                        additive = false;
                        break 'add;
                    }
                }
            }
        }

        let s_bijective = s_image.iter().all(|&u| {
            let mut hit = vec![false; class_count];
            for c in &members {
                let p = c[0];
                let (x, v) = (p / k, s_image[p % k]);
                hit[class_of[pair_index(act(u, x), v)] as usize] = true;
            }
            hit.iter().all(|&h| h)
        });

        let torsion_elems: Vec<usize> = m.elements().filter(|&x| killed(x)).collect();
        let torsion = m.closure_of(&torsion_elems);
        let zero_class = unit_class(0);
        let kernel_is_torsion =
            torsion.len() == torsion_elems.len() && m.elements().all(|x| (unit_class(x) == zero_class) == killed(x));

        let (quotient, projection) = m.quotient(&torsion)?;
        let mut class_to_quotient = vec![u32::MAX; class_count];
        for x in m.elements() {
            class_to_quotient[unit_class(x)] = projection.apply(x) as u32;
        }
        let canonical_surjective = class_to_quotient.iter().all(|&q| q != u32::MAX);
        let checks = LocalizationChecks { transitive, additive, s_bijective, canonical_surjective, kernel_is_torsion };

        Ok(FractionModule {
            base: m.clone(),
            mcs: s.clone(),
            s_image,
            class_of,
            class_count,
            torsion,
            quotient,
            projection,
            class_to_quotient,
            checks,
        })
    }

    pub fn base(&self) -> &Module {
        &self.base
    }

    pub fn mcs(&self) -> &Mcs {
        &self.mcs
    }

    pub fn checks(&self) -> &LocalizationChecks {
        &self.checks
    }

    /// Number of distinct fractions.
    pub fn order(&self) -> usize {
        self.class_count
    }

    /// `T_S = {m : sm = 0 for some s ∈ S}`.
    pub fn torsion(&self) -> &Submodule {
        &self.torsion
    }

    /// `M / T_S`, the concrete carrier of `S⁻¹M`.
    pub fn module(&self) -> &Module {
        &self.quotient
    }

    pub fn projection(&self) -> &ModuleMap {
        &self.projection
    }

    /// Whether two fraction classes, given as `(m, s)` with `s` a scalar index
    /// of `S`, coincide.
    pub fn same_fraction(&self, x: usize, s: usize, y: usize, t: usize) -> Option<bool> {
        let k = self.s_image.len();
        let i = self.s_image.iter().position(|&u| u == s)?;
        let j = self.s_image.iter().position(|&u| u == t)?;
        Some(self.class_of[x * k + i] == self.class_of[y * k + j])
    }

    /// `S⁻¹N`, the fractions `n/s`, as a submodule of `M / T_S`.
    pub fn localize_submodule(&self, n: &Submodule) -> Result<Submodule> {
        if n.module() != &self.base {
            return Err(Error::ParentMismatch);
        }
        let k = self.s_image.len();
        let mut set: Vec<usize> = n
            .elements()
            .flat_map(|x| (0..k).map(move |j| x * k + j))
            .map(|p| self.class_to_quotient[self.class_of[p] as usize] as usize)
            .collect();
        set.sort_unstable();
        set.dedup();
        Submodule::from_set(&self.quotient, &set)
    }

    /// `S⁻¹N ∩ M = {m : m/1 ∈ S⁻¹N}`.
    pub fn contraction(&self, n: &Submodule) -> Result<Submodule> {
        let local = self.localize_submodule(n)?;
        self.projection.preimage(&local)
    }

    /// Contraction to `R` of the ideal `(S⁻¹N : S⁻¹M)`.
    pub fn colon_contraction(&self, n: &Submodule) -> Result<Ideal> {
        let c = self.contraction(n)?;
        self.base.colon_ring(&c, &self.base.full())
    }
}

/// `{r : ur ∈ I for some u ∈ S}`, the contraction of `S⁻¹I`.
pub fn saturate_ideal(s: &Mcs, ideal: &Ideal) -> Result<Ideal> {
    let ring = ideal.ring();
    if s.ring() != ring {
        return Err(Error::RingMismatch(format!("{} vs {}", s.ring(), ring)));
    }
    let bounds: Vec<u64> = ideal.gens().iter().map(|&g| g.max(1)).collect();
    let dom = Domain::new(ring, &bounds);
    let image = s.image(&dom);
    let inside = dom.mask(ideal);
    let mask: Vec<bool> = (0..dom.len()).map(|r| image.iter().any(|&u| inside[dom.mul(u, r)])).collect();
    ideal_from_mask(&dom, &mask)
}

/// The ideal whose membership over the representatives of `dom` is `mask`.
pub fn ideal_from_mask(dom: &Domain, mask: &[bool]) -> Result<Ideal> {
    let ring = dom.ring();
    let gens: Vec<i64> = (0..ring.len())
        .map(|c| {
            let limit = dom.modulus(c);
            let found = (1..=limit).filter(|d| limit.is_multiple_of(*d)).find(|&d| {
                let mut e = ring.zero();
                e.0[c] = d as i64;
                mask[dom.index_of(&e)]
            });
            match (ring.components()[c], found) {
                (_, Some(d)) if d < limit => d as i64,
                (Component::Integers, Some(d)) => d as i64,
                (Component::Integers, None) => 0,
                (Component::Residue(n), _) => n as i64,
            }
        })
        .collect();
    let ideal = Ideal::new(ring, &gens)?;
    if dom.mask(&ideal) != mask {
        return Err(Error::Precondition("membership mask is not an ideal".into()));
    }
    Ok(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Elem, Ring};

    fn zmod(n: u64) -> Module {
        Module::new(&Ring::integers(), &[n], &[0]).unwrap()
    }

    #[test]
    fn trivial_set_changes_nothing() {
        let m = zmod(12);
        let f = FractionModule::new(&m, &Mcs::one(&Ring::integers())).unwrap();
        assert!(f.checks().all());
        assert_eq!(f.order(), 12);
        assert!(f.torsion().is_zero());
    }

    #[test]
    fn two_torsion_dies() {
        let z = Ring::integers();
        let m = zmod(12);
        let s = Mcs::closure(&z, &[Elem(vec![2])]).unwrap();
        let f = FractionModule::new(&m, &s).unwrap();
        assert!(f.checks().all());
        assert_eq!(f.order(), 3);
        assert_eq!(f.module().size(), 3);
        for n in m.submodules() {
            let local = f.localize_submodule(&n).unwrap();
            let colon = f.colon_contraction(&n).unwrap();
            assert_eq!(local == f.module().full(), colon.is_unit(), "{n}");
        }
    }

    #[test]
    fn saturation_of_ideals() {
        let z = Ring::integers();
        let s = Mcs::closure(&z, &[Elem(vec![2])]).unwrap();
        assert_eq!(saturate_ideal(&s, &Ideal::of_int(&z, 12)).unwrap(), Ideal::of_int(&z, 3));
        assert_eq!(saturate_ideal(&s, &Ideal::of_int(&z, 0)).unwrap(), Ideal::of_int(&z, 0));
        let r = Ring::residues(&[12]).unwrap();
        let s = Mcs::closure(&r, &[Elem(vec![3])]).unwrap();
        assert_eq!(saturate_ideal(&s, &Ideal::new(&r, &[3]).unwrap()).unwrap(), Ideal::unit(&r));
        assert_eq!(saturate_ideal(&s, &Ideal::new(&r, &[4]).unwrap()).unwrap(), Ideal::new(&r, &[4]).unwrap());
        assert_eq!(saturate_ideal(&s, &Ideal::new(&r, &[6]).unwrap()).unwrap(), Ideal::new(&r, &[2]).unwrap());
    }
}
