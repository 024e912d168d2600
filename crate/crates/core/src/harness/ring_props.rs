//! Propositions linking a submodule to its colon ideal, to quotients by
//! `φ(N)`, to other multiplicatively closed sets and to fraction modules.

use std::collections::HashMap;

use super::context::{obj, Harness, ModCtx};
use super::module_props::ideal_universe;
use super::PropReport;
use crate::checker::Evaluator;
use crate::error::Result;
use crate::localize::{saturate_ideal, FractionModule};
use crate::maps::{ExpansionFn, Reduced};
use crate::mcs::Mcs;
use crate::module::Submodule;
use crate::ring::{Elem, Ideal};

/// Witnesses of the ideal-level condition for `(N:M)` with `Φ = (φ(N):M)`.
fn ideal_witnesses(ctx: &ModCtx, n: usize, p: usize, d: usize, s: usize) -> Result<Vec<usize>> {
    let m = &ctx.module;
    let i = ctx.ev.ideal_mask(&ctx.colon[n])?;
    let phi = match &ctx.reduced[p][n] {
        None => None,
        Some(f) => Some(ctx.ev.ideal_mask(&m.colon_ring(f, &m.full())?)?),
    };
    Ok(ctx.ev.ideal_witnesses(&i, phi.as_deref(), &ctx.dmask[d][n], &ctx.mcs[s].image))
}

pub(super) fn p10(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for n in ctx.proper() {
                    for s in 0..ctx.mcs.len() {
                        let w = ctx.witnesses(n, p, d, s);
                        let Some(w) = w.as_ref().as_ref().filter(|w| !w.is_empty()) else {
                            r.not_met();
                            continue;
                        };
                        r.met();
                        let iw = ideal_witnesses(ctx, n, p, d, s)?;
                        let bad = w.iter().copied().find(|x| !iw.contains(x));
                        r.conclude(bad.is_none(), || {
                            let mut v = ctx.describe(n, phi, delta, s);
                            v.push(("s", ctx.elem(bad.unwrap_or(0))));
                            obj(v)
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn p11(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let multiplication = ctx.module.is_multiplication_module();
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for n in ctx.proper() {
                    for s in 0..ctx.mcs.len() {
                        if !multiplication || !ctx.precondition(n, d, s) {
                            r.not_met();
                            continue;
                        }
                        let iw = ideal_witnesses(ctx, n, p, d, s)?;
                        if iw.is_empty() {
                            r.not_met();
                            continue;
                        }
                        r.met();
                        let bad = iw.iter().copied().find(|&x| !ctx.primary_at(n, p, d, s, x));
                        r.conclude(bad.is_none(), || {
                            let mut v = ctx.describe(n, phi, delta, s);
                            v.push(("s", ctx.elem(bad.unwrap_or(0))));
                            obj(v)
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Whether `N` is `δ`-`S`-primary at `x` (no reduction).
fn delta_primary_at(ctx: &ModCtx, n: usize, d: usize, x: usize) -> bool {
    ctx.ev.violation(ctx.lattice[n].mask(), None, &ctx.dmask[d][n], x, None).is_none()
}

pub(super) fn p12(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let m = &ctx.module;
        for (p, phi) in h.phis().iter().enumerate() {
            for n in ctx.proper() {
                let cn = m.ideal_action(&ctx.colon[n], &ctx.lattice[n]);
                let escapes = ctx.fmask(p, n).is_none_or(|f| cn.elements().any(|y| !f[y]));
                for (d, delta) in h.deltas().iter().enumerate() {
                    for s in 0..ctx.mcs.len() {
                        let w = ctx.witnesses(n, p, d, s);
                        let Some(w) = w.as_ref().as_ref().filter(|w| !w.is_empty()) else {
                            r.not_met();
                            continue;
                        };
                        if !escapes {
                            r.not_met();
                            continue;
                        }
                        r.met();
                        let bad = w.iter().copied().find(|&x| !delta_primary_at(ctx, n, d, x));
                        r.conclude(bad.is_none(), || {
                            let mut v = ctx.describe(n, phi, delta, s);
                            v.push(("s", ctx.elem(bad.unwrap_or(0))));
                            obj(v)
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn p13(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let m = &ctx.module;
        let multiplication = m.is_multiplication_module();
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for n in ctx.proper() {
                    for s in 0..ctx.mcs.len() {
                        let w = ctx.witnesses(n, p, d, s);
                        let w = w.as_ref().as_deref().unwrap_or(&[]);
                        let gaps: Vec<usize> = w.iter().copied().filter(|&x| !delta_primary_at(ctx, n, d, x)).collect();
                        if !multiplication || gaps.is_empty() {
                            r.not_met();
                            continue;
                        }
                        r.met();
                        let nn = &ctx.lattice[n];
                        let square = m.submodule_product(nn, nn)?;
                        let (inside, radicals) = match &ctx.reduced[p][n] {
                            None => (false, false),
                            Some(f) => (square.is_subset(f), m.submodule_radical(nn)? == m.submodule_radical(f)?),
                        };
                        r.conclude(inside && radicals, || {
                            let mut v = ctx.describe(n, phi, delta, s);
                            v.push(("s", ctx.elem(gaps[0])));
                            v.push(("N^2", square.format_generators()));
                            obj(v)
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn p14(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        for (p, phi) in h.phis().iter().enumerate() {
            let mut idempotent = !matches!(phi, crate::maps::ReductionFn::Empty);
            for n in 0..ctx.lattice.len() {
                if let Some(f) = &ctx.reduced[p][n] {
                    idempotent &= ctx.reduced[p][ctx.idx(f)].as_ref() == Some(f);
                }
            }
            for (d, delta) in h.deltas().iter().enumerate() {
                // δ-primary: proper and the condition at s = 1.
                let delta_primary =
                    |n: usize| ctx.lattice[n].is_proper() && delta_primary_at(ctx, n, d, ctx.ev.domain().one());
                for s in 0..ctx.mcs.len() {
                    if !idempotent {
                        r.exclude("φ is φ_∅ or not idempotent");
                        continue;
                    }
                    r.met();
                    let image = &ctx.mcs[s].image;
                    let first = ctx.proper().all(|n| !ctx.holds(n, p, d, s) || delta_primary(n));
                    let phis_ok = ctx.proper().all(|n| match &ctx.reduced[p][n] {
                        None => true,
                        Some(f) => delta_primary(ctx.idx(f)),
                    });
                    let ds_ok = ctx.proper().all(|n| {
                        let ds = ctx.precondition(n, d, s)
                            && !ctx.ev.witnesses(ctx.lattice[n].mask(), None, &ctx.dmask[d][n], image).is_empty();
                        !ds || delta_primary(n)
                    });
                    let second = phis_ok && ds_ok;
                    // The argument for (1) ⇒ (2) treats φ(N) as φ-δ-S-primary,
                    // which needs δ(φ(N):M) ∩ S = ∅.
                    let phi_admissible = ctx
                        .proper()
                        .all(|n| ctx.reduced[p][n].as_ref().is_none_or(|f| ctx.precondition(ctx.idx(f), d, s)));
                    if phi_admissible {
                        r.diag("instances with δ(φ(N):M) ∩ S = ∅ for every N");
                        if first != second {
                            r.diag("violations with δ(φ(N):M) ∩ S = ∅ for every N");
                        }
                    }
                    r.conclude(first == second, || {
                        obj(vec![
                            ("module", ctx.name.clone()),
                            ("phi", phi.to_string()),
                            ("delta", delta.to_string()),
                            ("S", ctx.mcs[s].mcs.to_string()),
                            ("statements", format!("({first}, {second})")),
                        ])
                    });
                }
            }
        }
    }
    Ok(())
}

pub(super) fn p15(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let m = &ctx.module;
        let bounds = ctx.ev.bounds();
        // Quotient data per distinct φ(N).
        let mut quotients: HashMap<Submodule, (crate::module::ModuleMap, Evaluator)> = HashMap::new();
        for (p, phi) in h.phis().iter().enumerate() {
            for n in ctx.proper() {
                let Some(f) = ctx.reduced[p][n].clone() else {
                    let skipped = h.deltas().len() * ctx.mcs.len();
                    for _ in 0..skipped {
                        r.exclude("φ(N) = ∅");
                    }
                    continue;
                };
                if !quotients.contains_key(&f) {
                    let (q, proj) = m.quotient(&f)?;
                    let ev = Evaluator::new(&q, &bounds).corrupting(h.universe.corrupt_classify);
                    quotients.insert(f.clone(), (proj, ev));
                }
                let (proj, qev) = &quotients[&f];
                let q = proj.target();
                let image = proj.image(&ctx.lattice[n])?;
                let compatible = q.colon_ring(&image, &q.full())? == ctx.colon[n];
                let zero = q.zero_submodule();
                for (d, delta) in h.deltas().iter().enumerate() {
                    for s in 0..ctx.mcs.len() {
                        if !compatible {
                            r.exclude("(N/φ(N) : M/φ(N)) ≠ (N:M)");
                            continue;
                        }
                        r.met();
                        let w = ctx.witnesses(n, p, d, s);
                        let w = w.as_ref().as_deref().unwrap_or(&[]);
                        let qw: Vec<usize> = if ctx.precondition(n, d, s) {
                            qev.witnesses(image.mask(), Some(zero.mask()), &ctx.dmask[d][n], &ctx.mcs[s].image)
                        } else {
                            Vec::new()
                        };
                        r.conclude(w == qw.as_slice(), || {
                            let mut v = ctx.describe(n, phi, delta, s);
                            let fmt = |ws: &[usize]| ws.iter().map(|&x| ctx.elem(x)).collect::<Vec<_>>().join(",");
                            v.push(("witnesses", fmt(w)));
                            v.push(("quotient witnesses", fmt(&qw)));
                            obj(v)
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Elements of `S` used to test the shrinking condition: all of `S` on a
/// finite ring, products of generator powers up to exponent 8 otherwise.
fn sample_elements(s: &Mcs) -> Vec<Elem> {
    if let Some(e) = s.elements() {
        return e.to_vec();
    }
    let ring = s.ring();
    let mut out = vec![ring.one()];
    for g in s.generators() {
        let mut next = Vec::new();
        for x in &out {
            let mut p = x.clone();
            for _ in 0..=8 {
                next.push(p.clone());
                p = ring.mul(&p, g);
            }
        }
        out = next;
    }
    out
}

/// `S₁ ⊆ S₂` and every `s ∈ S₂` has `t ∈ S₂` with `st ∈ S₁`.
fn shrinks(s1: &Mcs, s2: &Mcs) -> bool {
    if !s1.is_subset(s2) {
        return false;
    }
    let ring = s2.ring();
    let elems = sample_elements(s2);
    elems.iter().all(|x| elems.iter().any(|t| s1.contains(&ring.mul(x, t))))
}

pub(super) fn p16(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let dom = ctx.ev.domain();
        let k = ctx.mcs.len();
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .filter(|&(i, j)| shrinks(&ctx.mcs[i].mcs, &ctx.mcs[j].mcs))
            .collect();
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for n in ctx.proper() {
                    for &(s1, s2) in &pairs {
                        let w = ctx.witnesses(n, p, d, s2);
                        let Some(w) = w.as_ref().as_ref().filter(|w| !w.is_empty()) else {
                            r.not_met();
                            continue;
                        };
                        r.met();
                        let small = &ctx.mcs[s1].image;
                        let fm = ctx.fmask(p, n);
                        let nm = ctx.lattice[n].mask();
                        let bad = w.iter().copied().find(|&x| {
                            let products: Vec<usize> = ctx.mcs[s2]
                                .image
                                .iter()
                                .map(|&t| dom.mul(x, t))
                                .filter(|st| small.contains(st))
                                .collect();
                            products.is_empty()
                                || products
                                    .iter()
                                    .any(|&st| ctx.ev.violation(nm, fm, &ctx.dmask[d][n], st, None).is_some())
                        });
                        r.conclude(bad.is_none(), || {
                            let mut v = ctx.describe(n, phi, delta, s2);
                            v.push(("S1", ctx.mcs[s1].mcs.to_string()));
                            v.push(("s", ctx.elem(bad.unwrap_or(0))));
                            obj(v)
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn p17(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let ring = ctx.module.ring();
        let mixed = !ring.is_finite() && !ring.is_integers();
        let saturated: Vec<Option<Vec<usize>>> = ctx
            .mcs
            .iter()
            .map(|s| if mixed { Ok(None) } else { Ok(Some(ctx.ev.mcs_image(&s.mcs.saturation()?)?)) })
            .collect::<Result<_>>()?;
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for n in ctx.proper() {
                    for (s, star) in saturated.iter().enumerate() {
                        let Some(star) = star else {
                            r.exclude("S* on a mixed ring");
                            continue;
                        };
                        r.met();
                        let plain = ctx.holds(n, p, d, s);
                        let dm = &ctx.dmask[d][n];
                        let starred = !star.iter().any(|&x| dm[x])
                            && !ctx.ev.witnesses(ctx.lattice[n].mask(), ctx.fmask(p, n), dm, star).is_empty();
                        r.conclude(plain == starred, || {
                            let mut v = ctx.describe(n, phi, delta, s);
                            v.push(("holds", format!("({plain}, {starred})")));
                            obj(v)
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Localization data for one `(M, S)`.
struct Local {
    frac: FractionModule,
    ev: Evaluator,
    /// `S⁻¹N` per lattice element of `M`.
    loc: Vec<Submodule>,
    /// `S⁻¹R ∩ R` of `(N:M)` per lattice element.
    sat_colon: Vec<Ideal>,
    /// Whether `(S⁻¹N : S⁻¹M)` contracts to the saturation of `(N:M)`.
    colon_ok: Vec<bool>,
    /// `(S⁻¹N : S⁻¹M)` is proper; equivalent to `S⁻¹N ≠ S⁻¹M`.
    proper: Vec<bool>,
}

impl Local {
    fn new(ctx: &ModCtx, s: usize, corrupt: bool) -> Result<Local> {
        let frac = FractionModule::new(&ctx.module, &ctx.mcs[s].mcs)?;
        let ev = Evaluator::new(frac.module(), &ctx.ev.bounds()).corrupting(corrupt);
        let loc = ctx.lattice.iter().map(|n| frac.localize_submodule(n)).collect::<Result<Vec<_>>>()?;
        let sat_colon = ctx.colon.iter().map(|i| saturate_ideal(&ctx.mcs[s].mcs, i)).collect::<Result<Vec<_>>>()?;
        let colon_ok = ctx
            .lattice
            .iter()
            .zip(&sat_colon)
            .map(|(n, sc)| Ok(&frac.colon_contraction(n)? == sc))
            .collect::<Result<Vec<_>>>()?;
        let proper = loc.iter().map(|n| n.is_proper()).collect();
        Ok(Local { frac, ev, loc, sat_colon, colon_ok, proper })
    }

    fn localize(&self, ctx: &ModCtx, r: &Reduced) -> Option<Submodule> {
        r.as_ref().map(|f| self.loc[ctx.idx(f)].clone())
    }

    /// Whether `N ↦ S⁻¹φ(N)` factors through `N ↦ S⁻¹N`.
    fn phi_well_defined(&self, ctx: &ModCtx, p: usize) -> bool {
        let mut seen: HashMap<&Submodule, Option<Submodule>> = HashMap::new();
        (0..ctx.lattice.len()).all(|n| {
            let v = self.localize(ctx, &ctx.reduced[p][n]);
            match seen.get(&self.loc[n]) {
                Some(prev) => prev == &v,
                None => {
                    seen.insert(&self.loc[n], v);
                    true
                }
            }
        })
    }
}

/// Whether `I ↦ sat(δ(I))` factors through `I ↦ sat(I)` on `ideals`.
fn delta_well_defined(s: &Mcs, delta: &ExpansionFn, ideals: &[Ideal]) -> Result<bool> {
    let mut seen: HashMap<Ideal, Ideal> = HashMap::new();
    for i in ideals {
        let key = saturate_ideal(s, i)?;
        let val = saturate_ideal(s, &delta.apply(i)?)?;
        if let Some(prev) = seen.get(&key) {
            if prev != &val {
                return Ok(false);
            }
        } else {
            seen.insert(key, val);
        }
    }
    Ok(true)
}

fn local_ideals(ctx: &ModCtx) -> Vec<Ideal> {
    let bound = ctx.ev.bounds().into_iter().max().unwrap_or(1);
    let mut ideals = ideal_universe(ctx.module.ring(), bound);
    ideals.extend(ctx.colon.iter().cloned());
    ideals.sort();
    ideals.dedup();
    ideals
}

pub(super) fn p18(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let ideals = local_ideals(ctx);
        for s in 0..ctx.mcs.len() {
            let local = Local::new(ctx, s, h.universe.corrupt_classify)?;
            if local.frac.checks().all() && local.frac.order() == local.frac.module().size() {
                r.diag("fraction modules isomorphic to M/T_S");
            } else {
                r.errors.push(format!("fraction module of {} by {} is not M/T_S", ctx.name, ctx.mcs[s].mcs));
            }
            let image = &ctx.mcs[s].image;
            for (p, phi) in h.phis().iter().enumerate() {
                let phi_ok = local.phi_well_defined(ctx, p);
                for (d, delta) in h.deltas().iter().enumerate() {
                    let delta_ok = delta_well_defined(&ctx.mcs[s].mcs, delta, &ideals)?;
                    for n in ctx.proper() {
                        let w = ctx.witnesses(n, p, d, s);
                        let Some(w) = w.as_ref().as_ref().filter(|w| !w.is_empty()) else {
                            r.not_met();
                            continue;
                        };
                        if !phi_ok {
                            r.exclude("φ_S not well defined");
                            continue;
                        }
                        if !delta_ok {
                            r.exclude("δ_S not well defined");
                            continue;
                        }
                        if !local.colon_ok[n] {
                            r.exclude("(S⁻¹N : S⁻¹M) ≠ S⁻¹(N:M)");
                            continue;
                        }
                        r.met();
                        let dl = local.ev.ideal_mask(&saturate_ideal(&ctx.mcs[s].mcs, &ctx.expanded[d][n])?)?;
                        let f = local.localize(ctx, &ctx.reduced[p][n]);
                        let nl = &local.loc[n];
                        let ok = local.proper[n]
                            && !image.iter().any(|&x| dl[x])
                            && w.iter().all(|&x| {
                                local.ev.violation(nl.mask(), f.as_ref().map(|f| f.mask()), &dl, x, None).is_none()
                            });
                        r.conclude(ok, || obj(ctx.describe(n, phi, delta, s)));
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn p19(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let ideals = local_ideals(ctx);
        let dom = ctx.ev.domain();
        let one = dom.one();
        for s in 0..ctx.mcs.len() {
            let sm = &ctx.mcs[s].mcs;
            let local = Local::new(ctx, s, h.universe.corrupt_classify)?;
            let image = &ctx.mcs[s].image;
            for (p, phi) in h.phis().iter().enumerate() {
                let phi_ok = local.phi_well_defined(ctx, p);
                for (d, delta) in h.deltas().iter().enumerate() {
                    let delta_ok = delta_well_defined(sm, delta, &ideals)?;
                    for n in ctx.proper() {
                        let nm = ctx.lattice[n].mask();
                        let fm = ctx.fmask(p, n);
                        let mut reason = None;
                        if !phi_ok || !delta_ok || !local.colon_ok[n] {
                            reason = Some("localized maps not well defined");
                        }
                        let delta_colon = (0..dom.len()).all(|a| {
                            let a = dom.elem(a);
                            let lhs = delta.apply(&ctx.colon[n].colon_elem(a));
                            lhs.is_ok_and(|x| x == ctx.expanded[d][n].colon_elem(a))
                        });
                        let phi_colon = (0..dom.len()).all(|a| {
                            let na = Submodule::from_mask(&ctx.module, ctx.ev.colon_mask(Some(nm), a));
                            let lhs = ctx.fmask(p, ctx.idx(&na)).map(|f| f.to_vec());
                            let rhs = fm.map(|f| ctx.ev.colon_mask(Some(f), a));
                            lhs == rhs
                        });
                        if reason.is_none() && !(delta_colon && phi_colon) {
                            reason = Some("colon compatibility fails");
                        }
                        let sat_delta = saturate_ideal(sm, &ctx.expanded[d][n])?;
                        if reason.is_none() && sat_delta != delta.apply(&local.sat_colon[n])? {
                            reason = Some("saturation compatibility fails");
                        }
                        if reason.is_none() && (!ctx.precondition(n, d, s) || sat_delta.is_unit()) {
                            reason = Some("δ(N:M) ∩ S ≠ ∅ or δ_S(S⁻¹(N:M)) = S⁻¹R");
                        }
                        let dl = match reason {
                            None => Some(local.ev.ideal_mask(&sat_delta)?),
                            Some(_) => None,
                        };
                        let f_loc = local.localize(ctx, &ctx.reduced[p][n]);
                        let local_primary = dl.as_ref().is_some_and(|dl| {
                            local.proper[n]
                                && !dl[one]
                                && local
                                    .ev
                                    .violation(local.loc[n].mask(), f_loc.as_ref().map(|f| f.mask()), dl, one, None)
                                    .is_none()
                        });
                        let contraction = local.frac.contraction(&ctx.lattice[n])?;
                        for &x in image {
                            if let Some(why) = reason {
                                r.exclude(why);
                                continue;
                            }
                            let fs = fm.map(|f| ctx.ev.colon_mask(Some(f), x));
                            let s_fixed = fm.map(|f| f.to_vec()) == fs;
                            let t_below = image.iter().all(|&t| {
                                let ft = fm.map(|f| ctx.ev.colon_mask(Some(f), t));
                                match (&ft, &fs) {
                                    (Some(a), Some(b)) => a.iter().zip(b).all(|(&u, &v)| !u || v),
                                    _ => true,
                                }
                            });
                            if !(s_fixed && t_below) {
                                r.exclude("φ(N) not fixed by s");
                                continue;
                            }
                            r.met();
                            let c1 = ctx.primary_at(n, p, d, s, x);
                            let ns = ctx.idx(&Submodule::from_mask(&ctx.module, ctx.ev.colon_mask(Some(nm), x)));
                            let c2 = ctx.lattice[ns].is_proper()
                                && !ctx.dmask[d][ns][one]
                                && ctx
                                    .ev
                                    .violation(ctx.lattice[ns].mask(), ctx.fmask(p, ns), &ctx.dmask[d][ns], one, None)
                                    .is_none();
                            let ns_mask = ctx.lattice[ns].mask();
                            let colon_s = ctx.colon[n].colon_elem(dom.elem(x));
                            let mut below = true;
                            for &t in image {
                                let nt = ctx.ev.colon_mask(Some(nm), t);
                                below &= nt.iter().zip(ns_mask).all(|(&u, &v)| !u || v);
                                below &= ctx.colon[n].colon_elem(dom.elem(t)).is_subset(&colon_s);
                            }
                            let c3 = local_primary && below;
                            let c4 = local_primary && contraction == ctx.lattice[ns] && local.sat_colon[n] == colon_s;
                            r.conclude(c1 == c2 && c2 == c3 && c3 == c4, || {
                                let mut v = ctx.describe(n, phi, delta, s);
                                v.push(("s", ctx.elem(x)));
                                v.push(("statements", format!("({c1}, {c2}, {c3}, {c4})")));
                                obj(v)
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
