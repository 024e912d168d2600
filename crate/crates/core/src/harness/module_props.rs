//! Propositions about a single module: unions, intersections, colons, the
//! ideal-times-submodule characterization and its consequences.

use super::context::{obj, Harness, ModCtx};
use super::PropReport;
use crate::checker::Setting;
use crate::domain::Domain;
use crate::error::Result;
use crate::maps::{expansion_has_intersection_property, reduction_has_intersection_property};
use crate::module::Submodule;
use crate::ring::Ideal;

fn sub_from_mask(ctx: &ModCtx, mask: Vec<bool>) -> usize {
    ctx.idx(&Submodule::from_mask(&ctx.module, mask))
}

/// Chains `N_1 ⊂ N_2 ⊂ N_3` (lengths 1 to 3) of proper submodules.
fn chains(ctx: &ModCtx) -> Vec<Vec<usize>> {
    let proper: Vec<usize> = ctx.proper().collect();
    let lt = |a: usize, b: usize| a != b && ctx.lattice[a].is_subset(&ctx.lattice[b]);
    let mut out = Vec::new();
    for &a in &proper {
        out.push(vec![a]);
        for &b in proper.iter().filter(|&&b| lt(a, b)) {
            out.push(vec![a, b]);
            for &c in proper.iter().filter(|&&c| lt(b, c)) {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

pub(super) fn p01(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let chains = chains(ctx);
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for s in 0..ctx.mcs.len() {
                    for chain in &chains {
                        let top = *chain.last().expect("nonempty");
                        let mut shared: Vec<usize> = ctx.mcs[s].image.clone();
                        for &n in chain {
                            let w = ctx.witnesses(n, p, d, s);
                            let w = w.as_ref().as_deref().unwrap_or(&[]);
                            shared.retain(|x| w.contains(x));
                        }
                        if shared.is_empty() || !ctx.precondition(top, d, s) {
                            r.not_met();
                            continue;
                        }
                        r.met();
                        let bad = shared.iter().copied().find(|&x| !ctx.primary_at(top, p, d, s, x));
                        r.conclude(bad.is_none(), || {
                            let mut v = ctx.describe(top, phi, delta, s);
                            v.push(("chain", format!("{chain:?}")));
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

/// All ideals of a finite ring, or `kZ` for `0 ≤ k ≤ bound` over `Z`.
pub(super) fn ideal_universe(ring: &crate::ring::Ring, bound: u64) -> Vec<Ideal> {
    if ring.is_finite() {
        Domain::new(ring, &vec![1; ring.len()]).principal_ideals()
    } else {
        let b = bound.max(1);
        Domain::new(ring, &vec![b; ring.len()]).principal_ideals()
    }
}

pub(super) fn p02(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let ideals = ideal_universe(ctx.module.ring(), h.universe.bounds.ideal_bound);
        let proper: Vec<usize> = ctx.proper().collect();
        let mut families: Vec<Vec<usize>> = Vec::new();
        for (i, &a) in proper.iter().enumerate() {
            for (j, &b) in proper.iter().enumerate().skip(i + 1) {
                families.push(vec![a, b]);
                for &c in proper.iter().skip(j + 1) {
                    families.push(vec![a, b, c]);
                }
            }
        }
        for (p, phi) in h.phis().iter().enumerate() {
            let phi_ok = reduction_has_intersection_property(phi, &ctx.lattice)?;
            for (d, delta) in h.deltas().iter().enumerate() {
                let delta_ok = expansion_has_intersection_property(delta, &ideals)?;
                for s in 0..ctx.mcs.len() {
                    for fam in &families {
                        if !(phi_ok && delta_ok) {
                            r.exclude("intersection property fails");
                            continue;
                        }
                        let same_phi = fam.iter().all(|&n| ctx.reduced[p][n] == ctx.reduced[p][fam[0]]);
                        let same_delta = fam.iter().all(|&n| ctx.expanded[d][n] == ctx.expanded[d][fam[0]]);
                        let mut shared: Vec<usize> = ctx.mcs[s].image.clone();
                        for &n in fam {
                            let w = ctx.witnesses(n, p, d, s);
                            let w = w.as_ref().as_deref().unwrap_or(&[]);
                            shared.retain(|x| w.contains(x));
                        }
                        if !same_phi || !same_delta || shared.is_empty() {
                            r.not_met();
                            continue;
                        }
                        r.met();
                        let meet = fam
                            .iter()
                            .skip(1)
                            .fold(ctx.lattice[fam[0]].clone(), |acc, &n| acc.intersection(&ctx.lattice[n]));
                        let m = ctx.idx(&meet);
                        let bad = shared.iter().copied().find(|&x| !ctx.primary_at(m, p, d, s, x));
                        r.conclude(bad.is_none(), || {
                            let mut v = ctx.describe(m, phi, delta, s);
                            let gens: Vec<String> = fam.iter().map(|&n| ctx.lattice[n].format_generators()).collect();
                            v.push(("family", gens.join(" ; ")));
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

pub(super) fn p03(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let dom_len = ctx.ev.domain().len();
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for s in 0..ctx.mcs.len() {
                    for n in ctx.proper() {
                        let w = ctx.witnesses(n, p, d, s);
                        for rr in 0..dom_len {
                            let Some(w) = w.as_ref().as_ref().filter(|w| !w.is_empty()) else {
                                r.not_met();
                                continue;
                            };
                            if ctx.dmask[d][n][rr] {
                                r.not_met();
                                continue;
                            }
                            let nr = sub_from_mask(ctx, ctx.ev.colon_mask(Some(ctx.lattice[n].mask()), rr));
                            let phi_colon = ctx.ev.colon_mask(ctx.fmask(p, n), rr);
                            let cond1 = match ctx.fmask(p, nr) {
                                None => ctx.fmask(p, n).is_none(),
                                Some(f) => phi_colon.iter().zip(f).all(|(&x, &y)| !x || y),
                            };
                            if !cond1 || !ctx.precondition(nr, d, s) {
                                r.not_met();
                                continue;
                            }
                            r.met();
                            let bad = w.iter().copied().find(|&x| !ctx.primary_at(nr, p, d, s, x));
                            r.conclude(bad.is_none(), || {
                                let mut v = ctx.describe(n, phi, delta, s);
                                v.push(("r", ctx.elem(rr)));
                                v.push(("s", ctx.elem(bad.unwrap_or(0))));
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

pub(super) fn p04(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let ring = ctx.module.ring();
        let reps = ctx.ev.principal_reps();
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for n in ctx.proper() {
                    for &x in &reps {
                        let i = Ideal::principal(ring, ctx.ev.elem(x));
                        let nx = sub_from_mask(ctx, ctx.ev.colon_mask(Some(ctx.lattice[n].mask()), x));
                        let phi_colon = ctx.ev.colon_mask(ctx.fmask(p, n), x);
                        let cond_phi = match ctx.fmask(p, nx) {
                            None => ctx.fmask(p, n).is_none(),
                            Some(f) => phi_colon.iter().zip(f).all(|(&a, &b)| !a || b),
                        };
                        let lhs = ctx.expanded[d][n].colon(&i)?;
                        let rhs = delta.apply(&ctx.colon[n].colon(&i)?)?;
                        let cond_delta = lhs.is_subset(&rhs);
                        for s in 0..ctx.mcs.len() {
                            let w = ctx.witnesses(n, p, d, s);
                            let Some(w) = w.as_ref().as_ref().filter(|w| !w.is_empty()) else {
                                r.not_met();
                                continue;
                            };
                            if ctx.dmask[d][n][x] || !cond_phi || !cond_delta || !ctx.precondition(nx, d, s) {
                                r.not_met();
                                continue;
                            }
                            r.met();
                            let bad = w.iter().copied().find(|&y| !ctx.primary_at(nx, p, d, s, y));
                            r.conclude(bad.is_none(), || {
                                let mut v = ctx.describe(n, phi, delta, s);
                                v.push(("I", i.to_string()));
                                v.push(("s", ctx.elem(bad.unwrap_or(0))));
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

pub(super) fn p05(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for n in ctx.proper() {
                    let setting = Setting {
                        n: &ctx.lattice[n],
                        reduced: ctx.reduced[p][n].clone(),
                        colon: ctx.colon[n].clone(),
                        expanded: ctx.expanded[d][n].clone(),
                        delta,
                    };
                    for s in 0..ctx.mcs.len() {
                        if !ctx.precondition(n, d, s) {
                            r.not_met();
                            continue;
                        }
                        r.met();
                        let rows = ctx.ev.ik_rows(&setting, &ctx.lattice, &ctx.mcs[s].image)?;
                        for _ in 0..rows.reading_mismatches {
                            r.diag("colon reading mismatch");
                        }
                        if rows.per_s_disagreements() > 0 {
                            r.diag("instances whose per-s triples differ");
                        }
                        let (e1, e2, e3) = rows.exists();
                        r.conclude(e1 == e2 && e2 == e3, || {
                            let mut v = ctx.describe(n, phi, delta, s);
                            v.push(("exists", format!("({e1}, {e2}, {e3})")));
                            obj(v)
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn p06(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let m = &ctx.module;
        if !m.is_multiplication_module() {
            let skipped = ctx.proper().count() * h.phis().len() * h.deltas().len() * ctx.mcs.len();
            for _ in 0..skipped {
                r.not_met();
            }
            continue;
        }
        let size = ctx.lattice.len();
        let mut prod = vec![0usize; size * size];
        for l in 0..size {
            for k in 0..size {
                prod[l * size + k] = ctx.idx(&m.submodule_product(&ctx.lattice[l], &ctx.lattice[k])?);
            }
        }
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for n in ctx.proper() {
                    let dm = m.ideal_action(&ctx.expanded[d][n], &m.full());
                    let compatible = m.colon_ring(&dm, &m.full())? == ctx.expanded[d][n];
                    for s in 0..ctx.mcs.len() {
                        if !ctx.precondition(n, d, s) {
                            r.not_met();
                            continue;
                        }
                        if !compatible {
                            r.exclude("δ_R(P:M) ≠ (δ(P):M)");
                            continue;
                        }
                        r.met();
                        let pm = ctx.lattice[n].mask();
                        let fm = ctx.fmask(p, n);
                        for &sx in &ctx.mcs[s].image {
                            let c1 = ctx.primary_at(n, p, d, s, sx);
                            let c2 = (0..size).all(|l| {
                                (0..size).all(|k| {
                                    let lk = &ctx.lattice[prod[l * size + k]];
                                    let inside = lk.elements().all(|y| pm[y]);
                                    let escapes = fm.is_none_or(|f| lk.elements().any(|y| !f[y]));
                                    !(inside && escapes)
                                        || ctx.ev.scales_into(sx, &ctx.lattice[k], dm.mask())
                                        || ctx.ev.scales_into(sx, &ctx.lattice[l], pm)
                                })
                            });
                            r.conclude(c1 == c2, || {
                                let mut v = ctx.describe(n, phi, delta, s);
                                v.push(("s", ctx.elem(sx)));
                                v.push(("conditions", format!("({c1}, {c2})")));
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

/// P07 and P08 share their loop; `union` selects the set-union form.
fn colon_sa(h: &Harness, r: &mut PropReport, union: bool) -> Result<()> {
    for ctx in &h.mods {
        let dom = ctx.ev.domain();
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for n in ctx.proper() {
                    let nm = ctx.lattice[n].mask();
                    let fm = ctx.fmask(p, n);
                    let rad = ctx.ev.ideal_mask(&ctx.expanded[d][n].radical())?;
                    for s in 0..ctx.mcs.len() {
                        for &sx in &ctx.mcs[s].image {
                            if !ctx.primary_at(n, p, d, s, sx) {
                                r.not_met();
                                continue;
                            }
                            r.met();
                            let ns = ctx.ev.colon_mask(Some(nm), sx);
                            let s2 = dom.mul(sx, sx);
                            let bad = (0..dom.len()).find(|&a| {
                                let excluded =
                                    if union { rad[dom.mul(sx, a)] } else { ctx.dmask[d][n][dom.mul(s2, a)] };
                                if excluded {
                                    return false;
                                }
                                let sa = dom.mul(sx, a);
                                let nsa = ctx.ev.colon_mask(Some(nm), sa);
                                let fsa = ctx.ev.colon_mask(fm, sa);
                                if union {
                                    let join: Vec<bool> = fsa.iter().zip(&ns).map(|(&x, &y)| x || y).collect();
                                    nsa != join
                                } else {
                                    nsa != fsa && nsa != ns
                                }
                            });
                            r.conclude(bad.is_none(), || {
                                let mut v = ctx.describe(n, phi, delta, s);
                                v.push(("s", ctx.elem(sx)));
                                v.push(("a", ctx.elem(bad.unwrap_or(0))));
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

pub(super) fn p07(h: &Harness, r: &mut PropReport) -> Result<()> {
    colon_sa(h, r, false)
}

pub(super) fn p08(h: &Harness, r: &mut PropReport) -> Result<()> {
    colon_sa(h, r, true)
}

pub(super) fn p09(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        let m = &ctx.module;
        for (p, phi) in h.phis().iter().enumerate() {
            for (d, delta) in h.deltas().iter().enumerate() {
                for n in ctx.proper() {
                    for (k, kk) in ctx.lattice.iter().enumerate() {
                        let meet = ctx.lattice[n].intersection(kk);
                        let mi = ctx.idx(&meet);
                        let colon = m.colon_ring(&meet, kk)?;
                        let dk = ctx.ev.ideal_mask(&delta.apply(&colon)?)?;
                        let scope: Vec<usize> = kk.elements().collect();
                        for s in 0..ctx.mcs.len() {
                            let w = ctx.witnesses(n, p, d, s);
                            let Some(w) = w.as_ref().as_ref().filter(|w| !w.is_empty()) else {
                                r.not_met();
                                continue;
                            };
                            let meets_s = ctx.mcs[s].image.iter().any(|&x| dk[x]);
                            if kk.is_subset(&ctx.lattice[n]) || meets_s || ctx.reduced[p][mi] != ctx.reduced[p][n] {
                                r.not_met();
                                continue;
                            }
                            r.met();
                            let fm = ctx.fmask(p, n);
                            let bad = w
                                .iter()
                                .copied()
                                .find(|&x| ctx.ev.violation(meet.mask(), fm, &dk, x, Some(&scope)).is_some());
                            r.conclude(bad.is_none(), || {
                                let mut v = ctx.describe(n, phi, delta, s);
                                v.push(("K", ctx.lattice[k].format_generators()));
                                v.push(("s", ctx.elem(bad.unwrap_or(0))));
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
