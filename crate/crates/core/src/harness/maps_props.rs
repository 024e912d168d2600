//! Propositions about natural projections `f: M → M/K`, with `φ'` on `M/K`
//! induced by `φ'(N') = f(φ(f⁻¹(N')))`.

use std::collections::HashMap;

use super::context::{obj, Harness, ModCtx};
use super::PropReport;
use crate::checker::Evaluator;
use crate::error::Result;
use crate::module::{Module, ModuleMap, Submodule};

/// The projection onto `M/K` with both lattices matched up.
struct Quot {
    proj: ModuleMap,
    ev: Evaluator,
    lattice: Vec<Submodule>,
    /// Lattice index in `M` of `f⁻¹(N')`.
    up: Vec<usize>,
    /// Lattice index in `M/K` of `f(N)`, for `N ⊇ K`.
    down: HashMap<usize, usize>,
    /// `δ(N':M')` masks per expansion.
    dmask: Vec<Vec<Vec<bool>>>,
}

impl Quot {
    fn new(h: &Harness, ctx: &ModCtx, k: usize) -> Result<Quot> {
        let (q, proj) = ctx.module.quotient(&ctx.lattice[k])?;
        let ev = Evaluator::new(&q, &ctx.ev.bounds()).corrupting(h.universe.corrupt_classify);
        let lattice = q.submodules();
        let up = lattice.iter().map(|n| Ok(ctx.idx(&proj.preimage(n)?))).collect::<Result<Vec<_>>>()?;
        let index: HashMap<&Submodule, usize> = lattice.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut down = HashMap::new();
        for (i, n) in ctx.lattice.iter().enumerate() {
            if ctx.lattice[k].is_subset(n) {
                down.insert(i, index[&proj.image(n)?]);
            }
        }
        let colons = lattice.iter().map(|n| q.colon_ring(n, &q.full())).collect::<Result<Vec<_>>>()?;
        let dmask = h
            .deltas()
            .iter()
            .map(|d| colons.iter().map(|i| ev.ideal_mask(&d.apply(i)?)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Quot { proj, ev, lattice, up, down, dmask })
    }

    fn module(&self) -> &Module {
        self.proj.target()
    }

    /// `φ'(N')` for every `N'`.
    fn reduced(&self, ctx: &ModCtx, p: usize) -> Result<Vec<Option<Submodule>>> {
        self.up.iter().map(|&u| ctx.reduced[p][u].as_ref().map(|f| self.proj.image(f)).transpose()).collect()
    }

    /// Witnesses of `N'` in `M/K`; empty when `N'` is not proper or `δ`
    /// meets `S`.
    fn witnesses(&self, ctx: &ModCtx, n: usize, f: &Option<Submodule>, d: usize, s: usize) -> Vec<usize> {
        let dm = &self.dmask[d][n];
        let image = &ctx.mcs[s].image;
        if !self.lattice[n].is_proper() || image.iter().any(|&x| dm[x]) {
            return Vec::new();
        }
        self.ev.witnesses(self.lattice[n].mask(), f.as_ref().map(|f| f.mask()), dm, image)
    }
}

/// The (φ-φ') condition for the natural projection: every `L ⊇ K` has
/// `φ(L) = ∅` or `K ⊆ φ(L)`.
fn phi_compatible(ctx: &ModCtx, k: usize, p: usize) -> bool {
    let kk = &ctx.lattice[k];
    (0..ctx.lattice.len())
        .filter(|&l| kk.is_subset(&ctx.lattice[l]))
        .all(|l| ctx.reduced[p][l].as_ref().is_none_or(|f| kk.is_subset(f)))
}

fn quotients(h: &Harness, ctx: &ModCtx) -> Result<Vec<(usize, Quot)>> {
    ctx.proper().map(|k| Ok((k, Quot::new(h, ctx, k)?))).collect()
}

fn witness_list(ctx: &ModCtx, w: &[usize]) -> String {
    w.iter().map(|&x| ctx.elem(x)).collect::<Vec<_>>().join(",")
}

pub(super) fn p20(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        for (k, q) in quotients(h, ctx)? {
            for (p, phi) in h.phis().iter().enumerate() {
                let compatible = phi_compatible(ctx, k, p);
                let reduced = q.reduced(ctx, p)?;
                for n in ctx.proper().filter(|n| q.down.contains_key(n)) {
                    if !compatible {
                        r.exclude("not a (φ-φ')-epimorphism");
                        continue;
                    }
                    r.met();
                    let fnn = q.down[&n];
                    let qm = q.module();
                    let colon_ok = qm.colon_ring(&q.lattice[fnn], &qm.full())? == ctx.colon[n];
                    let image_phi = ctx.reduced[p][n].as_ref().map(|f| q.proj.image(f)).transpose()?;
                    let phi_ok = image_phi == reduced[fnn];
                    r.conclude(colon_ok && phi_ok, || {
                        obj(vec![
                            ("module", ctx.name.clone()),
                            ("K", ctx.lattice[k].format_generators()),
                            ("N", ctx.lattice[n].format_generators()),
                            ("phi", phi.to_string()),
                            ("identities", format!("({colon_ok}, {phi_ok})")),
                        ])
                    });
                }
            }
        }
    }
    Ok(())
}

pub(super) fn p21(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        for (k, q) in quotients(h, ctx)? {
            for (p, phi) in h.phis().iter().enumerate() {
                let compatible = phi_compatible(ctx, k, p);
                let reduced = q.reduced(ctx, p)?;
                for (d, delta) in h.deltas().iter().enumerate() {
                    for n in ctx.proper().filter(|n| q.down.contains_key(n)) {
                        for s in 0..ctx.mcs.len() {
                            if !compatible {
                                r.exclude("not a (φ-φ')-epimorphism");
                                continue;
                            }
                            r.met();
                            let w = ctx.witnesses(n, p, d, s);
                            let w = w.as_ref().as_deref().unwrap_or(&[]);
                            let fnn = q.down[&n];
                            let qw = q.witnesses(ctx, fnn, &reduced[fnn], d, s);
                            r.conclude(w == qw.as_slice(), || {
                                let mut v = ctx.describe(n, phi, delta, s);
                                v.push(("K", ctx.lattice[k].format_generators()));
                                v.push(("witnesses", witness_list(ctx, w)));
                                v.push(("image witnesses", witness_list(ctx, &qw)));
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

pub(super) fn p22(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        for (k, q) in quotients(h, ctx)? {
            for (p, phi) in h.phis().iter().enumerate() {
                let compatible = phi_compatible(ctx, k, p);
                let reduced = q.reduced(ctx, p)?;
                for (d, delta) in h.deltas().iter().enumerate() {
                    for (n, red) in reduced.iter().enumerate() {
                        for s in 0..ctx.mcs.len() {
                            if !compatible {
                                r.exclude("not a (φ-φ')-epimorphism");
                                continue;
                            }
                            let qw = q.witnesses(ctx, n, red, d, s);
                            if qw.is_empty() {
                                r.not_met();
                                continue;
                            }
                            r.met();
                            let u = q.up[n];
                            let bad = qw.iter().copied().find(|&x| !ctx.primary_at(u, p, d, s, x));
                            r.conclude(bad.is_none(), || {
                                let mut v = ctx.describe(u, phi, delta, s);
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

pub(super) fn p23(h: &Harness, r: &mut PropReport) -> Result<()> {
    for ctx in &h.mods {
        for (k, q) in quotients(h, ctx)? {
            for (p, phi) in h.phis().iter().enumerate() {
                let compatible = phi_compatible(ctx, k, p);
                let reduced = q.reduced(ctx, p)?;
                for (d, delta) in h.deltas().iter().enumerate() {
                    for s in 0..ctx.mcs.len() {
                        if !compatible {
                            r.exclude("not a (φ-φ')-epimorphism");
                            continue;
                        }
                        r.met();
                        let above: Vec<usize> =
                            ctx.proper().filter(|n| q.down.contains_key(n) && ctx.holds(*n, p, d, s)).collect();
                        let below: Vec<usize> = (0..q.lattice.len())
                            .filter(|&n| !q.witnesses(ctx, n, &reduced[n], d, s).is_empty())
                            .collect();
                        let mut mapped: Vec<usize> = above.iter().map(|n| q.down[n]).collect();
                        mapped.sort_unstable();
                        mapped.dedup();
                        let round_up = above.iter().all(|n| q.up[q.down[n]] == *n);
                        let round_down = below.iter().all(|&n| q.down.get(&q.up[n]) == Some(&n));
                        let ok = above.len() == below.len() && mapped == below && round_up && round_down;
                        r.conclude(ok, || {
                            obj(vec![
                                ("module", ctx.name.clone()),
                                ("K", ctx.lattice[k].format_generators()),
                                ("phi", phi.to_string()),
                                ("delta", delta.to_string()),
                                ("S", ctx.mcs[s].mcs.to_string()),
                                ("counts", format!("({}, {})", above.len(), below.len())),
                            ])
                        });
                    }
                }
            }
        }
    }
    Ok(())
}
