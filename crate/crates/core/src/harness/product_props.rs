//! Propositions about `M_1 × M_2` over `R_1 × R_2` with `φ_×`, `δ_×` and
//! `S = S_1 × S_2` built from the factor catalogs.

use std::collections::HashMap;

use super::context::{obj, Harness, ModCtx, ProdCtx};
use super::PropReport;
use crate::error::Result;
use crate::module::Module;

/// Product masks for one choice of `(N_1, N_2, φ_1, φ_2, δ_1, δ_2)`.
struct Frame {
    n: Vec<bool>,
    f: Option<Vec<bool>>,
    d: Vec<bool>,
    /// Key of `φ_×(N)` used for memoization.
    fkey: Option<(usize, usize)>,
}

/// Factor submodules, φ pair, plain flag, encoded δ pair, product element and a spare slot.
type MemoKey = (usize, usize, Option<(usize, usize)>, bool, usize, usize, usize);

struct ProdEval<'a> {
    c: &'a ProdCtx,
    /// Product-domain index of `(a, b)`.
    pidx: Vec<Vec<usize>>,
    memo: HashMap<MemoKey, bool>,
}

impl<'a> ProdEval<'a> {
    fn new(c: &'a ProdCtx) -> ProdEval<'a> {
        let l = c.left.ev.domain().len();
        let r = c.right.ev.domain().len();
        let pidx = (0..l).map(|a| (0..r).map(|b| c.pair_scalar(a, b)).collect()).collect();
        ProdEval { c, pidx, memo: HashMap::new() }
    }

    fn frame(&self, n1: usize, n2: usize, p1: usize, p2: usize, d1: usize, d2: usize) -> Frame {
        let (l, r) = (&self.c.left, &self.c.right);
        let pm = &self.c.entry.product;
        let n = pm.submodule(&l.lattice[n1], &r.lattice[n2]).mask().to_vec();
        let (f, fkey) = match (&l.reduced[p1][n1], &r.reduced[p2][n2]) {
            (Some(a), Some(b)) => (Some(pm.submodule(a, b).mask().to_vec()), Some((l.idx(a), r.idx(b)))),
            _ => (None, None),
        };
        let (dl, dr) = (&l.dmask[d1][n1], &r.dmask[d2][n2]);
        let mut d = vec![false; self.c.ev.domain().len()];
        for (a, row) in self.pidx.iter().enumerate() {
            for (b, &z) in row.iter().enumerate() {
                d[z] = dl[a] && dr[b];
            }
        }
        Frame { n, f, d, fkey }
    }

    fn precondition(&self, fr: &Frame, s1: usize, s2: usize) -> bool {
        !self.c.images[s1][s2].iter().any(|&z| fr.d[z])
    }

    /// Condition at `(x, y)`, ignoring `φ_×` when `plain`.
    #[allow(clippy::too_many_arguments)]
    fn at(&mut self, fr: &Frame, key: (usize, usize, usize, usize), plain: bool, x: usize, y: usize) -> bool {
        let (n1, n2, d1, d2) = key;
        let fkey = if plain { None } else { fr.fkey };
        let z = self.pidx[x][y];
        let dkey = d1 * 1024 + d2;
        let k = (n1, n2, fkey, plain || fr.f.is_none(), dkey, z, 0);
        if let Some(&v) = self.memo.get(&k) {
            return v;
        }
        let f = if plain { None } else { fr.f.as_deref() };
        let v = self.c.ev.violation(&fr.n, f, &fr.d, z, None).is_none();
        self.memo.insert(k, v);
        v
    }

    /// Whether `N` is primary at `(x, y)` for `S_1 × S_2`.
    #[allow(clippy::too_many_arguments)]
    fn primary(
        &mut self,
        fr: &Frame,
        key: (usize, usize, usize, usize),
        plain: bool,
        s: (usize, usize),
        x: usize,
        y: usize,
    ) -> bool {
        self.precondition(fr, s.0, s.1) && self.at(fr, key, plain, x, y)
    }
}

fn describe(
    c: &ProdCtx,
    h: &Harness,
    n: (usize, usize),
    p: (usize, usize),
    d: (usize, usize),
    s: (usize, usize),
) -> Vec<(&'static str, String)> {
    let u = &h.universe;
    vec![
        ("product", c.name.clone()),
        ("N1", c.left.lattice[n.0].format_generators()),
        ("N2", c.right.lattice[n.1].format_generators()),
        ("phi", format!("prod({};{})", u.factor_reductions[p.0], u.factor_reductions[p.1])),
        ("delta", format!("prod({};{})", u.factor_expansions[d.0], u.factor_expansions[d.1])),
        ("S", format!("{} × {}", c.left.mcs[s.0].mcs, c.right.mcs[s.1].mcs)),
    ]
}

fn full_index(ctx: &ModCtx) -> usize {
    ctx.idx(&ctx.module.full())
}

/// P24, P25 and their swapped forms. `fixed_full` selects `φ(M_j) = M_j`
/// for the full factor; `swap` puts the proper factor on the right.
fn full_factor(h: &Harness, r: &mut PropReport, swap: bool, fixed_full: bool) -> Result<()> {
    let np = h.universe.factor_reductions.len();
    let nd = h.universe.factor_expansions.len();
    for c in &h.prods {
        let mut pe = ProdEval::new(c);
        let (var, full) = if swap { (&c.right, &c.left) } else { (&c.left, &c.right) };
        let fi = full_index(full);
        for nv in var.proper() {
            let (n1, n2) = if swap { (fi, nv) } else { (nv, fi) };
            for p1 in 0..np {
                for p2 in 0..np {
                    let (pv, pf) = if swap { (p2, p1) } else { (p1, p2) };
                    let full_fixed = full.reduced[pf][fi].as_ref().is_some_and(|f| !f.is_proper());
                    for d1 in 0..nd {
                        for d2 in 0..nd {
                            let dv = if swap { d2 } else { d1 };
                            let fr = pe.frame(n1, n2, p1, p2, d1, d2);
                            let key = (n1, n2, d1, d2);
                            for s1 in 0..c.left.mcs.len() {
                                for s2 in 0..c.right.mcs.len() {
                                    if full_fixed != fixed_full {
                                        r.not_met();
                                        continue;
                                    }
                                    r.met();
                                    let sv = if swap { s2 } else { s1 };
                                    let mut bad = None;
                                    'pairs: for &x in &c.left.mcs[s1].image {
                                        for &y in &c.right.mcs[s2].image {
                                            let xv = if swap { y } else { x };
                                            let c1 = pe.primary(&fr, key, false, (s1, s2), x, y);
                                            let c2 = if fixed_full {
                                                var.primary_at(nv, pv, dv, sv, xv)
                                            } else {
                                                let factor = var.precondition(nv, dv, sv)
                                                    && var
                                                        .ev
                                                        .violation(
                                                            var.lattice[nv].mask(),
                                                            None,
                                                            &var.dmask[dv][nv],
                                                            xv,
                                                            None,
                                                        )
                                                        .is_none();
                                                factor && pe.primary(&fr, key, true, (s1, s2), x, y)
                                            };
                                            if c1 != c2 {
                                                bad = Some((x, y, c1, c2));
                                                break 'pairs;
                                            }
                                        }
                                    }
                                    r.conclude(bad.is_none(), || {
                                        let mut v = describe(c, h, (n1, n2), (p1, p2), (d1, d2), (s1, s2));
                                        if let Some((x, y, c1, c2)) = bad {
                                            v.push(("s", format!("({}, {})", c.left.elem(x), c.right.elem(y))));
                                            v.push(("statements", format!("({c1}, {c2})")));
                                        }
                                        obj(v)
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

pub(super) fn p24(h: &Harness, r: &mut PropReport) -> Result<()> {
    full_factor(h, r, false, false)
}

pub(super) fn p25(h: &Harness, r: &mut PropReport) -> Result<()> {
    full_factor(h, r, false, true)
}

pub(super) fn p27(h: &Harness, r: &mut PropReport) -> Result<()> {
    full_factor(h, r, true, false)?;
    full_factor(h, r, true, true)
}

fn on_itself(m: &Module) -> bool {
    m.ring().is_finite() && Module::ring_on_itself(m.ring()).is_ok_and(|x| &x == m)
}

/// Ideal-level witnesses of `I = (N:M)` with `Φ = (φ(N):M)` in one factor.
fn factor_ideal_witnesses(ctx: &ModCtx, n: usize, p: usize, d: usize, s: usize) -> Result<Vec<usize>> {
    let m = &ctx.module;
    if !ctx.precondition(n, d, s) {
        return Ok(Vec::new());
    }
    let i = ctx.ev.ideal_mask(&ctx.colon[n])?;
    let phi = ctx.reduced[p][n].as_ref().map(|f| ctx.ev.ideal_mask(&m.colon_ring(f, &m.full())?)).transpose()?;
    Ok(ctx.ev.ideal_witnesses(&i, phi.as_deref(), &ctx.dmask[d][n], &ctx.mcs[s].image))
}

pub(super) fn p26(h: &Harness, r: &mut PropReport) -> Result<()> {
    let np = h.universe.factor_reductions.len();
    let nd = h.universe.factor_expansions.len();
    for c in &h.prods {
        let mut pe = ProdEval::new(c);
        let (l, rt) = (&c.left, &c.right);
        let rings = on_itself(&c.entry.product.left) && on_itself(&c.entry.product.right);
        let pm = &c.entry.product;
        let whole = &pm.module;
        for n1 in 0..l.lattice.len() {
            for n2 in 0..rt.lattice.len() {
                if !l.lattice[n1].is_proper() && !rt.lattice[n2].is_proper() {
                    continue;
                }
                for p1 in 0..np {
                    for p2 in 0..np {
                        for d1 in 0..nd {
                            for d2 in 0..nd {
                                let fr = pe.frame(n1, n2, p1, p2, d1, d2);
                                let key = (n1, n2, d1, d2);
                                let ideal = if rings {
                                    let nn = pm.submodule(&l.lattice[n1], &rt.lattice[n2]);
                                    let i = c.ev.ideal_mask(&whole.colon_ring(&nn, &whole.full())?)?;
                                    let phi = match &fr.f {
                                        None => None,
                                        Some(f) => {
                                            let fs = crate::module::Submodule::from_mask(whole, f.clone());
                                            Some(c.ev.ideal_mask(&whole.colon_ring(&fs, &whole.full())?)?)
                                        }
                                    };
                                    Some((i, phi))
                                } else {
                                    None
                                };
                                for s1 in 0..l.mcs.len() {
                                    for s2 in 0..rt.mcs.len() {
                                        let pairs: Vec<(usize, usize)> = l.mcs[s1]
                                            .image
                                            .iter()
                                            .flat_map(|&x| rt.mcs[s2].image.iter().map(move |&y| (x, y)))
                                            .collect();
                                        let pre = pe.precondition(&fr, s1, s2);
                                        let w: Vec<(usize, usize)> = if pre {
                                            pairs
                                                .iter()
                                                .copied()
                                                .filter(|&(x, y)| pe.at(&fr, key, false, x, y))
                                                .collect()
                                        } else {
                                            Vec::new()
                                        };
                                        if w.is_empty() {
                                            r.not_met();
                                        } else {
                                            r.met();
                                            let bad = w.iter().copied().find(|&(x, y)| {
                                                !l.primary_at(n1, p1, d1, s1, x) && !rt.primary_at(n2, p2, d2, s2, y)
                                            });
                                            r.conclude(bad.is_none(), || {
                                                let mut v = describe(c, h, (n1, n2), (p1, p2), (d1, d2), (s1, s2));
                                                let (x, y) = bad.unwrap_or((0, 0));
                                                v.push(("s", format!("({}, {})", l.elem(x), rt.elem(y))));
                                                obj(v)
                                            });
                                        }
                                        let Some((i, phi)) = &ideal else { continue };
                                        let iw: Vec<(usize, usize)> = if pre {
                                            pairs
                                                .iter()
                                                .copied()
                                                .filter(|&(x, y)| {
                                                    c.ev.ideal_violation(i, phi.as_deref(), &fr.d, pe.pidx[x][y])
                                                        .is_none()
                                                })
                                                .collect()
                                        } else {
                                            Vec::new()
                                        };
                                        if iw.is_empty() {
                                            r.not_met();
                                            continue;
                                        }
                                        r.met();
                                        let lw = factor_ideal_witnesses(l, n1, p1, d1, s1)?;
                                        let rw = factor_ideal_witnesses(rt, n2, p2, d2, s2)?;
                                        let bad = iw.iter().copied().find(|(x, y)| !lw.contains(x) && !rw.contains(y));
                                        r.conclude(bad.is_none(), || {
                                            let mut v = describe(c, h, (n1, n2), (p1, p2), (d1, d2), (s1, s2));
                                            let (x, y) = bad.unwrap_or((0, 0));
                                            v.push(("level", "ideal".to_string()));
                                            v.push(("s", format!("({}, {})", l.elem(x), rt.elem(y))));
                                            obj(v)
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
