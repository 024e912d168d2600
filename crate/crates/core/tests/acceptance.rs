//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the terminal.

mod support;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sprimary::checker::classify;
use sprimary::harness::{run_suite, PropReport, Universe};
use sprimary::maps::{ExpansionFn, ParamIdeal, ReductionFn};
use sprimary::mcs::Mcs;
use sprimary::module::{Module, Submodule};
use sprimary::ring::{Elem, Ideal, Ring};
use support::{all_ideals, condition_at, Bits, Scalars, Set, Table};

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when a failure matches a documented defect of the statement
    /// under test rather than of the implementation.
    known: Option<String>,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into(), known: None }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn z_module(n: u64) -> Module {
    Module::new(&Ring::integers(), &[n], &[0]).unwrap()
}

fn reduced_elems(r: &Option<Submodule>) -> Option<Vec<usize>> {
    r.as_ref().map(|s| s.elements().collect())
}

fn criterion1() -> Outcome {
    let (res, t) = timed(|| {
        let m = z_module(18);
        let n = m.cyclic(m.from_coords(&[3]).unwrap());
        let v = classify(&n, &ReductionFn::MulJ(ParamIdeal::int(2)), &ExpansionFn::Rad, &Mcs::one(m.ring())).unwrap();
        (v.holds, reduced_elems(&v.reduced), v.expanded == Ideal::of_int(m.ring(), 3))
    });
    let (holds, reduced, expanded_ok) = res;
    let pass = holds && reduced == Some(vec![0, 6, 12]) && expanded_ok && t < Duration::from_secs(1);
    outcome(pass, format!("Z_18, N = <3>: holds={holds}, φ(N)={reduced:?}, δ(N:M)=3Z {expanded_ok}, {t:.2?}"))
}

fn criterion2() -> Outcome {
    let (res, t) = timed(|| {
        let ring = Ring::residues(&[12]).unwrap();
        let m = Module::ring_on_itself(&ring).unwrap();
        let n = m.cyclic(m.from_coords(&[4]).unwrap());
        let one = Mcs::one(&ring);
        let v = classify(&n, &ReductionFn::Power(2), &ExpansionFn::Id, &one).unwrap();
        let plain = classify(&n, &ReductionFn::Empty, &ExpansionFn::Id, &one).unwrap();
        let cex = plain.counterexample.map(|c| (c.a, m.format_elem(c.m)));
        (v.holds, plain.holds, cex, reduced_elems(&v.reduced))
    });
    let (holds, plain, cex, reduced) = res;
    let pass = holds
        && !plain
        && cex == Some((Elem(vec![2]), "2".to_string()))
        && reduced == Some(vec![0, 4, 8])
        && t < Duration::from_secs(1);
    outcome(
        pass,
        format!("Z_12, N = <4>: φ-δ-S-primary={holds}, δ-S-primary={plain}, counterexample={cex:?}, φ(N)={reduced:?}, {t:.2?}"),
    )
}

/// `δ(N:M)` membership, after checking the library's `(N:M)` against the
/// enumerated one.
fn expanded_member(sc: &Scalars, n: &Submodule, delta: &ExpansionFn) -> Box<dyn Fn(&Elem) -> bool> {
    let colon = n.module().annihilator_of_quotient(n);
    let naive = sc.module_colon(n);
    for r in &sc.elems {
        assert_eq!(colon.contains(r), naive.contains(r), "(N:M) of {n} at {r}");
    }
    let d = delta.apply(&colon).unwrap();
    Box::new(move |x: &Elem| d.contains(x))
}

fn in_colon(m: &Module, n: &Submodule, r: &Elem) -> bool {
    m.elements().all(|x| n.contains(m.act(r, x)))
}

fn some_power_in_colon(sc: &Scalars, m: &Module, n: &Submodule, r: &Elem) -> bool {
    sc.powers(r).iter().any(|p| in_colon(m, n, p))
}

// The classical notions, each written from its own definition.

fn textbook_prime(sc: &Scalars, n: &Submodule) -> bool {
    let m = n.module();
    n.is_proper()
        && sc.elems.iter().all(|r| m.elements().all(|x| !n.contains(m.act(r, x)) || n.contains(x) || in_colon(m, n, r)))
}

fn textbook_primary(sc: &Scalars, n: &Submodule) -> bool {
    let m = n.module();
    n.is_proper()
        && sc.elems.iter().all(|r| {
            m.elements().all(|x| !n.contains(m.act(r, x)) || n.contains(x) || some_power_in_colon(sc, m, n, r))
        })
}

fn textbook_phi_prime(sc: &Scalars, n: &Submodule, f: &Option<Submodule>) -> bool {
    let m = n.module();
    let in_f = |y: usize| f.as_ref().is_some_and(|f| f.contains(y));
    n.is_proper()
        && sc.elems.iter().all(|r| {
            m.elements().all(|x| {
                let y = m.act(r, x);
                !n.contains(y) || in_f(y) || n.contains(x) || in_colon(m, n, r)
            })
        })
}

fn textbook_phi_delta_primary(sc: &Scalars, n: &Submodule, f: &Option<Submodule>, d: &dyn Fn(&Elem) -> bool) -> bool {
    let m = n.module();
    let in_f = |y: usize| f.as_ref().is_some_and(|f| f.contains(y));
    n.is_proper()
        && !d(&sc.one())
        && sc.elems.iter().all(|r| {
            m.elements().all(|x| {
                let y = m.act(r, x);
                !n.contains(y) || in_f(y) || n.contains(x) || d(r)
            })
        })
}

fn textbook_s_prime(sc: &Scalars, n: &Submodule, s: &[Elem]) -> bool {
    let m = n.module();
    n.is_proper()
        && s.iter().all(|t| !in_colon(m, n, t))
        && s.iter().any(|t| {
            sc.elems.iter().all(|r| {
                m.elements()
                    .all(|x| !n.contains(m.act(r, x)) || n.contains(m.act(t, x)) || in_colon(m, n, &sc.mul(t, r)))
            })
        })
}

fn textbook_s_primary(sc: &Scalars, n: &Submodule, s: &[Elem]) -> bool {
    let m = n.module();
    n.is_proper()
        && s.iter().all(|t| !in_colon(m, n, t))
        && s.iter().any(|t| {
            sc.elems.iter().all(|r| {
                m.elements().all(|x| {
                    !n.contains(m.act(r, x)) || n.contains(m.act(t, x)) || some_power_in_colon(sc, m, n, &sc.mul(t, r))
                })
            })
        })
}

fn criterion3(u: &Universe) -> Outcome {
    let mut checked = 0u64;
    let mut mismatches: Vec<String> = Vec::new();
    let mut check = |ok: bool, what: &dyn Fn() -> String| {
        checked += 1;
        if !ok && mismatches.len() < 5 {
            mismatches.push(what());
        }
    };
    for e in &u.modules {
        let Some(sc) = Scalars::of_module(&e.module) else { continue };
        let one = Mcs::one(e.module.ring());
        for n in e.module.submodules().into_iter().filter(Submodule::is_proper) {
            let holds = |phi: &ReductionFn, delta: &ExpansionFn, s: &Mcs| classify(&n, phi, delta, s).unwrap().holds;
            let label = |item: &str| format!("{} N={} item {item}", e.name, n.format_generators());
            check(holds(&ReductionFn::Empty, &ExpansionFn::Id, &one) == textbook_prime(&sc, &n), &|| label("prime"));
            check(holds(&ReductionFn::Empty, &ExpansionFn::Rad, &one) == textbook_primary(&sc, &n), &|| {
                label("primary")
            });
            for phi in &u.reductions {
                let f = phi.apply(&n).unwrap();
                check(holds(phi, &ExpansionFn::Id, &one) == textbook_phi_prime(&sc, &n, &f), &|| label("φ-prime"));
                for delta in &u.expansions {
                    let d = expanded_member(&sc, &n, delta);
                    check(holds(phi, delta, &one) == textbook_phi_delta_primary(&sc, &n, &f, &*d), &|| {
                        label(&format!("φ-δ-primary {phi} {delta}"))
                    });
                }
            }
            for s in &e.mcs {
                let elems = sc.mcs(s);
                check(holds(&ReductionFn::Empty, &ExpansionFn::Id, s) == textbook_s_prime(&sc, &n, &elems), &|| {
                    label(&format!("S-prime {s}"))
                });
                check(holds(&ReductionFn::Empty, &ExpansionFn::Rad, s) == textbook_s_primary(&sc, &n, &elems), &|| {
                    label(&format!("S-primary {s}"))
                });
            }
        }
    }
    outcome(mismatches.is_empty(), format!("{checked} instances, mismatches: {mismatches:?}"))
}

fn report<'a>(reports: &'a [PropReport], id: &str) -> &'a PropReport {
    reports.iter().find(|r| r.prop_id == id).expect("registry id")
}

fn criterion4(reports: &[PropReport]) -> Outcome {
    let r = report(reports, "P05");
    let pass =
        r.violation_count == 0 && r.errors.is_empty() && r.hypothesis_met > 0 && r.elapsed < Duration::from_secs(300);
    outcome(
        pass,
        format!(
            "P05: {} instances with δ(N:M)∩S=∅, {} violations, {:.2?}",
            r.hypothesis_met, r.violation_count, r.elapsed
        ),
    )
}

/// The oracle's reading of both sides of the idempotent-reduction
/// equivalence on one instance.
fn idempotent_statements(sc: &Scalars, m: &Module, phi: &ReductionFn, delta: &ExpansionFn, s: &Mcs) -> (bool, bool) {
    let s_elems = sc.mcs(s);
    let lattice: Vec<Submodule> = m.submodules().into_iter().filter(Submodule::is_proper).collect();
    let delta_primary = |k: &Submodule| {
        let d = expanded_member(sc, k, delta);
        k.is_proper() && condition_at(sc, k, &None, &*d, &sc.one())
    };
    let s_primary = |k: &Submodule, f: &Option<BTreeSet<usize>>| {
        let d = expanded_member(sc, k, delta);
        s_elems.iter().all(|t| !d(t)) && s_elems.iter().any(|t| condition_at(sc, k, f, &*d, t))
    };
    let first = lattice.iter().all(|n| !s_primary(n, &sc.reduce(phi, n)) || delta_primary(n));
    let reductions_ok = lattice.iter().all(|n| match phi.apply(n).unwrap() {
        None => true,
        Some(f) => delta_primary(&f),
    });
    let plain_ok = lattice.iter().all(|n| !s_primary(n, &None) || delta_primary(n));
    (first, reductions_ok && plain_ok)
}

fn criterion5(u: &Universe, reports: &[PropReport], t: Duration) -> Outcome {
    let failing: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.prop_id.as_str()).collect();
    let distinguished = reports.iter().all(|r| r.instances_checked == r.hypothesis_met + r.hypothesis_not_met);
    let pass = failing.is_empty() && distinguished && reports.len() == 27 && t < Duration::from_secs(600);
    let detail =
        format!("{} reports, failing {failing:?}, met/not-met accounting {distinguished}, {t:.2?}", reports.len());
    if pass || failing != ["P14"] {
        return outcome(pass, detail);
    }
    // Re-derive every listed violation with the oracle.
    let p14 = report(reports, "P14");
    let mut confirmed = 0;
    for v in &p14.violations {
        let field = |k: &str| v[k].as_str().unwrap_or_default().to_string();
        let Some(e) = u.modules.iter().find(|e| e.name == field("module")) else { continue };
        let phi = u.reductions.iter().find(|p| p.to_string() == field("phi")).unwrap();
        let delta = u.expansions.iter().find(|d| d.to_string() == field("delta")).unwrap();
        let s = e.mcs.iter().find(|s| s.to_string() == field("S")).unwrap();
        let sc = Scalars::of_module(&e.module).unwrap();
        let (a, b) = idempotent_statements(&sc, &e.module, phi, delta, s);
        if a != b && field("statements") == format!("({a}, {b})") {
            confirmed += 1;
        }
    }
    let repaired = p14.diagnostics.get("violations with δ(φ(N):M) ∩ S = ∅ for every N").copied().unwrap_or(0);
    let repaired_total = p14.diagnostics.get("instances with δ(φ(N):M) ∩ S = ∅ for every N").copied().unwrap_or(0);
    let all_confirmed = confirmed == p14.violations.len() && !p14.violations.is_empty();
    let mut o = outcome(false, detail);
    if all_confirmed && repaired == 0 && p14.errors.is_empty() {
        o.known = Some(format!(
            "P14 has {} counterexamples to the statement as written, {confirmed}/{} listed ones re-derived by the oracle; \
             with δ(φ(N):M)∩S=∅ for every N it holds on all {repaired_total} such instances",
            p14.violation_count,
            p14.violations.len()
        ));
    }
    o
}

fn criterion6(reports: &[PropReport]) -> Outcome {
    let r = report(reports, "P23");
    let pass = r.violation_count == 0 && r.errors.is_empty() && r.hypothesis_met > 0;
    outcome(pass, format!("P23: {} (M, K, φ, δ, S) instances, {} violations", r.hypothesis_met, r.violation_count))
}

fn criterion7(u: &Universe, reports: &[PropReport]) -> Outcome {
    let r = report(reports, "P18");
    let expected: usize = u.modules.iter().map(|e| e.mcs.len()).sum();
    let iso = r.diagnostics.get("fraction modules isomorphic to M/T_S").copied().unwrap_or(0);
    let pass = iso as usize == expected && r.violation_count == 0 && r.errors.is_empty();
    outcome(pass, format!("S⁻¹M ≅ M/T_S on {iso}/{expected} (M, S); P18 violations {}", r.violation_count))
}

fn set_of(ideal: &Ideal) -> Set {
    ideal.elements().expect("finite ring").into_iter().collect()
}

/// Ideal operations over every pair of ideals of each ring.
fn ideal_ops(ring: &Ring) -> (u64, Vec<String>) {
    let t = Table::new(ring);
    let ideals = all_ideals(ring);
    let gens: Vec<usize> = ideals.iter().map(|i| t.elems.iter().position(|x| *x == i.generator()).unwrap()).collect();
    let sets: Vec<Bits> = gens.iter().map(|&g| t.principal(g)).collect();
    let mut checked = 0u64;
    let mut bad = Vec::new();
    let mut check = |ok: bool, what: &dyn Fn() -> String| {
        checked += 1;
        if !ok {
            bad.push(what());
        }
    };
    for (i, a) in ideals.iter().enumerate() {
        let sa = &sets[i];
        let listed: Bits = {
            let mut v = vec![false; t.len];
            for x in a.elements().expect("finite ring") {
                v[t.elems.iter().position(|e| *e == x).unwrap()] = true;
            }
            v
        };
        check(listed == *sa, &|| format!("{a} elements"));
        check(t.bits(a) == *sa, &|| format!("{a} membership"));
        check(t.bits(&a.radical()) == t.radical(sa), &|| format!("rad {a}"));
        check(t.bits(&a.annihilator()) == t.annihilator(sa), &|| format!("ann {a}"));
        let mut p = t.principal(t.one());
        for k in 1..=3 {
            p = t.product(&p, sa);
            check(t.bits(&a.power(k)) == p, &|| format!("{a}^{k}"));
        }
        for (xi, x) in t.elems.iter().enumerate() {
            let by_x: Bits = (0..t.len).map(|r| sa[t.mul(r, xi)]).collect();
            check(t.bits(&a.colon_elem(x)) == by_x, &|| format!("({a} : {x})"));
        }
        for (j, b) in ideals.iter().enumerate() {
            let sb = &sets[j];
            let meet: Bits = sa.iter().zip(sb).map(|(&x, &y)| x && y).collect();
            let within = sa.iter().zip(sb).all(|(&x, &y)| !x || y);
            check(t.bits(&a.sum(b).unwrap()) == t.sum(sa, sb), &|| format!("{a} + {b}"));
            check(t.bits(&a.product(b).unwrap()) == t.product(sa, sb), &|| format!("{a} {b}"));
            check(t.bits(&a.intersection(b).unwrap()) == meet, &|| format!("{a} ∩ {b}"));
            check(t.bits(&a.colon(b).unwrap()) == t.colon(sa, sb), &|| format!("({a} : {b})"));
            check(a.is_subset(b) == within, &|| format!("{a} ⊆ {b}"));
        }
    }
    (checked, bad)
}

/// Every finite product ring with at most `bound` elements, moduli in
/// non-decreasing order.
fn rings_up_to(bound: u64) -> Vec<Ring> {
    fn grow(prefix: &mut Vec<u64>, order: u64, bound: u64, out: &mut Vec<Ring>) {
        let least = prefix.last().copied().unwrap_or(2);
        for n in least..=bound / order {
            prefix.push(n);
            out.push(Ring::residues(prefix).unwrap());
            grow(prefix, order * n, bound, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 1, bound, &mut out);
    out
}

/// Full classification against the enumerated definition.
fn quantifiers(m: &Module, params: &[i64]) -> (u64, Vec<String>) {
    let sc = Scalars::of_ring(m.ring());
    let mcs = sprimary::harness::default_mcs(m.ring()).unwrap();
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for n in m.submodules().into_iter().filter(Submodule::is_proper) {
        let colon = sc.module_colon(&n);
        if set_of(&m.annihilator_of_quotient(&n)) != colon {
            bad.push(format!("{m} (N:M) of {n}"));
        }
        for phi in ReductionFn::catalog(params) {
            let f = sc.reduce(&phi, &n);
            let lib_f = phi.apply(&n).unwrap().map(|s| s.elements().collect::<BTreeSet<usize>>());
            if f != lib_f {
                bad.push(format!("{m} {phi}({n})"));
            }
            for delta in ExpansionFn::catalog(params) {
                let d = sc.expand(&delta, &colon);
                let member = |x: &Elem| d.contains(x);
                for s in &mcs {
                    checked += 1;
                    let elems = sc.mcs(s);
                    let pre = elems.iter().all(|t| !d.contains(t));
                    let witnesses: Vec<Elem> = if pre {
                        elems.iter().filter(|t| condition_at(&sc, &n, &f, &member, t)).cloned().collect()
                    } else {
                        Vec::new()
                    };
                    let v = classify(&n, &phi, &delta, s).unwrap();
                    let mut got = v.witnesses.clone();
                    got.sort();
                    if (v.precondition_ok != pre || v.holds != !witnesses.is_empty() || got != witnesses)
                        && bad.len() < 5
                    {
                        bad.push(format!("{m} N={} {phi} {delta} S={s}", n.format_generators()));
                    }
                }
            }
        }
    }
    (checked, bad)
}

fn criterion8() -> Outcome {
    let rings = rings_up_to(200);
    let mut ops = 0;
    let mut bad: Vec<String> = Vec::new();
    for r in &rings {
        assert!(r.order().unwrap() <= 200);
        let (c, b) = ideal_ops(r);
        ops += c;
        bad.extend(b);
    }
    let mut modules: Vec<Module> = Vec::new();
    for n in [2u64, 3, 4, 5, 6, 8, 9, 10, 12, 16, 18, 20, 24, 27, 30, 32, 36, 48, 60, 64] {
        modules.push(Module::ring_on_itself(&Ring::residues(&[n]).unwrap()).unwrap());
    }
    for moduli in [vec![2u64, 2], vec![2, 4], vec![4, 4], vec![2, 3], vec![2, 2, 2], vec![4, 6], vec![2, 3, 4]] {
        modules.push(Module::ring_on_itself(&Ring::residues(&moduli).unwrap()).unwrap());
    }
    let z2 = Ring::residues(&[2]).unwrap();
    let z4 = Ring::residues(&[4]).unwrap();
    let z6 = Ring::residues(&[6]).unwrap();
    let z8 = Ring::residues(&[8]).unwrap();
    let z2z3 = Ring::residues(&[2, 3]).unwrap();
    modules.push(Module::new(&z2, &[2, 2], &[0, 0]).unwrap());
    modules.push(Module::new(&z4, &[4, 2], &[0, 0]).unwrap());
    modules.push(Module::new(&z4, &[2, 2, 2], &[0, 0, 0]).unwrap());
    modules.push(Module::new(&z8, &[8, 4], &[0, 0]).unwrap());
    modules.push(Module::new(&z6, &[2, 3, 6], &[0, 0, 0]).unwrap());
    modules.push(Module::new(&z2z3, &[2, 2, 3], &[0, 0, 1]).unwrap());
    let mut quants = 0;
    for m in &modules {
        assert!(m.size() <= 64);
        let (c, b) = quantifiers(m, &[2, 3]);
        quants += c;
        bad.extend(b);
    }
    bad.truncate(5);
    outcome(
        bad.is_empty(),
        format!(
            "{ops} ideal operations on {} rings, {quants} classifications on {} modules; mismatches {bad:?}",
            rings.len(),
            modules.len()
        ),
    )
}

fn criterion9() -> Outcome {
    let mut u = Universe::standard().unwrap();
    u.corrupt_classify = true;
    let p05 = sprimary::harness::verify_proposition("P05", &u).unwrap().violation_count;
    let p12 = sprimary::harness::verify_proposition("P12", &u).unwrap().violation_count;
    outcome(p05 >= 1 && p12 >= 1, format!("with the corrupted δ branch: P05 {p05} violations, P12 {p12} violations"))
}

type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let u = Universe::standard().expect("standard universe");
    let (reports, suite_time) = timed(|| run_suite(&u).expect("suite runs"));
    let criteria: Vec<Criterion> = vec![
        (1, "Z_18 fixture", Box::new(criterion1)),
        (2, "separating Z_12 fixture", Box::new(criterion2)),
        (3, "hierarchy against textbook predicates", Box::new(|| criterion3(&u))),
        (4, "ideal-times-submodule equivalence", Box::new(|| criterion4(&reports))),
        (5, "full registry", Box::new(|| criterion5(&u, &reports, suite_time))),
        (6, "quotient correspondence", Box::new(|| criterion6(&reports))),
        (7, "localization oracle", Box::new(|| criterion7(&u, &reports))),
        (8, "enumeration oracle", Box::new(criterion8)),
        (9, "mutation sanity", Box::new(criterion9)),
    ];
    let results: Vec<(u32, &str, Outcome, Duration)> = criteria
        .into_iter()
        .map(|(i, name, f)| {
            let (o, t) = timed(f);
            (i, name, o, t)
        })
        .collect();
    let mut unexpected = 0;
    for (i, name, o, t) in &results {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {i} {verdict}: {name}: {} [checked in {t:.2?}]", o.detail);
        if let Some(k) = &o.known {
            println!("    known failure: {k}");
        } else if !o.pass {
            unexpected += 1;
        }
    }
    let passed = results.iter().filter(|(_, _, o, _)| o.pass).count();
    println!("{passed}/{} criteria pass, {unexpected} unexpected failures", results.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
