mod support;

use sprimary::checker::classify;
use sprimary::harness::search::{search_separating_instance, McsSpec, Property};
use sprimary::harness::{run_suite, verify_proposition, ModuleEntry, Universe};
use sprimary::maps::{ExpansionFn, ReductionFn};
use sprimary::mcs::Mcs;
use sprimary::module::{Module, Submodule};
use sprimary::ring::Ring;
use support::{condition_at, Scalars};

fn z12() -> Module {
    Module::ring_on_itself(&Ring::residues(&[12]).unwrap()).unwrap()
}

/// A universe over one module with a single choice of φ, δ and `S = {1}`.
fn single(m: Module, phi: ReductionFn, delta: ExpansionFn) -> Universe {
    let mut u = Universe::empty();
    u.modules.push(ModuleEntry { name: m.to_string(), mcs: vec![Mcs::one(m.ring())], module: m });
    u.reductions = vec![phi];
    u.expansions = vec![delta];
    u
}

fn cyclic(m: &Module, g: i64) -> Submodule {
    m.generated(&[m.from_coords(&[g]).unwrap()])
}

#[test]
fn empty_universe_gives_every_report_with_nothing_checked() {
    let reports = run_suite(&Universe::empty()).unwrap();
    assert_eq!(reports.len(), 27);
    for (i, r) in reports.iter().enumerate() {
        assert_eq!(r.prop_id, format!("P{:02}", i + 1));
        assert_eq!(r.instances_checked, 0, "{}", r.prop_id);
        assert!(r.passed());
    }
}

#[test]
fn unknown_proposition_is_an_error() {
    assert!(verify_proposition("P99", &Universe::empty()).is_err());
}

#[test]
fn counts_add_up_on_a_small_universe() {
    let u = Universe::over_modules(vec![z12()], &[2]).unwrap();
    for r in run_suite(&u).unwrap() {
        assert_eq!(r.hypothesis_met + r.hypothesis_not_met, r.instances_checked, "{}", r.prop_id);
        let excluded: u64 = r.excluded.values().sum();
        assert!(excluded <= r.hypothesis_not_met, "{}", r.prop_id);
        assert!(r.violations.len() as u64 <= r.violation_count, "{}", r.prop_id);
        assert!(r.errors.is_empty(), "{}: {:?}", r.prop_id, r.errors);
    }
}

#[test]
fn criterion_branch_skips_the_instance_where_it_is_needed() {
    // On Z_12 with φ = φ_2 and N = <4>, N is φ-δ-primary but not
    // δ-primary, and (N:M)N ⊆ φ(N). Had the instance been counted as
    // meeting the hypothesis it would be a violation.
    let m = z12();
    let n = cyclic(&m, 4);
    let one = Mcs::one(m.ring());
    assert!(classify(&n, &ReductionFn::Power(2), &ExpansionFn::Id, &one).unwrap().holds);
    assert!(!classify(&n, &ReductionFn::Empty, &ExpansionFn::Id, &one).unwrap().holds);

    let r = verify_proposition("P12", &single(m, ReductionFn::Power(2), ExpansionFn::Id)).unwrap();
    assert!(r.hypothesis_not_met >= 1);
    assert_eq!(r.violation_count, 0);
}

#[test]
fn correspondence_counts_match_enumeration() {
    let m = z12();
    let k = cyclic(&m, 4);
    let (q, _) = m.quotient(&k).unwrap();
    // φ_∅ and δ_id at s = 1 is primeness: only <2> and its image qualify.
    let count = |module: &Module, keep: &dyn Fn(&Submodule) -> bool| {
        let sc = Scalars::of_module(module).unwrap();
        let s = sc.one();
        module
            .submodules()
            .into_iter()
            .filter(|n| n.is_proper() && keep(n))
            .filter(|n| {
                let colon = sc.module_colon(n);
                condition_at(&sc, n, &None, &|r| colon.contains(r), &s)
            })
            .count()
    };
    let above = count(&m, &|n| k.is_subset(n));
    let below = count(&q, &|_| true);
    assert_eq!((above, below), (1, 1));

    let r = verify_proposition("P23", &single(m, ReductionFn::Empty, ExpansionFn::Id)).unwrap();
    assert!(r.hypothesis_met >= 1);
    assert_eq!(r.violation_count, 0);
}

#[test]
fn search_finds_the_separating_submodule() {
    let u = Universe::over_modules(vec![z12()], &[2]).unwrap();
    let a = Property::PhiDeltaSPrimary { phi: ReductionFn::Power(2), delta: ExpansionFn::Id, mcs: McsSpec::One };
    let b = Property::DeltaSPrimary { delta: ExpansionFn::Id, mcs: McsSpec::One };
    let found = search_separating_instance(&a, &b, &u).unwrap().expect("a separating submodule");
    assert_eq!(found.submodule, "<4>");
    assert_eq!(found.elements, ["0", "4", "8"]);
    assert_eq!(search_separating_instance(&a, &a, &u).unwrap(), None);
    assert_eq!(search_separating_instance(&b, &b, &u).unwrap(), None);
}

#[test]
fn suite_output_is_deterministic() {
    let modules = vec![z12(), Module::new(&Ring::integers(), &[2, 4], &[0, 0]).unwrap()];
    let mut u = Universe::over_modules(modules, &[2]).unwrap();
    u.add_product(
        Module::ring_on_itself(&Ring::residues(&[2]).unwrap()).unwrap(),
        Module::ring_on_itself(&Ring::residues(&[3]).unwrap()).unwrap(),
    )
    .unwrap();
    u.factor_expansions = vec![ExpansionFn::Id, ExpansionFn::Rad];
    u.factor_reductions = vec![ReductionFn::Empty, ReductionFn::Zero];
    let first = serde_json::to_string(&run_suite(&u).unwrap()).unwrap();
    let second = serde_json::to_string(&run_suite(&u).unwrap()).unwrap();
    assert_eq!(first, second);
}

#[test]
fn size_bound_is_enforced() {
    let mut u = Universe::over_modules(vec![z12()], &[2]).unwrap();
    u.bounds.max_module_size = 6;
    assert!(run_suite(&u).is_err());
}
