mod support;

use std::collections::BTreeSet;

use proptest::prelude::*;
use sprimary::checker::classify;
use sprimary::maps::{ExpansionFn, ReductionFn};
use sprimary::mcs::Mcs;
use sprimary::module::Module;
use sprimary::ring::{Elem, Ideal, Ring};
use sprimary::scenario::parse_scenario;
use support::{condition_at, Scalars, Set};

fn finite_ring() -> impl Strategy<Value = Vec<u64>> {
    prop_oneof![(2u64..=60).prop_map(|n| vec![n]), (2u64..=8, 2u64..=8).prop_map(|(a, b)| vec![a, b])]
}

fn ideal_from(ring: &Ring, seeds: &[i64]) -> Ideal {
    Ideal::new(ring, &seeds[..ring.len()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ideal_operations_match_enumeration(
        moduli in finite_ring(),
        a in prop::collection::vec(0i64..60, 2),
        b in prop::collection::vec(0i64..60, 2),
        x in prop::collection::vec(0i64..60, 2),
    ) {
        let ring = Ring::residues(&moduli).unwrap();
        let sc = Scalars::of_ring(&ring);
        let (i, j) = (ideal_from(&ring, &a), ideal_from(&ring, &b));
        let (si, sj) = (sc.ideal_set(&i), sc.ideal_set(&j));
        let x = sc.norm(&Elem(x[..ring.len()].to_vec()));

        prop_assert_eq!(sc.ideal_set(&i.sum(&j).unwrap()), sc.sum(&si, &sj));
        prop_assert_eq!(sc.ideal_set(&i.product(&j).unwrap()), sc.product(&si, &sj));
        prop_assert_eq!(sc.ideal_set(&i.intersection(&j).unwrap()), si.intersection(&sj).cloned().collect::<Set>());
        prop_assert_eq!(sc.ideal_set(&i.colon(&j).unwrap()), sc.colon(&si, &sj));
        prop_assert_eq!(sc.ideal_set(&i.radical()), sc.radical(&si));
        prop_assert_eq!(sc.ideal_set(&i.annihilator()), sc.annihilator(&si));
        let by_x: Set = sc.elems.iter().filter(|r| si.contains(&sc.mul(r, &x))).cloned().collect();
        prop_assert_eq!(sc.ideal_set(&i.colon_elem(&x)), by_x);
        prop_assert_eq!(i.contains(&x), si.contains(&x));
        prop_assert_eq!(i.is_subset(&j), si.is_subset(&sj));
    }

    #[test]
    fn scenarios_survive_serialization(
        n in 2u64..=40,
        over_integers in any::<bool>(),
        g in 0i64..40,
        s in 0usize..4,
        delta in prop::sample::select(vec!["rad", "id", "ann", "res(2)", "plus(3)"]),
        phi in prop::sample::select(vec!["empty", "zero", "id", "power(2)", "colonM", "mulJ(2)"]),
        size in 100u64..5000,
    ) {
        let ring = if over_integers { "Z".to_string() } else { format!("Z_{n}") };
        let mcs = ["one", "(1)", "(3)", "(5), (7)"][s];
        let text = format!(
            "[ring]\ncomponents = {ring}\n\n[module]\norders = {n}\n\n[submodule]\ngenerators = ({g})\n\n\
             [mcs]\ngenerators = {mcs}\n\n[delta]\nfunction = {delta}\n\n[phi]\nfunction = {phi}\n\n\
             [options]\nmax_module_size = {size}\n"
        );
        // Some combinations are rejected, e.g. an m.c.s. meeting zero.
        if let Ok(parsed) = parse_scenario(&text) {
            let again = parse_scenario(&parsed.serialize()).unwrap();
            prop_assert_eq!(&again, &parsed);
            prop_assert_eq!(again.serialize(), parsed.serialize());
        }
    }

    #[test]
    fn verdicts_agree_with_the_definition(
        n in 2u64..=24,
        over_integers in any::<bool>(),
        g in 0i64..24,
        s_gen in 1i64..24,
        use_one in any::<bool>(),
        d in 0usize..7,
        p in 0usize..7,
    ) {
        let (module, ring) = if over_integers {
            let z = Ring::integers();
            (Module::new(&z, &[n], &[0]).unwrap(), z)
        } else {
            let r = Ring::residues(&[n]).unwrap();
            (Module::ring_on_itself(&r).unwrap(), r)
        };
        let delta = ExpansionFn::catalog(&[2, 3]).swap_remove(d);
        let phi = ReductionFn::catalog(&[2]).swap_remove(p);
        let mcs = if use_one {
            Mcs::one(&ring)
        } else {
            match Mcs::closure(&ring, &[ring.from_int(s_gen)]) {
                Ok(s) => s,
                Err(_) => return Ok(()),
            }
        };
        let nsub = module.generated(&[module.from_coords(&[g]).unwrap()]);
        prop_assume!(nsub.is_proper());
        let v = classify(&nsub, &phi, &delta, &mcs).unwrap();

        let sc = Scalars::of_module(&module).unwrap();
        let colon = sc.module_colon(&nsub);
        prop_assert_eq!(&sc.ideal_set(&v.colon), &colon);
        let reduced = sc.reduce(&phi, &nsub);
        prop_assert_eq!(v.reduced.as_ref().map(|r| r.elements().collect::<BTreeSet<_>>()), reduced.clone());
        let expanded = sc.ideal_set(&v.expanded);
        if ring.is_finite() {
            prop_assert_eq!(&expanded, &sc.expand(&delta, &colon));
        }

        let s_set = sc.mcs(&mcs);
        prop_assert_eq!(v.precondition_ok, s_set.iter().all(|s| !expanded.contains(s)));
        if !v.precondition_ok {
            prop_assert!(!v.holds);
            return Ok(());
        }
        let admissible = |s: &Elem| condition_at(&sc, &nsub, &reduced, &|r| expanded.contains(r), s);
        for w in &v.witnesses {
            prop_assert!(admissible(&sc.norm(w)), "witness {} fails", w);
        }
        prop_assert_eq!(v.holds, s_set.iter().any(admissible));
        if let Some(c) = &v.counterexample {
            let a = sc.norm(&c.a);
            let am = module.act(&a, c.m);
            prop_assert!(nsub.contains(am));
            prop_assert!(!reduced.as_ref().is_some_and(|f| f.contains(&am)));
            prop_assert!(!nsub.contains(c.m));
            prop_assert!(!expanded.contains(&a));
        }
    }
}
