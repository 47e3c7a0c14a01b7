use dyck_core::oracle::count_restricted;
use dyck_core::symbolic::{build_peak_valley_system, build_run_length_system, fixpoint_matches, FIXPOINT_ORDER};
use dyck_core::{dp, IntSet, Progression, RestrictionSpec};
use proptest::prelude::*;

fn any_set() -> impl Strategy<Value = IntSet> {
    (
        prop::collection::vec((1u32..=5, 0u32..=8), 0..3),
        prop::collection::btree_set(0u32..=10, 0..4),
        prop::collection::btree_set(0u32..=10, 0..3),
    )
        .prop_map(|(aps, inc, exc)| {
            let aps = aps.into_iter().map(|(m, o)| Progression::new(m, o)).collect();
            IntSet::from_parts(aps, inc, exc)
        })
}

/// Positive sets with elements and offsets at most 6.
fn restriction_set() -> impl Strategy<Value = IntSet> {
    prop_oneof![
        Just(IntSet::empty()),
        prop::collection::btree_set(1u32..=6, 1..3).prop_map(IntSet::finite),
        (1u32..=4, 1u32..=6).prop_map(|(m, o)| IntSet::progression(m, o)),
    ]
}

fn finite_set() -> impl Strategy<Value = IntSet> {
    prop::collection::btree_set(1u32..=5, 0..3).prop_map(IntSet::finite)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shift_down_moves_membership(s in any_set()) {
        let t = s.shift_down();
        for x in 1..60u32 {
            prop_assert_eq!(t.contains(x - 1), s.contains(x));
        }
    }

    #[test]
    fn canonical_form_is_idempotent(s in any_set()) {
        prop_assert_eq!(s.canonicalize(), s.clone());
        let text = s.to_string();
        prop_assert_eq!(text.parse::<IntSet>().unwrap(), s);
    }

    #[test]
    fn equal_membership_means_equal_form(s in any_set(), split in 1u32..=3, extra in prop::collection::btree_set(0u32..=30, 0..4)) {
        // Same set, written with finer progressions plus redundant literals.
        let mut aps = Vec::new();
        for p in s.progressions() {
            for i in 0..split {
                aps.push(Progression::new(p.modulus * split, p.offset + i * p.modulus));
            }
        }
        let mut inc: Vec<u32> = s.includes().iter().copied().collect();
        inc.extend(extra.into_iter().filter(|&x| s.contains(x)));
        let t = IntSet::from_parts(aps, inc, []);
        let horizon = s.max_anchor().max(t.max_anchor()) + 2 * s.period().max(t.period()) + 2;
        prop_assert_eq!(s.mask(horizon as usize), t.mask(horizon as usize));
        prop_assert_eq!(t, s);
    }

    #[test]
    fn remove_drops_exactly_one_element(s in any_set(), x in 0u32..=20) {
        let t = s.remove(x);
        for y in 0..60u32 {
            prop_assert_eq!(t.contains(y), s.contains(y) && y != x);
        }
    }

    #[test]
    fn shift_orbit_is_bounded(s in any_set()) {
        let bound = s.max_anchor() as usize + s.period() as usize + 1;
        prop_assert!(s.shift_orbit_len() <= bound);
    }

    #[test]
    fn reversal_symmetry(a in restriction_set(), b in restriction_set(), c in restriction_set(), d in restriction_set()) {
        let spec = RestrictionSpec::new(a, b, c, d);
        prop_assert_eq!(dp::sequence(&spec, 14).unwrap(), dp::sequence(&spec.reversed(), 14).unwrap());
    }

    #[test]
    fn dp_agrees_with_enumeration(a in restriction_set(), b in restriction_set(), c in restriction_set(), d in restriction_set()) {
        let spec = RestrictionSpec::new(a, b, c, d);
        let seq = dp::sequence(&spec, 8).unwrap();
        for n in 0..=8 {
            prop_assert_eq!(&seq.terms[n], &count_restricted(&spec, n).unwrap(), "n = {}", n);
            prop_assert!(seq.terms[n] <= dp::catalan_number(n));
        }
    }

    #[test]
    fn peak_valley_system_fixpoint(a in restriction_set(), b in restriction_set()) {
        let sys = build_peak_valley_system(&a, &b).unwrap();
        let seq = dp::sequence(&RestrictionSpec::peaks_valleys(a, b), FIXPOINT_ORDER).unwrap();
        prop_assert!(fixpoint_matches(&sys, &seq.terms, FIXPOINT_ORDER).unwrap());
    }

    #[test]
    fn run_length_system_fixpoint(c in restriction_set(), d in restriction_set()) {
        let sys = build_run_length_system(&c, &d).unwrap();
        let seq = dp::sequence(&RestrictionSpec::runs(c, d), FIXPOINT_ORDER).unwrap();
        prop_assert!(fixpoint_matches(&sys, &seq.terms, FIXPOINT_ORDER).unwrap());
    }

    #[test]
    fn finite_systems_stay_small(a in finite_set(), b in finite_set()) {
        let top = |s: &IntSet| s.max_anchor() as usize + 2;
        let ab = build_peak_valley_system(&a, &b).unwrap();
        prop_assert!(ab.len() <= top(&a) * top(&b));
        let cd = build_run_length_system(&a, &b).unwrap();
        prop_assert!(cd.len() <= 2 * top(&a) * top(&b));
    }

    #[test]
    fn systems_are_deterministic(c in restriction_set(), d in restriction_set()) {
        let s1 = build_run_length_system(&c, &d).unwrap();
        let s2 = build_run_length_system(&c, &d).unwrap();
        prop_assert_eq!(s1.render(), s2.render());
    }
}
