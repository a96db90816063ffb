use std::sync::OnceLock;

use proptest::prelude::*;
use rlab_core::families::FamilyCache;
use rlab_core::identities::{catalog, difference_at, trig_spot_check, verify, Claim, IdentityReport, Verdict};

fn reports() -> &'static [IdentityReport] {
    static REPORTS: OnceLock<Vec<IdentityReport>> = OnceLock::new();
    REPORTS.get_or_init(|| {
        catalog()
            .iter()
            .map(|e| {
                let (lo, hi) = e.default_range();
                verify(e.id, lo, hi.min(40)).unwrap()
            })
            .collect()
    })
}

fn cache() -> &'static FamilyCache {
    static CACHE: OnceLock<FamilyCache> = OnceLock::new();
    CACHE.get_or_init(FamilyCache::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certified_entries_vanish_at_random_indices(pick in any::<prop::sample::Index>(), at in prop::array::uniform3(any::<prop::sample::Index>())) {
        let certified: Vec<_> = reports().iter().filter(|r| r.is_certified()).collect();
        let r = pick.get(&certified);
        let (lo, hi) = r.range;
        for i in at {
            let n = lo + i.index(hi - lo + 1);
            prop_assert!(difference_at(&r.id, n, cache()).unwrap().is_zero(), "{} at {}", r.id, n);
        }
    }

    #[test]
    fn certified_trig_forms_agree_at_random_angles(t in 0.01f64..3.13, pick in any::<prop::sample::Index>()) {
        let with_trig: Vec<_> = reports()
            .iter()
            .filter(|r| r.is_certified())
            .filter(|r| catalog().iter().any(|e| e.id == r.id && e.trig.is_some()))
            .collect();
        let r = pick.get(&with_trig);
        let dev = trig_spot_check(&r.id, &[t], 8).unwrap();
        prop_assert!(dev < 1e-9, "{} at t={}: {}", r.id, t, dev);
    }
}

#[test]
fn refutation_witnesses_repair_their_index() {
    for r in reports() {
        let Verdict::Refuted { fail_n, difference } = &r.verdict else { continue };
        assert!(!difference.is_zero());
        let e = catalog().iter().find(|e| e.id == r.id).unwrap();
        match &e.claim {
            Claim::Poly { left, right } => {
                let n = *fail_n as i64;
                let repaired = &right.eval(n, cache()).unwrap() + difference;
                assert_eq!(left.eval(n, cache()).unwrap(), repaired, "{}", r.id);
            }
            Claim::Matrix { .. } => {
                assert_eq!(&difference_at(&r.id, *fail_n, cache()).unwrap(), difference, "{}", r.id);
            }
        }
        // every earlier index verifies
        if *fail_n > r.range.0 {
            assert!(verify(&r.id, r.range.0, fail_n - 1).unwrap().is_certified(), "{}", r.id);
        }
    }
}

#[test]
fn verdicts_are_stable() {
    let again: Vec<_> = catalog()
        .iter()
        .map(|e| {
            let (lo, hi) = e.default_range();
            verify(e.id, lo, hi.min(40)).unwrap()
        })
        .collect();
    assert_eq!(again, reports());
}
