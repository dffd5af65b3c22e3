use proptest::prelude::*;
use tourndyn::drem::DremState;
use tourndyn::fast::{FastFullDS, FastPromiseDS};
use tourndyn::fvst::FvstDS;
use tourndyn::oracles;
use tourndyn::Tournament;

fn tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| Tournament::from_fn(n, |u, v| bits[u * n + v]))
    })
}

fn pairs() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0usize..64, 1usize..64), 0..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn both_fast_models_match_the_oracle_along_updates(t in tournament(9), ops in pairs()) {
        let n = t.n();
        let mut p = FastPromiseDS::new(t.clone(), 4);
        let mut f = FastFullDS::new(t);
        for (a, b) in ops {
            if n < 2 { break; }
            let (u, v) = (a % n, (a + b % (n - 1) + 1) % n);
            p.update(u, v).unwrap();
            f.update(u, v).unwrap();
            let opt = oracles::brute_fast(p.tournament()).unwrap();
            for k in 0..=4 {
                prop_assert_eq!(p.find_fast(k), opt <= k);
                prop_assert_eq!(f.find_fast(k), opt <= k);
            }
        }
        prop_assert!(p.audit().is_ok());
        prop_assert!(f.audit().is_ok());
    }

    #[test]
    fn remove_then_restore_is_the_identity(t in tournament(16), picks in prop::collection::vec(0usize..64, 1..4)) {
        let n = t.n();
        let mut d = DremState::new(t, 3, &[]).unwrap();
        let before = d.snapshot();
        let mut removed = Vec::new();
        for w in picks {
            let w = w % n;
            if !d.is_removed(w) {
                d.remove(w).unwrap();
                removed.push(w);
                prop_assert!(d.audit().is_ok());
            }
        }
        for &w in removed.iter().rev() {
            d.restore(w).unwrap();
            prop_assert!(d.audit().is_ok());
        }
        prop_assert_eq!(d.snapshot(), before);
    }

    #[test]
    fn fvst_queries_match_the_oracle_when_the_promise_holds(t in tournament(9)) {
        let opt = oracles::brute_fvst(&t).unwrap();
        let g = opt.max(1);
        if let Ok(mut ds) = FvstDS::new(t, g) {
            let before = ds.snapshot();
            for k in 0..=g {
                prop_assert_eq!(ds.find_fvst(k).unwrap(), opt <= k);
            }
            prop_assert_eq!(ds.snapshot(), before);
        }
    }
}
