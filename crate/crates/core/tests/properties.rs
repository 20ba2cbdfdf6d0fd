use proptest::prelude::*;
use rand::seq::SliceRandom;

use nuclei_core::assembly::{canonical_label, rooted_key, unrooted_key};
use nuclei_core::complex::{validate_ball, Node};
use nuclei_core::io::{corpus, format_triangulation, parse_triangulation};
use nuclei_core::reducer::{decompose, ReduceConfig};
use nuclei_core::Triangulation;

fn ball(seed: u64, internal: usize) -> Triangulation {
    corpus::random_ball(seed, internal)
}

/// Renames every node by a random permutation of 1..=max.
fn shuffled(t: &Triangulation, seed: u64) -> Triangulation {
    let mut ids: Vec<Node> = (1..=t.max_node()).collect();
    ids.shuffle(&mut corpus::rng(seed));
    t.relabel(|n| ids[n as usize - 1]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn f_vector_identities(seed in 0u64..10_000, internal in 0usize..6) {
        let t = ball(seed, internal);
        let fv = t.f_vector().unwrap();
        fv.check().unwrap();
        prop_assert_eq!(fv.n_i, internal as i64);
        prop_assert_eq!(fv.n_tot - fv.e_tot + fv.f_tot - fv.t, 1);
        prop_assert_eq!(fv.n_s - fv.e_s + fv.f_s, 2);
        prop_assert!(validate_ball(&t).is_ball());
    }

    #[test]
    fn tet_format_round_trips(seed in 0u64..10_000, internal in 0usize..6) {
        let t = ball(seed, internal);
        prop_assert_eq!(parse_triangulation(&format_triangulation(&t)).unwrap(), t);
    }

    #[test]
    fn canonical_form_ignores_node_names(seed in 0u64..10_000, internal in 0usize..5, perm in any::<u64>()) {
        let t = ball(seed, internal);
        let s = shuffled(&t, perm);
        prop_assert_eq!(unrooted_key(&t).unwrap(), unrooted_key(&s).unwrap());
        // The same root face under both names gives the same rooted form.
        let root = t.root().unwrap();
        let mut ids: Vec<Node> = (1..=t.max_node()).collect();
        ids.shuffle(&mut corpus::rng(perm));
        let moved = root.map(|n| ids[n as usize - 1]);
        prop_assert_eq!(rooted_key(&t, root).unwrap(), rooted_key(&s, moved).unwrap());
    }

    #[test]
    fn canonical_label_is_idempotent(seed in 0u64..10_000, internal in 0usize..5) {
        let c = canonical_label(&ball(seed, internal)).unwrap().triangulation;
        prop_assert_eq!(&canonical_label(&c).unwrap().triangulation, &c);
    }

    #[test]
    fn decomposition_has_no_internal_nodes(seed in 0u64..10_000, internal in 1usize..6) {
        let t = ball(seed, internal);
        let d = decompose(&t, ReduceConfig::default()).unwrap();
        let total: i64 = d.split.nuclei.iter().map(|n| n.f_vector.t).sum();
        prop_assert_eq!(total, d.elimination.triangulation.num_tets() as i64);
        for n in &d.split.nuclei {
            prop_assert_eq!(n.f_vector.n_i, 0);
            prop_assert!(n.f_vector.f_s <= n.f_vector.t + 3);
        }
    }
}
