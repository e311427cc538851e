mod common;

use common::{gh_fleet, naive_is_gh, searched};
use ksforge::ghmat::search::{gh_search, NotFound, SearchConfig, SearchOutcome};
use ksforge::{gh_compose, gh_cyclic_prime, gh_export, gh_import, verify_gh, GHMatrix};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_candidate(rng: &mut ChaCha8Rng) -> GHMatrix {
    let (g, lambda) = *[(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (5, 1)].choose(rng).unwrap();
    let side = (g * lambda) as usize;
    let rows = (0..side).map(|_| (0..side).map(|_| rng.gen_range(0..g)).collect()).collect();
    GHMatrix::new(g, lambda, rows).unwrap()
}

/// Valid matrix with one entry bumped: a near miss.
fn perturbed(rng: &mut ChaCha8Rng, m: &GHMatrix) -> GHMatrix {
    let mut rows = m.to_rows();
    let (i, j) = (rng.gen_range(0..m.side()), rng.gen_range(0..m.side()));
    rows[i][j] = (rows[i][j] + rng.gen_range(1..m.g())) % m.g();
    GHMatrix::new(m.g(), m.lambda(), rows).unwrap()
}

#[test]
fn verifier_agrees_with_naive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fleet = gh_fleet();
    let mut passes = 0;
    for k in 0..1000 {
        let m = if k % 4 == 0 {
            let (_, base) = fleet.choose(&mut rng).unwrap();
            perturbed(&mut rng, base)
        } else {
            random_candidate(&mut rng)
        };
        let verdict = verify_gh(&m).pass;
        assert_eq!(verdict, naive_is_gh(m.g(), m.lambda(), &m.to_rows()), "{m:?}");
        passes += verdict as usize;
    }
    // Tiny random matrices do occasionally pass (e.g. 2×2 over Z_2).
    assert!(passes < 1000);
    for (name, m) in &fleet {
        assert!(verify_gh(m).pass, "{name}");
        assert!(naive_is_gh(m.g(), m.lambda(), &m.to_rows()), "{name}");
    }
}

#[test]
fn witness_histogram_is_correct() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let m = random_candidate(&mut rng);
        if let Some(w) = verify_gh(&m).witness {
            let [k, l] = w.rows;
            assert!(k < l);
            let g = m.g();
            for d in 0..g {
                let hits = (0..m.side()).filter(|&j| (m.get(k, j) + g - m.get(l, j)) % g == d).count();
                assert_eq!(w.histogram[d as usize], hits);
            }
            assert!(w.histogram.iter().any(|&h| h != m.lambda() as usize));
        }
    }
}

#[test]
fn composition_closes_over_the_fleet() {
    let bases = [gh_cyclic_prime(3).unwrap(), searched(3, 2), gh_cyclic_prime(5).unwrap()];
    for a in &bases {
        for b in &bases {
            match gh_compose(a, b) {
                Ok(c) => {
                    assert_eq!(c.side(), a.side() * b.side());
                    assert_eq!(c.lambda(), a.g() * a.lambda() * b.lambda());
                    assert!(verify_gh(&c).pass);
                }
                Err(_) => assert_ne!(a.g(), b.g()),
            }
        }
    }
    let c = gh_compose(&searched(3, 2), &gh_cyclic_prime(3).unwrap()).unwrap();
    assert_eq!((c.side(), c.lambda()), (18, 6));
    assert!(verify_gh(&c).pass);
}

#[test]
fn search_results() {
    let cfg = SearchConfig::default();
    let a = gh_search(3, 2, &cfg).unwrap();
    let b = gh_search(3, 2, &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(gh_export(a.matrix().unwrap()), gh_export(b.matrix().unwrap()));

    let m31 = searched(3, 1);
    assert_eq!(m31, gh_cyclic_prime(3).unwrap());

    for (g, lambda) in [(4, 1), (4, 2), (8, 1), (4, 3)] {
        assert!(
            matches!(
                gh_search(g, lambda, &cfg).unwrap(),
                SearchOutcome::NotFound { reason: NotFound::Exhausted, .. }
            ),
            "GH({g},{lambda}) over Z_{g}"
        );
    }
}

/// The searched GH(3,1) equals the prime table up to row/column permutation;
/// checked by trying every permutation pair.
#[test]
fn searched_gh31_is_prime_table_up_to_permutation() {
    let s = searched(3, 1);
    let p = gh_cyclic_prime(3).unwrap();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let hit =
        perms.iter().any(|r| perms.iter().any(|c| p.permute_rows(r).unwrap().permute_cols(c).unwrap() == s));
    assert!(hit);
}

#[test]
fn json_round_trip_of_searched_matrix() {
    let m = searched(3, 2);
    let (back, report) = gh_import(&gh_export(&m)).unwrap();
    assert_eq!(back, m);
    assert!(report.pass);
}

fn fleet_member() -> impl Strategy<Value = GHMatrix> {
    let fleet: Vec<GHMatrix> = gh_fleet().into_iter().map(|(_, m)| m).collect();
    prop::sample::select(fleet)
}

fn any_candidate() -> impl Strategy<Value = GHMatrix> {
    prop_oneof![
        fleet_member(),
        any::<u64>().prop_map(|seed| random_candidate(&mut ChaCha8Rng::seed_from_u64(seed))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn translation_invariance(m in any_candidate(), i in any::<usize>(), c in any::<u32>(), by_col in any::<bool>()) {
        let before = verify_gh(&m).pass;
        let i = i % m.side();
        let t = if by_col { m.shift_col(i, c) } else { m.shift_row(i, c) };
        prop_assert_eq!(verify_gh(&t).pass, before);
    }

    #[test]
    fn permutation_invariance(m in any_candidate(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rp: Vec<usize> = (0..m.side()).collect();
        let mut cp = rp.clone();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        let t = m.permute_rows(&rp).unwrap().permute_cols(&cp).unwrap();
        prop_assert_eq!(verify_gh(&t).pass, verify_gh(&m).pass);
    }
}
