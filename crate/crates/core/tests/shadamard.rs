mod common;

use common::{float_value, gh_fleet, searched};
use ksforge::{dephase, from_gh, gh_cyclic_prime, inner_product, verify_shadamard, Error, SHadamard};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Condition check in floating point, used only as a cross-check.
fn float_verdict(h: &SHadamard) -> bool {
    let l = h.root_order() as usize;
    let n = h.n();
    let row_sum = |k: usize, m: usize, scale: u32| {
        let mut hist = vec![0i64; l];
        for j in 0..n {
            let d = (scale * (h.exponent(k, j) + h.root_order() - h.exponent(m, j))) % h.root_order();
            hist[d as usize] += 1;
        }
        float_value(l, &hist)
    };
    (0..n).all(|k| {
        (0..n).all(|m| {
            let (re, im) = row_sum(k, m, 1);
            let diag_ok =
                if k == m { (re - n as f64).abs() < 1e-6 && im.abs() < 1e-6 } else { re.hypot(im) < 1e-6 };
            let sq_ok = k == m || {
                let (re, im) = row_sum(k, m, 2);
                re.hypot(im) < 1e-6
            };
            diag_ok && sq_ok
        })
    })
}

#[test]
fn every_fleet_matrix_lifts_to_an_s_hadamard() {
    for (name, gh) in gh_fleet() {
        let h = from_gh(&gh).unwrap();
        assert_eq!(h.n(), gh.side(), "{name}");
        assert_eq!(h.root_order(), gh.g());
        let r = verify_shadamard(&h);
        assert!(r.pass, "{name}: {r:?}");
        assert!(float_verdict(&h), "{name}");
    }
    assert!(matches!(from_gh(&gh_cyclic_prime(2).unwrap()), Err(Error::GroupTooSmall(2))));
    let gh22 = searched(2, 2);
    assert!(matches!(from_gh(&gh22), Err(Error::GroupTooSmall(2))));
}

#[test]
fn row_inner_products_via_generic_arithmetic() {
    let h = from_gh(&searched(3, 2)).unwrap();
    for k in 0..6 {
        for l in 0..6 {
            let ip = inner_product(&h.row_vector(k), &h.row_vector(l)).unwrap();
            if k == l {
                assert_eq!(ip.as_integer(), Some(6));
            } else {
                assert!(ip.is_zero());
            }
        }
    }
}

#[test]
fn butson_fourier_matrices() {
    // Fourier matrices of odd order are S-Hadamard; even order fails squares.
    for n in 2..=12 {
        let f = SHadamard::fourier(n).unwrap();
        let r = verify_shadamard(&f);
        assert!(r.condition1, "F_{n}");
        assert_eq!(r.pass, n % 2 == 1, "F_{n}");
        assert_eq!(float_verdict(&f), r.pass);
    }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> SHadamard {
    let fleet = gh_fleet();
    if rng.gen_bool(0.7) {
        let (_, gh) = fleet.choose(rng).unwrap();
        let h = from_gh(gh).unwrap();
        if rng.gen_bool(0.5) {
            return h;
        }
        let mut rows = h.to_rows();
        let (i, j) = (rng.gen_range(0..h.n()), rng.gen_range(0..h.n()));
        rows[i][j] = (rows[i][j] + 1) % h.root_order();
        SHadamard::new(h.root_order(), rows).unwrap()
    } else {
        let n = rng.gen_range(1..7);
        let l = rng.gen_range(1..9);
        SHadamard::new(l, (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..l)).collect()).collect()).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dephasing_preserves_verdict_and_is_idempotent(seed in any::<u64>()) {
        let h = random_matrix(&mut ChaCha8Rng::seed_from_u64(seed));
        let d = dephase(&h);
        prop_assert_eq!(verify_shadamard(&d).pass, verify_shadamard(&h).pass);
        prop_assert!(d.row(0).iter().all(|&e| e == 0));
        prop_assert_eq!(dephase(&d), d);
    }

    #[test]
    fn permutations_preserve_verdict(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_matrix(&mut rng);
        let mut rp: Vec<usize> = (0..h.n()).collect();
        let mut cp = rp.clone();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        let t = h.permute_rows(&rp).unwrap().permute_cols(&cp).unwrap();
        prop_assert_eq!(verify_shadamard(&t).pass, verify_shadamard(&h).pass);
    }

    #[test]
    fn exact_verdict_matches_float_cross_check(seed in any::<u64>()) {
        let h = random_matrix(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(verify_shadamard(&h).pass, float_verdict(&h));
    }
}
