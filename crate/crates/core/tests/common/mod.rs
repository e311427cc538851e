#![allow(dead_code)]

use std::sync::OnceLock;

use ksforge::ghmat::search::{gh_search, SearchConfig};
use ksforge::{gh_compose, gh_cyclic_prime, GHMatrix};

pub fn searched(g: u32, lambda: u32) -> GHMatrix {
    gh_search(g, lambda, &SearchConfig::default())
        .unwrap()
        .into_matrix()
        .unwrap_or_else(|| panic!("GH({g}, {lambda}) not found"))
}

/// Every GH matrix the library can produce cheaply, labelled.
pub fn gh_fleet() -> Vec<(&'static str, GHMatrix)> {
    static FLEET: OnceLock<Vec<(&'static str, GHMatrix)>> = OnceLock::new();
    FLEET.get_or_init(build_fleet).clone()
}

fn build_fleet() -> Vec<(&'static str, GHMatrix)> {
    let p3 = gh_cyclic_prime(3).unwrap();
    let s32 = searched(3, 2);
    vec![
        ("GH(3,1)", p3.clone()),
        ("GH(3,2)", s32.clone()),
        ("GH(3,3)", gh_compose(&p3, &p3).unwrap()),
        ("GH(3,4)", searched(3, 4)),
        ("GH(3,6)", gh_compose(&s32, &p3).unwrap()),
        ("GH(5,1)", gh_cyclic_prime(5).unwrap()),
        ("GH(5,2)", searched(5, 2)),
        ("GH(7,1)", gh_cyclic_prime(7).unwrap()),
    ]
}

/// Value of `Σ c_i ζ_L^i` in floating point.
pub fn float_value(order: usize, coeffs: &[i64]) -> (f64, f64) {
    coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, &c)| {
        let t = 2.0 * std::f64::consts::PI * i as f64 / order as f64;
        (re + c as f64 * t.cos(), im + c as f64 * t.sin())
    })
}

pub fn float_abs(order: usize, coeffs: &[i64]) -> f64 {
    let (re, im) = float_value(order, coeffs);
    re.hypot(im)
}

/// Straightforward restatement of the GH condition, written independently of
/// `verify_gh`: for each row pair and each residue, count matching columns.
pub fn naive_is_gh(g: u32, lambda: u32, rows: &[Vec<u32>]) -> bool {
    let side = (g * lambda) as usize;
    if rows.len() != side || rows.iter().any(|r| r.len() != side) {
        return false;
    }
    for k in 0..side {
        for l in k + 1..side {
            for d in 0..g {
                let hits = (0..side).filter(|&j| (rows[k][j] + g - rows[l][j]) % g == d).count();
                if hits != lambda as usize {
                    return false;
                }
            }
        }
    }
    true
}
