mod common;

use common::{brute_min_distance, field, rng};
use hullforge::code::{min_distance, DEFAULT_BUDGET};
use hullforge::gf::{Elem, FieldRef};
use hullforge::grs::{h_prime_values, GrsRecord, GrsSpec};
use hullforge::Error;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn idx(f: &FieldRef, v: &[u32]) -> Vec<Elem> {
    v.iter().map(|&i| f.elem(i as u64).unwrap()).collect()
}

fn random_spec(f: &FieldRef, r: &mut rand::rngs::StdRng, max_n: usize) -> GrsSpec {
    let mut pts: Vec<Elem> = f.elements().collect();
    pts.shuffle(r);
    let n = r.random_range(2..=max_n.min(pts.len()));
    pts.truncate(n);
    let v = (0..n)
        .map(|_| Elem::from_index(r.random_range(1..f.order())))
        .collect();
    let k = r.random_range(1..=n);
    GrsSpec::new(f, pts, v, k).unwrap()
}

#[test]
fn generator_examples() {
    let f2 = field(2);
    let s = GrsSpec::new(&f2, idx(&f2, &[0, 1]), idx(&f2, &[1, 1]), 1).unwrap();
    assert_eq!(s.generator().to_rows(), vec![idx(&f2, &[1, 1])]);
    let f5 = field(5);
    let s = GrsSpec::new(&f5, idx(&f5, &[0, 1, 2]), idx(&f5, &[1, 1, 1]), 2).unwrap();
    assert_eq!(
        s.generator().to_rows(),
        vec![idx(&f5, &[1, 1, 1]), idx(&f5, &[0, 1, 2])]
    );
}

#[test]
fn invalid_specs() {
    let f = field(7);
    let bad = |a: &[u32], v: &[u32], k| GrsSpec::new(&f, idx(&f, a), idx(&f, v), k);
    assert!(matches!(bad(&[0, 0], &[1, 1], 1), Err(Error::InvalidGrs(_))));
    assert!(matches!(bad(&[0, 1], &[1, 0], 1), Err(Error::InvalidGrs(_))));
    assert!(matches!(bad(&[0, 1], &[1, 1], 3), Err(Error::InvalidGrs(_))));
    assert!(matches!(bad(&[0, 1], &[1, 1], 0), Err(Error::InvalidGrs(_))));
    assert!(matches!(bad(&[0, 1], &[1], 1), Err(Error::InvalidGrs(_))));
    assert!(matches!(
        bad(&[0, 1], &[1, 1], 2).unwrap().dual(),
        Err(Error::InvalidGrs(_))
    ));
}

#[test]
fn dual_examples() {
    let f3 = field(3);
    let s = GrsSpec::new(&f3, idx(&f3, &[0, 1]), idx(&f3, &[1, 1]), 1).unwrap();
    let d = s.dual().unwrap();
    // Kernel of [1 1] is span(1, -1).
    let want = hullforge::code::Matrix::from_rows(&f3, 2, vec![idx(&f3, &[1, 2])]).unwrap();
    assert!(d.generator().same_row_space(&want).unwrap());
    let dd = d.dual().unwrap();
    assert!(dd.generator().same_row_space(&s.generator()).unwrap());
}

#[test]
fn h_prime_formula() {
    let f = field(19);
    let alpha = idx(&f, &[1, 4, 6, 7, 9]);
    let hp = h_prime_values(&f, &alpha);
    for (i, &a) in alpha.iter().enumerate() {
        let mut prod = Elem::ONE;
        for (j, &b) in alpha.iter().enumerate() {
            if i != j {
                prod = f.mul(prod, f.sub(a, b));
            }
        }
        assert_eq!(hp[i], prod);
    }
}

#[test]
fn record_round_trip() {
    let f = field(81);
    let mut r = rng(1);
    for _ in 0..20 {
        let s = random_spec(&f, &mut r, 12);
        let json = serde_json::to_string(&s.to_record()).unwrap();
        let rec: GrsRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(GrsSpec::from_record(&rec).unwrap(), s);
    }
}

/// The multiplier formula for the dual agrees with the kernel computation,
/// and GRS codes are MDS (checked against brute force on small fields).
#[test]
fn dual_matches_kernel_and_mds() {
    let mut r = rng(2);
    for q in [5u64, 7, 8, 9] {
        let f = field(q);
        for _ in 0..40 {
            let s = random_spec(&f, &mut r, 8);
            let code = s.code();
            assert_eq!(code.dim(), s.k());
            if s.k() < s.n() {
                let d = s.dual().unwrap();
                assert!(d.code().same_code(&code.dual()).unwrap());
            }
            if (q as u32).pow(s.k() as u32) <= 50_000 {
                assert_eq!(brute_min_distance(&s.generator()), s.n() - s.k() + 1);
            }
        }
    }
}

#[test]
fn gf81_specs_are_mds() {
    let f = field(81);
    let mut r = rng(4);
    for _ in 0..30 {
        let s = random_spec(&f, &mut r, 24);
        let d = min_distance(&s.code(), DEFAULT_BUDGET).exact();
        if let Some(d) = d {
            assert_eq!(d, s.n() - s.k() + 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generator_has_full_rank(seed in any::<u64>(), qi in 0usize..3) {
        let f = field([16u64, 25, 49][qi]);
        let mut r = rng(seed);
        let s = random_spec(&f, &mut r, 16);
        prop_assert_eq!(s.generator().rank(), s.k());
    }
}
