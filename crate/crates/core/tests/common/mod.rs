#![allow(dead_code)]

use hullforge::gf::{prime_power, Elem, FieldRef, GaloisField};
use hullforge::poly::Poly;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Prime powers `lo..=hi`.
pub fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&q| prime_power(q).is_some()).collect()
}

pub fn field(q: u64) -> FieldRef {
    GaloisField::of_order(q).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rand_elem(f: &FieldRef, rng: &mut StdRng) -> Elem {
    Elem::from_index(rng.random_range(0..f.order()))
}

pub fn rand_nonzero(f: &FieldRef, rng: &mut StdRng) -> Elem {
    Elem::from_index(rng.random_range(1..f.order()))
}

pub fn rand_poly(f: &FieldRef, rng: &mut StdRng, max_deg: usize) -> Poly {
    let d = rng.random_range(0..=max_deg);
    Poly::new(f, (0..=d).map(|_| rand_elem(f, rng)).collect())
}

/// Schoolbook multiplication of coefficient vectors modulo the field's
/// modulus, independent of the library's tables.
pub fn reference_mul(f: &FieldRef, a: &[u32], b: &[u32]) -> Vec<u32> {
    let p = f.characteristic() as u64;
    let m = f.degree() as usize;
    let modulus: Vec<u64> = f.modulus().iter().map(|&c| c as u64).collect();
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    // The modulus is monic: x^m = -(lower terms).
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &mc) in modulus[..m].iter().enumerate() {
            prod[d - m + i] = (prod[d - m + i] + (p - c) * mc) % p;
        }
    }
    prod.truncate(m);
    prod.into_iter().map(|c| c as u32).collect()
}

use hullforge::code::Matrix;

pub fn rand_matrix(f: &FieldRef, rng: &mut StdRng, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| rand_elem(f, rng)).collect())
        .collect();
    Matrix::from_rows(f, cols, data).unwrap()
}

/// Every vector in the row space of `g`, by enumerating all coefficient
/// vectors (with repetitions if the rows are dependent).
pub fn all_codewords(g: &Matrix) -> Vec<Vec<Elem>> {
    let f = g.field();
    let (k, n) = (g.rows(), g.cols());
    let q = f.order() as u64;
    let mut out = Vec::new();
    for mut idx in 0..q.pow(k as u32) {
        let mut word = vec![Elem::ZERO; n];
        for r in 0..k {
            let c = Elem::from_index((idx % q) as u32);
            idx /= q;
            for (w, &x) in word.iter_mut().zip(g.row(r)) {
                *w = f.add(*w, f.mul(c, x));
            }
        }
        out.push(word);
    }
    out.sort();
    out.dedup();
    out
}

/// Minimum nonzero weight by brute force; `n + 1` for the zero code.
pub fn brute_min_distance(g: &Matrix) -> usize {
    all_codewords(g)
        .iter()
        .map(|w| w.iter().filter(|e| !e.is_zero()).count())
        .filter(|&wt| wt > 0)
        .min()
        .unwrap_or(g.cols() + 1)
}

/// Dimension of C ∩ C⊥ by counting codewords orthogonal to every row.
pub fn brute_hull_dim(g: &Matrix) -> usize {
    let f = g.field();
    let count = all_codewords(g)
        .iter()
        .filter(|w| (0..g.rows()).all(|r| f.dot(g.row(r), w).is_zero()))
        .count() as u64;
    let q = f.order() as u64;
    let mut h = 0;
    while q.pow(h) < count {
        h += 1;
    }
    assert_eq!(q.pow(h), count, "hull size is not a power of q");
    h as usize
}
