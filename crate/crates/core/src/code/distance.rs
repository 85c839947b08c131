//! Exact minimum distance under a work budget.
//!
//! Two exact paths exist. Small codes are handled by enumerating every
//! codeword up to scalar multiples. Otherwise the MDS property is decided
//! from the systematic generator `[I | A]`: every `k` columns of the
//! generator are independent iff every square submatrix of `A` is
//! nonsingular, and there are `C(n, k) - 1` of those. Minors are computed
//! level by level, each from the previous level by cofactor expansion along
//! its last row.

use serde::{Deserialize, Serialize};

use super::{LinearCode, Matrix};
use crate::gf::{Elem, GaloisField};

/// Default work budget, in elementary field operations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    /// Every codeword was enumerated.
    Enumeration,
    /// All square minors of the systematic part were checked.
    Minors,
    /// Smallest dependent set of parity-check columns.
    ColumnSubsets,
}

impl DistanceMethod {
    pub fn describe(self) -> &'static str {
        match self {
            DistanceMethod::Enumeration => "codeword enumeration",
            DistanceMethod::Minors => "all k-column submatrices nonsingular (square minors of [I|A])",
            DistanceMethod::ColumnSubsets => "smallest dependent column set of a parity-check matrix",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinDistance {
    Exact { d: usize, method: DistanceMethod },
    /// The budget did not allow an exact answer. `mds` records what the
    /// partial work established, if anything.
    ExceedsBudget { mds: Option<bool> },
}

impl MinDistance {
    pub fn exact(&self) -> Option<usize> {
        match self {
            MinDistance::Exact { d, .. } => Some(*d),
            MinDistance::ExceedsBudget { .. } => None,
        }
    }
}

/// `q^k`, saturating.
pub fn enumeration_cost(q: u32, k: usize) -> u64 {
    let mut c: u64 = 1;
    for _ in 0..k {
        c = c.saturating_mul(q as u64);
    }
    c
}

/// `C(n, k)`, saturating: the number of `k`-column submatrices, which is
/// also one more than the number of square minors of `A`.
pub fn minor_scan_cost(n: usize, k: usize) -> u64 {
    binom_sat(n as u64, k as u64)
}

fn binom_sat(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
        if c > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    c as u64
}

/// Exact minimum distance, or `ExceedsBudget`.
///
/// The zero code is reported as `n + 1`, the usual convention that keeps
/// the Singleton bound tight for `k = 0`.
pub fn min_distance(code: &LinearCode, budget: u64) -> MinDistance {
    let n = code.len();
    let k = code.dim();
    if k == 0 {
        return MinDistance::Exact {
            d: n + 1,
            method: DistanceMethod::Enumeration,
        };
    }
    if enumeration_cost(code.field().order(), k) <= budget {
        return MinDistance::Exact {
            d: min_distance_by_enumeration(code),
            method: DistanceMethod::Enumeration,
        };
    }
    match mds_by_minors(code, budget) {
        Some(true) => MinDistance::Exact {
            d: n - k + 1,
            method: DistanceMethod::Minors,
        },
        Some(false) => {
            let spent = minor_scan_cost(n, k);
            match min_distance_by_column_subsets(code, budget.saturating_sub(spent)) {
                Some(d) => MinDistance::Exact {
                    d,
                    method: DistanceMethod::ColumnSubsets,
                },
                None => MinDistance::ExceedsBudget { mds: Some(false) },
            }
        }
        None => MinDistance::ExceedsBudget { mds: None },
    }
}

/// Minimum weight over all nonzero codewords whose first nonzero
/// coefficient is 1. No budget check; callers decide whether it is
/// affordable.
pub fn min_distance_by_enumeration(code: &LinearCode) -> usize {
    let f = code.field();
    let n = code.len();
    let k = code.dim();
    if k == 0 {
        return n + 1;
    }
    let g = code.generator();
    let q = f.order();
    let mut best = n;
    for lead in 0..k {
        let mut word: Vec<Elem> = g.row(lead).to_vec();
        best = best.min(weight(&word));
        let free = k - lead - 1;
        let mut digits = vec![0u32; free];
        'odometer: loop {
            let mut pos = 0;
            loop {
                if pos == free {
                    break 'odometer;
                }
                let row = g.row(lead + 1 + pos);
                let old = Elem::from_index(digits[pos]);
                if digits[pos] + 1 < q {
                    digits[pos] += 1;
                    let delta = f.sub(Elem::from_index(digits[pos]), old);
                    axpy(f, &mut word, delta, row);
                    break;
                }
                digits[pos] = 0;
                axpy(f, &mut word, f.neg(old), row);
                pos += 1;
            }
            let w = weight(&word);
            if w < best {
                best = w;
                if best == 1 {
                    return 1;
                }
            }
        }
    }
    best
}

fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|e| !e.is_zero()).count()
}

fn axpy(f: &GaloisField, y: &mut [Elem], a: Elem, x: &[Elem]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = f.add(*yi, f.mul(a, xi));
    }
}

/// Decides whether every `k` columns of the generator are independent, or
/// `None` when `C(n, k)` exceeds the budget.
pub fn mds_by_minors(code: &LinearCode, budget: u64) -> Option<bool> {
    let n = code.len();
    let k = code.dim();
    if k == 0 || k == n {
        return Some(true);
    }
    if minor_scan_cost(n, k) > budget {
        return None;
    }
    let rref = code.generator().rref();
    let mut is_pivot = vec![false; n];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    // Orient A so that it has no more rows than columns; minors are
    // unchanged by transposition and the level tables stay smaller.
    let a: Vec<Vec<Elem>> = if k <= n - k {
        (0..k)
            .map(|r| free.iter().map(|&c| rref.matrix.get(r, c)).collect())
            .collect()
    } else {
        free.iter()
            .map(|&c| (0..k).map(|r| rref.matrix.get(r, c)).collect())
            .collect()
    };
    Some(all_minors_nonzero(code.field(), &a))
}

struct Binomials(Vec<Vec<usize>>);

impl Binomials {
    fn new(n: usize) -> Self {
        let mut t = vec![vec![0usize; n + 2]; n + 1];
        for i in 0..=n {
            t[i][0] = 1;
            for j in 1..=i {
                t[i][j] = t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 };
            }
        }
        Binomials(t)
    }

    fn get(&self, n: usize, k: usize) -> usize {
        if k > n {
            0
        } else {
            self.0[n][k]
        }
    }
}

/// Advances a strictly increasing subset of `0..limit` to its colex
/// successor. Returns false after the last subset.
fn next_colex(s: &mut [usize], limit: usize) -> bool {
    let len = s.len();
    for j in 0..len {
        let cap = if j + 1 < len { s[j + 1] } else { limit };
        if s[j] + 1 < cap {
            s[j] += 1;
            for (t, x) in s.iter_mut().enumerate().take(j) {
                *x = t;
            }
            return true;
        }
    }
    false
}

fn all_minors_nonzero(f: &GaloisField, a: &[Vec<Elem>]) -> bool {
    let rows = a.len();
    let cols = a[0].len();
    if a.iter().flatten().any(|e| e.is_zero()) {
        return false;
    }
    let bin = Binomials::new(cols.max(rows));
    // Level 1: the entries themselves, indexed [row_rank * C(cols,1) + col_rank].
    let mut prev: Vec<Elem> = a.iter().flatten().copied().collect();
    let mut prefix = Vec::new();
    let mut suffix = Vec::new();
    for i in 2..=rows {
        let nr = bin.get(rows, i);
        let nc = bin.get(cols, i);
        let nc_prev = bin.get(cols, i - 1);
        let mut cur = vec![Elem::ZERO; nr * nc];
        let mut rset: Vec<usize> = (0..i).collect();
        let mut rrank = 0usize;
        loop {
            let last = rset[i - 1];
            // Colex rank of rset minus its largest element.
            let sub_r = rrank - bin.get(last, i);
            let mut cset: Vec<usize> = (0..i).collect();
            let mut crank = 0usize;
            loop {
                // Ranks of cset with one element removed, from prefix and
                // suffix sums of the colex terms.
                prefix.clear();
                suffix.clear();
                prefix.push(0usize);
                for t in 0..i {
                    prefix.push(prefix[t] + bin.get(cset[t], t + 1));
                }
                suffix.resize(i + 1, 0);
                for t in (0..i).rev() {
                    suffix[t] = suffix[t + 1] + bin.get(cset[t], t);
                }
                let row = &a[last];
                let mut acc = Elem::ZERO;
                for j in 0..i {
                    let sub_c = prefix[j] + suffix[j + 1];
                    let term = f.mul(row[cset[j]], prev[sub_r * nc_prev + sub_c]);
                    acc = if (i - 1 + j) % 2 == 0 {
                        f.add(acc, term)
                    } else {
                        f.sub(acc, term)
                    };
                }
                if acc.is_zero() {
                    return false;
                }
                cur[rrank * nc + crank] = acc;
                crank += 1;
                if !next_colex(&mut cset, cols) {
                    break;
                }
            }
            rrank += 1;
            if !next_colex(&mut rset, rows) {
                break;
            }
        }
        prev = cur;
    }
    true
}

/// Smallest `w` such that some `w` columns of a parity-check matrix are
/// dependent, i.e. the minimum distance. `None` if the search would exceed
/// the budget before finishing.
pub fn min_distance_by_column_subsets(code: &LinearCode, budget: u64) -> Option<usize> {
    let n = code.len();
    let k = code.dim();
    if k == 0 {
        return Some(n + 1);
    }
    let h = code.dual();
    let r = h.dim();
    if r == 0 {
        return Some(1);
    }
    let hm: &Matrix = h.generator();
    let mut spent: u64 = 0;
    // Any r + 1 columns are dependent, so the search stops at w = r.
    for w in 1..=r {
        let step = (r * w * w).max(1) as u64;
        spent = spent.saturating_add(binom_sat(n as u64, w as u64).saturating_mul(step));
        if spent > budget {
            return None;
        }
        let mut subset: Vec<usize> = (0..w).collect();
        loop {
            if hm.select_columns(&subset).rank() < w {
                return Some(w);
            }
            if !next_colex(&mut subset, n) {
                break;
            }
        }
    }
    Some(r + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::GaloisField;

    fn code(q: u64, rows: &[&[u32]]) -> LinearCode {
        let f = GaloisField::of_order(q).unwrap();
        let cols = rows[0].len();
        LinearCode::new(
            Matrix::from_rows(
                &f,
                cols,
                rows.iter()
                    .map(|r| r.iter().map(|&i| Elem::from_index(i)).collect())
                    .collect(),
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn colex_order() {
        let mut s = vec![0, 1];
        let mut seen = vec![s.clone()];
        while next_colex(&mut s, 4) {
            seen.push(s.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn repetition_code() {
        let c = code(5, &[&[1, 1, 1, 1, 1, 1]]);
        assert_eq!(min_distance(&c, DEFAULT_BUDGET).exact(), Some(6));
        assert_eq!(mds_by_minors(&c, DEFAULT_BUDGET), Some(true));
        assert_eq!(min_distance_by_column_subsets(&c, DEFAULT_BUDGET), Some(6));
    }

    #[test]
    fn non_mds_detected_by_all_paths() {
        let c = code(31, &[&[1, 0, 1, 2], &[0, 1, 0, 3]]);
        assert_eq!(min_distance_by_enumeration(&c), 2);
        assert_eq!(mds_by_minors(&c, DEFAULT_BUDGET), Some(false));
        assert_eq!(min_distance_by_column_subsets(&c, DEFAULT_BUDGET), Some(2));
        // Too small for enumeration (31^2), enough for minors plus fallback.
        assert_eq!(
            min_distance(&c, 500),
            MinDistance::Exact {
                d: 2,
                method: DistanceMethod::ColumnSubsets
            }
        );
    }

    #[test]
    fn budget_exhaustion_is_a_value() {
        let c = code(7, &[&[1, 0, 1, 2], &[0, 1, 3, 3]]);
        assert_eq!(min_distance(&c, 1), MinDistance::ExceedsBudget { mds: None });
    }

    #[test]
    fn full_space_and_zero_code() {
        let f = GaloisField::prime(3).unwrap();
        assert_eq!(min_distance(&LinearCode::full(&f, 3), 1).exact(), Some(1));
        assert_eq!(min_distance(&LinearCode::zero(&f, 3), 1).exact(), Some(4));
    }

    #[test]
    fn costs() {
        assert_eq!(enumeration_cost(81, 2), 6561);
        assert_eq!(enumeration_cost(1 << 20, 10), u64::MAX);
        assert_eq!(minor_scan_cost(24, 20), 10626);
        assert!(minor_scan_cost(48, 34) > DEFAULT_BUDGET);
    }
}
