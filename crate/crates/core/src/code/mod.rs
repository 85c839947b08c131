//! Linear codes over GF(q): duals, intersections, hulls, minimum distance
//! and certification.

mod certify;
mod distance;
mod matrix;

pub use certify::{certify, inspect, Certificate, Claim, DistanceRecord};
pub use distance::{
    enumeration_cost, min_distance, min_distance_by_column_subsets, min_distance_by_enumeration,
    mds_by_minors, minor_scan_cost, DistanceMethod, MinDistance, DEFAULT_BUDGET,
};
pub use matrix::{Matrix, Rref};

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldRef};

/// A linear `[n, k]` code given by a full-row-rank generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    gen: Matrix,
}

impl LinearCode {
    /// Wraps a generator matrix, rejecting dependent rows.
    pub fn new(gen: Matrix) -> Result<LinearCode> {
        let rank = gen.rank();
        if rank != gen.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: gen.rows(),
            });
        }
        Ok(LinearCode { gen })
    }

    /// The code spanned by the rows of `m`, whatever its rank.
    pub fn spanned_by(m: &Matrix) -> LinearCode {
        LinearCode {
            gen: m.row_space_basis(),
        }
    }

    /// The zero code of length `n`.
    pub fn zero(field: &FieldRef, n: usize) -> LinearCode {
        LinearCode {
            gen: Matrix::zeros(field, 0, n),
        }
    }

    /// The full space GF(q)^n.
    pub fn full(field: &FieldRef, n: usize) -> LinearCode {
        LinearCode {
            gen: Matrix::identity(field, n),
        }
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn field(&self) -> &FieldRef {
        self.gen.field()
    }

    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.gen.cols() == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// Euclidean dual: the right kernel of the generator.
    pub fn dual(&self) -> LinearCode {
        if self.dim() == 0 {
            return LinearCode::full(self.field(), self.len());
        }
        LinearCode {
            gen: self.gen.kernel(),
        }
    }

    /// `self ∩ other`, via the left kernel of the stacked generators: pairs
    /// `(a, b)` with `a G1 = -b G2` give the common codewords `a G1`.
    pub fn intersection(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.len() != other.len() {
            return Err(Error::Shape(format!(
                "intersection of codes of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        let stacked = self.gen.stack(&other.gen)?;
        let left_kernel = stacked.transpose().kernel();
        let k1 = self.dim();
        let coeffs: Vec<usize> = (0..k1).collect();
        let a = left_kernel.select_columns(&coeffs);
        if a.rows() == 0 || k1 == 0 {
            return Ok(LinearCode::zero(self.field(), self.len()));
        }
        Ok(LinearCode::spanned_by(&a.mul(&self.gen)?))
    }

    pub fn contains(&self, word: &[Elem]) -> Result<bool> {
        if word.len() != self.len() {
            return Err(Error::Shape(format!(
                "word of length {} for a code of length {}",
                word.len(),
                self.len()
            )));
        }
        let w = Matrix::from_rows(self.field(), self.len(), vec![word.to_vec()])?;
        Ok(self.gen.stack(&w)?.rank() == self.dim())
    }

    pub fn same_code(&self, other: &LinearCode) -> Result<bool> {
        self.gen.same_row_space(&other.gen)
    }

    /// `C ∩ C⊥`.
    pub fn hull(&self) -> LinearCode {
        self.intersection(&self.dual())
            .expect("a code and its dual share length and field")
    }

    /// Hull dimension as `k - rank(G G^T)`.
    pub fn hull_dim_gram(&self) -> usize {
        self.dim() - self.gen.gram().rank()
    }

    /// Hull dimension as `dim(C ∩ C⊥)`.
    pub fn hull_dim_intersection(&self) -> usize {
        self.hull().dim()
    }

    /// The code scaled column-wise: coordinate `i` multiplied by `s[i]`.
    pub fn scaled(&self, s: &[Elem]) -> Result<LinearCode> {
        if s.len() != self.len() || s.iter().any(|e| e.is_zero()) {
            return Err(Error::Shape("need one nonzero scalar per coordinate".into()));
        }
        let mut g = self.gen.clone();
        for (c, &v) in s.iter().enumerate() {
            g.scale_column(c, v);
        }
        Ok(LinearCode { gen: g })
    }
}
