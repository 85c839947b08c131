//! Generalized Reed–Solomon codes.

use serde::{Deserialize, Serialize};

use crate::code::{LinearCode, Matrix};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldDescriptor, FieldRef};

/// `GRS_k(alpha, v) = { (v_1 f(a_1), ..., v_n f(a_n)) : deg f < k }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsSpec {
    field: FieldRef,
    alpha: Vec<Elem>,
    v: Vec<Elem>,
    k: usize,
}

/// Serialized form: element indices plus the field descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrsRecord {
    pub field: FieldDescriptor,
    pub alpha: Vec<u32>,
    pub v: Vec<u32>,
    pub k: usize,
}

impl GrsSpec {
    pub fn new(field: &FieldRef, alpha: Vec<Elem>, v: Vec<Elem>, k: usize) -> Result<GrsSpec> {
        let q = field.order();
        if alpha.len() != v.len() {
            return Err(Error::InvalidGrs(format!(
                "{} points but {} multipliers",
                alpha.len(),
                v.len()
            )));
        }
        if let Some(e) = alpha.iter().chain(&v).find(|e| e.index() >= q) {
            return Err(Error::ElementOutOfRange {
                index: e.index() as u64,
                q,
            });
        }
        let mut sorted = alpha.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGrs(format!(
                "evaluation point {} repeated",
                w[0]
            )));
        }
        if let Some(i) = v.iter().position(|e| e.is_zero()) {
            return Err(Error::InvalidGrs(format!("multiplier v_{i} is zero")));
        }
        if k == 0 || k > alpha.len() {
            return Err(Error::InvalidGrs(format!(
                "dimension {k} outside 1..={}",
                alpha.len()
            )));
        }
        Ok(GrsSpec {
            field: field.clone(),
            alpha,
            v,
            k,
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn alpha(&self) -> &[Elem] {
        &self.alpha
    }

    pub fn v(&self) -> &[Elem] {
        &self.v
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Row `j` is `(v_i alpha_i^j)_i` for `0 <= j < k`.
    pub fn generator(&self) -> Matrix {
        let f = &self.field;
        let n = self.n();
        let mut m = Matrix::zeros(f, self.k, n);
        for i in 0..n {
            let mut x = self.v[i];
            for j in 0..self.k {
                m.set(j, i, x);
                x = f.mul(x, self.alpha[i]);
            }
        }
        m
    }

    pub fn code(&self) -> LinearCode {
        LinearCode::new(self.generator()).expect("GRS generators have full row rank")
    }

    /// `h'(alpha_i) = prod_{j != i} (alpha_i - alpha_j)`.
    pub fn h_prime_values(&self) -> Vec<Elem> {
        h_prime_values(&self.field, &self.alpha)
    }

    /// The dual code `GRS_{n-k}(alpha, u)` with `u_i = 1 / (v_i h'(alpha_i))`.
    pub fn dual(&self) -> Result<GrsSpec> {
        if self.k == self.n() {
            return Err(Error::InvalidGrs(
                "the dual of a dimension-n code is zero".into(),
            ));
        }
        let f = &self.field;
        let u = self
            .h_prime_values()
            .iter()
            .zip(&self.v)
            .map(|(&h, &v)| f.inv(f.mul(h, v)))
            .collect::<Result<Vec<_>>>()?;
        GrsSpec::new(f, self.alpha.clone(), u, self.n() - self.k)
    }

    pub fn to_record(&self) -> GrsRecord {
        GrsRecord {
            field: self.field.descriptor(),
            alpha: self.alpha.iter().map(|e| e.index()).collect(),
            v: self.v.iter().map(|e| e.index()).collect(),
            k: self.k,
        }
    }

    pub fn from_record(r: &GrsRecord) -> Result<GrsSpec> {
        let f = r.field.build()?;
        Self::from_indices(&f, &r.alpha, &r.v, r.k)
    }

    pub fn from_indices(f: &FieldRef, alpha: &[u32], v: &[u32], k: usize) -> Result<GrsSpec> {
        let conv = |xs: &[u32]| {
            xs.iter()
                .map(|&i| f.elem(i as u64))
                .collect::<Result<Vec<_>>>()
        };
        GrsSpec::new(f, conv(alpha)?, conv(v)?, k)
    }
}

/// `h'(alpha_i) = prod_{j != i} (alpha_i - alpha_j)` where `h` is the monic
/// polynomial with simple roots exactly at `alpha`.
pub fn h_prime_values(f: &FieldRef, alpha: &[Elem]) -> Vec<Elem> {
    alpha
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            alpha
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Elem::ONE, |acc, (_, &b)| f.mul(acc, f.sub(a, b)))
        })
        .collect()
}
