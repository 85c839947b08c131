//! MDS codes with one-dimensional Euclidean hull.
//!
//! Every construction reduces to GRS data `(alpha, v, k)` through one of two
//! engines:
//!
//! * [`build_ab`]: given coprime `a`, `b` with `deg a + deg b = n - 2` and
//!   `(a b h')(alpha_i)` nonzero squares, take `v_i = a(alpha_i) /
//!   sqrt((a b h')(alpha_i))` and `k = n - 1 - deg a`. Then `v_i^2 h'(alpha_i)
//!   = a/b` at every point, so `c = v f(alpha)` lies in the dual iff `a f = b
//!   g` for some `deg g < n - k`; coprimality forces `f` to be a multiple of
//!   `b`, and the hull is spanned by `v b(alpha)`.
//! * [`build_generalized`]: given `h' = c f^2 g1 g2` with coprime `g1`, `g2`,
//!   take `v_i = e(alpha_i) / (f g2)(alpha_i)` with `e = (x - F)^(s-1)` and `k
//!   = n - 2s + 1 - deg g1`. The same argument, with `v^2 h' = c e^2 g1 / g2`,
//!   shows the hull is spanned by `(e/f)(alpha)`. No square roots are needed.

mod enumerate;
mod family;
mod generalized;
mod square;

pub use enumerate::{admissible, ATLAS_FAMILIES};
pub use family::{Construction, Params, RouVariant, SquareFamily};
pub use generalized::{
    additive_cosets, mult_cosets, mult_cosets_claimed_k, roots_of_unity, subfield, xn_minus_x,
};
pub use square::{eval_set, even_q, square_family, square_family_k};

use crate::code::{certify, Certificate, Claim, LinearCode, Matrix};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldRef};
use crate::grs::{h_prime_values, GrsSpec};
use crate::poly::Poly;

/// Polynomials for [`build_ab`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbSplit {
    pub a: Poly,
    pub b: Poly,
}

/// Factorization `h' = c * f^2 * g1 * g2` for [`build_generalized`];
/// `f`, `g1`, `g2` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSplit {
    pub f: Poly,
    pub g1: Poly,
    pub g2: Poly,
}

/// Output of a construction engine before certification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub spec: GrsSpec,
    pub witness: Vec<Elem>,
    pub notes: Vec<String>,
}

/// A constructed code together with how it was made and, once checked, its
/// certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullCode {
    pub spec: GrsSpec,
    pub construction: Construction,
    pub dual: bool,
    /// `(n, k)` as promised by the family's parameter formula.
    pub claimed: (usize, usize),
    /// A vector spanning the hull.
    pub hull_witness: Vec<Elem>,
    pub cert: Option<Certificate>,
    pub notes: Vec<String>,
}

impl HullCode {
    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn k(&self) -> usize {
        self.spec.k()
    }

    pub fn params(&self) -> Params {
        let mut p = self
            .construction
            .params(self.spec.field().order(), Some(self.spec.n()));
        p.dual = self.dual;
        p
    }

    pub fn family_name(&self) -> String {
        self.construction.family_name()
    }

    /// Runs the full certificate against the claim `(n, k, hull 1, MDS)` and
    /// checks the hull witness: it is a nonzero codeword orthogonal to the
    /// whole code, and its span equals the computed hull.
    pub fn certify(&mut self, budget: u64) -> Result<&Certificate> {
        let (n, k) = self.claimed;
        let code = self.spec.code();
        let cert = certify(
            &code,
            Claim {
                n,
                k,
                hull_dim: 1,
                mds: true,
            },
            budget,
            Some(&self.spec),
        )?;
        check_witness(&code, &self.hull_witness)?;
        self.cert = Some(cert);
        Ok(self.cert.as_ref().unwrap())
    }
}

fn check_witness(code: &LinearCode, w: &[Elem]) -> Result<()> {
    let f = code.field();
    if w.len() != code.len() || w.iter().all(|e| e.is_zero()) {
        return Err(Error::Certification("hull witness is empty".into()));
    }
    if !code.contains(w)? {
        return Err(Error::Certification(
            "hull witness is not a codeword".into(),
        ));
    }
    let g = code.generator();
    if (0..g.rows()).any(|r| !f.dot(g.row(r), w).is_zero()) {
        return Err(Error::Certification(
            "hull witness is not orthogonal to the code".into(),
        ));
    }
    let span = LinearCode::new(Matrix::from_rows(f, w.len(), vec![w.to_vec()])?)?;
    if !code.hull().same_code(&span)? {
        return Err(Error::Certification(
            "hull witness does not span the hull".into(),
        ));
    }
    Ok(())
}

/// Smallest element (in index order) outside `forbidden`.
pub fn find_free_point(field: &FieldRef, forbidden: &[Elem]) -> Result<Elem> {
    let mut taken = vec![false; field.order() as usize];
    for e in forbidden {
        if let Some(slot) = taken.get_mut(e.index() as usize) {
            *slot = true;
        }
    }
    taken
        .iter()
        .position(|&t| !t)
        .map(|i| Elem::from_index(i as u32))
        .ok_or(Error::NoFreePoint(forbidden.len()))
}

/// The `a`/`b` engine. If every `(a b h')(alpha_i)` is a non-square, `b` is
/// rescaled by the smallest non-square, which changes neither `gcd(a, b)`
/// nor the argument above.
pub fn build_ab(field: &FieldRef, alpha: &[Elem], split: &AbSplit) -> Result<Built> {
    let n = alpha.len();
    let (a, b) = (&split.a, &split.b);
    if n < 2 {
        return Err(Error::precondition("n >= 2", format!("n = {n}")));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::precondition("a, b nonzero", "zero polynomial"));
    }
    if a.deg() + b.deg() != n - 2 {
        return Err(Error::precondition(
            "deg a + deg b = n - 2",
            format!("{} + {} != {}", a.deg(), b.deg(), n - 2),
        ));
    }
    if a.gcd(b)?.deg() != 0 {
        return Err(Error::precondition("gcd(a, b) = 1", "a and b share a root"));
    }
    let hp = h_prime_values(field, alpha);
    let mut vals = Vec::with_capacity(n);
    let mut avals = Vec::with_capacity(n);
    for (i, (&x, &h)) in alpha.iter().zip(&hp).enumerate() {
        let (av, bv) = (a.eval(x), b.eval(x));
        if av.is_zero() || bv.is_zero() {
            return Err(Error::precondition(
                "a, b nonvanishing on the evaluation set",
                format!("a or b vanishes at alpha_{i} = {x}"),
            ));
        }
        if h.is_zero() {
            return Err(Error::InvalidGrs(format!("evaluation point {x} repeated")));
        }
        avals.push(av);
        vals.push(field.mul(field.mul(av, bv), h));
    }
    let mut notes = Vec::new();
    if !vals.iter().all(|&x| field.is_square(x)) {
        if vals.iter().all(|&x| !field.is_square(x)) {
            let lambda = field.smallest_non_square().expect("odd field");
            for x in vals.iter_mut() {
                *x = field.mul(*x, lambda);
            }
            notes.push(format!(
                "(a b h')(alpha_i) all non-squares; b scaled by the non-square {lambda}"
            ));
        } else {
            let i = vals.iter().position(|&x| !field.is_square(x)).unwrap();
            return Err(Error::SquarenessViolated {
                position: i,
                point: alpha[i].index(),
                value: vals[i].index(),
            });
        }
    }
    let mut v = Vec::with_capacity(n);
    let mut witness = Vec::with_capacity(n);
    for i in 0..n {
        let root = field.sqrt(vals[i])?;
        v.push(field.div(avals[i], root)?);
        witness.push(field.div(root, hp[i])?);
    }
    let k = n - 1 - a.deg();
    Ok(Built {
        spec: GrsSpec::new(field, alpha.to_vec(), v, k)?,
        witness,
        notes,
    })
}

/// The factorization engine. `enforce_bound` requires `n + deg g1 + deg g2
/// <= q - 1`, which guarantees a free point; without it the construction
/// succeeds whenever a free point exists.
pub fn build_generalized(
    field: &FieldRef,
    alpha: &[Elem],
    split: &GenSplit,
    s: usize,
    enforce_bound: bool,
) -> Result<Built> {
    let n = alpha.len();
    let GenSplit { f, g1, g2 } = split;
    for (name, p) in [("f", f), ("g1", g1), ("g2", g2)] {
        if p.is_zero() || p.leading() != Elem::ONE {
            return Err(Error::precondition(
                "monic factors",
                format!("{name} is not monic"),
            ));
        }
    }
    let h = Poly::from_roots(field, alpha);
    if !h.is_squarefree_on(alpha) {
        return Err(Error::InvalidGrs("evaluation points are not distinct".into()));
    }
    let hp = h.derivative();
    let product = f.mul(f)?.mul(g1)?.mul(g2)?.scale(hp.leading());
    if product != hp {
        return Err(Error::hypothesis(
            "h' = c f^2 g1 g2",
            format!("factorization does not reproduce h' (deg h' = {})", hp.deg()),
        ));
    }
    if g1.gcd(g2)?.deg() != 0 {
        return Err(Error::hypothesis("gcd(g1, g2) = 1", "g1 and g2 share a root"));
    }
    let (d1, d2) = (g1.deg(), g2.deg());
    let s_max = n.saturating_sub(d1 + d2) / 2;
    if s < 1 || s > s_max {
        return Err(Error::precondition(
            "1 <= s <= (n - deg g1 - deg g2)/2",
            format!("s = {s}, bound {s_max}"),
        ));
    }
    let q = field.order() as usize;
    if enforce_bound && n + d1 + d2 > q - 1 {
        return Err(Error::precondition(
            "n + deg g1 + deg g2 <= q - 1",
            format!("{n} + {d1} + {d2} > {}", q - 1),
        ));
    }
    let mut notes = Vec::new();
    let e = if s >= 2 {
        let mut forbidden = alpha.to_vec();
        forbidden.extend(g1.root_set()?);
        forbidden.extend(g2.root_set()?);
        let point = find_free_point(field, &forbidden)?;
        notes.push(format!("free point F = {point}"));
        Poly::linear(field, point).pow((s - 1) as u32)
    } else {
        Poly::one(field)
    };
    let mut v = Vec::with_capacity(n);
    let mut witness = Vec::with_capacity(n);
    for &x in alpha {
        let (ev, fv, g2v) = (e.eval(x), f.eval(x), g2.eval(x));
        v.push(field.div(ev, field.mul(fv, g2v))?);
        witness.push(field.div(ev, fv)?);
    }
    let k = n + 1 - 2 * s - d1;
    Ok(Built {
        spec: GrsSpec::new(field, alpha.to_vec(), v, k)?,
        witness,
        notes,
    })
}

/// Builds the code for `c` without certifying it.
pub fn build(field: &FieldRef, c: &Construction) -> Result<HullCode> {
    let (built, claimed_k) = match *c {
        Construction::EvenQ { n, s } => even_q(field, n, s)?,
        Construction::Square {
            family,
            n,
            s,
            t,
            r,
            ell,
        } => square_family(field, family, n, s, t, r, ell)?,
        Construction::XnMinusX { n, s } => xn_minus_x(field, n, s)?,
        Construction::Subfield { r, s } => subfield(field, r, s)?,
        Construction::RootsOfUnity { n, s, variant } => roots_of_unity(field, n, s, variant)?,
        Construction::AdditiveCosets { r, t, s } => additive_cosets(field, r, t, s)?,
        Construction::MultCosets {
            n,
            t,
            s,
            variant,
            extend,
        } => mult_cosets(field, n, t, s, variant, extend)?,
    };
    let n = built.spec.n();
    if claimed_k <= 1 {
        return Err(Error::DegenerateDimension { n, k: claimed_k });
    }
    Ok(HullCode {
        spec: built.spec,
        construction: c.clone(),
        dual: false,
        claimed: (n, claimed_k),
        hull_witness: built.witness,
        cert: None,
        notes: built.notes,
    })
}

/// Builds and certifies. Any code returned here has a certificate with
/// `hull_dim = 1` and `is_mds = true`.
pub fn construct(field: &FieldRef, c: &Construction, budget: u64) -> Result<HullCode> {
    let mut hc = build(field, c)?;
    hc.certify(budget)?;
    Ok(hc)
}

/// The dual code. Its hull is the same space, so the witness carries over.
pub fn dualize(hc: &HullCode, budget: u64) -> Result<HullCode> {
    let (n, k) = (hc.n(), hc.k());
    if n - k <= 1 {
        return Err(Error::DegenerateDimension { n, k: n - k });
    }
    let mut out = HullCode {
        spec: hc.spec.dual()?,
        construction: hc.construction.clone(),
        dual: !hc.dual,
        claimed: (hc.claimed.0, hc.claimed.0 - hc.claimed.1),
        hull_witness: hc.hull_witness.clone(),
        cert: None,
        notes: hc.notes.clone(),
    };
    out.certify(budget)?;
    Ok(out)
}

/// Construct, then dualize if asked.
pub fn construct_with_dual(
    field: &FieldRef,
    c: &Construction,
    dual: bool,
    budget: u64,
) -> Result<HullCode> {
    let hc = construct(field, c, budget)?;
    if dual {
        dualize(&hc, budget)
    } else {
        Ok(hc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::DEFAULT_BUDGET;
    use crate::gf::GaloisField;

    #[test]
    fn free_points() {
        let f = GaloisField::prime(19).unwrap();
        assert_eq!(find_free_point(&f, &[]).unwrap(), Elem::ZERO);
        let all: Vec<Elem> = f.elements().collect();
        assert_eq!(find_free_point(&f, &all), Err(Error::NoFreePoint(19)));
        let mut forbidden: Vec<Elem> = f
            .elements()
            .filter(|&x| f.pow(x, 9).unwrap() == Elem::ONE)
            .collect();
        forbidden.push(Elem::ZERO);
        // 1 is a ninth root of unity, 2 is a generator.
        assert_eq!(find_free_point(&f, &forbidden).unwrap(), Elem::from_index(2));
    }

    #[test]
    fn ab_with_trivial_a() {
        let f = GaloisField::new(2, 3, None).unwrap();
        let alpha: Vec<Elem> = (0..5).map(Elem::from_index).collect();
        let split = AbSplit {
            a: Poly::one(&f),
            b: Poly::linear(&f, Elem::from_index(5)).pow(3),
        };
        let built = build_ab(&f, &alpha, &split).unwrap();
        assert_eq!(built.spec.k(), 4);
        assert!(f.dot(&built.witness, &built.witness).is_zero());
        assert!(built.spec.code().contains(&built.witness).unwrap());
    }

    #[test]
    fn ab_rejects_common_roots_and_bad_degrees() {
        let f = GaloisField::prime(13).unwrap();
        let alpha: Vec<Elem> = (1..5).map(Elem::from_index).collect();
        let x7 = Poly::linear(&f, Elem::from_index(7));
        let bad = AbSplit {
            a: x7.clone(),
            b: x7.clone(),
        };
        assert!(matches!(
            build_ab(&f, &alpha, &bad),
            Err(Error::Precondition { .. })
        ));
        let short = AbSplit {
            a: x7.clone(),
            b: Poly::one(&f),
        };
        assert!(build_ab(&f, &alpha, &short).is_err());
        let vanishing = AbSplit {
            a: Poly::linear(&f, Elem::from_index(1)),
            b: Poly::linear(&f, Elem::from_index(9)),
        };
        assert!(build_ab(&f, &alpha, &vanishing).is_err());
    }

    #[test]
    fn generalized_trivial_split() {
        // x^5 - x over GF(25): h' = -1.
        let f = GaloisField::of_order(25).unwrap();
        let alpha: Vec<Elem> = f
            .elements()
            .filter(|&x| f.pow(x, 5).unwrap() == x)
            .collect();
        let one = Poly::one(&f);
        let split = GenSplit {
            f: one.clone(),
            g1: one.clone(),
            g2: one.clone(),
        };
        for (s, k) in [(1, 4), (2, 2)] {
            let built = build_generalized(&f, &alpha, &split, s, true).unwrap();
            assert_eq!(built.spec.k(), k);
            let code = built.spec.code();
            assert_eq!(code.hull_dim_gram(), 1);
            check_witness(&code, &built.witness).unwrap();
        }
        assert!(build_generalized(&f, &alpha, &split, 3, true).is_err());
        let wrong = GenSplit {
            f: Poly::linear(&f, Elem::ZERO),
            g1: one.clone(),
            g2: one,
        };
        assert!(build_generalized(&f, &alpha, &wrong, 1, true).is_err());
    }

    #[test]
    fn dualize_twice_is_identity() {
        let f = GaloisField::new(2, 3, None).unwrap();
        let hc = construct(&f, &Construction::EvenQ { n: 6, s: 1 }, DEFAULT_BUDGET).unwrap();
        let d = dualize(&hc, DEFAULT_BUDGET).unwrap();
        assert_eq!((d.n(), d.k()), (6, 2));
        let dd = dualize(&d, DEFAULT_BUDGET).unwrap();
        assert!(dd.spec.code().same_code(&hc.spec.code()).unwrap());
        assert!(!dd.dual);
    }
}
