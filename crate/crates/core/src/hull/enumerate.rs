//! Candidate parameter tuples for a field.
//!
//! Candidates are generated over generous ranges and then filtered by
//! building them: a tuple is admissible unless the family's arithmetic side
//! conditions reject it ([`Error::is_inadmissible`]). Tuples that pass the side
//! conditions but fail a numerically checked hypothesis stay in the list so
//! that callers can report them.

use super::family::{Construction, RouVariant, SquareFamily};
use super::{build, eval_set, square_family_k};
use crate::gf::FieldRef;

/// Family names accepted by family filters, in enumeration order.
pub const ATLAS_FAMILIES: [&str; 7] = [
    "even-q",
    "square",
    "xn-minus-x",
    "subfield",
    "roots-of-unity",
    "additive-cosets",
    "mult-cosets",
];

fn wanted(filter: Option<&[String]>, c: &Construction) -> bool {
    match filter {
        None => true,
        Some(list) => {
            let name = c.family_name();
            list.iter()
                .any(|f| *f == name || (f == "square" && name.starts_with("square-")))
        }
    }
}

/// Admissible constructions of length at most `max_n`, in a deterministic
/// order. `families` restricts to the named families (`square` covers all
/// square families).
pub fn admissible(field: &FieldRef, max_n: usize, families: Option<&[String]>) -> Vec<Construction> {
    candidates(field, max_n)
        .into_iter()
        .filter(|c| wanted(families, c))
        .filter(|c| !matches!(build(field, c), Err(e) if e.is_inadmissible()))
        .collect()
}

fn candidates(field: &FieldRef, max_n: usize) -> Vec<Construction> {
    let q = field.order() as usize;
    let m = field.degree();
    let mut out = Vec::new();
    if q % 2 == 0 {
        for n in 4..=max_n.min(q.saturating_sub(2)) {
            for s in 1..=n - 3 {
                out.push(Construction::EvenQ { n, s });
            }
        }
        return out;
    }
    square_candidates(field, max_n, &mut out);
    for n in 2..=max_n.min(q - 1) {
        for s in 1..=n / 2 {
            out.push(Construction::XnMinusX { n, s });
        }
    }
    for r in 1..m {
        let n = (field.characteristic() as usize).pow(r);
        if n > max_n {
            break;
        }
        for s in 1..=n / 2 {
            out.push(Construction::Subfield { r, s });
        }
    }
    for n in 2..=max_n.min(q - 2) {
        if (q - 1) % n != 0 {
            continue;
        }
        for variant in [RouVariant::OddK, RouVariant::EvenK] {
            for s in 1..=n / 2 {
                out.push(Construction::RootsOfUnity { n, s, variant });
            }
        }
    }
    for r in 1..m {
        let pr = (field.characteristic() as usize).pow(r);
        for t in 1.. {
            if (t + 1) * pr > max_n {
                break;
            }
            for s in 1..=pr / 2 {
                out.push(Construction::AdditiveCosets { r, t, s });
            }
        }
    }
    for n in 1..=max_n / 2 {
        if (q - 1) % n != 0 {
            continue;
        }
        for t in 1..max_n / n {
            for variant in 1..=8u8 {
                for s in 1..n.max(2) {
                    out.push(Construction::MultCosets {
                        n,
                        t,
                        s,
                        variant,
                        extend: false,
                    });
                }
            }
        }
    }
    out
}

/// Square-family candidates: parameter tuples whose evaluation set passes
/// the side conditions, crossed with every valid `s`.
fn square_candidates(field: &FieldRef, max_n: usize, out: &mut Vec<Construction>) {
    use SquareFamily::*;
    let m = field.degree();
    let mut shapes: Vec<(SquareFamily, Option<usize>, Option<usize>, Option<u32>, Option<u32>)> =
        Vec::new();
    for family in [F1, F2, F3a, F3b] {
        for n in 2..=max_n {
            shapes.push((family, Some(n), None, None, None));
        }
    }
    for family in [F4, F5, F6] {
        for r in 1..m {
            for t in 1..=max_n {
                shapes.push((family, None, Some(t), Some(r), None));
            }
        }
    }
    for family in [F7, F8] {
        for t in 1..=max_n {
            shapes.push((family, None, Some(t), None, None));
        }
    }
    for family in [F9, F11] {
        for r in 1..=m / 2 {
            for ell in 0..m {
                for t in 0..=max_n {
                    shapes.push((family, None, Some(t), Some(r), Some(ell)));
                }
            }
        }
    }
    for family in [F10, F12] {
        for ell in 1..m {
            shapes.push((family, None, None, None, Some(ell)));
        }
    }
    for (family, n, t, r, ell) in shapes {
        let len = match eval_set(field, family, n, t, r, ell) {
            Ok(u) => u.len(),
            Err(e) if e.is_inadmissible() => continue,
            // The side conditions hold but the set could not be realized;
            // keep the tuples so the failure is reported.
            Err(_) => match n {
                Some(n) => n,
                None => continue,
            },
        };
        if len > max_n {
            continue;
        }
        for s in 0..=len / 2 {
            if square_family_k(len, s).is_ok() {
                out.push(Construction::Square {
                    family,
                    n: if matches!(family, F1 | F2 | F3a | F3b) { Some(len) } else { None },
                    s,
                    t,
                    r,
                    ell,
                });
            }
        }
    }
}
