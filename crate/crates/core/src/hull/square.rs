//! Constructions through the `a`/`b` engine: the even-q family and the
//! families whose evaluation sets make `h'` a square class.

use super::family::SquareFamily;
use super::{build_ab, find_free_point, AbSplit, Built};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldRef};
use crate::grs::h_prime_values;
use crate::poly::Poly;

/// Upper bound on coset subsets tried before giving up.
const SEARCH_LIMIT: usize = 200_000;

fn pre(name: &str, ok: bool, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::precondition(name, detail()))
    }
}

pub(super) fn require_odd_q_gt5(field: &FieldRef) -> Result<()> {
    let q = field.order();
    pre("q odd and q > 5", q % 2 == 1 && q > 5, || format!("q = {q}"))
}

/// `[n, n - s - 1]` over even `q`: the first `n` elements as evaluation
/// points, the next two as the auxiliary roots of `a` and `b`.
pub fn even_q(field: &FieldRef, n: usize, s: usize) -> Result<(Built, usize)> {
    let q = field.order() as usize;
    pre("q even", q % 2 == 0, || format!("q = {q}"))?;
    pre("q > 4", q > 4, || format!("q = {q}"))?;
    pre("n <= q - 2", n <= q - 2, || format!("n = {n}, q = {q}"))?;
    pre("1 <= s <= n - 3", s >= 1 && s + 3 <= n, || format!("s = {s}, n = {n}"))?;
    let alpha: Vec<Elem> = (0..n as u32).map(Elem::from_index).collect();
    let a_root = Elem::from_index(n as u32);
    let b_root = Elem::from_index(n as u32 + 1);
    let split = AbSplit {
        a: Poly::linear(field, a_root).pow(s as u32),
        b: Poly::linear(field, b_root).pow((n - 2 - s) as u32),
    };
    Ok((build_ab(field, &alpha, &split)?, n - s - 1))
}

/// The dimension `K` for length `N` and parameter `s`, with its range check.
pub fn square_family_k(big_n: usize, s: usize) -> Result<usize> {
    if big_n % 2 == 0 {
        pre("1 <= s <= N/2 - 2", s >= 1 && s + 2 <= big_n / 2, || {
            format!("s = {s}, N = {big_n}")
        })?;
        Ok(big_n - 2 * s - 1)
    } else {
        pre("0 <= s <= (N+1)/2 - 3", s + 3 <= (big_n + 1) / 2, || {
            format!("s = {s}, N = {big_n}")
        })?;
        Ok(big_n - 2 * s - 2)
    }
}

fn is_perfect_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|x| x * x == n)
}

fn pow_u(p: u32, e: u32) -> u64 {
    (p as u64).pow(e)
}

/// `{x : x^n = 1}` in index order.
fn roots_of_unity(field: &FieldRef, n: usize) -> Vec<Elem> {
    field
        .elements()
        .skip(1)
        .filter(|&x| field.pow(x, n as i64).unwrap() == Elem::ONE)
        .collect()
}

/// Cosets of the order-`n` subgroup, each sorted, ordered by smallest
/// element; the subgroup itself comes first.
pub(super) fn multiplicative_cosets(field: &FieldRef, n: usize) -> Vec<Vec<Elem>> {
    let sub = roots_of_unity(field, n);
    let mut seen = vec![false; field.order() as usize];
    let mut out = Vec::new();
    for x in field.elements().skip(1) {
        if seen[x.index() as usize] {
            continue;
        }
        let mut coset: Vec<Elem> = sub.iter().map(|&u| field.mul(x, u)).collect();
        coset.sort_unstable();
        for e in &coset {
            seen[e.index() as usize] = true;
        }
        out.push(coset);
    }
    out
}

/// All `F`-linear combinations of `basis`, where `scalars` is the subfield `F`.
fn span(field: &FieldRef, scalars: &[Elem], basis: &[Elem]) -> Vec<Elem> {
    let mut out = vec![Elem::ZERO];
    for &b in basis {
        out = out
            .iter()
            .flat_map(|&x| scalars.iter().map(move |&c| (x, c)))
            .map(|(x, c)| field.add(x, field.mul(c, b)))
            .collect();
    }
    out.sort_unstable();
    out
}

/// Greedy `F`-basis of `dim` vectors, each the smallest element outside the
/// span of the previous ones together with `avoid`.
fn greedy_subspace(
    field: &FieldRef,
    scalars: &[Elem],
    avoid: &[Elem],
    dim: usize,
) -> Result<Vec<Elem>> {
    let mut basis: Vec<Elem> = avoid.to_vec();
    for _ in 0..dim {
        let current = span(field, scalars, &basis);
        let next = find_free_point(field, &current)?;
        basis.push(next);
    }
    Ok(span(field, scalars, &basis[avoid.len()..]))
}

fn uniform_square_class(field: &FieldRef, u: &[Elem], times_x: bool) -> bool {
    let hp = h_prime_values(field, u);
    let classes: Vec<bool> = hp
        .iter()
        .zip(u)
        .map(|(&h, &x)| field.is_square(if times_x { field.mul(h, x) } else { h }))
        .collect();
    classes.iter().all(|&c| c == classes[0])
}

/// Advances a lexicographic `k`-subset of `0..n`; false after the last.
fn next_lex(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Maps a set on the projective line `u0 ∪ {∞}` to an affine set via
/// `x -> 1/(x - c)` with `c` the smallest element outside `u0`; infinity
/// goes to 0.
fn with_point_at_infinity(field: &FieldRef, u0: &[Elem]) -> Result<Vec<Elem>> {
    let c = find_free_point(field, u0)?;
    let mut out = vec![Elem::ZERO];
    for &x in u0 {
        out.push(field.inv(field.sub(x, c))?);
    }
    out.sort_unstable();
    Ok(out)
}

fn need<T>(v: Option<T>, name: &str, family: SquareFamily) -> Result<T> {
    v.ok_or_else(|| {
        Error::precondition(
            name,
            format!("square family {} requires --{name}", family.id()),
        )
    })
}

/// The evaluation set of a square family, sorted. `big_n` is the length for
/// families 1–3 and an optional consistency check for the others.
pub fn eval_set(
    field: &FieldRef,
    family: SquareFamily,
    big_n: Option<usize>,
    t: Option<usize>,
    r: Option<u32>,
    ell: Option<u32>,
) -> Result<Vec<Elem>> {
    use SquareFamily::*;
    require_odd_q_gt5(field)?;
    let q = field.order() as u64;
    let p = field.characteristic();
    let m = field.degree();
    let u = match family {
        F1 | F2 | F3a | F3b => {
            let n = need(big_n, "N", family)? as u64;
            match family {
                F1 | F2 => {
                    pre("N even", n % 2 == 0, || format!("N = {n}"))?;
                    pre("(N-1) | (q-1)", n >= 2 && (q - 1) % (n - 1) == 0, || {
                        format!("N = {n}, q = {q}")
                    })?;
                    if family == F1 {
                        pre("p | N", n % p as u64 == 0, || format!("N = {n}, p = {p}"))?;
                    } else {
                        pre("q a square", m % 2 == 0, || format!("q = {q}"))?;
                    }
                    field
                        .elements()
                        .filter(|&x| field.pow(x, n as i64).unwrap() == x)
                        .collect()
                }
                _ => {
                    pre("N | (q-1)/2", n >= 1 && ((q - 1) / 2) % n == 0, || {
                        format!("N = {n}, q = {q}")
                    })?;
                    if family == F3a {
                        pre("N even", n % 2 == 0, || format!("N = {n}"))?;
                    } else {
                        pre("N odd", n % 2 == 1, || format!("N = {n}"))?;
                    }
                    roots_of_unity(field, n as usize)
                }
            }
        }
        F4 | F5 | F6 => {
            let r = need(r, "r", family)?;
            let t = need(t, "t", family)?;
            pre("1 <= r < m", r >= 1 && r < m, || format!("r = {r}, m = {m}"))?;
            let pr = pow_u(p, r);
            let n = if family == F6 {
                pre("m even and r | m/2", m % 2 == 0 && (m / 2) % r == 0, || {
                    format!("r = {r}, m = {m}")
                })?;
                pre("t <= p^r - 2", t as u64 + 2 <= pr, || format!("t = {t}, p^r = {pr}"))?;
                (q - 1) / (pr - 1)
            } else {
                pre("(p^r + 1) | (q - 1)", (q - 1) % (pr + 1) == 0, || {
                    format!("p^r = {pr}, q = {q}")
                })?;
                let n = (q - 1) / (pr + 1);
                let twice = 2 * (pr - 1);
                pre("n(p^r+1)/(2(p^r-1)) an integer", (q - 1) % twice == 0, || {
                    format!("n = {n}, p^r = {pr}")
                })?;
                let ratio = (q - 1) / twice;
                if family == F4 {
                    pre("n(p^r+1)/(2(p^r-1)) odd", ratio % 2 == 1, || format!("value {ratio}"))?;
                    pre("t odd", t % 2 == 1, || format!("t = {t}"))?;
                } else {
                    pre("n(p^r+1)/(2(p^r-1)) even", ratio % 2 == 0, || format!("value {ratio}"))?;
                }
                pre("t <= floor((q-2)/n) - 1", (t as u64 + 1) * n <= q - 2, || {
                    format!("t = {t}, n = {n}")
                })?;
                n
            };
            pre("n a perfect square", is_perfect_square(n), || format!("n = {n}"))?;
            pre("t >= 1", t >= 1, || format!("t = {t}"))?;
            let len = (t as u64 + 1) * n;
            pre("N <= q - 2", len + 2 <= q, || format!("N = {len}, q = {q}"))?;
            coset_union_with_square_class(field, n as usize, t)?
        }
        F7 | F8 => {
            let t = need(t, "t", family)?;
            pre("m even", m % 2 == 0, || format!("m = {m}"))?;
            let q0 = pow_u(p, m / 2) as usize;
            pre("1 <= t < q0", t >= 1 && t < q0, || format!("t = {t}, q0 = {q0}"))?;
            if family == F7 {
                pre("t even", t % 2 == 0, || format!("t = {t}"))?;
            } else {
                pre("t odd", t % 2 == 1, || format!("t = {t}"))?;
            }
            let sub = field.subfield_elements(m / 2)?;
            let beta = find_free_point(field, &sub)?;
            let mut u0: Vec<Elem> = sub[..t]
                .iter()
                .flat_map(|&a| sub.iter().map(move |&b| (a, b)))
                .map(|(a, b)| field.add(field.mul(a, beta), b))
                .collect();
            u0.sort_unstable();
            if family == F7 {
                u0
            } else {
                with_point_at_infinity(field, &u0)?
            }
        }
        F9 | F11 => {
            let m0 = need(r, "r", family)?;
            let ell = need(ell, "ell", family)?;
            let t = need(t, "t", family)?;
            pre("m even", m % 2 == 0, || format!("m = {m}"))?;
            pre("m0 | m/2", m0 >= 1 && (m / 2) % m0 == 0, || format!("m0 = {m0}, m = {m}"))?;
            pre("0 <= ell < m/m0", ell < m / m0, || format!("ell = {ell}, m/m0 = {}", m / m0))?;
            let rr = pow_u(p, m0);
            let rl = pow_u(p, m0 * ell);
            let cosets = if family == F9 {
                let cap = ((rr - 1) / 2).min((q - 2) / (2 * rl));
                pre("1 <= t <= min((r-1)/2, (q-2)/(2r^ell))", t >= 1 && t as u64 <= cap, || {
                    format!("t = {t}, bound {cap}")
                })?;
                2 * t
            } else {
                let cap = ((rr - 1) / 2).min((q - 2 - rl) / (2 * rl));
                pre("0 <= t <= min((r-1)/2, (q-2-r^ell)/(2r^ell))", t as u64 <= cap, || {
                    format!("t = {t}, bound {cap}")
                })?;
                2 * t + 1
            };
            let scalars = field.subfield_elements(m0)?;
            let u0 = coset_union(field, &scalars, ell as usize, cosets)?;
            if family == F9 {
                u0
            } else {
                with_point_at_infinity(field, &u0)?
            }
        }
        F10 | F12 => {
            let ell = need(ell, "ell", family)?;
            pre("q = 1 mod 4", q % 4 == 1, || format!("q = {q}"))?;
            pre("0 < ell < m", ell > 0 && ell < m, || format!("ell = {ell}, m = {m}"))?;
            let scalars = field.subfield_elements(1)?;
            if family == F10 {
                coset_union(field, &scalars, ell as usize, 2)?
            } else {
                let h = coset_union(field, &scalars, ell as usize, 1)?;
                with_point_at_infinity(field, &h)?
            }
        }
    };
    let len = u.len();
    pre("N <= q - 2", len as u64 + 2 <= q, || format!("N = {len}, q = {q}"))?;
    if let Some(n) = big_n {
        pre("N matches the family's length", n == len, || {
            format!("N = {n} given, family yields {len}")
        })?;
    }
    Ok(u)
}

/// `H + a_0 beta ∪ ... ∪ H + a_{c-1} beta` with `H` an `ell`-dimensional
/// subspace over `scalars`, `beta` the smallest element outside the scalar
/// field, and `a_i` the scalars in index order.
fn coset_union(field: &FieldRef, scalars: &[Elem], ell: usize, count: usize) -> Result<Vec<Elem>> {
    pre("enough scalars for the cosets", count <= scalars.len(), || {
        format!("{count} cosets, {} scalars", scalars.len())
    })?;
    let beta = find_free_point(field, scalars)?;
    let h = greedy_subspace(field, scalars, &[beta], ell)?;
    let mut u: Vec<Elem> = scalars[..count]
        .iter()
        .flat_map(|&a| h.iter().map(move |&x| (a, x)))
        .map(|(a, x)| field.add(x, field.mul(a, beta)))
        .collect();
    u.sort_unstable();
    Ok(u)
}

/// `U_n` together with the lexicographically first `t` further cosets whose
/// union has `h'` (times `x` for odd length) in a single square class.
fn coset_union_with_square_class(field: &FieldRef, n: usize, t: usize) -> Result<Vec<Elem>> {
    let cosets = multiplicative_cosets(field, n);
    let others = cosets.len() - 1;
    pre("enough cosets", t <= others, || format!("t = {t}, {others} cosets available"))?;
    let odd = (t + 1) * n % 2 == 1;
    let mut pick: Vec<usize> = (0..t).collect();
    for _ in 0..SEARCH_LIMIT {
        let mut u = cosets[0].clone();
        for &i in &pick {
            u.extend_from_slice(&cosets[i + 1]);
        }
        u.sort_unstable();
        if uniform_square_class(field, &u, odd) {
            return Ok(u);
        }
        if !next_lex(&mut pick, others) {
            break;
        }
    }
    Err(Error::hypothesis(
        "h' in one square class",
        format!("no choice of {t} cosets of the order-{n} subgroup works"),
    ))
}

/// `[N, K]` from a square family: `a = (x - alpha)^(2s)`, `b = (x -
/// beta)^(N-2-2s)` for even `N`, and `a = x (x - alpha)^(2s)`, `b = (x -
/// beta)^(N-3-2s)` for odd `N`, where `0` must avoid the evaluation set.
pub fn square_family(
    field: &FieldRef,
    family: SquareFamily,
    big_n: Option<usize>,
    s: usize,
    t: Option<usize>,
    r: Option<u32>,
    ell: Option<u32>,
) -> Result<(Built, usize)> {
    let u = eval_set(field, family, big_n, t, r, ell)?;
    let len = u.len();
    let k = square_family_k(len, s)?;
    let odd = len % 2 == 1;
    let mut forbidden = u.clone();
    if odd {
        pre("0 outside the evaluation set", !u.contains(&Elem::ZERO), || {
            "odd N needs x coprime to h".into()
        })?;
        forbidden.push(Elem::ZERO);
    }
    let alpha_aux = find_free_point(field, &forbidden)?;
    forbidden.push(alpha_aux);
    let beta_aux = find_free_point(field, &forbidden)?;
    let mut a = Poly::linear(field, alpha_aux).pow(2 * s as u32);
    let b_deg = if odd { len - 3 - 2 * s } else { len - 2 - 2 * s };
    if odd {
        a = a.mul(&Poly::linear(field, Elem::ZERO))?;
    }
    let split = AbSplit {
        a,
        b: Poly::linear(field, beta_aux).pow(b_deg as u32),
    };
    let mut built = build_ab(field, &u, &split)?;
    built
        .notes
        .push(format!("auxiliary points alpha = {alpha_aux}, beta = {beta_aux}"));
    Ok((built, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::GaloisField;

    #[test]
    fn perfect_squares() {
        assert!(is_perfect_square(0));
        assert!(is_perfect_square(4));
        assert!(is_perfect_square(1 << 40));
        assert!(!is_perfect_square(8));
    }

    #[test]
    fn lex_subsets() {
        let mut s = vec![0, 1];
        let mut n = 1;
        while next_lex(&mut s, 4) {
            n += 1;
        }
        assert_eq!(n, 6);
        assert_eq!(s, vec![2, 3]);
    }

    #[test]
    fn eighth_roots_in_gf81() {
        let f = GaloisField::of_order(81).unwrap();
        let u = eval_set(&f, SquareFamily::F3a, Some(8), None, None, None).unwrap();
        assert_eq!(u.len(), 8);
        assert!(u.iter().all(|&x| f.pow(x, 8).unwrap() == Elem::ONE));
    }

    #[test]
    fn family_one_has_no_length_over_gf27() {
        let f = GaloisField::of_order(27).unwrap();
        for n in 2..=25 {
            assert!(eval_set(&f, SquareFamily::F1, Some(n), None, None, None).is_err());
        }
    }

    #[test]
    fn cosets_partition_the_group() {
        let f = GaloisField::prime(19).unwrap();
        let c = multiplicative_cosets(&f, 3);
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![Elem::ONE, Elem::from_index(7), Elem::from_index(11)]);
        let total: usize = c.iter().map(Vec::len).sum();
        assert_eq!(total, 18);
    }

    #[test]
    fn subspace_cosets_are_disjoint() {
        let f = GaloisField::of_order(81).unwrap();
        let scalars = f.subfield_elements(1).unwrap();
        let u = coset_union(&f, &scalars, 2, 2).unwrap();
        let mut d = u.clone();
        d.dedup();
        assert_eq!(d.len(), 18);
    }
}
