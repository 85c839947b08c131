//! Constructions through the factorization engine.

use super::family::RouVariant;
use super::square::{multiplicative_cosets, require_odd_q_gt5};
use super::{build_generalized, find_free_point, Built, GenSplit};
use crate::error::{Error, Result};
use crate::gf::{gcd, Elem, FieldRef};
use crate::poly::Poly;

const SEARCH_LIMIT: usize = 200_000;

fn pre(name: &str, ok: bool, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::precondition(name, detail()))
    }
}

fn x_pow(field: &FieldRef, e: usize) -> Poly {
    Poly::monomial(field, Elem::ONE, e)
}

fn trivial_split(field: &FieldRef) -> GenSplit {
    let one = Poly::one(field);
    GenSplit {
        f: one.clone(),
        g1: one.clone(),
        g2: one,
    }
}

fn sorted(mut v: Vec<Elem>) -> Vec<Elem> {
    v.sort_unstable();
    v
}

/// `[n, n - 2s + 1]` on the roots of `x^n - x`, where `h' = -1`.
pub fn xn_minus_x(field: &FieldRef, n: usize, s: usize) -> Result<(Built, usize)> {
    require_odd_q_gt5(field)?;
    let q = field.order() as usize;
    let p = field.characteristic() as usize;
    pre("n <= q - 1", n <= q - 1, || format!("n = {n}, q = {q}"))?;
    pre("p | n", n >= p && n % p == 0, || format!("n = {n}, p = {p}"))?;
    pre("(n-1) | (q-1)", (q - 1) % (n - 1) == 0, || format!("n = {n}, q = {q}"))?;
    pre("1 <= s <= n/2", s >= 1 && s <= n / 2, || format!("s = {s}, n = {n}"))?;
    let alpha: Vec<Elem> = field
        .elements()
        .filter(|&x| field.pow(x, n as i64).unwrap() == x)
        .collect();
    let built = build_generalized(field, &alpha, &trivial_split(field), s, true)?;
    Ok((built, n + 1 - 2 * s))
}

/// `[p^r, p^r - 2s + 1]` on the subfield `GF(p^r)`.
pub fn subfield(field: &FieldRef, r: u32, s: usize) -> Result<(Built, usize)> {
    require_odd_q_gt5(field)?;
    let m = field.degree();
    pre("1 <= r < m and r | m", r >= 1 && r < m && m % r == 0, || {
        format!("r = {r}, m = {m}")
    })?;
    let n = (field.characteristic() as usize).pow(r);
    pre("1 <= s <= (p^r - 1)/2", s >= 1 && s <= (n - 1) / 2, || {
        format!("s = {s}, p^r = {n}")
    })?;
    let alpha = field.subfield_elements(r)?;
    let built = build_generalized(field, &alpha, &trivial_split(field), s, true)?;
    Ok((built, n + 1 - 2 * s))
}

/// `[n, n - 2s + 1]` (odd-k) or `[n, n - 2s]` (even-k, `n` even) on the
/// `n`-th roots of unity, where `h' = n x^(n-1)`.
pub fn roots_of_unity(
    field: &FieldRef,
    n: usize,
    s: usize,
    variant: RouVariant,
) -> Result<(Built, usize)> {
    require_odd_q_gt5(field)?;
    let q = field.order() as usize;
    pre("2 <= n <= q - 2", n >= 2 && n <= q - 2, || format!("n = {n}, q = {q}"))?;
    pre("n | (q-1)", (q - 1) % n == 0, || {
        format!("x^{n} - 1 has {} roots in GF({q})", gcd(n as u64, q as u64 - 1))
    })?;
    let alpha = sorted(
        field
            .elements()
            .skip(1)
            .filter(|&x| field.pow(x, n as i64).unwrap() == Elem::ONE)
            .collect(),
    );
    let x = x_pow(field, 1);
    let one = Poly::one(field);
    let (split, k) = match variant {
        RouVariant::OddK => {
            pre("1 <= s <= (n-1)/2", s >= 1 && s <= (n - 1) / 2, || {
                format!("s = {s}, n = {n}")
            })?;
            let split = if n % 2 == 1 {
                GenSplit {
                    f: x_pow(field, (n - 1) / 2),
                    g1: one.clone(),
                    g2: one,
                }
            } else {
                GenSplit {
                    f: x_pow(field, (n - 2) / 2),
                    g1: one,
                    g2: x,
                }
            };
            (split, n + 1 - 2 * s)
        }
        RouVariant::EvenK => {
            pre("n even", n % 2 == 0, || format!("n = {n}"))?;
            pre("1 <= s <= n/2 - 1", s >= 1 && s < n / 2, || format!("s = {s}, n = {n}"))?;
            let split = GenSplit {
                f: x_pow(field, (n - 2) / 2),
                g1: x,
                g2: one,
            };
            (split, n - 2 * s)
        }
    };
    let built = build_generalized(field, &alpha, &split, s, true)?;
    Ok((built, k))
}

/// `[N, N - 2s + 1]` on `t + 1` additive cosets of `GF(p^r)`, with `g2` the
/// monic part of `h'`.
pub fn additive_cosets(field: &FieldRef, r: u32, t: usize, s: usize) -> Result<(Built, usize)> {
    require_odd_q_gt5(field)?;
    let q = field.order() as usize;
    let p = field.characteristic() as usize;
    let m = field.degree();
    pre("m >= 2", m >= 2, || format!("m = {m}"))?;
    pre("1 <= r <= m - 1 and r | m", r >= 1 && r < m && m % r == 0, || {
        format!("r = {r}, m = {m}")
    })?;
    let pr = p.pow(r);
    pre("gcd(p, t+1) = 1", (t + 1) % p != 0, || format!("t = {t}, p = {p}"))?;
    let cap = (q - 1 - pr) / (2 * pr);
    pre("1 <= t <= (q-1-p^r)/(2p^r)", t >= 1 && t <= cap, || {
        format!("t = {t}, bound {cap}")
    })?;
    pre("1 <= s <= p^r/2", s >= 1 && s <= pr / 2, || format!("s = {s}, p^r = {pr}"))?;
    let base = field.subfield_elements(r)?;
    let mut u = base.clone();
    for _ in 0..t {
        let beta = find_free_point(field, &u)?;
        u.extend(base.iter().map(|&x| field.add(x, beta)));
    }
    let u = sorted(u);
    let hp = Poly::from_roots(field, &u).derivative();
    if hp.deg() != t * pr {
        return Err(Error::hypothesis(
            "deg h' = t p^r",
            format!("deg h' = {}, t p^r = {}", hp.deg(), t * pr),
        ));
    }
    let one = Poly::one(field);
    let split = GenSplit {
        f: one.clone(),
        g1: one,
        g2: hp.monic(),
    };
    let big_n = u.len();
    let built = build_generalized(field, &u, &split, s, true)?;
    Ok((built, big_n + 1 - 2 * s))
}

/// The dimension promised by variant `variant` of the multiplicative-coset
/// construction.
pub fn mult_cosets_claimed_k(n: usize, t: usize, s: usize, variant: u8) -> Option<usize> {
    let big_n = (t + 1) * n;
    let k = match variant {
        1 => (n + 1).checked_sub(2 * s)?,
        2 => (2 * n + 1).checked_sub(2 * s)?,
        3 => n.checked_sub(2 * s)?,
        4 => (2 * n).checked_sub(2 * s)?,
        5 | 6 => (big_n + 1).checked_sub(2 * s)?,
        7 | 8 => big_n.checked_sub(2 * s)?,
        _ => return None,
    };
    Some(k)
}

/// The multiplicative-coset construction on `U_n ∪ beta_1 U_n ∪ ... ∪
/// beta_t U_n`, with `h' = c x^(n-1) g`. The `t` extra cosets are the
/// lexicographically first choice (in coset order) for which `g` has the
/// expected degree and, when `s >= 2`, a free point exists. With `extend`,
/// `t` may exceed the usual bound.
pub fn mult_cosets(
    field: &FieldRef,
    n: usize,
    t: usize,
    s: usize,
    variant: u8,
    extend: bool,
) -> Result<(Built, usize)> {
    require_odd_q_gt5(field)?;
    let q = field.order() as usize;
    let p = field.characteristic() as usize;
    pre("variant in 1..8", (1..=8).contains(&variant), || format!("variant = {variant}"))?;
    pre("n | (q-1)", n >= 1 && (q - 1) % n == 0, || format!("n = {n}, q = {q}"))?;
    let cap = q.saturating_sub(n + 2) / (2 * n);
    if extend {
        pre("t >= 1", t >= 1, || format!("t = {t}"))?;
    } else {
        pre("1 <= t <= (q-n-2)/(2n)", t >= 1 && t <= cap, || {
            format!("t = {t}, bound {cap}; use --extend to go beyond")
        })?;
    }
    let cosets = multiplicative_cosets(field, n);
    pre("t + 1 cosets available", t < cosets.len(), || {
        format!("t = {t}, {} cosets of the order-{n} subgroup", cosets.len())
    })?;
    let p_divides = (t + 1) % p == 0;
    let even_variant = variant % 2 == 0;
    if even_variant {
        pre("p | (t+1)", p_divides, || {
            format!("t = {t}, p = {p}; variant {variant} needs p | t+1, use variant {}", variant - 1)
        })?;
        pre("1 <= s <= n - 1", s >= 1 && s < n, || format!("s = {s}, n = {n}"))?;
    } else {
        pre("p does not divide t+1", !p_divides, || {
            format!("t = {t}, p = {p}; variant {variant} needs p ∤ t+1, use variant {}", variant + 1)
        })?;
        pre("1 <= s <= (n-1)/2", s >= 1 && s <= (n - 1) / 2, || format!("s = {s}, n = {n}"))?;
    }
    if matches!(variant, 3 | 4 | 7 | 8) {
        pre("n even", n % 2 == 0, || format!("n = {n}"))?;
    }
    let claimed = mult_cosets_claimed_k(n, t, s, variant)
        .ok_or_else(|| Error::DegenerateDimension { n: (t + 1) * n, k: 0 })?;
    let g_deg = if p_divides { (t - 1) * n } else { t * n };
    let f = if n % 2 == 1 {
        x_pow(field, (n - 1) / 2)
    } else {
        x_pow(field, (n - 2) / 2)
    };
    let x = x_pow(field, 1);
    let one = Poly::one(field);
    let others = cosets.len() - 1;
    let mut pick: Vec<usize> = (0..t).collect();
    let mut last_err = None;
    for _ in 0..SEARCH_LIMIT {
        let mut u = cosets[0].clone();
        for &i in &pick {
            u.extend_from_slice(&cosets[i + 1]);
        }
        let u = sorted(u);
        let hp = Poly::from_roots(field, &u).derivative();
        let (g, rem) = hp.divmod(&x_pow(field, n - 1))?;
        let g = g.monic();
        if rem.is_zero() && g.deg() == g_deg && !g.eval(Elem::ZERO).is_zero() {
            let split = match (variant, n % 2) {
                (1 | 2, 1) => GenSplit { f: f.clone(), g1: g, g2: one.clone() },
                (1 | 2, _) => GenSplit { f: f.clone(), g1: g, g2: x.clone() },
                (3 | 4, _) => GenSplit { f: f.clone(), g1: x.mul(&g)?, g2: one.clone() },
                (5 | 6, 1) => GenSplit { f: f.clone(), g1: one.clone(), g2: g },
                (5 | 6, _) => GenSplit { f: f.clone(), g1: one.clone(), g2: x.mul(&g)? },
                _ => GenSplit { f: f.clone(), g1: x.clone(), g2: g },
            };
            match build_generalized(field, &u, &split, s, !extend) {
                Ok(mut built) => {
                    if pick.iter().enumerate().any(|(i, &c)| c != i) {
                        built.notes.push(format!("coset choice {pick:?} (0 = first non-trivial coset)"));
                    }
                    return Ok((built, claimed));
                }
                Err(e @ Error::NoFreePoint(_)) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
        if !next_lex(&mut pick, others) {
            break;
        }
    }
    Err(last_err.unwrap_or_else(|| {
        Error::hypothesis(
            "deg g matches",
            format!("no choice of {t} cosets gives h' = c x^(n-1) g with deg g = {g_deg}"),
        )
    }))
}

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
