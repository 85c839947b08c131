//! Acceptance suite. Runs each criterion once and prints a PASS/FAIL line
//! for it; exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{brute_hull_dim, field, prime_powers, rand_matrix, rng};
use hullforge::cli::{atlas_table, TableFormat};
use hullforge::code::{min_distance, DistanceRecord, LinearCode, DEFAULT_BUDGET};
use hullforge::gf::{Elem, FieldRef};
use hullforge::grs::{h_prime_values, GrsSpec};
use hullforge::hull::{
    admissible, build, construct, dualize, Construction, HullCode, RouVariant, SquareFamily,
};
use hullforge::poly::Poly;
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    if took > limit {
        Err(format!("took {took:.1?}, limit {limit:?}"))
    } else {
        Ok(took)
    }
}

/// The atlas line a certified code should produce.
fn csv_line(hc: &HullCode) -> String {
    let c = hc.cert.as_ref().unwrap();
    format!(
        "{},{},{},{},{},{},true,",
        hc.spec.field().order(),
        hc.family_name(),
        hc.params().compact(),
        c.n,
        c.k,
        c.d
    )
}

/// Everything the sweep produced, reused by later criteria.
struct Sweep {
    codes: Vec<HullCode>,
    lines: BTreeSet<String>,
}

fn reference_examples() -> (Outcome, Vec<HullCode>) {
    let start = Instant::now();
    let cases: Vec<(u64, Construction, (usize, usize, usize))> = vec![
        (8, Construction::EvenQ { n: 4, s: 1 }, (4, 2, 3)),
        (8, Construction::EvenQ { n: 5, s: 1 }, (5, 3, 3)),
        (8, Construction::EvenQ { n: 6, s: 1 }, (6, 4, 3)),
        (
            19,
            Construction::Square { family: SquareFamily::F3b, n: Some(9), s: 1, t: None, r: None, ell: None },
            (9, 5, 5),
        ),
        (81, Construction::RootsOfUnity { n: 8, s: 2, variant: RouVariant::OddK }, (8, 5, 4)),
        (81, Construction::MultCosets { n: 8, t: 1, s: 3, variant: 7, extend: false }, (16, 10, 7)),
        (81, Construction::MultCosets { n: 8, t: 2, s: 2, variant: 8, extend: false }, (24, 20, 5)),
    ];
    let mut codes = Vec::new();
    let mut run = || -> Outcome {
        for (q, c, (n, k, d)) in &cases {
            let hc = construct(&field(*q), c, DEFAULT_BUDGET).map_err(|e| format!("q={q} {c}: {e}"))?;
            let cert = hc.cert.clone().unwrap();
            ensure!(
                (cert.n, cert.k, cert.d, cert.hull_dim, cert.is_mds)
                    == (*n, *k, DistanceRecord::Exact(*d), 1, true),
                "q={q} {c}: got [{},{},{}] hull {}",
                cert.n,
                cert.k,
                cert.d,
                cert.hull_dim
            );
            codes.push(hc);
        }
        let took = within(Duration::from_secs(10), start)?;
        Ok(format!("7 codes reproduced with exact d in {took:.2?}"))
    };
    let out = run();
    (out, codes)
}

fn extend_mode_codes() -> Outcome {
    let start = Instant::now();
    let f = field(81);
    let mut exact = 0;
    for s in 1..=7 {
        let c = Construction::MultCosets { n: 8, t: 5, s, variant: 8, extend: true };
        let hc = construct(&f, &c, DEFAULT_BUDGET).map_err(|e| format!("s={s}: {e}"))?;
        let cert = hc.cert.as_ref().unwrap();
        let k = 48 - 2 * s;
        ensure!((cert.n, cert.k, cert.hull_dim) == (48, k, 1), "s={s}: [{},{}] hull {}", cert.n, cert.k, cert.hull_dim);
        match cert.d {
            DistanceRecord::Exact(d) => {
                ensure!(d == 48 - k + 1, "s={s}: d = {d}");
                exact += 1;
            }
            DistanceRecord::Structural => ensure!(s > 2, "s={s}: [48,{k}] must have exact d"),
            DistanceRecord::Unverified => return Err(format!("s={s}: d unverified")),
        }
    }
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!("[48,46,3]..[48,34,15] hull 1, {exact} exact d, rest structural, {took:.2?}"))
}

fn sweep() -> (Outcome, Sweep) {
    let start = Instant::now();
    let mut qs: Vec<u64> = prime_powers(7, 81).into_iter().filter(|q| q % 2 == 1).collect();
    qs.extend([8, 16, 32, 64]);
    let mut data = Sweep { codes: Vec::new(), lines: BTreeSet::new() };
    let mut failures = Vec::new();
    let mut tuples = 0;
    for &q in &qs {
        let f = field(q);
        for c in admissible(&f, 24, None) {
            tuples += 1;
            match sweep_one(&f, &c) {
                Ok(codes) => {
                    for hc in codes {
                        data.lines.insert(csv_line(&hc));
                        data.codes.push(hc);
                    }
                }
                Err(e) => failures.push(format!("q={q} {c}: {e}")),
            }
        }
    }
    let out = if !failures.is_empty() {
        Err(format!("{} failures, first: {}", failures.len(), failures[0]))
    } else {
        within(Duration::from_secs(300), start).map(|took| {
            format!(
                "{tuples} admissible tuples over {} fields, {} certified codes, all d exact, {took:.1?}",
                qs.len(),
                data.codes.len()
            )
        })
    };
    (out, data)
}

fn sweep_one(f: &FieldRef, c: &Construction) -> Result<Vec<HullCode>, String> {
    let mut hc = build(f, c).map_err(|e| e.to_string())?;
    let cert = hc.certify(DEFAULT_BUDGET).map_err(|e| e.to_string())?.clone();
    ensure!(cert.d.exact().is_some(), "d not exact");
    ensure!((cert.n, cert.k) == hc.claimed, "claimed {:?}, got [{},{}]", hc.claimed, cert.n, cert.k);
    // The dual multipliers against the kernel of the generator.
    if hc.k() < hc.n() {
        let dual = hc.spec.dual().map_err(|e| e.to_string())?;
        let kernel = hc.spec.generator().kernel();
        ensure!(
            dual.generator().same_row_space(&kernel).unwrap(),
            "dual spec does not generate the dual code"
        );
    }
    let mut out = vec![hc];
    let (n, k) = out[0].claimed;
    if n - k >= 2 {
        let d = dualize(&out[0], DEFAULT_BUDGET).map_err(|e| format!("dual: {e}"))?;
        ensure!(d.cert.as_ref().unwrap().d.exact().is_some(), "dual d not exact");
        out.push(d);
    }
    Ok(out)
}

fn oracle_agreement(sweep: &Sweep) -> Outcome {
    let mut r = rng(2024);
    let qs = [3u64, 5, 7, 8, 9, 19, 81];
    let fields: Vec<FieldRef> = qs.iter().map(|&q| field(q)).collect();
    let mut nonzero_hulls = 0;
    let mut brute = 0;
    for i in 0..1200 {
        let f = &fields[i % fields.len()];
        let n = r.random_range(1..=16);
        let k = r.random_range(1..=n);
        let mut g = rand_matrix(f, &mut r, k, n);
        // Bias towards self-orthogonal material so that nonzero hulls occur.
        if i % 3 == 0 && k >= 2 {
            let w = self_orthogonal_vector(f, n, &mut r);
            for c in 0..n {
                g.set(0, c, w[c]);
            }
        }
        let code = LinearCode::spanned_by(&g);
        let (gram, inter) = (code.hull_dim_gram(), code.hull_dim_intersection());
        ensure!(gram == inter, "q={} n={n} k={k}: gram {gram} vs intersection {inter}", f.order());
        if (f.order() as u64).checked_pow(code.dim() as u32).is_some_and(|c| c <= 20_000) {
            let b = brute_hull_dim(code.generator());
            ensure!(b == gram, "q={} n={n}: brute force {b} vs {gram}", f.order());
            brute += 1;
        }
        if gram > 0 {
            nonzero_hulls += 1;
        }
    }
    let mut grs = 0;
    for hc in sweep.codes.iter().filter(|hc| hc.n() <= 14) {
        let (n, k) = (hc.n(), hc.k());
        let d = min_distance(&hc.spec.code(), DEFAULT_BUDGET).exact();
        ensure!(d == Some(n - k + 1), "q={} [{n},{k}]: d = {d:?}", hc.spec.field().order());
        grs += 1;
    }
    Ok(format!(
        "1200 random matrices agree ({nonzero_hulls} nonzero hulls, {brute} brute-forced); {grs} sweep GRS codes with n <= 14 have d = n-k+1"
    ))
}

/// A random vector with w . w = 0 (nonzero when possible).
fn self_orthogonal_vector(f: &FieldRef, n: usize, r: &mut rand::rngs::StdRng) -> Vec<Elem> {
    let mut w: Vec<Elem> = (0..n).map(|_| common::rand_elem(f, r)).collect();
    // Fix the last coordinate: w_n^2 = -(sum of the others), if solvable.
    let rest = f.dot(&w[..n - 1], &w[..n - 1]);
    let target = f.neg(rest);
    if f.is_square(target) {
        w[n - 1] = f.sqrt(target).unwrap();
    }
    w
}

fn field_poly_suites(sweep: &Sweep) -> Outcome {
    let mut fields = 0;
    for q in prime_powers(2, 81) {
        let f = field(q);
        let squares: BTreeSet<Elem> = f.elements().map(|y| f.mul(y, y)).collect();
        for x in f.elements() {
            let sq = squares.contains(&x);
            ensure!(f.is_square(x) == sq, "q={q} x={}: is_square", x.index());
            if q % 2 == 1 && !x.is_zero() {
                let euler = f.pow(x, ((q - 1) / 2) as i64).unwrap() == Elem::ONE;
                ensure!(euler == sq, "q={q} x={}: Euler criterion", x.index());
            }
            if sq {
                let s = f.sqrt(x).unwrap();
                ensure!(f.mul(s, s) == x, "q={q} x={}: sqrt", x.index());
            }
        }
        fields += 1;
    }
    let mut r = rng(77);
    let pf = [field(7), field(8), field(19), field(81)];
    for i in 0..500 {
        let f = &pf[i % pf.len()];
        let a = common::rand_poly(f, &mut r, 15);
        let b = common::rand_poly(f, &mut r, 15);
        let lhs = a.mul(&b).unwrap().derivative();
        let rhs = a.derivative().mul(&b).unwrap().add(&a.mul(&b.derivative()).unwrap()).unwrap();
        ensure!(lhs == rhs, "product rule fails for pair {i}");
    }
    let sets: BTreeSet<(u32, Vec<u32>)> = sweep
        .codes
        .iter()
        .map(|hc| (hc.spec.field().order(), hc.spec.alpha().iter().map(|e| e.index()).collect()))
        .collect();
    for hc in &sweep.codes {
        let f = hc.spec.field();
        let alpha = hc.spec.alpha();
        let via_derivative = Poly::from_roots(f, alpha).derivative().eval_many(alpha);
        ensure!(via_derivative == h_prime_values(f, alpha), "h' values disagree");
        for (i, &a) in alpha.iter().enumerate() {
            let prod = alpha
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Elem::ONE, |acc, (_, &b)| f.mul(acc, f.sub(a, b)));
            ensure!(via_derivative[i] == prod, "q={} h'(alpha_{i}) mismatch", f.order());
        }
    }
    Ok(format!(
        "squares/Euler/sqrt on {fields} fields, 500 product-rule pairs, h' on {} point sets",
        sets.len()
    ))
}

fn sign_flips(sweep: &Sweep) -> Outcome {
    let mut r = rng(6);
    let mut pool: Vec<&HullCode> = sweep.codes.iter().filter(|hc| hc.spec.field().order() % 2 == 1).collect();
    pool.shuffle(&mut r);
    let mut checked = 0;
    let mut exact = 0;
    for hc in pool.into_iter().take(100) {
        let f = hc.spec.field();
        let n = hc.n();
        let flips: Vec<bool> = loop {
            let v: Vec<bool> = (0..n).map(|_| r.random_bool(0.5)).collect();
            if v.iter().any(|&b| b) {
                break v;
            }
        };
        let flip = |xs: &[Elem]| -> Vec<Elem> {
            xs.iter().zip(&flips).map(|(&x, &b)| if b { f.neg(x) } else { x }).collect()
        };
        let spec = GrsSpec::new(f, hc.spec.alpha().to_vec(), flip(hc.spec.v()), hc.k()).unwrap();
        let code = spec.code();
        let cert = hc.cert.as_ref().unwrap();
        let label = format!("q={} {} [{n},{}]", f.order(), hc.construction, hc.k());
        ensure!(code.hull_dim_gram() == cert.hull_dim, "{label}: hull changed");
        ensure!(code.hull_dim_intersection() == cert.hull_dim, "{label}: hull changed");
        let w = flip(&hc.hull_witness);
        ensure!(code.contains(&w).unwrap() && f.dot(&w, &w).is_zero(), "{label}: flipped witness");
        if let Some(d) = cert.d.exact() {
            let d2 = min_distance(&code, DEFAULT_BUDGET).exact();
            ensure!(d2 == Some(d), "{label}: d {d} -> {d2:?}");
            exact += 1;
        }
        checked += 1;
    }
    ensure!(checked == 100, "only {checked} codes available");
    Ok(format!("100 flipped codes keep hull_dim; d unchanged on {exact} exact"))
}

fn atlas_determinism(reference: &[HullCode], sweep: &Sweep) -> Outcome {
    let qs = [8u64, 9, 19, 25, 27, 81];
    let start = Instant::now();
    let a = atlas_table(&qs, 24, None, DEFAULT_BUDGET, TableFormat::Csv).map_err(|e| e.to_string())?;
    let b = atlas_table(&qs, 24, None, DEFAULT_BUDGET, TableFormat::Csv).map_err(|e| e.to_string())?;
    ensure!(a == b, "two runs differ");
    let lines: BTreeSet<&str> = a.lines().collect();
    for hc in reference {
        let want = csv_line(hc);
        ensure!(lines.contains(want.as_str()), "missing criterion-1 row {want}");
    }
    let mut matched = 0;
    for want in &sweep.lines {
        let q: u64 = want.split(',').next().unwrap().parse().unwrap();
        if qs.contains(&q) {
            ensure!(lines.contains(want.as_str()), "missing sweep row {want}");
            matched += 1;
        }
    }
    ensure!(a.lines().count() == matched + 1, "atlas has {} rows, sweep has {matched}", a.lines().count() - 1);
    Ok(format!(
        "{} bytes identical across runs; all {matched} sweep rows and 7 example rows present ({:.1?})",
        a.len(),
        start.elapsed()
    ))
}

fn report(n: usize, name: &str, out: &Outcome) -> bool {
    match out {
        Ok(msg) => println!("PASS criterion {n}: {name}: {msg}"),
        Err(msg) => println!("FAIL criterion {n}: {name}: {msg}"),
    }
    out.is_ok()
}

fn main() {
    // `cargo test -- --list` and similar harness probes.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let (c1, reference) = reference_examples();
    let c2 = extend_mode_codes();
    let (c3, sweep) = sweep();
    let c4 = oracle_agreement(&sweep);
    let c5 = field_poly_suites(&sweep);
    let c6 = sign_flips(&sweep);
    let c7 = atlas_determinism(&reference, &sweep);
    let results = [
        report(1, "reference codes", &c1),
        report(2, "extend-mode [48,k] codes", &c2),
        report(3, "full-family sweep", &c3),
        report(4, "oracle agreement", &c4),
        report(5, "field/poly properties", &c5),
        report(6, "sign-flip invariance", &c6),
        report(7, "atlas determinism", &c7),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
