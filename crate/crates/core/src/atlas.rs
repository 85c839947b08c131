//! Parameter tables: every admissible construction over a field, built,
//! certified and flattened to CSV rows.

use std::fmt::Write as _;

use crate::code::DistanceRecord;
use crate::error::Error;
use crate::gf::FieldRef;
use crate::hull::{admissible, build, dualize, Construction, HullCode};

pub const CSV_HEADER: &str = "q,family,params,N,K,d,certified,reason";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasRow {
    pub q: u32,
    pub family: String,
    pub params: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub d: DistanceRecord,
    pub certified: bool,
    /// Empty for certified rows.
    pub reason: String,
}

impl AtlasRow {
    fn success(hc: &HullCode) -> AtlasRow {
        let cert = hc.cert.as_ref().expect("certified code");
        AtlasRow {
            q: hc.spec.field().order(),
            family: hc.family_name(),
            params: hc.params().compact(),
            n: Some(cert.n),
            k: Some(cert.k),
            d: cert.d,
            certified: true,
            reason: String::new(),
        }
    }

    fn failure(q: u32, c: &Construction, dual: bool, claimed: Option<(usize, usize)>, err: &Error) -> AtlasRow {
        let mut params = c.params(q, claimed.map(|(n, _)| n));
        params.dual = dual;
        AtlasRow {
            q,
            family: c.family_name(),
            params: params.compact(),
            n: claimed.map(|(n, _)| n),
            k: claimed.map(|(_, k)| k),
            d: DistanceRecord::Unverified,
            certified: false,
            reason: err.to_string(),
        }
    }

    fn sort_key(&self) -> (u32, &str, Option<usize>, Option<usize>, &str) {
        (self.q, &self.family, self.n, self.k, &self.params)
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let d = match self.d {
            DistanceRecord::Exact(d) => d.to_string(),
            DistanceRecord::Structural => "structural".into(),
            DistanceRecord::Unverified => String::new(),
        };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.q,
            self.family,
            self.params,
            opt(self.n),
            opt(self.k),
            d,
            self.certified,
            csv_field(&self.reason)
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Builds and certifies one construction and, when it has dimension at
/// least two, its dual. Failures become rows with `certified = false`.
pub fn rows_for(field: &FieldRef, c: &Construction, budget: u64) -> Vec<AtlasRow> {
    let q = field.order();
    let mut hc = match build(field, c) {
        Ok(hc) => hc,
        Err(e) => return vec![AtlasRow::failure(q, c, false, None, &e)],
    };
    if let Err(e) = hc.certify(budget) {
        return vec![AtlasRow::failure(q, c, false, Some(hc.claimed), &e)];
    }
    let mut rows = vec![AtlasRow::success(&hc)];
    let (n, k) = hc.claimed;
    if n - k >= 2 {
        match dualize(&hc, budget) {
            Ok(d) => rows.push(AtlasRow::success(&d)),
            Err(e) => rows.push(AtlasRow::failure(q, c, true, Some((n, n - k)), &e)),
        }
    }
    rows
}

/// All rows for one field, sorted.
pub fn atlas(field: &FieldRef, max_n: usize, families: Option<&[String]>, budget: u64) -> Vec<AtlasRow> {
    let mut rows: Vec<AtlasRow> = admissible(field, max_n, families)
        .iter()
        .flat_map(|c| rows_for(field, c, budget))
        .collect();
    sort_rows(&mut rows);
    rows
}

pub fn sort_rows(rows: &mut [AtlasRow]) {
    rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

/// CSV text, header included, one row per line.
pub fn to_csv(rows: &[AtlasRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.to_csv());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::DEFAULT_BUDGET;
    use crate::gf::GaloisField;

    #[test]
    fn gf8_small_table() {
        let f = GaloisField::of_order(8).unwrap();
        let rows = atlas(&f, 6, None, DEFAULT_BUDGET);
        assert!(rows.iter().all(|r| r.certified), "{rows:#?}");
        for (n, k) in [(4, 2), (5, 3), (6, 4)] {
            assert!(rows
                .iter()
                .any(|r| r.n == Some(n) && r.k == Some(k) && r.d == DistanceRecord::Exact(n - k + 1)));
        }
        let csv = to_csv(&rows);
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), rows.len() + 1);
    }

    #[test]
    fn reasons_are_quoted() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
