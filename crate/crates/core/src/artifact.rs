//! On-disk formats: JSON artifacts and plain-text matrices.
//!
//! Every file carries its field descriptor. Elements are written as indices
//! `0..q`. Text matrices additionally accept powers of the field generator
//! written `w`, `w^e` or `w^{e}`.

use serde::{Deserialize, Serialize};

use crate::code::{Certificate, LinearCode, Matrix};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldDescriptor, FieldRef};
use crate::grs::GrsSpec;
use crate::hull::{Construction, HullCode, Params};

/// How a code was constructed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: String,
    pub params: Params,
    pub alpha: Vec<u32>,
    pub v: Vec<u32>,
    pub k: usize,
    pub hull_witness: Vec<u32>,
}

/// A generator matrix plus whatever is known about it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub field: FieldDescriptor,
    pub generator: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

/// A bare matrix record `{field, rows}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub field: FieldDescriptor,
    pub rows: Vec<Vec<u32>>,
}

fn indices(v: &[Elem]) -> Vec<u32> {
    v.iter().map(|e| e.index()).collect()
}

fn elems(f: &FieldRef, v: &[u32]) -> Result<Vec<Elem>> {
    v.iter().map(|&i| f.elem(i as u64)).collect()
}

pub fn matrix_to_indices(m: &Matrix) -> Vec<Vec<u32>> {
    m.to_rows().iter().map(|r| indices(r)).collect()
}

/// Builds a matrix from index rows. Every row must have the same length.
pub fn matrix_from_indices(f: &FieldRef, rows: &[Vec<u32>]) -> Result<Matrix> {
    let cols = rows.first().map_or(0, Vec::len);
    let rows = rows
        .iter()
        .map(|r| elems(f, r))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(f, cols, rows)
}

impl Artifact {
    pub fn from_hull(hc: &HullCode) -> Artifact {
        let spec = &hc.spec;
        Artifact {
            field: spec.field().descriptor(),
            generator: matrix_to_indices(&spec.generator()),
            provenance: Some(Provenance {
                family: hc.family_name(),
                params: hc.params(),
                alpha: indices(spec.alpha()),
                v: indices(spec.v()),
                k: spec.k(),
                hull_witness: indices(&hc.hull_witness),
            }),
            certificate: hc.cert.clone(),
        }
    }

    pub fn from_matrix(m: &Matrix) -> Artifact {
        Artifact {
            field: m.field().descriptor(),
            generator: matrix_to_indices(m),
            provenance: None,
            certificate: None,
        }
    }

    pub fn field(&self) -> Result<FieldRef> {
        self.field.build()
    }

    pub fn generator(&self) -> Result<Matrix> {
        matrix_from_indices(&self.field()?, &self.generator)
    }

    /// Rebuilds the [`HullCode`] recorded in the provenance (without its
    /// certificate). The stored generator must match the GRS data.
    pub fn hull_code(&self) -> Result<Option<HullCode>> {
        let Some(p) = &self.provenance else {
            return Ok(None);
        };
        let f = self.field()?;
        let spec = GrsSpec::from_indices(&f, &p.alpha, &p.v, p.k)?;
        if matrix_to_indices(&spec.generator()) != self.generator {
            return Err(Error::Parse(
                "stored generator does not match the recorded evaluation points and multipliers"
                    .into(),
            ));
        }
        let construction = Construction::from_params(&p.family, &p.params)?;
        let n = spec.n();
        Ok(Some(HullCode {
            construction,
            dual: p.params.dual,
            claimed: (n, p.k),
            hull_witness: elems(&f, &p.hull_witness)?,
            cert: None,
            notes: Vec::new(),
            spec,
        }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifact serializes")
    }
}

/// Any JSON this crate writes that contains a generator matrix.
pub fn parse_json_matrix(text: &str) -> Result<Artifact> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    if value.get("generator").is_some() {
        serde_json::from_value(value).map_err(|e| Error::Parse(format!("invalid artifact: {e}")))
    } else if value.get("rows").is_some() {
        let m: MatrixRecord = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("invalid matrix record: {e}")))?;
        Ok(Artifact {
            field: m.field,
            generator: m.rows,
            provenance: None,
            certificate: None,
        })
    } else if value.get("alpha").is_some() {
        let r: crate::grs::GrsRecord = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("invalid GRS record: {e}")))?;
        let spec = GrsSpec::from_record(&r)?;
        Ok(Artifact::from_matrix(&spec.generator()))
    } else {
        Err(Error::Parse(
            "JSON has neither `generator`, `rows` nor `alpha`".into(),
        ))
    }
}

/// Parses a field header line of the form
/// `# field: p=3 m=4 modulus=2,0,0,2,1`.
fn parse_field_header(line: &str) -> Result<Option<FieldDescriptor>> {
    let Some(rest) = line.trim_start_matches('#').trim().strip_prefix("field:") else {
        return Ok(None);
    };
    let (mut p, mut m, mut modulus) = (None, None, None);
    for part in rest.split_whitespace() {
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad field header entry `{part}`")))?;
        let num = |s: &str| {
            s.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad number `{s}` in field header")))
        };
        match key {
            "p" => p = Some(num(val)?),
            "m" => m = Some(num(val)?),
            "modulus" => modulus = Some(val.split(',').map(num).collect::<Result<Vec<_>>>()?),
            _ => return Err(Error::Parse(format!("unknown field header key `{key}`"))),
        }
    }
    match (p, m, modulus) {
        (Some(p), Some(m), Some(modulus)) => Ok(Some(FieldDescriptor { p, m, modulus })),
        _ => Err(Error::Parse("field header needs p, m and modulus".into())),
    }
}

/// The field named in a text matrix header, if any.
pub fn text_field_header(text: &str) -> Result<Option<FieldDescriptor>> {
    for line in text.lines() {
        if line.trim_start().starts_with('#') {
            if let Some(d) = parse_field_header(line)? {
                return Ok(Some(d));
            }
        }
    }
    Ok(None)
}

fn parse_entry(f: &FieldRef, tok: &str) -> Result<Elem> {
    let bad = || Error::Parse(format!("bad matrix entry `{tok}`"));
    if let Some(rest) = tok.strip_prefix('w') {
        let exp: i64 = if rest.is_empty() {
            1
        } else {
            let e = rest.strip_prefix('^').ok_or_else(bad)?;
            let e = e
                .strip_prefix('{')
                .and_then(|e| e.strip_suffix('}'))
                .unwrap_or(e);
            e.parse().map_err(|_| bad())?
        };
        f.pow(f.generator(), exp)
    } else {
        let i: u64 = tok.parse().map_err(|_| bad())?;
        f.elem(i).map_err(|_| {
            Error::Parse(format!("matrix entry {i} is not an element index of GF({})", f.order()))
        })
    }
}

/// Parses a text matrix: one row per line, entries separated by whitespace,
/// commas or `&`. LaTeX row terminators `\\` are ignored, as are blank lines
/// and `#` comments.
pub fn parse_text_matrix(f: &FieldRef, text: &str) -> Result<Matrix> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").replace("\\\\", " ");
        let row = line
            .split(|c: char| c.is_whitespace() || c == ',' || c == '&')
            .filter(|t| !t.is_empty())
            .map(|t| parse_entry(f, t))
            .collect::<Result<Vec<_>>>()?;
        if !row.is_empty() {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(Error::Parse("matrix has no rows".into()));
    }
    let cols = rows[0].len();
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(Error::Parse(format!(
            "row {} has {} entries, expected {cols}",
            i + 1,
            rows[i].len()
        )));
    }
    Matrix::from_rows(f, cols, rows)
}

/// Renders a matrix as text with a field header that
/// [`parse_text_matrix`] and [`text_field_header`] read back.
pub fn matrix_to_text(m: &Matrix) -> String {
    let d = m.field().descriptor();
    let modulus: Vec<String> = d.modulus.iter().map(u32::to_string).collect();
    let mut out = format!(
        "# field: p={} m={} modulus={}\n",
        d.p,
        d.m,
        modulus.join(",")
    );
    out.push_str(&format!("# {} x {}\n", m.rows(), m.cols()));
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(|e| e.index().to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// The code spanned by the rows of `m`, tolerating dependent rows.
pub fn row_space(m: &Matrix) -> LinearCode {
    LinearCode::spanned_by(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::DEFAULT_BUDGET;
    use crate::gf::GaloisField;
    use crate::hull::construct;

    #[test]
    fn generator_powers() {
        let f = GaloisField::of_order(8).unwrap();
        let m = parse_text_matrix(&f, "1 & 0 & w^3 & w^{3} \\\\\n0,1,w^4,w").unwrap();
        let w = f.generator();
        assert_eq!(m.get(0, 2), f.pow(w, 3).unwrap());
        assert_eq!(m.get(0, 3), f.pow(w, 3).unwrap());
        assert_eq!(m.get(1, 3), w);
        assert!(matches!(parse_text_matrix(&f, "1 2\n3"), Err(Error::Parse(_))));
        assert!(matches!(parse_text_matrix(&f, "1 9"), Err(Error::Parse(_))));
        assert!(matches!(parse_text_matrix(&f, "x^2"), Err(Error::Parse(_))));
    }

    #[test]
    fn text_round_trip() {
        let f = GaloisField::new(3, 2, Some(&[2, 2, 1])).unwrap();
        let m = Matrix::from_rows(
            &f,
            3,
            vec![
                vec![Elem::ONE, f.elem(5).unwrap(), Elem::ZERO],
                vec![f.elem(8).unwrap(), Elem::ZERO, Elem::ONE],
            ],
        )
        .unwrap();
        let text = matrix_to_text(&m);
        let d = text_field_header(&text).unwrap().unwrap();
        assert_eq!(d, f.descriptor());
        assert_eq!(parse_text_matrix(&d.build().unwrap(), &text).unwrap(), m);
    }

    #[test]
    fn artifact_round_trip() {
        let f = GaloisField::of_order(8).unwrap();
        let hc = construct(&f, &Construction::EvenQ { n: 5, s: 1 }, DEFAULT_BUDGET).unwrap();
        let a = Artifact::from_hull(&hc);
        let back = parse_json_matrix(&a.to_json()).unwrap();
        assert_eq!(back, a);
        let rebuilt = back.hull_code().unwrap().unwrap();
        assert_eq!(rebuilt.spec, hc.spec);
        assert_eq!(rebuilt.hull_witness, hc.hull_witness);
        assert_eq!(rebuilt.construction, hc.construction);
    }

    #[test]
    fn tampered_generator_rejected() {
        let f = GaloisField::of_order(8).unwrap();
        let hc = construct(&f, &Construction::EvenQ { n: 5, s: 1 }, DEFAULT_BUDGET).unwrap();
        let mut a = Artifact::from_hull(&hc);
        a.generator[0][0] ^= 1;
        assert!(a.hull_code().is_err());
    }
}
