//! Construction identifiers and their serialized parameter records.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The twelve evaluation-set families of the square-`h'` construction
/// (family 3 has an even and an odd branch).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SquareFamily {
    F1,
    F2,
    F3a,
    F3b,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F12,
}

impl SquareFamily {
    pub const ALL: [SquareFamily; 13] = [
        SquareFamily::F1,
        SquareFamily::F2,
        SquareFamily::F3a,
        SquareFamily::F3b,
        SquareFamily::F4,
        SquareFamily::F5,
        SquareFamily::F6,
        SquareFamily::F7,
        SquareFamily::F8,
        SquareFamily::F9,
        SquareFamily::F10,
        SquareFamily::F11,
        SquareFamily::F12,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SquareFamily::F1 => "1",
            SquareFamily::F2 => "2",
            SquareFamily::F3a => "3a",
            SquareFamily::F3b => "3b",
            SquareFamily::F4 => "4",
            SquareFamily::F5 => "5",
            SquareFamily::F6 => "6",
            SquareFamily::F7 => "7",
            SquareFamily::F8 => "8",
            SquareFamily::F9 => "9",
            SquareFamily::F10 => "10",
            SquareFamily::F11 => "11",
            SquareFamily::F12 => "12",
        }
    }

    pub fn parse(id: &str) -> Option<SquareFamily> {
        SquareFamily::ALL.into_iter().find(|f| f.id() == id)
    }
}

/// Which branch of the roots-of-unity construction to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RouVariant {
    /// `[n, n - 2s + 1]`.
    OddK,
    /// `[n, n - 2s]`, `n` even.
    EvenK,
}

impl RouVariant {
    pub fn id(self) -> &'static str {
        match self {
            RouVariant::OddK => "odd-k",
            RouVariant::EvenK => "even-k",
        }
    }
}

impl FromStr for RouVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd-k" | "odd" | "1" => Ok(RouVariant::OddK),
            "even-k" | "even" | "2" => Ok(RouVariant::EvenK),
            _ => Err(Error::Parse(format!(
                "unknown roots-of-unity variant `{s}` (expected odd-k or even-k)"
            ))),
        }
    }
}

/// A fully parameterized construction request. Lengths named `n` are the
/// code length except for `MultCosets`, where `n` is the subgroup order and
/// the length is `(t + 1) n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Construction {
    EvenQ {
        n: usize,
        s: usize,
    },
    Square {
        family: SquareFamily,
        /// Length; required for families 1–3, derived (and checked if
        /// given) for the others.
        n: Option<usize>,
        s: usize,
        t: Option<usize>,
        /// An exponent: `p^r` is the subfield size for families 4–6, and
        /// `r = m0` with subfield `GF(p^m0)` for families 9 and 11.
        r: Option<u32>,
        ell: Option<u32>,
    },
    XnMinusX {
        n: usize,
        s: usize,
    },
    Subfield {
        r: u32,
        s: usize,
    },
    RootsOfUnity {
        n: usize,
        s: usize,
        variant: RouVariant,
    },
    AdditiveCosets {
        r: u32,
        t: usize,
        s: usize,
    },
    MultCosets {
        n: usize,
        t: usize,
        s: usize,
        variant: u8,
        extend: bool,
    },
}

/// Serialized parameters of a construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub big_n: Option<usize>,
    pub s: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(default)]
    pub extend: bool,
    #[serde(default)]
    pub dual: bool,
}

impl Params {
    /// Compact `key=value` rendering used in tables.
    pub fn compact(&self) -> String {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(n) = self.big_n {
            parts.push(format!("N={n}"));
        }
        if let Some(t) = self.t {
            parts.push(format!("t={t}"));
        }
        if let Some(r) = self.r {
            parts.push(format!("r={r}"));
        }
        if let Some(l) = self.ell {
            parts.push(format!("ell={l}"));
        }
        parts.push(format!("s={}", self.s));
        if let Some(v) = &self.variant {
            parts.push(format!("variant={v}"));
        }
        if self.extend {
            parts.push("extend".into());
        }
        if self.dual {
            parts.push("dual".into());
        }
        parts.join(";")
    }
}

impl Construction {
    pub fn family_name(&self) -> String {
        match self {
            Construction::EvenQ { .. } => "even-q".into(),
            Construction::Square { family, .. } => format!("square-{}", family.id()),
            Construction::XnMinusX { .. } => "xn-minus-x".into(),
            Construction::Subfield { .. } => "subfield".into(),
            Construction::RootsOfUnity { .. } => "roots-of-unity".into(),
            Construction::AdditiveCosets { .. } => "additive-cosets".into(),
            Construction::MultCosets { .. } => "mult-cosets".into(),
        }
    }

    /// Parameter record; `length` is the realized code length, recorded
    /// where the family derives it.
    pub fn params(&self, q: u32, length: Option<usize>) -> Params {
        let mut p = Params {
            q,
            ..Params::default()
        };
        match *self {
            Construction::EvenQ { n, s } | Construction::XnMinusX { n, s } => {
                p.n = Some(n);
                p.s = s;
            }
            Construction::Square {
                family,
                n,
                s,
                t,
                r,
                ell,
            } => {
                p.big_n = n.or(length);
                p.s = s;
                p.t = t;
                p.r = r;
                p.ell = ell;
                p.variant = Some(family.id().into());
            }
            Construction::Subfield { r, s } => {
                p.r = Some(r);
                p.n = length;
                p.s = s;
            }
            Construction::RootsOfUnity { n, s, variant } => {
                p.n = Some(n);
                p.s = s;
                p.variant = Some(variant.id().into());
            }
            Construction::AdditiveCosets { r, t, s } => {
                p.r = Some(r);
                p.t = Some(t);
                p.s = s;
                p.big_n = length;
            }
            Construction::MultCosets {
                n,
                t,
                s,
                variant,
                extend,
            } => {
                p.n = Some(n);
                p.t = Some(t);
                p.s = s;
                p.big_n = Some((t + 1) * n);
                p.variant = Some(variant.to_string());
                p.extend = extend;
            }
        }
        p
    }

    /// Inverse of [`Construction::params`] for a family name such as
    /// `even-q`, `square-3a` or `mult-cosets`.
    pub fn from_params(family: &str, p: &Params) -> Result<Construction> {
        let need_n = |what: &str| {
            p.n.ok_or_else(|| Error::precondition(what, format!("family {family} requires --n")))
        };
        let need_t = || {
            p.t.ok_or_else(|| Error::precondition("t", format!("family {family} requires --t")))
        };
        let need_r = || {
            p.r.ok_or_else(|| Error::precondition("r", format!("family {family} requires --r")))
        };
        Ok(match family {
            "even-q" => Construction::EvenQ {
                n: need_n("n")?,
                s: p.s,
            },
            "xn-minus-x" => Construction::XnMinusX {
                n: need_n("n")?,
                s: p.s,
            },
            "subfield" => Construction::Subfield {
                r: need_r()?,
                s: p.s,
            },
            "roots-of-unity" => Construction::RootsOfUnity {
                n: need_n("n")?,
                s: p.s,
                variant: p.variant.as_deref().unwrap_or("odd-k").parse()?,
            },
            "additive-cosets" => Construction::AdditiveCosets {
                r: need_r()?,
                t: need_t()?,
                s: p.s,
            },
            "mult-cosets" => {
                let variant = p
                    .variant
                    .as_deref()
                    .ok_or_else(|| Error::precondition("variant", "mult-cosets requires --variant 1..8"))?;
                let variant: u8 = variant
                    .parse()
                    .ok()
                    .filter(|v| (1..=8).contains(v))
                    .ok_or_else(|| Error::Parse(format!("mult-cosets variant must be 1..8, got `{variant}`")))?;
                let n = need_n("n")?;
                let t = need_t()?;
                if let Some(big) = p.big_n {
                    if big != (t + 1) * n {
                        return Err(Error::precondition(
                            "N = (t+1)n",
                            format!("N = {big} but (t+1)n = {}", (t + 1) * n),
                        ));
                    }
                }
                Construction::MultCosets {
                    n,
                    t,
                    s: p.s,
                    variant,
                    extend: p.extend,
                }
            }
            other => {
                let id = other
                    .strip_prefix("square-")
                    .or_else(|| (other == "square").then_some(p.variant.as_deref().unwrap_or("")))
                    .ok_or_else(|| Error::Parse(format!("unknown family `{other}`")))?;
                let family = SquareFamily::parse(id)
                    .ok_or_else(|| Error::Parse(format!("unknown square family `{id}` (expected 1, 2, 3a, 3b, 4..12)")))?;
                Construction::Square {
                    family,
                    n: p.big_n.or(p.n),
                    s: p.s,
                    t: p.t,
                    r: p.r,
                    ell: p.ell,
                }
            }
        })
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family_name(), self.params(0, None).compact())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_round_trip() {
        let cases = [
            Construction::EvenQ { n: 5, s: 1 },
            Construction::Square {
                family: SquareFamily::F3b,
                n: Some(9),
                s: 1,
                t: None,
                r: None,
                ell: None,
            },
            Construction::Subfield { r: 2, s: 3 },
            Construction::RootsOfUnity {
                n: 8,
                s: 1,
                variant: RouVariant::EvenK,
            },
            Construction::AdditiveCosets { r: 1, t: 1, s: 1 },
            Construction::MultCosets {
                n: 8,
                t: 5,
                s: 2,
                variant: 8,
                extend: true,
            },
        ];
        for c in cases {
            let p = c.params(81, None);
            let json = serde_json::to_string(&p).unwrap();
            let back: Params = serde_json::from_str(&json).unwrap();
            assert_eq!(Construction::from_params(&c.family_name(), &back).unwrap(), c);
        }
    }

    #[test]
    fn bad_family_names() {
        let p = Params::default();
        assert!(matches!(
            Construction::from_params("nope", &p),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            Construction::from_params("square-13", &p),
            Err(Error::Parse(_))
        ));
        assert!(Construction::from_params("even-q", &p).is_err());
    }

    #[test]
    fn compact_rendering() {
        let c = Construction::MultCosets {
            n: 8,
            t: 1,
            s: 3,
            variant: 7,
            extend: false,
        };
        assert_eq!(c.params(81, None).compact(), "n=8;N=16;t=1;s=3;variant=7");
    }
}
