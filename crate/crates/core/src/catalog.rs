//! Known Poincaré polynomials: projective spaces, the Simpson moduli spaces
//! `M_{dm+1}(P2)` for `d = 1..=6`, and the auxiliary polynomials used by the
//! identity checks.
//!
//! Transcribed values live in a fixture file, one entry per line:
//!
//! ```text
//! M 4 : 1+2*t^2+...            # P_{M_{dm+1}}
//! M 6 : (<poly>) * (<poly>)    # factored entries are expanded on load
//! V 4 : t^12+t^10+...          # P_{v,d}
//! A f_obs6 : 1+t^2+...         # named auxiliary polynomial
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. The registry
//! deliberately stops at `d = 6`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::poly::format::ParseError;
use crate::{parse_poly, IntPoly, PolyError};

pub const MAX_SIMPSON_D: u32 = 6;

const BUILTIN_FIXTURE: &str = include_str!("../fixtures/poincare.txt");

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("M_{{{0}m+1}} is not known; the registry covers 1 <= d <= 6")]
    UnknownDegree(u32),
    #[error("line {line}: {msg}")]
    Fixture { line: usize, msg: String },
    #[error("line {line}: {source}")]
    FixturePoly { line: usize, source: ParseError },
    #[error("no auxiliary polynomial named {0:?}")]
    UnknownAuxiliary(String),
    #[error("no transcription of P_v for d = {0}")]
    MissingQuotient(u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Transcription,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ClosedForm => "closed form",
            Provenance::Transcription => "transcription",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpsonEntry {
    pub d: u32,
    pub poly: IntPoly,
    pub provenance: Provenance,
}

impl SimpsonEntry {
    /// Invariant violations, empty when the entry looks like a Poincaré
    /// polynomial of a smooth projective variety of dimension `d^2 + 1`.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let p = &self.poly;
        if !p.is_palindromic().unwrap_or(false) {
            out.push("not palindromic".into());
        }
        if !p.has_nonnegative_coeffs() {
            out.push("negative coefficient".into());
        }
        if !p.is_even() {
            out.push("odd exponent".into());
        }
        let want = 2 * (self.d * self.d + 1) as usize;
        if p.degree() != Some(want) {
            out.push(format!("degree {:?}, expected {want}", p.degree()));
        }
        out
    }
}

/// `1 + t^2 + ... + t^(2n)`.
pub fn projective_poincare(n: usize) -> IntPoly {
    IntPoly::from_i64s(&(0..=2 * n).map(|i| (i % 2 == 0) as i64).collect::<Vec<_>>())
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    transcribed: BTreeMap<u32, IntPoly>,
    quotients: BTreeMap<u32, IntPoly>,
    auxiliary: BTreeMap<String, IntPoly>,
}

impl Catalog {
    /// The values shipped with the crate, parsed once.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(BUILTIN_FIXTURE).expect("bundled fixture parses"))
    }

    pub fn builtin_fixture_text() -> &'static str {
        BUILTIN_FIXTURE
    }

    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut cat = Catalog::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let err = |msg: &str| CatalogError::Fixture {
                line,
                msg: msg.to_string(),
            };
            let (head, body) = content.split_once(':').ok_or_else(|| err("missing ':'"))?;
            let mut words = head.split_whitespace();
            let (Some(kind), Some(key), None) = (words.next(), words.next(), words.next()) else {
                return Err(err("expected '<kind> <key> :'"));
            };
            let poly = parse_product(body, line)?;
            match kind {
                "M" | "V" => {
                    let d: u32 = key.parse().map_err(|_| err("degree must be an integer"))?;
                    if !(1..=MAX_SIMPSON_D).contains(&d) {
                        return Err(err("degree outside 1..=6"));
                    }
                    let map = if kind == "M" {
                        if d <= 3 {
                            return Err(err("d <= 3 is given by a closed form"));
                        }
                        &mut cat.transcribed
                    } else {
                        &mut cat.quotients
                    };
                    if map.insert(d, poly).is_some() {
                        return Err(err("duplicate entry"));
                    }
                }
                "A" => {
                    if cat.auxiliary.insert(key.to_string(), poly).is_some() {
                        return Err(err("duplicate entry"));
                    }
                }
                _ => return Err(err("kind must be M, V or A")),
            }
        }
        Ok(cat)
    }

    pub fn simpson_entry(&self, d: u32) -> Result<SimpsonEntry, CatalogError> {
        let closed = |poly| {
            Ok(SimpsonEntry {
                d,
                poly,
                provenance: Provenance::ClosedForm,
            })
        };
        match d {
            1 => closed(projective_poincare(2)),
            2 => closed(projective_poincare(5)),
            3 => closed(&projective_poincare(8) * &projective_poincare(2)),
            4..=MAX_SIMPSON_D => self
                .transcribed
                .get(&d)
                .map(|p| SimpsonEntry {
                    d,
                    poly: p.clone(),
                    provenance: Provenance::Transcription,
                })
                .ok_or(CatalogError::UnknownDegree(d)),
            _ => Err(CatalogError::UnknownDegree(d)),
        }
    }

    pub fn simpson_poincare(&self, d: u32) -> Result<IntPoly, CatalogError> {
        Ok(self.simpson_entry(d)?.poly)
    }

    /// `P_{M_{dm+1}} / P_{P_{3d-1}}`, by exact division.
    pub fn simpson_quotient(&self, d: u32) -> Result<IntPoly, CatalogError> {
        let m = self.simpson_poincare(d)?;
        Ok(m.div_exact(&projective_poincare(3 * d as usize - 1))?)
    }

    /// The transcribed `P_{v,d}`.
    pub fn quotient_transcription(&self, d: u32) -> Result<&IntPoly, CatalogError> {
        self.quotients
            .get(&d)
            .ok_or(CatalogError::MissingQuotient(d))
    }

    pub fn auxiliary(&self, name: &str) -> Result<&IntPoly, CatalogError> {
        self.auxiliary
            .get(name)
            .ok_or_else(|| CatalogError::UnknownAuxiliary(name.to_string()))
    }

    pub fn auxiliary_names(&self) -> impl Iterator<Item = &str> {
        self.auxiliary.keys().map(String::as_str)
    }

    /// Invariant violations across all Simpson entries, as `(d, message)`.
    pub fn validate(&self) -> Vec<(u32, String)> {
        (1..=MAX_SIMPSON_D)
            .flat_map(|d| match self.simpson_entry(d) {
                Ok(e) => e
                    .violations()
                    .into_iter()
                    .map(|v| (d, v))
                    .collect::<Vec<_>>(),
                Err(e) => vec![(d, e.to_string())],
            })
            .collect()
    }
}

pub fn simpson_poincare(d: u32) -> Result<IntPoly, CatalogError> {
    Catalog::builtin().simpson_poincare(d)
}

pub fn simpson_quotient(d: u32) -> Result<IntPoly, CatalogError> {
    Catalog::builtin().simpson_quotient(d)
}

/// A polynomial literal or a product of parenthesized literals.
fn parse_product(text: &str, line: usize) -> Result<IntPoly, CatalogError> {
    let text = text.trim();
    if !text.starts_with('(') {
        return parse_poly(text).map_err(|source| CatalogError::FixturePoly { line, source });
    }
    let mut acc = IntPoly::one();
    let mut rest = text;
    loop {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| CatalogError::Fixture {
                line,
                msg: "unbalanced parentheses".into(),
            })?;
        let factor: IntPoly =
            parse_poly(inner.0).map_err(|source| CatalogError::FixturePoly { line, source })?;
        acc = &acc * &factor;
        rest = inner.1.trim_start();
        if rest.is_empty() {
            return Ok(acc);
        }
        rest = rest
            .strip_prefix('*')
            .ok_or_else(|| CatalogError::Fixture {
                line,
                msg: "expected '*' between factors".into(),
            })?
            .trim_start();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn projective_spaces() {
        assert_eq!(projective_poincare(0), IntPoly::one());
        assert_eq!(projective_poincare(2), p(&[1, 0, 1, 0, 1]));
        let num = &IntPoly::var_power(36) - &IntPoly::one();
        let den = p(&[-1, 0, 1]);
        assert_eq!(projective_poincare(17), num.div_exact(&den).unwrap());
    }

    #[test]
    fn simpson_examples() {
        let m4 = simpson_poincare(4).unwrap();
        assert_eq!(
            m4.coeffs()
                .iter()
                .step_by(2)
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
            "1,2,6,10,14,15,16,16,16,16,16,16,15,14,10,6,2,1"
        );
        assert_eq!(simpson_poincare(1).unwrap(), p(&[1, 0, 1, 0, 1]));
        assert_eq!(simpson_poincare(7), Err(CatalogError::UnknownDegree(7)));
        assert_eq!(simpson_poincare(0), Err(CatalogError::UnknownDegree(0)));
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(simpson_quotient(1).unwrap(), IntPoly::one());
        assert_eq!(simpson_quotient(3).unwrap(), p(&[1, 0, 1, 0, 1]));
        let pv5: IntPoly = parse_poly(
            "t^24+t^22+4*t^20+7*t^18+13*t^16+19*t^14+23*t^12+19*t^10+13*t^8+7*t^6+4*t^4+t^2+1",
        )
        .unwrap();
        assert_eq!(simpson_quotient(5).unwrap(), pv5);
    }

    #[test]
    fn provenance_tags() {
        let cat = Catalog::builtin();
        assert_eq!(
            cat.simpson_entry(3).unwrap().provenance,
            Provenance::ClosedForm
        );
        assert_eq!(
            cat.simpson_entry(6).unwrap().provenance,
            Provenance::Transcription
        );
        assert_eq!(Provenance::Transcription.to_string(), "transcription");
    }

    #[test]
    fn bundled_fixture_is_valid() {
        assert!(Catalog::builtin().validate().is_empty());
        assert_eq!(simpson_poincare(6).unwrap().degree(), Some(74));
    }

    #[test]
    fn fixture_errors() {
        assert!(matches!(
            Catalog::parse("M 4 1+t"),
            Err(CatalogError::Fixture { line: 1, .. })
        ));
        assert!(matches!(
            Catalog::parse("\nM 9 : 1"),
            Err(CatalogError::Fixture { line: 2, .. })
        ));
        assert!(matches!(
            Catalog::parse("M 2 : 1"),
            Err(CatalogError::Fixture { .. })
        ));
        assert!(matches!(
            Catalog::parse("X a : 1"),
            Err(CatalogError::Fixture { .. })
        ));
        assert!(matches!(
            Catalog::parse("A f : 3t"),
            Err(CatalogError::FixturePoly { .. })
        ));
        assert!(matches!(
            Catalog::parse("A f : (1+t) (1+t)"),
            Err(CatalogError::Fixture { .. })
        ));
        assert!(matches!(
            Catalog::parse("A f : 1\nA f : 2"),
            Err(CatalogError::Fixture { .. })
        ));
        let cat = Catalog::parse("# nothing\n\nA f : (1+t) * (1+-1*t)").unwrap();
        assert_eq!(cat.auxiliary("f").unwrap(), &p(&[1, 0, -1]));
        assert!(cat.auxiliary("g").is_err());
        assert_eq!(cat.simpson_poincare(4), Err(CatalogError::UnknownDegree(4)));
    }

    #[test]
    fn corrupted_transcription_fails_division() {
        let text =
            Catalog::builtin_fixture_text().replace("M 4 : 1+2*t^2+6*t^4", "M 4 : 1+2*t^2+7*t^4");
        let cat = Catalog::parse(&text).unwrap();
        assert!(matches!(
            cat.simpson_quotient(4),
            Err(CatalogError::Poly(_))
        ));
        assert!(!cat.validate().is_empty());
    }
}
