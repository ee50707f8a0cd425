//! Named checks relating the Simpson, Hilbert-scheme and Kronecker Poincaré
//! polynomials.
//!
//! Every check evaluates its ingredients from the Göttsche product, the HN
//! recursion and the catalog; none compares a fixture with itself. Identity
//! checks hold one or more exact equations and report the first one that
//! fails. Predicate checks test divisibility (or its absence) and report the
//! remainder as their residual.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Mutex;

use thiserror::Error;

use crate::catalog::{projective_poincare, Catalog, CatalogError};
use crate::quiver::{KroneckerSolver, QuiverError};
use crate::series::{hilb_poincare_with_max, SeriesError, DEFAULT_MAX_POINTS};
use crate::{emit_plain, IntPoly, PolyError};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum IdentityError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("difference needs d >= 3, got {0}")]
    DegreeTooSmall(u32),
    #[error("blow-up codimension must be positive")]
    ZeroCodimension,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// `lhs = rhs`, residual `lhs - rhs`.
    Identity,
    /// Divisibility of `lhs` by `rhs` as required; residual is the
    /// remainder.
    Predicate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    pub lhs: IntPoly,
    pub rhs: IntPoly,
    pub residual: IntPoly,
    pub passed: bool,
    /// The statement being checked, in formulas.
    pub anchor: String,
    /// Extra computed output, or the error that stopped evaluation.
    pub detail: Option<String>,
}

impl CheckResult {
    fn failed_with(name: &str, anchor: String, err: IdentityError) -> Self {
        CheckResult {
            name: name.to_string(),
            kind: CheckKind::Identity,
            lhs: IntPoly::zero(),
            rhs: IntPoly::zero(),
            residual: IntPoly::zero(),
            passed: false,
            anchor,
            detail: Some(format!("error: {err}")),
        }
    }

    /// One status line, followed on failure by the full polynomials.
    pub fn report(&self) -> String {
        let mut s = format!(
            "{} {:<18} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.anchor
        );
        if !self.passed {
            let (l, r, res) = match self.kind {
                CheckKind::Identity => ("lhs", "rhs", "lhs - rhs"),
                CheckKind::Predicate => ("dividend", "divisor", "remainder"),
            };
            let _ = write!(s, "\n    {l}: {}", emit_plain(&self.lhs));
            let _ = write!(s, "\n    {r}: {}", emit_plain(&self.rhs));
            let _ = write!(s, "\n    {res}: {}", emit_plain(&self.residual));
        }
        if let Some(d) = &self.detail {
            let _ = write!(s, "\n    note: {d}");
        }
        s
    }
}

/// Registered checks in report order, with the statement each one checks.
pub const CHECKS: &[(&str, &str)] = &[
    ("quotient_d1", "P_M(1) / P(P2) = P_v(1)"),
    ("quotient_d2", "P_M(2) / P(P5) = P_v(2)"),
    ("quotient_d3", "P_M(3) / P(P8) = P_v(3)"),
    ("quotient_d4", "P_M(4) / P(P11) = P_v(4)"),
    ("quotient_d5", "P_M(5) / P(P14) = P_v(5)"),
    ("quotient_d6", "P_M(6) / P(P17) = P_v(6)"),
    ("pv3_triple", "P_v(3) = P(N(3;1,2)) = P(Hilb^1)"),
    ("pv4_kron", "P_v(4) = P(N(3;2,3)) + t^4 P(P2)"),
    ("pv4_hilb", "P_v(4) = P(Hilb^3) - t^2 (t^4+1)(t^4+t^2+1)"),
    ("pv5_kron", "P_v(5) = P(N(3;3,4)) + t^4 P(P2) obs5_kron"),
    ("pv5_hilb", "P_v(5) = P(Hilb^6) - t^2 (t^2+1)^2 obs5_hilb"),
    ("pv6_kron", "P_v(6) = P(N(3;4,5)) + t^4 P(P2) f_obs6"),
    ("pv6_hilb", "P_v(6) = P(Hilb^10) - t^2 P(P2) g_obs6"),
    (
        "eq1",
        "P(Hilb^3) - P(N(3;2,3)) = t^2 P(P2)^2 = P(P2)(P(P3) - 1)",
    ),
    ("eq2", "P(Hilb^6) - P(N(3;3,4)) = t^2 P(P2)^2 rem5"),
    ("eq3", "P(Hilb^10) - P(N(3;4,5)) = t^2 P(P2)^2 f_rem6"),
    ("eq2_multiple", "t^2 P(P2)^2 | P(Hilb^6) - P(N(3;3,4))"),
    ("eq3_multiple", "t^2 P(P2)^2 | P(Hilb^10) - P(N(3;4,5))"),
    ("blowup_d4", "P(P2)(P(P3) - 1) = P(Hilb^3) - P(N(3;2,3))"),
    (
        "blowup_d5_conics",
        "P(P5)(P(P6) - 1) = t^2 P(P2)^2 (1+2t^6+t^12), P(P5) = P(P2)(1+t^6)",
    ),
    ("d6_factor_absent", "P(P2) does not divide P(P9)"),
    (
        "nondiv_d7",
        "t^2 P(P2)^2 does not divide P(Hilb^15) - P(N(3;5,6))",
    ),
    (
        "nondiv_d8",
        "t^2 P(P2)^2 does not divide P(Hilb^21) - P(N(3;6,7))",
    ),
    (
        "nondiv_d9",
        "t^2 P(P2)^2 does not divide P(Hilb^28) - P(N(3;7,8))",
    ),
];

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(n, _)| *n)
}

/// Change of Poincaré polynomial when blowing up a smooth center of the
/// given codimension: `center * (P(P_{codim-1}) - 1)`.
pub fn blowup_delta(center: &IntPoly, codim: usize) -> Result<IntPoly, IdentityError> {
    if codim == 0 {
        return Err(IdentityError::ZeroCodimension);
    }
    Ok(center * &(&projective_poincare(codim - 1) - &IntPoly::one()))
}

pub fn hilb_points(d: u32) -> usize {
    let d = d as usize;
    (d - 2) * (d - 1) / 2
}

/// `P(Hilb^l(P2)) - P(N(3; d-2, d-1))` with `l = (d-2)(d-1)/2`.
pub fn hilb_kron_difference(d: u32) -> Result<IntPoly, IdentityError> {
    Suite::new(Catalog::builtin()).difference(d)
}

/// `t^2 (1+t^2+t^4)^2`.
pub fn blowup_plane_delta() -> IntPoly {
    let p2 = projective_poincare(2);
    (&p2 * &p2).shift(2)
}

/// The check suite over a catalog, with memoized ingredients.
#[derive(Debug)]
pub struct Suite<'c> {
    catalog: &'c Catalog,
    solver: KroneckerSolver,
    max_hilb: usize,
    hilb: Mutex<BTreeMap<usize, IntPoly>>,
}

impl<'c> Suite<'c> {
    pub fn new(catalog: &'c Catalog) -> Self {
        Suite {
            catalog,
            solver: KroneckerSolver::default(),
            max_hilb: DEFAULT_MAX_POINTS,
            hilb: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn with_max_hilb(mut self, max: usize) -> Self {
        self.max_hilb = max;
        self
    }

    pub fn catalog(&self) -> &Catalog {
        self.catalog
    }

    pub fn hilb(&self, l: usize) -> Result<IntPoly, IdentityError> {
        if let Some(p) = self.hilb.lock().unwrap().get(&l) {
            return Ok(p.clone());
        }
        let p = hilb_poincare_with_max(l, self.max_hilb)?;
        self.hilb.lock().unwrap().insert(l, p.clone());
        Ok(p)
    }

    pub fn kron(&self, a: usize, b: usize) -> Result<IntPoly, IdentityError> {
        Ok(self.solver.poincare(a, b)?)
    }

    pub fn difference(&self, d: u32) -> Result<IntPoly, IdentityError> {
        if d < 3 {
            return Err(IdentityError::DegreeTooSmall(d));
        }
        let k = d as usize;
        Ok(&self.hilb(hilb_points(d))? - &self.kron(k - 2, k - 1)?)
    }

    fn quotient(&self, d: u32) -> Result<IntPoly, IdentityError> {
        Ok(self.catalog.simpson_quotient(d)?)
    }

    fn aux(&self, name: &str) -> Result<IntPoly, IdentityError> {
        Ok(self.catalog.auxiliary(name)?.clone())
    }

    pub fn run_all(&self) -> Vec<CheckResult> {
        check_names()
            .map(|n| self.run_check(n).expect("registered name"))
            .collect()
    }

    /// Evaluates a registered check. `nondiv_d<N>` is also accepted for any
    /// `N >= 7` beyond the registered range.
    pub fn run_check(&self, name: &str) -> Result<CheckResult, IdentityError> {
        let anchor = match CHECKS.iter().find(|(n, _)| *n == name) {
            Some((_, a)) => a.to_string(),
            None => match nondiv_degree(name) {
                Some(d) => format!(
                    "t^2 P(P2)^2 does not divide P(Hilb^{}) - P(N(3;{},{}))",
                    hilb_points(d),
                    d - 2,
                    d - 1
                ),
                None => return Err(IdentityError::UnknownCheck(name.to_string())),
            },
        };
        Ok(self
            .evaluate(name)
            .map(|o| o.into_result(name, anchor.clone()))
            .unwrap_or_else(|e| CheckResult::failed_with(name, anchor, e)))
    }

    fn evaluate(&self, name: &str) -> Result<Outcome, IdentityError> {
        let p2 = projective_poincare(2);
        let t = |k: usize| IntPoly::var_power(k);
        let delta = blowup_plane_delta();

        if let Some(d) = name
            .strip_prefix("quotient_d")
            .and_then(|s| s.parse::<u32>().ok())
        {
            let rhs = self.catalog.quotient_transcription(d)?.clone();
            return Ok(Outcome::equations(vec![(self.quotient(d)?, rhs)]));
        }
        if let Some(d) = nondiv_degree(name) {
            return divisibility(&self.difference(d)?, &delta, false);
        }
        Ok(match name {
            "pv3_triple" => {
                let pv = self.quotient(3)?;
                let kron = self.kron(1, 2)?;
                Outcome::equations(vec![(pv.clone(), kron.clone()), (pv, self.hilb(1)?)])
            }
            "pv4_kron" => {
                let rhs = &self.kron(2, 3)? + &(&t(4) * &p2);
                Outcome::equations(vec![(self.quotient(4)?, rhs)])
            }
            "pv4_hilb" => {
                let corr = &(&t(2) * &IntPoly::from_i64s(&[1, 0, 0, 0, 1]))
                    * &IntPoly::from_i64s(&[1, 0, 1, 0, 1]);
                Outcome::equations(vec![(self.quotient(4)?, &self.hilb(3)? - &corr)])
            }
            "pv5_kron" => {
                let rhs = &self.kron(3, 4)? + &(&(&t(4) * &p2) * &self.aux("obs5_kron")?);
                Outcome::equations(vec![(self.quotient(5)?, rhs)])
            }
            "pv5_hilb" => {
                let sq = IntPoly::from_i64s(&[1, 0, 1]).pow(2);
                let corr = &(&t(2) * &sq) * &self.aux("obs5_hilb")?;
                Outcome::equations(vec![(self.quotient(5)?, &self.hilb(6)? - &corr)])
            }
            "pv6_kron" => {
                let rhs = &self.kron(4, 5)? + &(&(&t(4) * &p2) * &self.aux("f_obs6")?);
                Outcome::equations(vec![(self.quotient(6)?, rhs)])
            }
            "pv6_hilb" => {
                let corr = &(&t(2) * &p2) * &self.aux("g_obs6")?;
                Outcome::equations(vec![(self.quotient(6)?, &self.hilb(10)? - &corr)])
            }
            "eq1" => {
                let diff = self.difference(4)?;
                let via_p3 = &p2 * &(&projective_poincare(3) - &IntPoly::one());
                Outcome::equations(vec![(diff.clone(), delta.clone()), (diff, via_p3)])
            }
            "eq2" => Outcome::equations(vec![(self.difference(5)?, &delta * &self.aux("rem5")?)]),
            "eq3" => Outcome::equations(vec![(self.difference(6)?, &delta * &self.aux("f_rem6")?)]),
            "eq2_multiple" => divisibility(&self.difference(5)?, &delta, true)?,
            "eq3_multiple" => divisibility(&self.difference(6)?, &delta, true)?,
            "blowup_d4" => Outcome::equations(vec![(blowup_delta(&p2, 4)?, self.difference(4)?)]),
            "blowup_d5_conics" => {
                let p5 = projective_poincare(5);
                let bl = blowup_delta(&p5, 7)?;
                let rhs = &delta * &IntPoly::from_i64s(&[1, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 1]);
                let p5_split = &p2 * &IntPoly::from_i64s(&[1, 0, 0, 0, 0, 0, 1]);
                let near = &self.difference(5)? - &bl;
                let mut o = Outcome::equations(vec![
                    (bl.clone(), rhs),
                    (bl, (&p5 * &p5).shift(2)),
                    (p5, p5_split),
                ]);
                o.detail = Some(format!(
                    "P(Hilb^6) - P(N(3;3,4)) - P(P5)(P(P6) - 1) = {}",
                    emit_plain(&near)
                ));
                o
            }
            "d6_factor_absent" => {
                let p9 = projective_poincare(9);
                let mut o = divisibility(&p9, &p2, false)?;
                let whole = (&p9 * &p9).shift(2);
                let sq = &p2 * &p2;
                o.detail = Some(format!(
                    "(1+t^2+t^4)^2 divides t^2 P(P9)^2: {}",
                    sq.divides(&whole)?
                ));
                o
            }
            _ => return Err(IdentityError::UnknownCheck(name.to_string())),
        })
    }
}

fn nondiv_degree(name: &str) -> Option<u32> {
    name.strip_prefix("nondiv_d")?
        .parse::<u32>()
        .ok()
        .filter(|&d| d >= 7)
}

struct Outcome {
    kind: CheckKind,
    lhs: IntPoly,
    rhs: IntPoly,
    residual: IntPoly,
    passed: bool,
    detail: Option<String>,
}

impl Outcome {
    /// Reports the first failing equation, or the first one if all hold.
    fn equations(eqs: Vec<(IntPoly, IntPoly)>) -> Self {
        let pick = eqs.iter().position(|(l, r)| l != r).unwrap_or(0);
        let (lhs, rhs) = eqs.into_iter().nth(pick).expect("at least one equation");
        let residual = &lhs - &rhs;
        Outcome {
            kind: CheckKind::Identity,
            passed: residual.is_zero(),
            lhs,
            rhs,
            residual,
            detail: None,
        }
    }

    fn into_result(self, name: &str, anchor: String) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            kind: self.kind,
            lhs: self.lhs,
            rhs: self.rhs,
            residual: self.residual,
            passed: self.passed,
            anchor,
            detail: self.detail,
        }
    }
}

fn divisibility(
    dividend: &IntPoly,
    divisor: &IntPoly,
    want: bool,
) -> Result<Outcome, IdentityError> {
    let rem = dividend.pseudo_rem(divisor)?;
    Ok(Outcome {
        kind: CheckKind::Predicate,
        lhs: dividend.clone(),
        rhs: divisor.clone(),
        passed: rem.is_zero() == want,
        residual: rem,
        detail: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn blowup_examples() {
        let p2 = projective_poincare(2);
        assert_eq!(blowup_delta(&p2, 4).unwrap(), blowup_plane_delta());
        let want = &blowup_plane_delta() * &p(&[1, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 1]);
        assert_eq!(blowup_delta(&projective_poincare(5), 7).unwrap(), want);
        assert_eq!(blowup_delta(&p(&[3, 1, 4]), 1).unwrap(), IntPoly::zero());
        assert_eq!(blowup_delta(&p2, 0), Err(IdentityError::ZeroCodimension));
    }

    #[test]
    fn difference_examples() {
        assert_eq!(hilb_kron_difference(3).unwrap(), IntPoly::zero());
        assert_eq!(hilb_kron_difference(4).unwrap(), blowup_plane_delta());
        let rem5 = p(&[1, 0, 1, 0, 3, 0, 7, 0, 3, 0, 1, 0, 1]);
        assert_eq!(
            hilb_kron_difference(5).unwrap(),
            &blowup_plane_delta() * &rem5
        );
        assert_eq!(
            hilb_kron_difference(2),
            Err(IdentityError::DegreeTooSmall(2))
        );
    }

    #[test]
    fn named_examples() {
        let suite = Suite::new(Catalog::builtin());
        for name in ["eq1", "pv3_triple", "nondiv_d7"] {
            let r = suite.run_check(name).unwrap();
            assert!(r.passed, "{}", r.report());
        }
        assert!(suite.run_check("eq1").unwrap().residual.is_zero());
        assert_eq!(
            suite.run_check("eq9"),
            Err(IdentityError::UnknownCheck("eq9".to_string()))
        );
        assert!(suite.run_check("nondiv_d6").is_err());
    }

    #[test]
    fn extended_nondivisibility_range() {
        let r = Suite::new(Catalog::builtin())
            .with_max_hilb(36)
            .run_check("nondiv_d10")
            .unwrap();
        assert!(r.passed, "{}", r.report());
        assert!(!r.residual.is_zero());
        // l = 36 is above the default cap
        let guarded = Suite::new(Catalog::builtin())
            .run_check("nondiv_d10")
            .unwrap();
        assert!(!guarded.passed);
        assert!(guarded.detail.unwrap().contains("exceeds"));
    }

    #[test]
    fn failure_report_lists_polynomials() {
        let text =
            Catalog::builtin_fixture_text().replace("A rem5 : 1+t^2+3*t^4", "A rem5 : 1+t^2+4*t^4");
        let cat = Catalog::parse(&text).unwrap();
        let r = Suite::new(&cat).run_check("eq2").unwrap();
        assert!(!r.passed);
        // a unit change in one coefficient of rem5 shifts the rhs by t^4 * delta
        assert_eq!(r.residual, -blowup_plane_delta().shift(4));
        let rep = r.report();
        assert!(rep.starts_with("FAIL eq2"));
        assert!(rep.contains("lhs - rhs: -1*t^6+-2*t^8+-3*t^10"), "{rep}");
    }

    #[test]
    fn d6_reports_both_predicates() {
        let r = Suite::new(Catalog::builtin())
            .run_check("d6_factor_absent")
            .unwrap();
        assert!(r.passed);
        assert_eq!(r.kind, CheckKind::Predicate);
        assert_eq!(
            r.detail.as_deref(),
            Some("(1+t^2+t^4)^2 divides t^2 P(P9)^2: false")
        );
    }
}
