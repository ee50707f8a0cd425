//! Kronecker quiver moduli via the Harder–Narasimhan recursion on stacky
//! point counts over finite fields.
//!
//! A dimension vector `(a, b)` has `a` at the source and `b` at the target of
//! `m` parallel arrows. Slopes are `a / (a + b)`; HN filtrations have strictly
//! decreasing slopes, and a stratum with pieces `e_1, ..., e_s` contributes
//! `q^(-sum_{i<j} <e_j, e_i>) * prod a_{e_i}`.
//!
//! Two routes compute the semistable stacky count `a_d`:
//!
//! * [`StackyRecursion`] runs the recursion literally on reduced rational
//!   functions, memoized over `(vector, slope bound)`.
//! * [`KroneckerSolver`] runs the same recursion scaled by the gauge group
//!   orders `|G_r|`, which keeps every value a Laurent polynomial. Summing the
//!   strata of each vector in slope order turns every bounded lookup into a
//!   prefix sum. This is the route used for Poincaré polynomials.

pub mod brute;

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

use crate::{IntPoly, RatFunc, Var};

pub use brute::{brute_force_stable_count, predicted_stable_count, BRUTE_FORCE_LIMIT};

/// Exact slope `a / (a + b)`.
pub type Slope = Ratio<i64>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("the zero dimension vector has no slope")]
    ZeroVector,
    #[error("dimensions ({0}, {1}) are not coprime")]
    NotCoprime(usize, usize),
    #[error("dimensions must be positive, got ({0}, {1})")]
    ZeroDimension(usize, usize),
    #[error("number of arrows must be positive")]
    NoArrows,
    #[error("semistable count for {0:?} is not a polynomial after multiplying by q - 1")]
    NotPolynomial(DimVector),
    #[error("brute force over q^{exponent} tuples with q = {field} exceeds the limit")]
    InstanceTooLarge { field: u64, exponent: usize },
    #[error("field size {0} is not a prime up to 5")]
    UnsupportedField(u64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector {
    pub a: usize,
    pub b: usize,
}

impl DimVector {
    pub const fn new(a: usize, b: usize) -> Self {
        DimVector { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Componentwise order.
    pub fn le(self, other: Self) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    /// `self - other`; caller guarantees `other.le(self)`.
    pub fn minus(self, other: Self) -> Self {
        DimVector::new(self.a - other.a, self.b - other.b)
    }

    /// Nonzero vectors `e <= self`, including `self`.
    pub fn nonzero_below(self) -> impl Iterator<Item = DimVector> {
        (0..=self.a)
            .flat_map(move |a| (0..=self.b).map(move |b| DimVector::new(a, b)))
            .filter(|e| !e.is_zero())
    }
}

impl From<(usize, usize)> for DimVector {
    fn from((a, b): (usize, usize)) -> Self {
        DimVector::new(a, b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArrowCount(u32);

impl ArrowCount {
    pub const THREE: ArrowCount = ArrowCount(3);

    pub fn new(m: u32) -> Result<Self, QuiverError> {
        if m == 0 {
            Err(QuiverError::NoArrows)
        } else {
            Ok(ArrowCount(m))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for ArrowCount {
    fn default() -> Self {
        Self::THREE
    }
}

/// `<e, f> = e.a f.a + e.b f.b - m e.a f.b`.
pub fn euler_form(e: DimVector, f: DimVector, m: ArrowCount) -> i64 {
    let (ea, eb, fa, fb) = (e.a as i64, e.b as i64, f.a as i64, f.b as i64);
    ea * fa + eb * fb - m.0 as i64 * ea * fb
}

pub fn slope(e: DimVector) -> Result<Slope, QuiverError> {
    if e.is_zero() {
        return Err(QuiverError::ZeroVector);
    }
    Ok(Ratio::new(e.a as i64, (e.a + e.b) as i64))
}

fn slope_unchecked(e: DimVector) -> Slope {
    slope(e).expect("nonzero vector")
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)` as a polynomial in `q`.
pub fn gl_order(n: usize) -> IntPoly {
    let qn = IntPoly::var_power(n);
    (0..n)
        .fold(IntPoly::one(), |acc, i| {
            &acc * &(&qn - &IntPoly::var_power(i))
        })
        .with_var(Var::Q)
}

/// Order of the gauge group `GL_a x GL_b`.
pub fn gauge_order(d: DimVector) -> IntPoly {
    (&gl_order(d.a) * &gl_order(d.b)).with_var(Var::Q)
}

/// A stacky point count: a rational function of the field size `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StackyCount(pub RatFunc);

impl StackyCount {
    pub fn value(&self) -> &RatFunc {
        &self.0
    }
}

/// All representations of dimension `d` divided by the gauge group:
/// `q^(m a b) / (|GL_a| |GL_b|)`.
pub fn stacky_total(d: DimVector, m: ArrowCount) -> StackyCount {
    let reps = IntPoly::var_power(m.0 as usize * d.a * d.b).with_var(Var::Q);
    StackyCount(RatFunc::new(reps, gauge_order(d)).expect("gauge order is nonzero"))
}

/// Semistable stacky count by the rational-function recursion.
pub fn stacky_semistable(d: DimVector, m: ArrowCount) -> Result<StackyCount, QuiverError> {
    StackyRecursion::new(m).semistable(d)
}

fn q_power(k: i64) -> RatFunc {
    RatFunc::var_power(k, Var::Q)
}

/// The literal recursion
///
/// ```text
/// a_d    = g_d - sum_{0 < e < d} q^(-<d-e, e>) a_e T(d-e, slope e)
/// T(r,β) = sum_{0 < e <= r, slope e < β} q^(-<r-e, e>) a_e T(r-e, slope e),  T(0, β) = 1
/// ```
///
/// on [`RatFunc`] values, memoizing both `a` and `T`.
#[derive(Debug)]
pub struct StackyRecursion {
    arrows: ArrowCount,
    semistable: HashMap<DimVector, RatFunc>,
    bounded: HashMap<(DimVector, Slope), RatFunc>,
}

impl StackyRecursion {
    pub fn new(arrows: ArrowCount) -> Self {
        StackyRecursion {
            arrows,
            semistable: HashMap::new(),
            bounded: HashMap::new(),
        }
    }

    pub fn clear(&mut self) {
        self.semistable.clear();
        self.bounded.clear();
    }

    pub fn memo_len(&self) -> usize {
        self.semistable.len() + self.bounded.len()
    }

    pub fn semistable(&mut self, d: DimVector) -> Result<StackyCount, QuiverError> {
        if d.is_zero() {
            return Err(QuiverError::ZeroVector);
        }
        Ok(StackyCount(self.semistable_value(d)))
    }

    fn semistable_value(&mut self, d: DimVector) -> RatFunc {
        if let Some(v) = self.semistable.get(&d) {
            return v.clone();
        }
        let mut acc = stacky_total(d, self.arrows).0;
        for e in d.nonzero_below().filter(|&e| e != d) {
            let rest = d.minus(e);
            let tail = self.bounded_value(rest, slope_unchecked(e));
            if tail.is_zero() {
                continue;
            }
            let weight = q_power(-euler_form(rest, e, self.arrows));
            let head = self.semistable_value(e);
            acc = &acc - &(&(&weight * &head) * &tail);
        }
        self.semistable.insert(d, acc.clone());
        acc
    }

    /// Stacky count of representations of dimension `r` all of whose HN
    /// slopes lie strictly below `bound`.
    pub fn bounded(&mut self, r: DimVector, bound: Slope) -> StackyCount {
        StackyCount(self.bounded_value(r, bound))
    }

    fn bounded_value(&mut self, r: DimVector, bound: Slope) -> RatFunc {
        if r.is_zero() {
            return RatFunc::one();
        }
        if let Some(v) = self.bounded.get(&(r, bound)) {
            return v.clone();
        }
        let mut acc = RatFunc::zero();
        for e in r.nonzero_below() {
            let s = slope_unchecked(e);
            if s >= bound {
                continue;
            }
            let rest = r.minus(e);
            let tail = self.bounded_value(rest, s);
            if tail.is_zero() {
                continue;
            }
            let weight = q_power(-euler_form(rest, e, self.arrows));
            let head = self.semistable_value(e);
            acc = &acc + &(&(&weight * &head) * &tail);
        }
        self.bounded.insert((r, bound), acc.clone());
        acc
    }
}

/// `poly * q^low` with integer `low`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Laurent {
    poly: IntPoly,
    low: i64,
}

impl Laurent {
    fn zero() -> Self {
        Laurent {
            poly: IntPoly::zero().with_var(Var::Q),
            low: 0,
        }
    }

    fn from_poly(poly: IntPoly, low: i64) -> Self {
        Laurent {
            poly: poly.with_var(Var::Q),
            low,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        match self.poly.low_order() {
            None => Laurent::zero(),
            Some(0) => self,
            Some(k) => {
                self.poly = self.poly.unshift(k).expect("low order checked");
                self.low += k as i64;
                self
            }
        }
    }

    fn add(&self, other: &Self) -> Self {
        if self.poly.is_zero() {
            return other.clone();
        }
        if other.poly.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let a = self.poly.shift((self.low - low) as usize);
        let b = other.poly.shift((other.low - low) as usize);
        Laurent::from_poly(&a + &b, low)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.poly.is_zero() || other.poly.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            poly: &self.poly * &other.poly,
            low: self.low + other.low,
        }
    }

    fn into_poly(self) -> Option<IntPoly> {
        if self.poly.is_zero() {
            return Some(self.poly);
        }
        (self.low >= 0).then(|| self.poly.shift(self.low as usize))
    }
}

#[derive(Debug, Default)]
struct Tables {
    /// `|G_e| * a_e`: number of semistable representations over `F_q`.
    counts: HashMap<DimVector, IntPoly>,
    /// For each vector, the strata terms sorted by slope of the first piece,
    /// as running sums: `prefix[i]` covers the first `i` slopes.
    strata: HashMap<DimVector, (Vec<Slope>, Vec<Laurent>)>,
    /// `|GL_n| / (|GL_k| |GL_{n-k}|)`.
    gl_ratios: HashMap<(usize, usize), IntPoly>,
}

/// Semistable counts and Poincaré polynomials of Kronecker moduli.
///
/// The memo sits behind a mutex, so a solver can be shared between threads;
/// each query holds the lock until its tables are complete.
#[derive(Debug)]
pub struct KroneckerSolver {
    arrows: ArrowCount,
    tables: Mutex<Tables>,
}

impl Default for KroneckerSolver {
    fn default() -> Self {
        Self::new(ArrowCount::THREE)
    }
}

impl KroneckerSolver {
    pub fn new(arrows: ArrowCount) -> Self {
        KroneckerSolver {
            arrows,
            tables: Mutex::new(Tables::default()),
        }
    }

    pub fn arrows(&self) -> ArrowCount {
        self.arrows
    }

    pub fn clear_memo(&self) {
        *self.tables.lock().unwrap() = Tables::default();
    }

    pub fn memo_len(&self) -> usize {
        let t = self.tables.lock().unwrap();
        t.counts.len() + t.strata.len()
    }

    /// Number of semistable representations of dimension `d` over `F_q`, a
    /// polynomial in `q`.
    pub fn semistable_count(&self, d: DimVector) -> Result<IntPoly, QuiverError> {
        if d.is_zero() {
            return Err(QuiverError::ZeroVector);
        }
        let mut t = self.tables.lock().unwrap();
        self.fill(&mut t, d);
        Ok(t.counts[&d].clone())
    }

    pub fn stacky_semistable(&self, d: DimVector) -> Result<StackyCount, QuiverError> {
        let count = self.semistable_count(d)?;
        Ok(StackyCount(
            RatFunc::new(count, gauge_order(d)).expect("nonzero gauge order"),
        ))
    }

    /// Poincaré polynomial in `q` (Betti numbers in even degrees halved) of
    /// the moduli of stable representations, for coprime `d`.
    pub fn poincare_q(&self, d: DimVector) -> Result<IntPoly, QuiverError> {
        if d.a.gcd(&d.b) != 1 {
            return Err(QuiverError::NotCoprime(d.a, d.b));
        }
        let count = self.semistable_count(d)?;
        let q_minus_one = IntPoly::from_i64s(&[-1, 1]).with_var(Var::Q);
        (&count * &q_minus_one)
            .div_exact(&gauge_order(d))
            .map_err(|_| QuiverError::NotPolynomial(d))
    }

    /// Poincaré polynomial in `t` of `N(m; a, b)`.
    pub fn poincare(&self, a: usize, b: usize) -> Result<IntPoly, QuiverError> {
        if a == 0 || b == 0 {
            return Err(QuiverError::ZeroDimension(a, b));
        }
        Ok(self.poincare_q(DimVector::new(a, b))?.substitute_square())
    }

    fn gl_ratio(t: &mut Tables, n: usize, k: usize) -> IntPoly {
        t.gl_ratios
            .entry((n, k))
            .or_insert_with(|| {
                gl_order(n)
                    .div_exact(&(&gl_order(k) * &gl_order(n - k)))
                    .expect("q-binomial times a power of q")
            })
            .clone()
    }

    /// Bounded stratum sum `|G_r| T(r, bound)`.
    fn bounded(t: &Tables, r: DimVector, bound: Slope) -> Laurent {
        if r.is_zero() {
            return Laurent::from_poly(IntPoly::one(), 0);
        }
        let (slopes, prefix) = &t.strata[&r];
        prefix[slopes.partition_point(|s| *s < bound)].clone()
    }

    fn fill(&self, t: &mut Tables, d: DimVector) {
        if t.counts.contains_key(&d) {
            return;
        }
        let mut order: Vec<DimVector> = d.nonzero_below().collect();
        order.sort_by_key(|e| (e.a + e.b, e.a));
        for r in order {
            if t.counts.contains_key(&r) {
                continue;
            }
            self.fill_vector(t, r);
        }
    }

    /// Every smaller vector must already be filled.
    fn fill_vector(&self, t: &mut Tables, r: DimVector) {
        let mut terms: Vec<(Slope, Laurent)> = Vec::new();
        let mut proper = Laurent::zero();
        for e in r.nonzero_below().filter(|&e| e != r) {
            let s = slope_unchecked(e);
            let rest = r.minus(e);
            let tail = Self::bounded(t, rest, s);
            if tail.poly.is_zero() {
                terms.push((s, Laurent::zero()));
                continue;
            }
            let ratio = &Self::gl_ratio(t, r.a, e.a) * &Self::gl_ratio(t, r.b, e.b);
            let weight = Laurent::from_poly(ratio, -euler_form(rest, e, self.arrows));
            let head = Laurent::from_poly(t.counts[&e].clone(), 0);
            let term = weight.mul(&head).mul(&tail);
            proper = proper.add(&term);
            terms.push((s, term));
        }
        let all = Laurent::from_poly(IntPoly::var_power(self.arrows.0 as usize * r.a * r.b), 0);
        let count = all
            .add(&Laurent {
                poly: -&proper.poly,
                low: proper.low,
            })
            .into_poly()
            .expect("semistable counts are polynomials in q")
            .with_var(Var::Q);
        terms.push((slope_unchecked(r), Laurent::from_poly(count.clone(), 0)));
        terms.sort_by_key(|x| x.0);

        let mut slopes = Vec::new();
        let mut prefix = vec![Laurent::zero()];
        for (s, term) in terms {
            let next = prefix.last().unwrap().add(&term);
            if slopes.last() == Some(&s) {
                *prefix.last_mut().unwrap() = next;
            } else {
                slopes.push(s);
                prefix.push(next);
            }
        }
        t.counts.insert(r, count);
        t.strata.insert(r, (slopes, prefix));
    }
}

/// Poincaré polynomial in `t` of `N(3; a, b)` for coprime positive `a`, `b`.
pub fn kron_poincare(a: usize, b: usize) -> Result<IntPoly, QuiverError> {
    KroneckerSolver::default().poincare(a, b)
}

/// `2 (m a b - a^2 - b^2 + 1)`, the real dimension of `N(m; a, b)`.
pub fn kron_degree(a: usize, b: usize, m: ArrowCount) -> i64 {
    let (a, b) = (a as i64, b as i64);
    2 * (m.0 as i64 * a * b - a * a - b * b + 1)
}

/// Evaluates an integer polynomial at a machine integer.
pub(crate) fn eval_at(p: &IntPoly, x: u64) -> BigInt {
    p.eval(&BigInt::from(x))
}
