//! Dense univariate polynomials with exact integer coefficients.
//!
//! `Poly<C>` stores coefficients in ascending exponent order. The
//! representation is canonical: the vector is empty for the zero polynomial
//! and the last element is nonzero otherwise. Each polynomial carries a
//! variable tag ([`Var`]) which binary operations check.

mod coeff;
pub mod format;
pub mod ratfunc;

pub use coeff::Coefficient;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// The indeterminate a polynomial is written in.
///
/// `T` is the Poincaré variable, `Q` the finite-field size (point counts,
/// stacky counts) or the auxiliary series variable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    #[default]
    T,
    Q,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::T => 't',
            Var::Q => 'q',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            't' => Some(Var::T),
            'q' => Some(Var::Q),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable mismatch: {0} vs {1}")]
    VarMismatch(Var, Var),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible: remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("quotient exists over the rationals but is not integral")]
    NonIntegralQuotient,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
}

#[derive(Clone, Debug)]
pub struct Poly<C> {
    coeffs: Vec<C>,
    var: Var,
}

impl<C: Coefficient> Poly<C> {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly {
            coeffs: Vec::new(),
            var: Var::T,
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * var^k`.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Poly {
            coeffs,
            var: Var::T,
        }
    }

    /// The indeterminate itself.
    pub fn var_power(k: usize) -> Self {
        Self::monomial(C::one(), k)
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        let mut p = Poly {
            coeffs,
            var: Var::T,
        };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| C::from_i64_exact(c)).collect())
    }

    /// Retags the polynomial without touching coefficients.
    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Nonzero terms as `(exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Constants are compatible with every variable; two non-constant
    /// operands must share their tag.
    fn common_var(&self, other: &Self) -> Result<Var, PolyError> {
        match (self.is_constant(), other.is_constant()) {
            (false, false) if self.var != other.var => {
                Err(PolyError::VarMismatch(self.var, other.var))
            }
            (true, false) => Ok(other.var),
            _ => Ok(self.var),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        let var = self.common_var(other)?;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Ok(Self::from_coeffs(coeffs).with_var(var))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        let var = self.common_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, C::zero());
        for (c, s) in coeffs.iter_mut().zip(&other.coeffs) {
            *c -= s;
        }
        Ok(Self::from_coeffs(coeffs).with_var(var))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        let var = self.common_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero().with_var(var));
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut prod = a.clone();
                prod *= b;
                coeffs[i + j] += &prod;
            }
        }
        Ok(Self::from_coeffs(coeffs).with_var(var))
    }

    /// Product with every term of degree above `max_degree` dropped.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Result<Self, PolyError> {
        let var = self.common_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero().with_var(var));
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(max_degree + 1);
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                let mut prod = a.clone();
                prod *= b;
                coeffs[i + j] += &prod;
            }
        }
        Ok(Self::from_coeffs(coeffs).with_var(var))
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one().with_var(self.var);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let mut a = a.clone();
                a *= c;
                a
            })
            .collect();
        Self::from_coeffs(coeffs).with_var(self.var)
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            coeffs,
            var: self.var,
        }
    }

    /// Number of zero coefficients below the lowest nonzero term.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exact division by `var^k`; `None` if some term has exponent below `k`.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.low_order()? < k {
            return None;
        }
        Some(Poly {
            coeffs: self.coeffs[k..].to_vec(),
            var: self.var,
        })
    }

    /// Greatest common divisor of the coefficients (nonnegative).
    pub fn content(&self) -> C {
        self.coeffs.iter().fold(C::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading_coeff().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let coeffs = self.coeffs.iter().map(|c| c.clone() / g.clone()).collect();
        Poly {
            coeffs,
            var: self.var,
        }
    }

    /// Pseudo-remainder: `lc(b)^k * self = quot * b + rem` with `deg rem < deg b`.
    ///
    /// The remainder is zero exactly when `b` divides `self` over the rationals.
    pub fn pseudo_rem(&self, b: &Self) -> Result<Self, PolyError> {
        let db = b.degree().ok_or(PolyError::DivisionByZero)?;
        self.common_var(b)?;
        let lb = b.coeffs[db].clone();
        let mut r = self.coeffs.clone();
        while r.len() > db {
            let top = r.len() - 1;
            let lr = r[top].clone();
            let off = top - db;
            let g = lr.gcd(&lb);
            let mul_r = lb.clone() / g.clone();
            let mul_b = lr / g;
            if !mul_r.is_one() {
                for c in r.iter_mut() {
                    *c *= &mul_r;
                }
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                let mut t = bc.clone();
                t *= &mul_b;
                r[off + j] -= &t;
            }
            debug_assert!(r[top].is_zero());
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok(Self::from_coeffs(r).with_var(self.var))
    }

    /// Returns `q` with `self = q * b`, or an error carrying the obstruction.
    pub fn div_exact(&self, b: &Self) -> Result<Self, PolyError> {
        let db = b.degree().ok_or(PolyError::DivisionByZero)?;
        let var = self.common_var(b)?;
        let Some(da) = self.degree() else {
            return Ok(Self::zero().with_var(var));
        };
        if da < db {
            return Err(PolyError::NotDivisible {
                remainder: self.to_string(),
            });
        }
        let lb = &b.coeffs[db];
        let mut r = self.coeffs.clone();
        let mut q = vec![C::zero(); da - db + 1];
        for top in (db..=da).rev() {
            if r[top].is_zero() {
                continue;
            }
            let (qc, rem) = r[top].div_rem(lb);
            if !rem.is_zero() {
                return Err(self.classify_failure(b));
            }
            let off = top - db;
            for (j, bc) in b.coeffs.iter().enumerate() {
                let mut t = bc.clone();
                t *= &qc;
                r[off + j] -= &t;
            }
            q[off] = qc;
        }
        let rem = Self::from_coeffs(r).with_var(var);
        if rem.is_zero() {
            Ok(Self::from_coeffs(q).with_var(var))
        } else {
            Err(PolyError::NotDivisible {
                remainder: rem.to_string(),
            })
        }
    }

    fn classify_failure(&self, b: &Self) -> PolyError {
        match self.pseudo_rem(b) {
            Ok(r) if r.is_zero() => PolyError::NonIntegralQuotient,
            Ok(r) => PolyError::NotDivisible {
                remainder: r.to_string(),
            },
            Err(e) => e,
        }
    }

    /// Whether `self` divides `a` over the rationals.
    pub fn divides(&self, a: &Self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(a.pseudo_rem(self)?.is_zero())
    }

    /// Primitive, positive-leading gcd over the rationals, computed by
    /// pseudo-remainder Euclid with content stripping at each step.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        let var = self.common_var(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b)?.primitive_part();
            a = b;
            b = r;
        }
        Ok(a.primitive_part().with_var(var))
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |mut acc, c| {
            acc *= x;
            acc += c;
            acc
        })
    }

    /// Sum of coefficients; the Euler characteristic of a Poincaré polynomial.
    pub fn eval_at_one(&self) -> C {
        self.coeffs.iter().fold(C::zero(), |mut acc, c| {
            acc += c;
            acc
        })
    }

    /// The substitution `q = t^2`: exponent `k` becomes `2k`, result tagged `t`.
    pub fn substitute_square(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() * 2);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                coeffs.push(C::zero());
            }
            coeffs.push(c.clone());
        }
        Poly {
            coeffs,
            var: Var::T,
        }
    }

    /// Symmetry of the coefficient list (Poincaré duality).
    pub fn is_palindromic(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.coeffs.iter().eq(self.coeffs.iter().rev()))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// All odd-exponent coefficients vanish.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }
}

impl<C: Coefficient> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.is_constant() || self.var == other.var)
    }
}

impl<C: Coefficient> Eq for Poly<C> {}

impl<C: Coefficient> Hash for Poly<C> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
        if !self.is_constant() {
            self.var.hash(state);
        }
    }
}

impl<C: Coefficient> From<C> for Poly<C> {
    fn from(c: C) -> Self {
        Self::constant(c)
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::emit_plain(self))
    }
}

// Operator sugar over the checked methods. These panic on a variable
// mismatch; use `checked_*` where operands come from outside the crate.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<C: Coefficient> $trait<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Coefficient> $trait<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coefficient> $trait<&Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Coefficient> $trait<Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            var: self.var,
        }
    }
}

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}
