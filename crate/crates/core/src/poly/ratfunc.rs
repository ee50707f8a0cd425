//! Reduced quotients of integer polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Coefficient, Poly, PolyError, Var};

/// `num / den` in canonical form.
///
/// The canonical representative has `gcd(num, den)` constant over the
/// rationals, the joint integer content of `num` and `den` equal to 1, and a
/// positive leading coefficient on `den`. Zero is `0 / 1`. Equal fractions
/// therefore have identical representatives, so the derived equality is
/// fraction equality.
#[derive(Clone, Debug)]
pub struct RationalFunction<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Coefficient> RationalFunction<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let var = num.common_var(&den)?;
        Ok(Self::reduce(num, den, var))
    }

    fn reduce(num: Poly<C>, den: Poly<C>, var: Var) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num: Poly::zero().with_var(var),
                den: Poly::one().with_var(var),
            };
        }
        let (mut num, mut den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den).expect("nonzero operands");
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading_coeff().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if !c.is_one() {
            num = Poly::from_coeffs(num.coeffs.into_iter().map(|x| x / c.clone()).collect());
            den = Poly::from_coeffs(den.coeffs.into_iter().map(|x| x / c.clone()).collect());
        }
        RationalFunction {
            num: num.with_var(var),
            den: den.with_var(var),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        let var = p.var();
        Self::reduce(p, Poly::one().with_var(var), var)
    }

    /// `var^k` for any integer `k`.
    pub fn var_power(k: i64, var: Var) -> Self {
        let m = Poly::var_power(k.unsigned_abs() as usize).with_var(var);
        if k >= 0 {
            RationalFunction {
                num: m,
                den: Poly::one().with_var(var),
            }
        } else {
            RationalFunction {
                num: Poly::one().with_var(var),
                den: m,
            }
        }
    }

    pub fn numer(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<C> {
        &self.den
    }

    pub fn var(&self) -> Var {
        if self.num.is_constant() {
            self.den.var()
        } else {
            self.num.var()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The integer polynomial this fraction equals, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly<C>> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.den == other.den {
            let var = self.num.common_var(&other.num)?;
            return Ok(Self::reduce(
                self.num.checked_add(&other.num)?,
                self.den.clone(),
                var,
            ));
        }
        let num = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        let den = self.den.checked_mul(&other.den)?;
        let var = num.common_var(&den)?;
        Ok(Self::reduce(num, den, var))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        let num = self.num.checked_mul(&other.num)?;
        let den = self.den.checked_mul(&other.den)?;
        let var = num.common_var(&den)?;
        Ok(Self::reduce(num, den, var))
    }

    pub fn recip(&self) -> Result<Self, PolyError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_mul(&other.recip()?)
    }

    pub fn eval(&self, x: &C) -> Option<num_rational::Ratio<C>> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| num_rational::Ratio::new(self.num.eval(x), d))
    }
}

impl<C: Coefficient> PartialEq for RationalFunction<C> {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl<C: Coefficient> Eq for RationalFunction<C> {}

impl<C: Coefficient> std::hash::Hash for RationalFunction<C> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl<C: Coefficient> From<Poly<C>> for RationalFunction<C> {
    fn from(p: Poly<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Coefficient> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<C: Coefficient> Neg for &RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<C: Coefficient> Neg for RationalFunction<C> {
    type Output = RationalFunction<C>;
    fn neg(self) -> RationalFunction<C> {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<C: Coefficient> $trait<&RationalFunction<C>> for &RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $method(self, rhs: &RationalFunction<C>) -> RationalFunction<C> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Coefficient> $trait<RationalFunction<C>> for RationalFunction<C> {
            type Output = RationalFunction<C>;
            fn $method(self, rhs: RationalFunction<C>) -> RationalFunction<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);
