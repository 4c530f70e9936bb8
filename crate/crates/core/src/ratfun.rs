//! Rational functions: quotients of polynomials over a shared context.
//!
//! Equality is the cross-multiplication test `p*s == r*q`; there is no
//! general multivariate gcd here, so normalization only cancels shared
//! monomial factors and rational content and fixes the denominator sign.

use std::fmt;

use num_traits::One;

use crate::error::KernelError;
use crate::poly::{divide_by_monomial, monomial_content, Context, Polynomial};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct RationalFunction {
    numer: Polynomial,
    denom: Polynomial,
}

impl RationalFunction {
    pub fn new(numer: Polynomial, denom: Polynomial) -> Result<Self, KernelError> {
        if denom.is_zero() {
            return Err(KernelError::ZeroDenominator);
        }
        Ok(RationalFunction { numer, denom }.normalized())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let one = Polynomial::one(p.context());
        RationalFunction { numer: p, denom: one }
    }

    pub fn zero(ctx: &Context) -> Self {
        RationalFunction::from_poly(Polynomial::zero(ctx))
    }

    pub fn numer(&self) -> &Polynomial {
        &self.numer
    }

    pub fn denom(&self) -> &Polynomial {
        &self.denom
    }

    pub fn context(&self) -> &Context {
        self.numer.context()
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.num_terms() == 1 && self.denom.leading().is_some_and(|(m, c)| m.is_constant() && c.is_one())
    }

    /// Cancels the shared monomial factor, then rescales both sides to
    /// primitive integer polynomials: the overall rational factor p/q goes
    /// with p on the numerator and q on the denominator, which keeps the
    /// denominator's leading coefficient positive.
    fn normalized(self) -> Self {
        if self.numer.is_zero() {
            return RationalFunction {
                denom: Polynomial::one(self.numer.context()),
                numer: self.numer,
            };
        }
        let mut numer = self.numer;
        let mut denom = self.denom;
        if let (Some(cn), Some(cd)) = (monomial_content(&numer), monomial_content(&denom)) {
            let shared = cn.gcd_with(&cd);
            if shared.total_degree() > 0 {
                numer = divide_by_monomial(&numer, &shared);
                denom = divide_by_monomial(&denom, &shared);
            }
        }
        let n0 = numer.content_normalized();
        let d0 = denom.content_normalized();
        let (nm, _) = numer.leading().expect("nonzero numerator");
        let (dm, _) = denom.leading().expect("nonzero denominator");
        let ratio = (numer.coeff(nm) / n0.coeff(nm)) / (denom.coeff(dm) / d0.coeff(dm));
        let p = Rational::from_integer(ratio.numer().clone());
        let q = Rational::from_integer(ratio.denom().clone());
        RationalFunction { numer: n0.scale(&p), denom: d0.scale(&q) }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let numer = self.numer.mul(&other.denom).add(&other.numer.mul(&self.denom));
        let denom = self.denom.mul(&other.denom);
        RationalFunction { numer, denom }.normalized()
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction {
            numer: self.numer.mul(&other.numer),
            denom: self.denom.mul(&other.denom),
        }
        .normalized()
    }

    pub fn mul_poly(&self, p: &Polynomial) -> RationalFunction {
        RationalFunction { numer: self.numer.mul(p), denom: self.denom.clone() }.normalized()
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { numer: self.numer.neg(), denom: self.denom.clone() }
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        RationalFunction { numer: self.numer.scale(c), denom: self.denom.clone() }.normalized()
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction, KernelError> {
        if other.is_zero() {
            return Err(KernelError::ZeroDenominator);
        }
        let numer = self.numer.mul(&other.denom);
        let denom = self.denom.mul(&other.numer);
        Ok(RationalFunction { numer, denom }.normalized())
    }

    /// Quotient-rule partial derivative with respect to variable `index`.
    pub fn diff(&self, index: usize) -> RationalFunction {
        let numer = self
            .numer
            .diff(index)
            .mul(&self.denom)
            .sub(&self.numer.mul(&self.denom.diff(index)));
        let denom = self.denom.mul(&self.denom);
        RationalFunction { numer, denom }.normalized()
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.numer.mul(&other.denom) == other.numer.mul(&self.denom)
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({}) / ({})", self.numer, self.denom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn ctx() -> Context {
        Context::new(vec!["x", "y"]).unwrap()
    }

    fn rf(c: &Context, n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(
            parse_polynomial(c, n).unwrap(),
            parse_polynomial(c, d).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn cross_multiplication_equality() {
        let c = ctx();
        // (x^2 - y^2)/(x - y) == (x + y)/1 without any gcd machinery.
        assert_eq!(rf(&c, "x^2 - y^2", "x - y"), rf(&c, "x + y", "1"));
        assert_ne!(rf(&c, "x", "y"), rf(&c, "y", "x"));
    }

    #[test]
    fn zero_denominator_rejected() {
        let c = ctx();
        let zero = Polynomial::zero(&c);
        assert_eq!(
            RationalFunction::new(Polynomial::one(&c), zero),
            Err(KernelError::ZeroDenominator)
        );
    }

    #[test]
    fn monomial_cancellation() {
        let c = ctx();
        let f = rf(&c, "2*x^2*y", "4*x*y^2");
        assert_eq!(f.numer().to_string(), "x");
        assert_eq!(f.denom().to_string(), "2*y");
    }

    #[test]
    fn quotient_rule() {
        let c = ctx();
        // d/dx (x/y) = 1/y, d/dy (x/y) = -x/y^2
        let f = rf(&c, "x", "y");
        assert_eq!(f.diff(0), rf(&c, "1", "y"));
        assert_eq!(f.diff(1), rf(&c, "-x", "y^2"));
    }

    #[test]
    fn arithmetic() {
        let c = ctx();
        let f = rf(&c, "x", "y");
        let g = rf(&c, "y", "x");
        assert_eq!(f.mul(&g), rf(&c, "1", "1"));
        assert_eq!(f.add(&g), rf(&c, "x^2 + y^2", "x*y"));
        assert_eq!(f.sub(&f), RationalFunction::zero(&c));
        assert_eq!(f.div(&g).unwrap(), rf(&c, "x^2", "y^2"));
    }
}
