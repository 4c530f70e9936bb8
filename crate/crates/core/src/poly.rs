//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Context`] fixes an ordered list of variable names; a [`Polynomial`]
//! over that context maps exponent vectors to nonzero rational coefficients.
//! Terms are kept in a graded order (total degree first, ties broken by
//! reverse-lexicographic comparison of the exponent vector), which also fixes
//! the canonical text form: highest term first, so the discriminant of the
//! weight-two module prints as `v1^2 - 4*v0*v2`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::KernelError;
use crate::rational::{format_rational, parse_rational, to_f64, Rational};

/// An ordered set of variable names shared by all polynomials of one algebra.
///
/// Cloning is cheap; equality compares the name lists, not the allocation.
#[derive(Debug, Clone)]
pub struct Context {
    vars: Arc<Vec<String>>,
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl Eq for Context {}

fn valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Context {
    pub fn new<S: Into<String>>(vars: Vec<S>) -> Result<Self, KernelError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_var_name(v) {
                return Err(KernelError::BadVariableName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(KernelError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Context { vars: Arc::new(vars) })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn name(&self, index: usize) -> &str {
        &self.vars[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn describe(&self) -> String {
        self.vars.join(", ")
    }
}

/// Exponent vector with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    total: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let total = exps.iter().sum();
        Monomial { total, exps: exps.into_boxed_slice() }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.total
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_constant(&self) -> bool {
        self.total == 0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial::new(exps)
    }

    /// Componentwise min, i.e. the monomial gcd.
    pub(crate) fn gcd_with(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.min(b)).collect();
        Monomial::new(exps)
    }

    /// Exact quotient; `None` when some exponent of `other` exceeds ours.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial::new(exps))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total.cmp(&other.total) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Reverse-lex tie-break: scan from the last variable; the monomial
        // with the smaller exponent at the first difference is the greater.
        for (a, b) in self.exps.iter().rev().zip(other.exps.iter().rev()) {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial in canonical form: no zero coefficients,
/// structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Context,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &Context) -> Self {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Context, value: Rational) -> Self {
        let mut p = Polynomial::zero(ctx);
        if !value.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), value);
        }
        p
    }

    pub fn one(ctx: &Context) -> Self {
        Polynomial::constant(ctx, Rational::one())
    }

    pub fn var(ctx: &Context, index: usize) -> Self {
        assert!(index < ctx.len(), "variable index out of range");
        let mut exps = vec![0; ctx.len()];
        exps[index] = 1;
        Polynomial::from_term(ctx, Monomial::new(exps), Rational::one())
    }

    pub fn var_named(ctx: &Context, name: &str) -> Result<Self, KernelError> {
        let index = ctx.index_of(name).ok_or_else(|| KernelError::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::var(ctx, index))
    }

    pub fn from_term(ctx: &Context, mono: Monomial, coeff: Rational) -> Self {
        let mut p = Polynomial::zero(ctx);
        if !coeff.is_zero() {
            p.terms.insert(mono, coeff);
        }
        p
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::total_degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.ctx.len()))
    }

    /// Greatest term in the monomial order, if any.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// True when no monomial uses any of `vars`.
    pub fn free_of(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|m| vars.iter().all(|&v| m.exponents()[v] == 0))
    }

    fn check_same_context(&self, other: &Polynomial) -> Result<(), KernelError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(KernelError::ContextMismatch {
                left: self.ctx.describe(),
                right: other.ctx.describe(),
            })
        }
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, Rational>, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, KernelError> {
        self.check_same_context(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, KernelError> {
        self.check_same_context(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), -c.clone());
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, KernelError> {
        self.check_same_context(other)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                Self::insert_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.checked_add(other).expect("context mismatch")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.checked_sub(other).expect("context mismatch")
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.checked_mul(other).expect("context mismatch")
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ctx);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to the variable at `index`.
    pub fn diff(&self, index: usize) -> Polynomial {
        assert!(index < self.ctx.len(), "variable index out of range");
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] = e - 1;
            Self::insert_term(&mut terms, Monomial::new(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    pub fn diff_named(&self, name: &str) -> Result<Polynomial, KernelError> {
        let index = self
            .ctx
            .index_of(name)
            .ok_or_else(|| KernelError::UnknownVariable(name.to_string()))?;
        Ok(self.diff(index))
    }

    /// Exact evaluation at a full point, one value per context variable.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ctx.len(), "point dimension mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (value, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    term *= value;
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluation from a name→value map; every context variable must be assigned.
    pub fn eval_map(&self, values: &BTreeMap<String, Rational>) -> Result<Rational, KernelError> {
        let mut point = Vec::with_capacity(self.ctx.len());
        for name in self.ctx.vars() {
            let v = values
                .get(name)
                .ok_or_else(|| KernelError::MissingAssignment(name.clone()))?;
            point.push(v.clone());
        }
        Ok(self.eval(&point))
    }

    /// Floating-point evaluation, used by the numeric oracle.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut term = to_f64(c);
            for (value, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    term *= value;
                }
            }
            acc += term;
        }
        acc
    }

    /// Exact quotient `self / divisor`; `None` when the division leaves a
    /// remainder. Used by fraction-free elimination, where divisibility is
    /// guaranteed by the Sylvester identity.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ctx);
        let (dm, dc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        while !rem.is_zero() {
            let (lm, lc) = rem.leading().map(|(m, c)| (m.clone(), c.clone()))?;
            let qm = lm.div(&dm)?;
            let qc = lc / &dc;
            let t = Polynomial::from_term(&self.ctx, qm, qc);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Divides out the rational content and flips the sign so the leading
    /// coefficient is positive: the canonical representative of the scalar
    /// class, with integer coefficients of gcd one.
    pub fn content_normalized(&self) -> Polynomial {
        let Some((_, lead)) = self.leading() else {
            return self.clone();
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = int_gcd(&num_gcd, c.numer());
            den_lcm = int_lcm(&den_lcm, c.denom());
        }
        if num_gcd.is_zero() {
            return self.clone();
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn int_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a * b).abs() / int_gcd(a, b)
}

/// Monomial gcd over all terms of `polys`, for cancelling shared monomial
/// factors between a numerator and denominator.
pub(crate) fn monomial_content(p: &Polynomial) -> Option<Monomial> {
    let mut iter = p.terms.keys();
    let first = iter.next()?.clone();
    Some(iter.fold(first, |acc, m| acc.gcd_with(m)))
}

pub(crate) fn divide_by_monomial(p: &Polynomial, m: &Monomial) -> Polynomial {
    let terms = p
        .terms
        .iter()
        .map(|(mono, c)| (mono.div(m).expect("monomial content divides"), c.clone()))
        .collect();
    Polynomial { ctx: p.ctx.clone(), terms }
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.numer().is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = coeff.abs();
            let mut wrote_coeff = false;
            if mono.is_constant() || !abs.is_one() {
                write!(f, "{}", format_rational(&abs))?;
                wrote_coeff = true;
            }
            for (index, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_coeff {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ctx.name(index))?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                wrote_coeff = true;
            }
        }
        Ok(())
    }
}

/// Parses the canonical text form (and tolerant variants: extra whitespace,
/// explicit `+`/`-` signs, repeated variables within a term).
pub fn parse_polynomial(ctx: &Context, text: &str) -> Result<Polynomial, KernelError> {
    let mut result = Polynomial::zero(ctx);
    let text = text.trim();
    if text.is_empty() {
        return Err(KernelError::BadPolynomial("empty input".to_string()));
    }
    let mut rest = text;
    let mut sign = Rational::one();
    let mut first = true;
    while !rest.is_empty() {
        if !first || rest.starts_with(['+', '-']) {
            let (op, tail) = rest.split_at(1);
            match op {
                "+" => {}
                "-" => sign = -sign,
                _ => {
                    return Err(KernelError::BadPolynomial(format!(
                        "expected `+` or `-` before `{rest}`"
                    )))
                }
            }
            rest = tail.trim_start();
        }
        let end = rest
            .char_indices()
            .find(|&(i, c)| (c == '+' || c == '-') && !matches!(rest[..i].trim_end().chars().last(), Some('^' | '*' | '/')))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let (term_text, tail) = rest.split_at(end);
        let term = parse_term(ctx, term_text.trim())?;
        result = result.add(&term.scale(&sign));
        sign = Rational::one();
        rest = tail.trim_start();
        first = false;
    }
    Ok(result)
}

fn parse_term(ctx: &Context, text: &str) -> Result<Polynomial, KernelError> {
    if text.is_empty() {
        return Err(KernelError::BadPolynomial("empty term".to_string()));
    }
    let mut coeff = Rational::one();
    let mut exps = vec![0u32; ctx.len()];
    for factor in text.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(KernelError::BadPolynomial(format!("empty factor in `{text}`")));
        }
        if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            coeff *= parse_rational(factor)?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((name, e)) => {
                let exp: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| KernelError::BadPolynomial(format!("bad exponent in `{factor}`")))?;
                (name.trim(), exp)
            }
            None => (factor, 1),
        };
        let index = ctx
            .index_of(name)
            .ok_or_else(|| KernelError::UnknownVariable(name.to_string()))?;
        exps[index] += exp;
    }
    Ok(Polynomial::from_term(ctx, Monomial::new(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn ctx() -> Context {
        Context::new(vec!["x", "y", "h"]).unwrap()
    }

    fn p(c: &Context, s: &str) -> Polynomial {
        parse_polynomial(c, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let c = ctx();
        let lhs = p(&c, "x + y").mul(&p(&c, "x - y"));
        assert_eq!(lhs, p(&c, "x^2 - y^2"));
    }

    #[test]
    fn additive_identity() {
        let c = ctx();
        let q = p(&c, "3*x*y - 2/3*h");
        assert_eq!(q.add(&Polynomial::zero(&c)), q);
    }

    #[test]
    fn subtraction_cancels() {
        let c = Context::new(vec!["v0", "v1", "v2"]).unwrap();
        let lhs = p(&c, "v1^2 - 4*v0*v2").sub(&p(&c, "v1^2"));
        assert_eq!(lhs, p(&c, "-4*v0*v2"));
    }

    #[test]
    fn context_mismatch_names_both_contexts() {
        let a = Polynomial::one(&ctx());
        let b = Polynomial::one(&Context::new(vec!["u", "v"]).unwrap());
        match a.checked_add(&b) {
            Err(KernelError::ContextMismatch { left, right }) => {
                assert_eq!(left, "x, y, h");
                assert_eq!(right, "u, v");
            }
            other => panic!("expected context mismatch, got {other:?}"),
        }
    }

    #[test]
    fn partial_derivatives() {
        let c = ctx();
        assert_eq!(p(&c, "4*x*y + h^2").diff_named("h").unwrap(), p(&c, "2*h"));
        assert_eq!(Polynomial::constant(&c, rat(5)).diff(0), Polynomial::zero(&c));
        let c2 = Context::new(vec!["v0", "v1", "v2"]).unwrap();
        assert_eq!(p(&c2, "v1^2 - 4*v0*v2").diff_named("v1").unwrap(), p(&c2, "2*v1"));
        assert!(p(&c2, "v1").diff_named("w").is_err());
    }

    #[test]
    fn evaluation() {
        let c2 = Context::new(vec!["v0", "v1", "v2"]).unwrap();
        let disc = p(&c2, "v1^2 - 4*v0*v2");
        assert_eq!(disc.eval(&[rat(1), rat(2), rat(1)]), rat(0));
        let c = ctx();
        assert_eq!(p(&c, "4*x*y + h^2").eval(&[rat(1), rat(1), rat(0)]), rat(4));
        // All-zero point picks out the constant term.
        let q = p(&c, "7/2 + x*h - y^2");
        assert_eq!(q.eval(&[rat(0), rat(0), rat(0)]), ratio(7, 2));
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), rat(1));
        assert_eq!(
            q.eval_map(&map),
            Err(KernelError::MissingAssignment("y".to_string()))
        );
    }

    #[test]
    fn display_matches_canonical_examples() {
        let c2 = Context::new(vec!["x", "y", "h", "v0", "v1", "v2"]).unwrap();
        assert_eq!(p(&c2, "v1^2 - 4*v0*v2").to_string(), "v1^2 - 4*v0*v2");
        assert_eq!(p(&c2, "4*x*y + h^2").to_string(), "4*x*y + h^2");
        assert_eq!(Polynomial::zero(&c2).to_string(), "0");
        assert_eq!(Polynomial::constant(&c2, ratio(-3, 2)).to_string(), "-3/2");
        // Earlier variables are greater: v0 prints before v1.
        assert_eq!(p(&c2, "v1 - v0").to_string(), "-v0 + v1");
    }

    #[test]
    fn monomial_order_is_graded() {
        // Degree dominates; within a degree the later-variable exponent decides.
        let lo = Monomial::new(vec![2, 0, 0]);
        let hi = Monomial::new(vec![1, 1, 1]);
        assert!(hi > lo);
        let a = Monomial::new(vec![0, 2, 0]);
        let b = Monomial::new(vec![1, 0, 1]);
        assert!(a > b);
    }

    #[test]
    fn exact_division() {
        let c = ctx();
        let prod = p(&c, "x^2 - y^2");
        assert_eq!(prod.div_exact(&p(&c, "x - y")).unwrap(), p(&c, "x + y"));
        assert!(p(&c, "x^2 + y").div_exact(&p(&c, "x - y")).is_none());
    }

    #[test]
    fn content_normalization() {
        let c = ctx();
        assert_eq!(p(&c, "-2*x + 4*y").content_normalized(), p(&c, "x - 2*y"));
        assert_eq!(p(&c, "1/2*x - 1/3*y").content_normalized(), p(&c, "3*x - 2*y"));
    }
}
