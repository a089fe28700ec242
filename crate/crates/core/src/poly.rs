//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! A [`LaurentPolynomial`] lives in a ring with a fixed number of variables
//! (its *arity*). Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose
//! ordering is graded lexicographic, so two polynomials are equal exactly
//! when their term maps are equal. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("variable {variable} occurs with a negative power but its substitute is not a monomial")]
    UnsupportedSubstitution { variable: usize },
    #[error("variable {variable} is zero but occurs with a negative power")]
    EvaluationDomain { variable: usize },
}

/// Exponent vector of a Laurent monomial. Negative entries are allowed.
///
/// Ordered graded-lexicographically: first by total degree, then
/// lexicographically with the first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[i32]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity].into_boxed_slice())
    }

    pub fn new(exponents: Vec<i32>) -> Self {
        Monomial(exponents.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| i64::from(e)).sum()
    }

    pub fn is_regular(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// True when `self` is divisible by `other` among monomials with
    /// nonnegative exponents.
    pub fn is_divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse Laurent polynomial over the rationals in a fixed number of
/// variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(arity: usize) -> Self {
        LaurentPolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, value: Rational) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(Monomial::one(arity), value);
        p
    }

    /// The variable with index `index` (0-based).
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable {index} out of range for arity {arity}");
        let mut e = vec![0; arity];
        e[index] = 1;
        Self::term(Rational::one(), e)
    }

    /// A single term `coefficient * x^exponents`.
    pub fn term(coefficient: Rational, exponents: Vec<i32>) -> Self {
        let arity = exponents.len();
        let mut p = Self::zero(arity);
        p.add_term(Monomial::new(exponents), coefficient);
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Rational {
        self.terms.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    /// Smallest monomial in graded-lex order together with its coefficient.
    pub fn trailing_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The single term of a monomial polynomial, if it is one.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.exponents().iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, monomial: Monomial, coefficient: Rational) {
        debug_assert_eq!(monomial.arity(), self.arity);
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<(), PolyError> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.product(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPolynomial {
            arity: self.arity,
            terms,
        })
    }

    /// Exact equality; errors when the arities differ.
    pub fn equals(&self, other: &Self) -> Result<bool, PolyError> {
        self.check_arity(other)?;
        Ok(self.terms == other.terms)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.arity);
        }
        LaurentPolynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// `self^k` by repeated squaring. `f^0 = 1` for every `f`, including zero.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut result = Self::one(self.arity);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Inverse of a monomial polynomial; `None` for anything else.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        let mut p = Self::zero(self.arity);
        p.add_term(m.inverse(), c.recip());
        Some(p)
    }

    /// True iff every exponent of every stored term is nonnegative.
    pub fn is_regular(&self) -> bool {
        self.terms.keys().all(Monomial::is_regular)
    }

    /// Composition: replaces variable `i` by `args[i]`.
    ///
    /// Every argument must live in the same ring. A variable that occurs
    /// with a negative exponent may only be replaced by a monomial.
    pub fn substitute(&self, args: &[LaurentPolynomial]) -> Result<Self, PolyError> {
        if args.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        let target = args.first().map(|a| a.arity).unwrap_or(0);
        for a in args {
            if a.arity != target {
                return Err(PolyError::ArityMismatch {
                    expected: target,
                    found: a.arity,
                });
            }
        }
        let mut inverses: Vec<Option<LaurentPolynomial>> = vec![None; self.arity];
        for (i, arg) in args.iter().enumerate() {
            if self.terms.keys().any(|m| m.exponents()[i] < 0) {
                let inv = arg
                    .monomial_inverse()
                    .ok_or(PolyError::UnsupportedSubstitution { variable: i })?;
                inverses[i] = Some(inv);
            }
        }
        let mut powers: HashMap<(usize, i32), LaurentPolynomial> = HashMap::new();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut product = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = powers.entry((i, e)).or_insert_with(|| {
                    if e > 0 {
                        args[i].pow(e as u32)
                    } else {
                        inverses[i]
                            .as_ref()
                            .expect("inverse computed above")
                            .pow(e.unsigned_abs())
                    }
                });
                product = &product * factor;
                if product.is_zero() {
                    break;
                }
            }
            for (pm, pc) in product.terms {
                out.add_term(pm, pc);
            }
        }
        Ok(out)
    }

    /// Exact value at `point`, with `0^0 = 1`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if point[i].is_zero() {
                    if e < 0 {
                        return Err(PolyError::EvaluationDomain { variable: i });
                    }
                    value = Rational::zero();
                    break;
                }
                value *= rational_pow(&point[i], e);
            }
            total += value;
        }
        Ok(total)
    }

    /// Moves variable `i` of `self` to variable `mapping[i]` of a ring with
    /// `arity` variables. Distinct variables may be sent to the same target.
    pub fn rename(&self, arity: usize, mapping: &[usize]) -> Result<Self, PolyError> {
        if mapping.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                expected: self.arity,
                found: mapping.len(),
            });
        }
        let mut out = Self::zero(arity);
        for (m, c) in &self.terms {
            let mut e = vec![0; arity];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[mapping[i]] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }

    /// Rewrites every exponent vector through `f`, merging colliding terms.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Self {
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Normal form modulo the binomial `lead - tail`, rewriting every
    /// multiple of `lead` into the same multiple of `tail`. Requires
    /// `tail < lead` in graded-lex order and nonnegative exponents so the
    /// rewriting terminates.
    pub fn reduce_by_binomial(&self, lead: &Monomial, tail: &Monomial) -> Self {
        debug_assert!(tail < lead);
        let mut current = self.clone();
        loop {
            let hit = current
                .terms
                .iter()
                .rev()
                .find(|(m, _)| m.is_divisible_by(lead))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = hit else {
                return current;
            };
            current.terms.remove(&m);
            current.add_term(m.quotient(lead).product(tail), c);
        }
    }

    /// Formats with the given variable names, largest term first.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> DisplayWith<'a> {
        DisplayWith { poly: self, names }
    }
}

pub fn rational_pow(base: &Rational, exp: i32) -> Rational {
    let mut r = Rational::one();
    let b = if exp < 0 { base.recip() } else { base.clone() };
    let mut k = exp.unsigned_abs();
    let mut sq = b;
    while k > 0 {
        if k & 1 == 1 {
            r *= &sq;
        }
        k >>= 1;
        if k > 0 {
            sq = &sq * &sq;
        }
    }
    r
}

pub struct DisplayWith<'a> {
    poly: &'a LaurentPolynomial,
    names: &'a [String],
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() {
                factors.push(magnitude.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.arity);
        write!(f, "{}", self.display_with(&names))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.arity);
        write!(f, "{}", self.display_with(&names))
    }
}

/// `x1, x2, …` for a ring of the given arity.
pub fn default_names(arity: usize) -> Vec<String> {
    (1..=arity).map(|i| format!("x{i}")).collect()
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPolynomial> for &LaurentPolynomial {
            type Output = LaurentPolynomial;

            /// Panics if the arities differ; use the `try_` method to get an error instead.
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$checked(rhs).expect("polynomial arity mismatch")
            }
        }

        impl $trait<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;

            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, try_add);
panicking_op!(Sub, sub, try_sub);
panicking_op!(Mul, mul, try_mul);

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}
