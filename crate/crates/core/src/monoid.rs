//! Polynomial multiplications on affine n-space and the monoid axioms.
//!
//! A multiplication on A^n is stored as n polynomials in 2n variables:
//! `u1..un` for the first factor followed by `v1..vn` for the second.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{LaurentPolynomial, Monomial, Rational};

pub type Point = Vec<Rational>;

/// Integer range used by [`PolynomialMonoid::sample_associativity`].
pub const SAMPLE_RANGE: i64 = 1000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolynomialMonoid {
    dimension: usize,
    components: Vec<LaurentPolynomial>,
    unit: Option<Point>,
}

/// A monomial on which the two sides of the associativity identity differ,
/// in the ring `x1..xn, y1..yn, z1..zn` of three generic points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub component: usize,
    pub monomial: Monomial,
    /// Coefficient of `monomial` in `(x*y)*z - x*(y*z)`.
    pub difference: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Associativity {
    Holds,
    Fails(Witness),
}

impl Associativity {
    pub fn holds(&self) -> bool {
        matches!(self, Associativity::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Associativity::Holds => None,
            Associativity::Fails(w) => Some(w),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    pub associative: bool,
    pub witness: Option<Witness>,
    pub commutative: bool,
    pub unit_found: Option<Point>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    pub x: Point,
    pub y: Point,
    pub z: Point,
    /// `(x*y)*z`
    pub left: Point,
    /// `x*(y*z)`
    pub right: Point,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SampleOutcome {
    /// No counterexample in the given number of trials. Only probabilistic.
    NoCounterexample { trials: u32 },
    /// Definitive: the points were evaluated exactly.
    Counterexample { trial: u32, example: Counterexample },
}

impl SampleOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, SampleOutcome::NoCounterexample { .. })
    }
}

impl PolynomialMonoid {
    /// Builds a multiplication from its components, checking that each one
    /// is a polynomial in `2n` variables and that `unit`, if given, is a
    /// two-sided unit. Associativity is not required here.
    pub fn new(components: Vec<LaurentPolynomial>, unit: Option<Point>) -> Result<Self> {
        let dimension = components.len();
        if dimension == 0 {
            return Err(Error::Domain("a monoid needs at least one coordinate".into()));
        }
        for (i, c) in components.iter().enumerate() {
            if c.arity() != 2 * dimension {
                return Err(Error::Dimension {
                    expected: 2 * dimension,
                    found: c.arity(),
                });
            }
            if !c.is_regular() {
                return Err(Error::NotRegular { component: i });
            }
        }
        let mut m = PolynomialMonoid {
            dimension,
            components,
            unit: None,
        };
        if let Some(e) = unit {
            if !m.verify_unit(&e)? {
                return Err(Error::InvalidUnit);
            }
            m.unit = Some(e);
        }
        Ok(m)
    }

    /// Like [`new`](Self::new), filling the unit from [`find_unit`](Self::find_unit).
    pub fn with_grid_unit(components: Vec<LaurentPolynomial>) -> Result<Self> {
        let mut m = Self::new(components, None)?;
        m.unit = m.find_unit();
        Ok(m)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn components(&self) -> &[LaurentPolynomial] {
        &self.components
    }

    pub fn unit(&self) -> Option<&Point> {
        self.unit.as_ref()
    }

    fn check_point(&self, p: &[Rational]) -> Result<()> {
        if p.len() == self.dimension {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dimension,
                found: p.len(),
            })
        }
    }

    pub fn multiply_points(&self, a: &[Rational], b: &[Rational]) -> Result<Point> {
        self.check_point(a)?;
        self.check_point(b)?;
        let args: Vec<Rational> = a.iter().chain(b).cloned().collect();
        self.components
            .iter()
            .map(|c| c.evaluate(&args).map_err(Error::from))
            .collect()
    }

    /// Composes the multiplication with symbolic arguments: returns
    /// `a * b` where `a` and `b` are points with polynomial coordinates in a
    /// common ring.
    pub fn multiply_symbolic(
        &self,
        a: &[LaurentPolynomial],
        b: &[LaurentPolynomial],
    ) -> Result<Vec<LaurentPolynomial>> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let args: Vec<LaurentPolynomial> = a.iter().chain(b).cloned().collect();
        self.components
            .iter()
            .map(|c| c.substitute(&args).map_err(Error::from))
            .collect()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.dimension {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dimension,
                found: len,
            })
        }
    }

    fn block(&self, arity: usize, offset: usize) -> Vec<LaurentPolynomial> {
        (0..self.dimension)
            .map(|i| LaurentPolynomial::var(arity, offset + i))
            .collect()
    }

    /// Differences `(x*y)*z - x*(y*z)` per component, in `3n` variables.
    pub fn associator(&self) -> Vec<LaurentPolynomial> {
        let n = self.dimension;
        let (x, y, z) = (self.block(3 * n, 0), self.block(3 * n, n), self.block(3 * n, 2 * n));
        let xy = self.multiply_symbolic(&x, &y).expect("dimensions agree");
        let left = self.multiply_symbolic(&xy, &z).expect("dimensions agree");
        let yz = self.multiply_symbolic(&y, &z).expect("dimensions agree");
        let right = self.multiply_symbolic(&x, &yz).expect("dimensions agree");
        left.iter().zip(&right).map(|(l, r)| l - r).collect()
    }

    /// Exact check of `(x*y)*z = x*(y*z)`. On failure the witness is the
    /// graded-lex smallest monomial of the first nonzero difference.
    pub fn check_associativity(&self) -> Associativity {
        for (component, d) in self.associator().into_iter().enumerate() {
            if let Some((m, c)) = d.trailing_term() {
                return Associativity::Fails(Witness {
                    component,
                    monomial: m.clone(),
                    difference: c.clone(),
                });
            }
        }
        Associativity::Holds
    }

    /// Checks `e * x = x = x * e` as polynomial identities in `x`.
    pub fn verify_unit(&self, e: &[Rational]) -> Result<bool> {
        self.check_point(e)?;
        let n = self.dimension;
        let constants: Vec<LaurentPolynomial> = e
            .iter()
            .map(|q| LaurentPolynomial::constant(n, q.clone()))
            .collect();
        let x = self.block(n, 0);
        let left = self.multiply_symbolic(&constants, &x)?;
        let right = self.multiply_symbolic(&x, &constants)?;
        Ok(left == x && right == x)
    }

    /// First point of `{0,1}^n` (binary order, first coordinate most
    /// significant) that is a two-sided unit.
    pub fn find_unit(&self) -> Option<Point> {
        let n = self.dimension;
        (0u32..(1 << n)).find_map(|mask| {
            let e: Point = (0..n)
                .map(|i| {
                    if mask >> (n - 1 - i) & 1 == 1 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            self.verify_unit(&e).ok()?.then_some(e)
        })
    }

    /// Exact comparison of each component with its argument-swapped form.
    pub fn check_commutativity(&self) -> bool {
        let swap = swap_blocks(self.dimension);
        self.components.iter().all(|c| {
            c.rename(2 * self.dimension, &swap)
                .map(|s| &s == c)
                .unwrap_or(false)
        })
    }

    /// Evaluates both sides of associativity at `trials` seeded random
    /// integer triples from `[-1000, 1000]^n`.
    pub fn sample_associativity(&self, trials: u32, seed: u64) -> SampleOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.dimension;
        let draw = |rng: &mut ChaCha8Rng| -> Point {
            (0..n)
                .map(|_| Rational::from_integer(rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE).into()))
                .collect()
        };
        for trial in 0..trials {
            let x = draw(&mut rng);
            let y = draw(&mut rng);
            let z = draw(&mut rng);
            let xy = self.multiply_points(&x, &y).expect("dimensions agree");
            let left = self.multiply_points(&xy, &z).expect("dimensions agree");
            let yz = self.multiply_points(&y, &z).expect("dimensions agree");
            let right = self.multiply_points(&x, &yz).expect("dimensions agree");
            if left != right {
                return SampleOutcome::Counterexample {
                    trial,
                    example: Counterexample { x, y, z, left, right },
                };
            }
        }
        SampleOutcome::NoCounterexample { trials }
    }

    pub fn check(&self) -> CheckReport {
        let assoc = self.check_associativity();
        CheckReport {
            associative: assoc.holds(),
            witness: assoc.witness().cloned(),
            commutative: self.check_commutativity(),
            unit_found: self.unit.clone().or_else(|| self.find_unit()),
        }
    }

    /// Returns a copy with one coefficient replaced. Used by mutation tests;
    /// the result need not be associative.
    pub fn with_coefficient(
        &self,
        component: usize,
        monomial: &Monomial,
        coefficient: Rational,
    ) -> Result<Self> {
        let c = &self.components[component];
        let old = c.coefficient(monomial);
        let delta = LaurentPolynomial::term(coefficient - old, monomial.exponents().to_vec());
        let mut comps = self.components.clone();
        comps[component] = c.try_add(&delta)?;
        Self::new(comps, None)
    }

    /// Variable names `u1..un, v1..vn`.
    pub fn variable_names(&self) -> Vec<String> {
        argument_names(self.dimension)
    }
}

/// Names `u1..un, v1..vn` of the two argument blocks.
pub fn argument_names(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("u{i}"))
        .chain((1..=n).map(|i| format!("v{i}")))
        .collect()
}

/// Names `x1..xn, y1..yn, z1..zn` of the ring used by [`Witness`].
pub fn triple_names(n: usize) -> Vec<String> {
    ["x", "y", "z"]
        .iter()
        .flat_map(|p| (1..=n).map(move |i| format!("{p}{i}")))
        .collect()
}

/// Variable permutation exchanging the `u` and `v` blocks.
pub fn swap_blocks(n: usize) -> Vec<usize> {
    (0..2 * n).map(|i| (i + n) % (2 * n)).collect()
}
