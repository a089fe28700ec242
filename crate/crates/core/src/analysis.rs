//! Idempotents and centers of the monoids on A^3.
//!
//! Components are given as parameterizations: each coordinate is fixed,
//! free, or constrained to `Φ_a = {0} ∪ {a-th roots of unity}`. The `MMA`
//! center additionally carries a monomial relation `x^b y^c = x^b' y^c'`.
//! Every component is checked by an exact polynomial identity; a finite
//! grid scan checks that no other points satisfy the predicate.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::catalog::{unit_group, MonoidDescriptor, Quadruple};
use crate::error::{domain, Error, Result};
use crate::monoid::{Point, PolynomialMonoid};
use crate::poly::{rat, rational_pow, LaurentPolynomial, Monomial, Rational};

/// `Φ_a`, or only its nonzero part when `includes_zero` is false.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CyclotomicConstraint {
    pub order: u32,
    pub includes_zero: bool,
}

impl CyclotomicConstraint {
    pub fn contains(&self, value: &Rational) -> bool {
        if value.is_zero() {
            self.includes_zero
        } else {
            rational_pow(value, self.order as i32).is_one()
        }
    }

    /// Irreducible components: one point per root plus the zero branch.
    pub fn component_count(&self) -> usize {
        self.order as usize + usize::from(self.includes_zero)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoordinateSpec {
    Fixed(Rational),
    Free,
    Cyclotomic(CyclotomicConstraint),
}

/// `x^lhs = x^rhs` on the coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialRelation {
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

impl MonomialRelation {
    fn holds_at(&self, p: &[Rational]) -> bool {
        let side = |e: &[u32]| {
            e.iter()
                .zip(p)
                .fold(Rational::one(), |acc, (&k, x)| acc * rational_pow(x, k as i32))
        };
        side(&self.lhs) == side(&self.rhs)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarietyComponent {
    pub coordinates: Vec<CoordinateSpec>,
    pub relation: Option<MonomialRelation>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Predicate {
    Idempotent,
    Central,
}

impl VarietyComponent {
    pub fn new(coordinates: Vec<CoordinateSpec>) -> Self {
        VarietyComponent {
            coordinates,
            relation: None,
        }
    }

    pub fn point(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| CoordinateSpec::Fixed(rat(v))).collect())
    }

    pub fn whole_space(n: usize) -> Self {
        Self::new(vec![CoordinateSpec::Free; n])
    }

    /// Number of free coordinates, minus one when a relation cuts them.
    pub fn dimension(&self) -> usize {
        let free = self
            .coordinates
            .iter()
            .filter(|c| matches!(c, CoordinateSpec::Free))
            .count();
        free - usize::from(self.relation.is_some())
    }

    /// Number of irreducible components this entry stands for under the
    /// counting convention for `Φ_a` coordinates.
    pub fn irreducible_count(&self) -> usize {
        self.coordinates
            .iter()
            .map(|c| match c {
                CoordinateSpec::Cyclotomic(k) => k.component_count(),
                _ => 1,
            })
            .product()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.len() == self.coordinates.len()
            && self.coordinates.iter().zip(p).all(|(kind, x)| match kind {
                CoordinateSpec::Fixed(q) => q == x,
                CoordinateSpec::Free => true,
                CoordinateSpec::Cyclotomic(k) => k.contains(x),
            })
            && self.relation.as_ref().is_none_or(|r| r.holds_at(p))
    }
}

/// Number of zeros among `a`, `b`.
pub fn z_count(a: i64, b: i64) -> u8 {
    u8::from(a == 0) + u8::from(b == 0)
}

fn zc(a: u32, b: u32) -> u8 {
    z_count(i64::from(a), i64::from(b))
}

fn require_3d(d: &MonoidDescriptor) -> Result<()> {
    d.validate()?;
    if d.dimension() == 3 {
        Ok(())
    } else {
        Err(domain(format!("idempotents and centers are tabulated for A^3, got {d}")))
    }
}

fn coords(values: [Option<i64>; 3]) -> VarietyComponent {
    VarietyComponent::new(
        values
            .iter()
            .map(|v| match v {
                Some(x) => CoordinateSpec::Fixed(rat(*x)),
                None => CoordinateSpec::Free,
            })
            .collect(),
    )
}

/// Irreducible components of the idempotent variety `{e | e * e = e}`.
pub fn idempotent_components(d: &MonoidDescriptor) -> Result<Vec<VarietyComponent>> {
    require_3d(d)?;
    let free_if = |cond: bool| if cond { None } else { Some(0) };
    Ok(match d {
        MonoidDescriptor::ThreeA | MonoidDescriptor::U3 => vec![VarietyComponent::point(&[0, 0, 0])],
        MonoidDescriptor::Maa(p) => vec![
            VarietyComponent::point(&[1, 0, 0]),
            // E2 = {(0, y, z)} with y free iff z(b,b') = 1 and z free iff z(c,c') = 1
            coords([
                Some(0),
                free_if(zc(p.b, p.b_prime) == 1),
                free_if(zc(p.c, p.c_prime) == 1),
            ]),
        ],
        MonoidDescriptor::MaaQ(_) => vec![VarietyComponent::point(&[1, 0, 0]), VarietyComponent::point(&[0, 0, 0])],
        MonoidDescriptor::Mma(p) => {
            // at (0, 0, z) the z-coordinate reads 0^b 0^c z + 0^b' 0^c' z
            let first_zero = p.b == 0 && p.c == 0;
            let second_zero = p.b_prime == 0 && p.c_prime == 0;
            vec![
                VarietyComponent::point(&[1, 1, 0]),
                coords([Some(0), Some(1), free_if(zc(p.b, p.b_prime) == 1)]),
                coords([Some(1), Some(0), free_if(zc(p.c, p.c_prime) == 1)]),
                coords([Some(0), Some(0), free_if(first_zero != second_zero)]),
            ]
        }
        MonoidDescriptor::ThreeM => {
            let mut out = Vec::new();
            for x in 0..2 {
                for y in 0..2 {
                    for z in 0..2 {
                        out.push(VarietyComponent::point(&[x, y, z]));
                    }
                }
            }
            out
        }
        _ => unreachable!("dimension checked"),
    })
}

fn abs_diff(a: u32, b: u32) -> u32 {
    a.abs_diff(b)
}

fn cyclotomic(order: u32, includes_zero: bool) -> CoordinateSpec {
    CoordinateSpec::Cyclotomic(CyclotomicConstraint { order, includes_zero })
}

/// Center of a rank-one entry with quadruple `p`. The value `x = 0` is
/// central only if `0^b = 0^b'` and `0^c = 0^c'` wherever the corresponding
/// coordinate is constrained.
fn rank_one_center(p: &Quadruple) -> VarietyComponent {
    let (b_same, c_same) = (p.b == p.b_prime, p.c == p.c_prime);
    let zero_ok = |e1: u32, e2: u32| (e1 == 0) == (e2 == 0);
    let zero = CoordinateSpec::Fixed(Rational::zero());
    match (b_same, c_same) {
        (true, true) => VarietyComponent::whole_space(3),
        (false, true) => VarietyComponent::new(vec![
            cyclotomic(abs_diff(p.b, p.b_prime), zero_ok(p.b, p.b_prime)),
            zero,
            CoordinateSpec::Free,
        ]),
        (true, false) => VarietyComponent::new(vec![
            cyclotomic(abs_diff(p.c, p.c_prime), zero_ok(p.c, p.c_prime)),
            CoordinateSpec::Free,
            zero,
        ]),
        (false, false) => VarietyComponent::new(vec![
            cyclotomic(
                abs_diff(p.b, p.b_prime).gcd(&abs_diff(p.c, p.c_prime)),
                zero_ok(p.b, p.b_prime) && zero_ok(p.c, p.c_prime),
            ),
            zero.clone(),
            zero,
        ]),
    }
}

/// Components of the center `{e | e * x = x * e for all x}`.
pub fn center_components(d: &MonoidDescriptor) -> Result<Vec<VarietyComponent>> {
    require_3d(d)?;
    Ok(match d {
        MonoidDescriptor::ThreeA | MonoidDescriptor::ThreeM => vec![VarietyComponent::whole_space(3)],
        MonoidDescriptor::U3 => vec![coords([Some(0), Some(0), None])],
        MonoidDescriptor::Maa(p) | MonoidDescriptor::MaaQ(p) => vec![rank_one_center(p)],
        MonoidDescriptor::Mma(p) => {
            if (p.b, p.c) == (p.b_prime, p.c_prime) {
                vec![VarietyComponent::whole_space(3)]
            } else {
                let mut comp = coords([None, None, Some(0)]);
                comp.relation = Some(MonomialRelation {
                    lhs: vec![p.b, p.c, 0],
                    rhs: vec![p.b_prime, p.c_prime, 0],
                });
                vec![comp]
            }
        }
        _ => unreachable!("dimension checked"),
    })
}

/// Polynomials that must vanish on `comp` for `predicate`, in which the
/// coordinates of the component point are variables `0..n` (and, for
/// centrality, the generic second point is `n..2n`).
fn predicate_polynomials(
    m: &PolynomialMonoid,
    param: &[LaurentPolynomial],
    predicate: Predicate,
) -> Result<Vec<LaurentPolynomial>> {
    let n = m.dimension();
    match predicate {
        Predicate::Idempotent => {
            let ee = m.multiply_symbolic(param, param)?;
            Ok(ee.iter().zip(param).map(|(a, b)| a - b).collect())
        }
        Predicate::Central => {
            let arity = param.first().map(LaurentPolynomial::arity).unwrap_or(0);
            let x: Vec<_> = (0..n).map(|i| LaurentPolynomial::var(arity, n + i)).collect();
            let ex = m.multiply_symbolic(param, &x)?;
            let xe = m.multiply_symbolic(&x, param)?;
            Ok(ex.iter().zip(&xe).map(|(a, b)| a - b).collect())
        }
    }
}

/// Checks that every point of `comp` satisfies `predicate`, by exact
/// identities: free coordinates become variables, a `Φ_a` coordinate
/// becomes a variable reduced modulo `w^a = 1` (plus a separate check of
/// its zero branch), and a monomial relation is applied by rewriting.
pub fn verify_component(m: &PolynomialMonoid, comp: &VarietyComponent, predicate: Predicate) -> Result<bool> {
    let n = m.dimension();
    if comp.coordinates.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: comp.coordinates.len(),
        });
    }
    let arity = match predicate {
        Predicate::Idempotent => n,
        Predicate::Central => 2 * n,
    };
    let cyclo: Vec<(usize, CyclotomicConstraint)> = comp
        .coordinates
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c {
            CoordinateSpec::Cyclotomic(k) => Some((i, *k)),
            _ => None,
        })
        .collect();
    let zero_choices: Vec<usize> = cyclo
        .iter()
        .enumerate()
        .filter(|(_, (_, k))| k.includes_zero)
        .map(|(j, _)| j)
        .collect();
    for mask in 0u32..(1 << zero_choices.len()) {
        let zeroed: Vec<bool> = (0..cyclo.len())
            .map(|j| {
                zero_choices
                    .iter()
                    .position(|&z| z == j)
                    .is_some_and(|bit| mask >> bit & 1 == 1)
            })
            .collect();
        let param: Vec<LaurentPolynomial> = comp
            .coordinates
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                CoordinateSpec::Fixed(q) => LaurentPolynomial::constant(arity, q.clone()),
                CoordinateSpec::Free => LaurentPolynomial::var(arity, i),
                CoordinateSpec::Cyclotomic(_) => {
                    let j = cyclo.iter().position(|(k, _)| *k == i).expect("listed");
                    if zeroed[j] {
                        LaurentPolynomial::zero(arity)
                    } else {
                        LaurentPolynomial::var(arity, i)
                    }
                }
            })
            .collect();
        for poly in predicate_polynomials(m, &param, predicate)? {
            let mut r = poly.map_monomials(|mono| {
                let mut e = mono.exponents().to_vec();
                for (i, k) in &cyclo {
                    e[*i] = e[*i].rem_euclid(k.order as i32);
                }
                Monomial::new(e)
            });
            if let Some(rel) = &comp.relation {
                let embed = |v: &[u32]| {
                    let mut e = vec![0i32; arity];
                    for (i, &x) in v.iter().enumerate() {
                        e[i] = x as i32;
                    }
                    Monomial::new(e)
                };
                let (a, b) = (embed(&rel.lhs), embed(&rel.rhs));
                if a != b {
                    let (lead, tail) = if a > b { (a, b) } else { (b, a) };
                    r = r.reduce_by_binomial(&lead, &tail);
                }
            }
            if !r.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the single point `e` satisfies `predicate` exactly.
pub fn satisfies(m: &PolynomialMonoid, e: &[Rational], predicate: Predicate) -> Result<bool> {
    match predicate {
        Predicate::Idempotent => Ok(m.multiply_points(e, e)? == e),
        Predicate::Central => {
            let n = m.dimension();
            let param: Vec<_> = e.iter().map(|q| LaurentPolynomial::constant(2 * n, q.clone())).collect();
            Ok(predicate_polynomials(m, &param, predicate)?.iter().all(LaurentPolynomial::is_zero))
        }
    }
}

/// `{-2, -1, 0, 1, 2}`; contains every rational root of unity.
pub fn default_grid() -> Vec<Rational> {
    (-2..=2).map(rat).collect()
}

/// First grid point satisfying `predicate` that lies on none of `comps`.
pub fn find_unlisted_point(
    m: &PolynomialMonoid,
    comps: &[VarietyComponent],
    predicate: Predicate,
    grid: &[Rational],
) -> Result<Option<Point>> {
    let n = m.dimension();
    let total = grid.len().pow(n as u32);
    for idx in 0..total {
        let mut rest = idx;
        let mut p = vec![Rational::zero(); n];
        for slot in p.iter_mut().rev() {
            *slot = grid[rest % grid.len()].clone();
            rest /= grid.len();
        }
        if satisfies(m, &p, predicate)? && !comps.iter().any(|c| c.contains(&p)) {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// True when every grid point satisfying `predicate` lies on a listed
/// component.
pub fn grid_maximality_scan(
    m: &PolynomialMonoid,
    comps: &[VarietyComponent],
    predicate: Predicate,
    grid: &[Rational],
) -> Result<bool> {
    Ok(find_unlisted_point(m, comps, predicate, grid)?.is_none())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CountVsRank {
    pub count: usize,
    pub rank: u32,
    pub equal_2r: bool,
}

/// Number of idempotent components against `2^rank`.
pub fn component_count_vs_rank(d: &MonoidDescriptor) -> Result<CountVsRank> {
    let count = idempotent_components(d)?
        .iter()
        .map(VarietyComponent::irreducible_count)
        .sum();
    let rank = unit_group(d)?.rank;
    Ok(CountVsRank {
        count,
        rank,
        equal_2r: count == 1usize << rank,
    })
}

/// Number of irreducible center components counted from
/// [`center_components`].
pub fn center_component_count(d: &MonoidDescriptor) -> Result<usize> {
    Ok(center_components(d)?
        .iter()
        .map(VarietyComponent::irreducible_count)
        .sum())
}

/// `gcd(|b - b'|, |c - c'|) + 1` for a noncommutative rank-one entry,
/// checked against [`center_component_count`].
pub fn center_component_count_rank1(d: &MonoidDescriptor) -> Result<usize> {
    let p = match d {
        MonoidDescriptor::Maa(p) | MonoidDescriptor::MaaQ(p) if !d.is_commutative() => p,
        _ => {
            return Err(domain(format!(
                "the gcd count applies to noncommutative MAA/MAA_Q entries, got {d}"
            )))
        }
    };
    let formula = abs_diff(p.b, p.b_prime).gcd(&abs_diff(p.c, p.c_prime)) as usize + 1;
    let counted = center_component_count(d)?;
    if counted == formula {
        Ok(formula)
    } else {
        Err(Error::CountMismatch { formula, counted })
    }
}
