//! Left and right commutative reductions of the semicommutative entries
//! (`MAA`, `MAA_Q`, `MMA`), computed by exact composition in the Laurent
//! ring, and literal identification of the result in the catalog.
//!
//! An invertible `g = (x, y, z)` is written as `g = t * u = v * t` with `t`
//! in the torus and `u`, `v` unipotent. The left reduction is
//! `g ᶜ* h = t * h * u`, the right one is `h *ᶜ g = v * h * t`.

use num_traits::One;

use crate::catalog::{build_monoid, is_compatible, MonoidDescriptor, Quadruple, Side};
use crate::error::{domain, Error, Result};
use crate::monoid::PolynomialMonoid;
use crate::poly::{LaurentPolynomial, Rational};

/// Laurent monomial maps in the coordinates `(x, y, z)` of `g`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnitDecomposition {
    pub t: Vec<LaurentPolynomial>,
    pub u: Vec<LaurentPolynomial>,
    pub v: Vec<LaurentPolynomial>,
}

impl UnitDecomposition {
    /// Moves the maps into a ring with `arity` variables where `g` has
    /// coordinates at the indices `coords`.
    pub fn embed(&self, arity: usize, coords: &[usize; 3]) -> Result<UnitDecomposition> {
        let move_all = |xs: &[LaurentPolynomial]| -> Result<Vec<LaurentPolynomial>> {
            xs.iter().map(|p| p.rename(arity, coords).map_err(Error::from)).collect()
        };
        Ok(UnitDecomposition {
            t: move_all(&self.t)?,
            u: move_all(&self.u)?,
            v: move_all(&self.v)?,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionResult {
    pub reduced: PolynomialMonoid,
    pub identified: MonoidDescriptor,
    pub side: Side,
}

fn monomial(e: [i32; 3]) -> LaurentPolynomial {
    LaurentPolynomial::term(Rational::one(), e.to_vec())
}

/// Closed-form decompositions `g = t * u = v * t` for the semicommutative
/// families, in the ring `(x, y, z)`.
pub fn decompose_unit(d: &MonoidDescriptor) -> Result<UnitDecomposition> {
    d.validate()?;
    let zero = LaurentPolynomial::zero(3);
    let one = LaurentPolynomial::one(3);
    let e = |p: u32| p as i32;
    match d {
        MonoidDescriptor::Mma(p) => Ok(UnitDecomposition {
            t: vec![monomial([1, 0, 0]), monomial([0, 1, 0]), zero],
            u: vec![one.clone(), one.clone(), monomial([-e(p.b), -e(p.c), 1])],
            v: vec![one.clone(), one, monomial([-e(p.b_prime), -e(p.c_prime), 1])],
        }),
        MonoidDescriptor::Maa(p) | MonoidDescriptor::MaaQ(p) => Ok(UnitDecomposition {
            t: vec![monomial([1, 0, 0]), zero.clone(), zero],
            u: vec![one.clone(), monomial([-e(p.b), 1, 0]), monomial([-e(p.c), 0, 1])],
            v: vec![one, monomial([-e(p.b_prime), 1, 0]), monomial([-e(p.c_prime), 0, 1])],
        }),
        _ => Err(domain(format!("{d} is not semicommutative"))),
    }
}

pub fn left_reduction(d: &MonoidDescriptor) -> Result<ReductionResult> {
    reduce(d, Side::Left)
}

pub fn right_reduction(d: &MonoidDescriptor) -> Result<ReductionResult> {
    reduce(d, Side::Right)
}

/// Computes one commutative reduction in the ring `u1..u3, v1..v3`.
pub fn reduce(d: &MonoidDescriptor, side: Side) -> Result<ReductionResult> {
    let m = build_monoid(d)?;
    let block = |offset: usize| -> Vec<LaurentPolynomial> {
        (0..3).map(|i| LaurentPolynomial::var(6, offset + i)).collect()
    };
    let components = match side {
        // g = (u1, u2, u3): g ᶜ* h = t * h * u
        Side::Left => {
            let dec = decompose_unit(d)?.embed(6, &[0, 1, 2])?;
            let th = m.multiply_symbolic(&dec.t, &block(3))?;
            m.multiply_symbolic(&th, &dec.u)?
        }
        // g = (v1, v2, v3): h *ᶜ g = v * h * t
        Side::Right => {
            let dec = decompose_unit(d)?.embed(6, &[3, 4, 5])?;
            let vh = m.multiply_symbolic(&dec.v, &block(0))?;
            m.multiply_symbolic(&vh, &dec.t)?
        }
    };
    if let Some(i) = components.iter().position(|c| !c.is_regular()) {
        return Err(Error::Inconsistent(format!(
            "{side} reduction of {d} has a non-polynomial component {i}"
        )));
    }
    let reduced = PolynomialMonoid::new(components, m.unit().cloned())?;
    let identified = identify_commutative(&reduced).ok_or_else(|| {
        Error::Inconsistent(format!("{side} reduction of {d} matches no commutative catalog row"))
    })?;
    Ok(ReductionResult {
        reduced,
        identified,
        side,
    })
}

/// Exponent vector of the unique term of `p` containing variable `var`.
fn exponents_of_term_with(p: &LaurentPolynomial, var: usize) -> Option<Vec<i32>> {
    let mut hits = p.terms().filter(|(m, _)| m.exponents()[var] > 0);
    let (m, _) = hits.next()?;
    if hits.next().is_some() {
        return None;
    }
    Some(m.exponents().to_vec())
}

fn exponent(e: &[i32], i: usize) -> Option<u32> {
    u32::try_from(e[i]).ok()
}

fn candidates(m: &PolynomialMonoid) -> Vec<MonoidDescriptor> {
    use MonoidDescriptor::*;
    let c = m.components();
    match m.dimension() {
        1 => vec![A1Add, A1Mul],
        2 => {
            let mut out = vec![A2Add, A2Torus];
            // (u1 v1, u1^a v2 + v1^b u2)
            if let (Some(ev), Some(eu)) = (exponents_of_term_with(&c[1], 3), exponents_of_term_with(&c[1], 1)) {
                if let (Some(a), Some(b)) = (exponent(&ev, 0), exponent(&eu, 2)) {
                    out.push(A2Semidirect { a, b });
                }
            }
            out
        }
        3 => {
            let mut out = vec![ThreeA, U3, ThreeM];
            let y_v = exponents_of_term_with(&c[1], 4);
            let y_u = exponents_of_term_with(&c[1], 1);
            let z_v = exponents_of_term_with(&c[2], 5);
            let z_u = exponents_of_term_with(&c[2], 2);
            if let (Some(yv), Some(yu), Some(zv), Some(zu)) = (&y_v, &y_u, &z_v, &z_u) {
                // y: u1^b v2 + v1^b' u2, z: u1^c v3 + v1^c' u3 (+ Q)
                if let (Some(b), Some(bp), Some(cc), Some(cp)) =
                    (exponent(yv, 0), exponent(yu, 3), exponent(zv, 0), exponent(zu, 3))
                {
                    let p = Quadruple::new(b, bp, cc, cp);
                    out.push(Maa(p));
                    if !p.as_array().contains(&0) && matches!(is_compatible(&p), Ok(Some(_))) {
                        out.push(MaaQ(p));
                    }
                }
            }
            if let (Some(zv), Some(zu)) = (&z_v, &z_u) {
                // z: u1^b u2^c v3 + v1^b' v2^c' u3
                if let (Some(b), Some(cc), Some(bp), Some(cp)) =
                    (exponent(zv, 0), exponent(zv, 1), exponent(zu, 3), exponent(zu, 4))
                {
                    out.push(Mma(Quadruple::new(b, bp, cc, cp)));
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Literal match of `m` against the catalog rows (components compared
/// exactly, no change of coordinates).
pub fn identify_catalog(m: &PolynomialMonoid) -> Option<MonoidDescriptor> {
    candidates(m).into_iter().find(|d| {
        build_monoid(d)
            .map(|built| built.components() == m.components())
            .unwrap_or(false)
    })
}

/// [`identify_catalog`] restricted to the commutative rows.
pub fn identify_commutative(m: &PolynomialMonoid) -> Option<MonoidDescriptor> {
    identify_catalog(m).filter(MonoidDescriptor::is_commutative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::expected_reduction;
    use crate::poly::rat;

    fn q(b: u32, bp: u32, c: u32, cp: u32) -> Quadruple {
        Quadruple::new(b, bp, c, cp)
    }

    fn g() -> Vec<LaurentPolynomial> {
        (0..3).map(|i| LaurentPolynomial::var(3, i)).collect()
    }

    #[test]
    fn decompositions_multiply_back() {
        for d in [
            MonoidDescriptor::Mma(q(1, 2, 0, 3)),
            MonoidDescriptor::Maa(q(2, 0, 1, 4)),
            MonoidDescriptor::MaaQ(q(1, 2, 1, 3)),
        ] {
            let m = build_monoid(&d).unwrap();
            let dec = decompose_unit(&d).unwrap();
            assert_eq!(m.multiply_symbolic(&dec.t, &dec.u).unwrap(), g(), "t*u for {d}");
            assert_eq!(m.multiply_symbolic(&dec.v, &dec.t).unwrap(), g(), "v*t for {d}");
        }
        assert!(decompose_unit(&MonoidDescriptor::U3).is_err());
    }

    #[test]
    fn decomposition_formulas() {
        let dec = decompose_unit(&MonoidDescriptor::Mma(q(1, 2, 3, 4))).unwrap();
        assert_eq!(dec.u[2], monomial([-1, -3, 1]));
        assert_eq!(dec.v[2], monomial([-2, -4, 1]));
        let dec = decompose_unit(&MonoidDescriptor::Maa(q(1, 2, 3, 4))).unwrap();
        assert_eq!(dec.u[1], monomial([-1, 1, 0]));
        assert_eq!(dec.v[2], monomial([-4, 0, 1]));
    }

    #[test]
    fn worked_examples() {
        let mma = MonoidDescriptor::Mma(q(1, 0, 2, 3));
        assert_eq!(left_reduction(&mma).unwrap().identified, MonoidDescriptor::Mma(q(1, 1, 2, 2)));
        assert_eq!(right_reduction(&mma).unwrap().identified, MonoidDescriptor::Mma(q(0, 0, 3, 3)));
        let maa = MonoidDescriptor::Maa(q(0, 1, 2, 3));
        assert_eq!(right_reduction(&maa).unwrap().identified, MonoidDescriptor::Maa(q(1, 1, 3, 3)));
        let maaq = MonoidDescriptor::MaaQ(q(1, 2, 1, 3));
        let left = left_reduction(&maaq).unwrap();
        assert_eq!(left.identified, MonoidDescriptor::MaaQ(q(1, 1, 1, 1)));
        // z-component u1*v3 + v1*u3 + 2*u2*v2
        let z = &(&LaurentPolynomial::term(rat(1), vec![1, 0, 0, 0, 0, 1])
            + &LaurentPolynomial::term(rat(1), vec![0, 0, 1, 1, 0, 0]))
            + &LaurentPolynomial::term(rat(2), vec![0, 1, 0, 0, 1, 0]);
        assert_eq!(left.reduced.components()[2], z);
        assert_eq!(right_reduction(&maaq).unwrap().identified, MonoidDescriptor::MaaQ(q(2, 2, 3, 3)));
        let zero = MonoidDescriptor::Mma(q(0, 0, 0, 0));
        assert_eq!(right_reduction(&zero).unwrap().identified, zero);
    }

    #[test]
    fn reductions_match_expected_rows() {
        for p in Quadruple::grid(0, 2) {
            for d in [MonoidDescriptor::Maa(p), MonoidDescriptor::Mma(p)] {
                for side in [Side::Left, Side::Right] {
                    let r = reduce(&d, side).unwrap();
                    assert_eq!(r.identified, expected_reduction(&d, side).unwrap());
                    assert!(r.reduced.check_commutativity());
                }
            }
        }
    }

    #[test]
    fn identification_is_literal() {
        let three_a = build_monoid(&MonoidDescriptor::ThreeA).unwrap();
        assert_eq!(identify_commutative(&three_a), Some(MonoidDescriptor::ThreeA));
        // MMA(1,1,2,2) with x and z exchanged
        let m = build_monoid(&MonoidDescriptor::Mma(q(1, 1, 2, 2))).unwrap();
        let perm = [2, 1, 0, 5, 4, 3];
        let comps: Vec<_> = [2, 1, 0]
            .iter()
            .map(|&i| m.components()[i].rename(6, &perm).unwrap())
            .collect();
        let permuted = PolynomialMonoid::new(comps, None).unwrap();
        assert!(permuted.check_commutativity());
        assert_eq!(identify_commutative(&permuted), None);
        let nc = build_monoid(&MonoidDescriptor::Maa(q(1, 2, 3, 4))).unwrap();
        assert_eq!(identify_catalog(&nc), Some(MonoidDescriptor::Maa(q(1, 2, 3, 4))));
        assert_eq!(identify_commutative(&nc), None);
    }
}
