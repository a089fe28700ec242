//! The classified monoids on A^1, A^2 and A^3, their unit groups and the
//! isomorphism rules between catalog entries.
//!
//! Coordinates of A^3 are written `(x, y, z)`. In the multiplication formulas
//! the first factor is `(x1, y1, z1) = (u1, u2, u3)` and the second is
//! `(x2, y2, z2) = (v1, v2, v3)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};

use crate::error::{domain, Error, Result};
use crate::monoid::PolynomialMonoid;
use crate::poly::{LaurentPolynomial, Rational};

/// `(b, b', c, c')`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Quadruple {
    pub b: u32,
    pub b_prime: u32,
    pub c: u32,
    pub c_prime: u32,
}

impl Quadruple {
    pub const fn new(b: u32, b_prime: u32, c: u32, c_prime: u32) -> Self {
        Quadruple {
            b,
            b_prime,
            c,
            c_prime,
        }
    }

    /// `(c, c', b, b')`.
    pub fn symmetric(&self) -> Self {
        Quadruple::new(self.c, self.c_prime, self.b, self.b_prime)
    }

    pub fn as_array(&self) -> [u32; 4] {
        [self.b, self.b_prime, self.c, self.c_prime]
    }

    /// All quadruples with entries in `lo..=hi`, in lexicographic order.
    pub fn grid(lo: u32, hi: u32) -> impl Iterator<Item = Quadruple> {
        let r = move || lo..=hi;
        r().flat_map(move |b| {
            r().flat_map(move |bp| {
                r().flat_map(move |c| r().map(move |cp| Quadruple::new(b, bp, c, cp)))
            })
        })
    }

    /// Compatible quadruples with entries in `1..=hi`.
    pub fn compatible_grid(hi: u32) -> impl Iterator<Item = Quadruple> {
        Quadruple::grid(1, hi).filter(|p| matches!(is_compatible(p), Ok(Some(_))))
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.b, self.b_prime, self.c, self.c_prime)
    }
}

/// The integer `d` certifying compatibility of a quadruple.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CompatibilityWitness {
    pub d: u32,
}

/// Searches `d` in `1..=max(c, c')` with
/// `c - bd >= 0`, `c' - b'd >= 0` and `c - b(d+1) = c' - b'(d+1) < 0`.
pub fn is_compatible(p: &Quadruple) -> Result<Option<CompatibilityWitness>> {
    if p.as_array().contains(&0) {
        return Err(domain(format!(
            "compatibility is defined for positive quadruples, got ({p})"
        )));
    }
    let [b, bp, c, cp] = p.as_array().map(i64::from);
    let found = (1..=c.max(cp)).find(|&d| {
        c - b * d >= 0 && cp - bp * d >= 0 && c - b * (d + 1) == cp - bp * (d + 1) && c - b * (d + 1) < 0
    });
    Ok(found.map(|d| CompatibilityWitness { d: d as u32 }))
}

fn binom(n: u32, k: u32) -> Rational {
    Rational::from_integer(BigInt::from(binomial(u64::from(n), u64::from(k))))
}

/// `Q_p` in the ring `(x1, x2, y1, y2)`:
/// the sum over `j + k = d + 1`, `j, k >= 1` of
/// `C(d+1, k) x1^(c-bj) x2^(c'-b'k) y1^j y2^k`.
pub fn q_poly(p: &Quadruple) -> Result<LaurentPolynomial> {
    let d = is_compatible(p)?
        .ok_or_else(|| domain(format!("quadruple ({p}) is not compatible")))?
        .d;
    let [b, bp, c, cp] = p.as_array().map(|v| v as i32);
    let mut q = LaurentPolynomial::zero(4);
    for k in 1..=d {
        let j = d + 1 - k;
        let (ji, ki) = (j as i32, k as i32);
        q = &q + &LaurentPolynomial::term(binom(d + 1, k), vec![c - b * ji, cp - bp * ki, ji, ki]);
    }
    Ok(q)
}

/// The Laurent closed form
/// `x1^c x2^c' ((y1/x1^b + y2/x2^b')^(d+1) - (y1/x1^b)^(d+1) - (y2/x2^b')^(d+1))`.
pub fn q_poly_closed_form(p: &Quadruple) -> Result<LaurentPolynomial> {
    let d = is_compatible(p)?
        .ok_or_else(|| domain(format!("quadruple ({p}) is not compatible")))?
        .d;
    let [b, bp, c, cp] = p.as_array().map(|v| v as i32);
    let one = Rational::from_integer(1.into());
    let s = LaurentPolynomial::term(one.clone(), vec![-b, 0, 1, 0]);
    let t = LaurentPolynomial::term(one.clone(), vec![0, -bp, 0, 1]);
    let front = LaurentPolynomial::term(one, vec![c, cp, 0, 0]);
    let inner = &(&(&s + &t).pow(d + 1) - &s.pow(d + 1)) - &t.pow(d + 1);
    Ok(&front * &inner)
}

/// `Q_{b,c}` in the ring `(x1, x2, y1, y2)` for `0 < b <= c`, written with
/// `c = bd + e`, `0 <= e < b`.
pub fn q_bc(b: u32, c: u32) -> Result<LaurentPolynomial> {
    if b == 0 || c == 0 {
        return Err(domain(format!("Q_(b,c) needs b, c > 0, got ({b},{c})")));
    }
    if b > c {
        return Err(domain(format!("Q_(b,c) needs b <= c, got ({b},{c})")));
    }
    let d = c / b;
    let (bi, ci) = (b as i32, c as i32);
    let mut q = LaurentPolynomial::zero(4);
    for k in 1..=d {
        let j = d + 1 - k;
        let (ji, ki) = (j as i32, k as i32);
        q = &q + &LaurentPolynomial::term(binom(d + 1, k), vec![ci - bi * ji, ci - bi * ki, ji, ki]);
    }
    Ok(q)
}

/// A named monoid from the classification lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum MonoidDescriptor {
    A1Add,
    A1Mul,
    A2Add,
    /// `(x1 x2, x1^a y2 + x2^b y1)`
    A2Semidirect { a: u32, b: u32 },
    A2Torus,
    ThreeA,
    U3,
    /// `(x1x2, x1^b y2 + x2^b' y1, x1^c z2 + x2^c' z1)`
    Maa(Quadruple),
    /// As [`Maa`](Self::Maa) plus `Q_p(x1, x2, y1, y2)` in the last coordinate.
    MaaQ(Quadruple),
    /// `(x1x2, y1y2, x1^b y1^c z2 + x2^b' y2^c' z1)`
    Mma(Quadruple),
    ThreeM,
}

impl MonoidDescriptor {
    pub fn dimension(&self) -> usize {
        use MonoidDescriptor::*;
        match self {
            A1Add | A1Mul => 1,
            A2Add | A2Semidirect { .. } | A2Torus => 2,
            _ => 3,
        }
    }

    /// Stable family tag, as used by the text syntax.
    pub fn family(&self) -> &'static str {
        use MonoidDescriptor::*;
        match self {
            A1Add => "A1_add",
            A1Mul => "A1_mul",
            A2Add => "A2_add",
            A2Semidirect { .. } => "A2_semidirect",
            A2Torus => "A2_torus",
            ThreeA => "3A",
            U3 => "U3",
            Maa(_) => "MAA",
            MaaQ(_) => "MAA_Q",
            Mma(_) => "MMA",
            ThreeM => "3M",
        }
    }

    pub fn quadruple(&self) -> Option<Quadruple> {
        match self {
            MonoidDescriptor::Maa(p) | MonoidDescriptor::MaaQ(p) | MonoidDescriptor::Mma(p) => Some(*p),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let MonoidDescriptor::MaaQ(p) = self {
            if is_compatible(p)?.is_none() {
                return Err(domain(format!("MAA_Q requires a compatible quadruple, got ({p})")));
            }
        }
        Ok(())
    }

    /// True for the entries of the commutative classification.
    pub fn is_commutative(&self) -> bool {
        use MonoidDescriptor::*;
        match self {
            A2Semidirect { a, b } => a == b,
            Maa(p) | MaaQ(p) | Mma(p) => p.b == p.b_prime && p.c == p.c_prime,
            _ => true,
        }
    }

    /// True for the families whose unit group is a torus times a
    /// commutative unipotent group.
    pub fn is_semicommutative(&self) -> bool {
        matches!(
            self,
            MonoidDescriptor::Maa(_) | MonoidDescriptor::MaaQ(_) | MonoidDescriptor::Mma(_)
        )
    }

    /// Type name in the classification lists, e.g. `M+A(1,2)+A(3,4)` or,
    /// for the commutative rows, `M+A(2)+A_Q(2,3)`.
    pub fn notation(&self) -> String {
        use MonoidDescriptor::*;
        match self {
            A1Add => "A".into(),
            A1Mul => "M".into(),
            A2Add => "2A".into(),
            A2Semidirect { a, b } => format!("M+A({a},{b})"),
            A2Torus => "2M".into(),
            ThreeA => "3A".into(),
            U3 => "U3".into(),
            ThreeM => "3M".into(),
            Maa(p) if self.is_commutative() => format!("M+A({})+A({})", p.b, p.c),
            Maa(p) => format!("M+A({},{})+A({},{})", p.b, p.b_prime, p.c, p.c_prime),
            MaaQ(p) if self.is_commutative() => format!("M+A({})+A_Q({},{})", p.b, p.b, p.c),
            MaaQ(p) => format!("M+A({},{})+A_Q({p})", p.b, p.b_prime),
            Mma(p) if self.is_commutative() => format!("M+M+A({},{})", p.b, p.c),
            Mma(p) => format!("M+M+A({p})"),
        }
    }

    /// The multiplication of this catalog row, with its unit.
    pub fn build(&self) -> Result<PolynomialMonoid> {
        build_monoid(self)
    }
}

impl fmt::Display for MonoidDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidDescriptor::A2Semidirect { a, b } => write!(f, "A2_semidirect({a},{b})"),
            MonoidDescriptor::Maa(p) | MonoidDescriptor::MaaQ(p) | MonoidDescriptor::Mma(p) => {
                write!(f, "{}({p})", self.family())
            }
            _ => f.write_str(self.family()),
        }
    }
}

impl FromStr for MonoidDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, params) = match compact.find('(') {
            Some(open) => {
                let inner = compact[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| domain(format!("unbalanced parentheses in descriptor `{s}`")))?;
                let params = inner
                    .split(',')
                    .map(|t| {
                        t.parse::<u32>()
                            .map_err(|_| domain(format!("bad parameter `{t}` in descriptor `{s}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                (&compact[..open], params)
            }
            None => (compact.as_str(), Vec::new()),
        };
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(domain(format!("`{name}` takes {k} parameters, got {}", params.len())))
            }
        };
        let quad = || Quadruple::new(params[0], params[1], params[2], params[3]);
        use MonoidDescriptor::*;
        let d = match name {
            "A1_add" => arity(0).map(|_| A1Add)?,
            "A1_mul" => arity(0).map(|_| A1Mul)?,
            "A2_add" => arity(0).map(|_| A2Add)?,
            "A2_torus" => arity(0).map(|_| A2Torus)?,
            "A2_semidirect" => arity(2).map(|_| A2Semidirect {
                a: params[0],
                b: params[1],
            })?,
            "3A" => arity(0).map(|_| ThreeA)?,
            "U3" => arity(0).map(|_| U3)?,
            "3M" => arity(0).map(|_| ThreeM)?,
            "MAA" => arity(4).map(|_| Maa(quad()))?,
            "MAA_Q" => arity(4).map(|_| MaaQ(quad()))?,
            "MMA" => arity(4).map(|_| Mma(quad()))?,
            _ => return Err(domain(format!("unknown monoid family `{name}`"))),
        };
        d.validate()?;
        Ok(d)
    }
}

/// One row of `catalog list`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyInfo {
    pub syntax: &'static str,
    pub dimension: usize,
    pub rank: u32,
    pub multiplication: &'static str,
    pub parameters: &'static str,
}

pub fn families() -> Vec<FamilyInfo> {
    let row = |syntax, dimension, rank, multiplication, parameters| FamilyInfo {
        syntax,
        dimension,
        rank,
        multiplication,
        parameters,
    };
    vec![
        row("A1_add", 1, 0, "(u1 + v1)", ""),
        row("A1_mul", 1, 1, "(u1*v1)", ""),
        row("A2_add", 2, 0, "(u1 + v1, u2 + v2)", ""),
        row("A2_semidirect(a,b)", 2, 1, "(u1*v1, u1^a*v2 + v1^b*u2)", "a, b >= 0"),
        row("A2_torus", 2, 2, "(u1*v1, u2*v2)", ""),
        row("3A", 3, 0, "(u1 + v1, u2 + v2, u3 + v3)", ""),
        row("U3", 3, 0, "(u1 + v1, u2 + v2, u3 + v3 + u1*v2)", ""),
        row(
            "MAA(b,b',c,c')",
            3,
            1,
            "(u1*v1, u1^b*v2 + v1^b'*u2, u1^c*v3 + v1^c'*u3)",
            "b, b', c, c' >= 0",
        ),
        row(
            "MAA_Q(b,b',c,c')",
            3,
            1,
            "(u1*v1, u1^b*v2 + v1^b'*u2, u1^c*v3 + v1^c'*u3 + Q_p(u1, v1, u2, v2))",
            "compatible b, b', c, c' > 0",
        ),
        row(
            "MMA(b,b',c,c')",
            3,
            2,
            "(u1*v1, u2*v2, u1^b*u2^c*v3 + v1^b'*v2^c'*u3)",
            "b, b', c, c' >= 0",
        ),
        row("3M", 3, 3, "(u1*v1, u2*v2, u3*v3)", ""),
    ]
}

/// Builds the multiplication of a catalog row and fills in its unit.
pub fn build_monoid(d: &MonoidDescriptor) -> Result<PolynomialMonoid> {
    d.validate()?;
    let n = d.dimension();
    let arity = 2 * n;
    let u = |i: usize| LaurentPolynomial::var(arity, i);
    let v = |i: usize| LaurentPolynomial::var(arity, n + i);
    let mono = |exps: &[(usize, u32)]| {
        let mut e = vec![0i32; arity];
        for &(i, k) in exps {
            e[i] += k as i32;
        }
        LaurentPolynomial::term(Rational::from_integer(1.into()), e)
    };
    use MonoidDescriptor::*;
    let components = match *d {
        A1Add => vec![&u(0) + &v(0)],
        A1Mul => vec![&u(0) * &v(0)],
        A2Add => vec![&u(0) + &v(0), &u(1) + &v(1)],
        A2Torus => vec![&u(0) * &v(0), &u(1) * &v(1)],
        // (x1x2, x1^a y2 + x2^b y1)
        A2Semidirect { a, b } => vec![
            &u(0) * &v(0),
            &mono(&[(0, a), (3, 1)]) + &mono(&[(2, b), (1, 1)]),
        ],
        ThreeA => (0..3).map(|i| &u(i) + &v(i)).collect(),
        U3 => vec![
            &u(0) + &v(0),
            &u(1) + &v(1),
            &(&u(2) + &v(2)) + &(&u(0) * &v(1)),
        ],
        Maa(p) | MaaQ(p) => {
            let mut z = &mono(&[(0, p.c), (5, 1)]) + &mono(&[(3, p.c_prime), (2, 1)]);
            if matches!(d, MaaQ(_)) {
                // Q_p(x1, x2, y1, y2) with x1 = u1, x2 = v1, y1 = u2, y2 = v2
                z = &z + &q_poly(&p)?.rename(arity, &[0, 3, 1, 4])?;
            }
            vec![
                &u(0) * &v(0),
                &mono(&[(0, p.b), (4, 1)]) + &mono(&[(3, p.b_prime), (1, 1)]),
                z,
            ]
        }
        Mma(p) => vec![
            &u(0) * &v(0),
            &u(1) * &v(1),
            &mono(&[(0, p.b), (1, p.c), (5, 1)]) + &mono(&[(3, p.b_prime), (4, p.c_prime), (2, 1)]),
        ],
        ThreeM => (0..3).map(|i| &u(i) * &v(i)).collect(),
    };
    let m = PolynomialMonoid::with_grid_unit(components)?;
    if m.unit().is_none() {
        return Err(Error::Inconsistent(format!("no unit found for catalog entry {d}")));
    }
    Ok(m)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupKind {
    Ga3,
    U3,
    /// `G_m ⋉ G_a^2` with characters `t^-l`, `t^-m`.
    G1 { l: i64, m: i64 },
    /// `G_m^2 ⋉ G_a` with character `(t, s) -> t^-l s^-m`.
    G2 { l: i64, m: i64 },
    Gm3,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GroupDescriptor {
    pub kind: GroupKind,
    pub rank: u32,
}

impl GroupDescriptor {
    pub fn new(kind: GroupKind) -> Self {
        let rank = match kind {
            GroupKind::Ga3 | GroupKind::U3 => 0,
            GroupKind::G1 { .. } => 1,
            GroupKind::G2 { .. } => 2,
            GroupKind::Gm3 => 3,
        };
        GroupDescriptor { kind, rank }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Ga3 => f.write_str("Ga^3"),
            GroupKind::U3 => f.write_str("U3"),
            GroupKind::G1 { l, m } => write!(f, "G1({l};{m})"),
            GroupKind::G2 { l, m } => write!(f, "G2({l},{m})"),
            GroupKind::Gm3 => f.write_str("Gm^3"),
        }
    }
}

/// Group of invertible elements of a monoid on A^3.
pub fn unit_group(d: &MonoidDescriptor) -> Result<GroupDescriptor> {
    if d.dimension() != 3 {
        return Err(domain(format!("unit groups are tabulated for A^3 only, got {d}")));
    }
    d.validate()?;
    let diff = |p: &Quadruple| (i64::from(p.b_prime) - i64::from(p.b), i64::from(p.c_prime) - i64::from(p.c));
    let kind = match d {
        MonoidDescriptor::ThreeA => GroupKind::Ga3,
        MonoidDescriptor::U3 => GroupKind::U3,
        MonoidDescriptor::Maa(p) | MonoidDescriptor::MaaQ(p) => {
            let (l, m) = diff(p);
            GroupKind::G1 { l, m }
        }
        MonoidDescriptor::Mma(p) => {
            let (l, m) = diff(p);
            GroupKind::G2 { l, m }
        }
        MonoidDescriptor::ThreeM => GroupKind::Gm3,
        _ => unreachable!("dimension checked above"),
    };
    Ok(GroupDescriptor::new(kind))
}

/// `G1(l1; m1) ≅ G1(l2; m2)`: the second pair lies in the orbit
/// `{(l, m), (m, l), (-l, -m), (-m, -l)}` of the first.
pub fn g1_isomorphic(l1: i64, m1: i64, l2: i64, m2: i64) -> bool {
    [(l1, m1), (m1, l1), (-l1, -m1), (-m1, -l1)].contains(&(l2, m2))
}

/// `G2(l1, m1) ≅ G2(l2, m2)`. The character `(l, m)` is determined up to
/// `GL_2(Z)`, whose orbits on `Z^2` are classified by `gcd(|l|, |m|)`.
pub fn g2_isomorphic(l1: i64, m1: i64, l2: i64, m2: i64) -> bool {
    l1.gcd(&m1) == l2.gcd(&m2)
}

pub fn groups_isomorphic(a: &GroupDescriptor, b: &GroupDescriptor) -> bool {
    match (a.kind, b.kind) {
        (GroupKind::G1 { l: l1, m: m1 }, GroupKind::G1 { l: l2, m: m2 }) => g1_isomorphic(l1, m1, l2, m2),
        (GroupKind::G2 { l: l1, m: m1 }, GroupKind::G2 { l: l2, m: m2 }) => g2_isomorphic(l1, m1, l2, m2),
        (x, y) => x == y,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Isomorphism {
    Yes,
    No,
    Undetermined,
}

impl fmt::Display for Isomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Isomorphism::Yes => "yes",
            Isomorphism::No => "no",
            Isomorphism::Undetermined => "undetermined",
        })
    }
}

/// Which commutative reduction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// The commutative catalog row that the left or right reduction of a
/// semicommutative entry is known to produce: `(b, c)` on the left and
/// `(b', c')` on the right, in the same family.
pub fn expected_reduction(d: &MonoidDescriptor, side: Side) -> Result<MonoidDescriptor> {
    let p = match d {
        MonoidDescriptor::Maa(p) | MonoidDescriptor::MaaQ(p) | MonoidDescriptor::Mma(p) => *p,
        _ => return Err(domain(format!("{d} is not semicommutative"))),
    };
    let (b, c) = match side {
        Side::Left => (p.b, p.c),
        Side::Right => (p.b_prime, p.c_prime),
    };
    let q = Quadruple::new(b, b, c, c);
    Ok(match d {
        MonoidDescriptor::Maa(_) => MonoidDescriptor::Maa(q),
        MonoidDescriptor::MaaQ(_) => MonoidDescriptor::MaaQ(q),
        _ => MonoidDescriptor::Mma(q),
    })
}

/// Decides isomorphism of two catalog entries of the same dimension.
///
/// `Undetermined` is returned only inside the `MMA` family, where equality
/// up to the simultaneous swap is sufficient, and unit groups together with
/// both commutative reductions give necessary conditions, but no complete
/// criterion is available.
pub fn are_isomorphic(d1: &MonoidDescriptor, d2: &MonoidDescriptor) -> Result<Isomorphism> {
    if d1.dimension() != d2.dimension() {
        return Err(Error::Dimension {
            expected: d1.dimension(),
            found: d2.dimension(),
        });
    }
    d1.validate()?;
    d2.validate()?;
    use MonoidDescriptor::*;
    let yes_if = |b: bool| if b { Isomorphism::Yes } else { Isomorphism::No };
    Ok(match (d1, d2) {
        _ if d1.family() != d2.family() => Isomorphism::No,
        (Maa(p), Maa(q)) => yes_if(p == q || *q == p.symmetric()),
        (MaaQ(p), MaaQ(q)) => yes_if(p == q),
        (A2Semidirect { a, b }, A2Semidirect { a: a2, b: b2 }) => yes_if(a == a2 && b == b2),
        (Mma(p), Mma(q)) => {
            if p == q || *q == p.symmetric() {
                Isomorphism::Yes
            } else if !groups_isomorphic(&unit_group(d1)?, &unit_group(d2)?) {
                Isomorphism::No
            } else {
                let same_commutative = |x: &MonoidDescriptor, y: &MonoidDescriptor| -> Result<bool> {
                    Ok(canonical_form(x) == canonical_form(y))
                };
                let left = same_commutative(&expected_reduction(d1, Side::Left)?, &expected_reduction(d2, Side::Left)?)?;
                let right = same_commutative(&expected_reduction(d1, Side::Right)?, &expected_reduction(d2, Side::Right)?)?;
                if left && right {
                    Isomorphism::Undetermined
                } else {
                    Isomorphism::No
                }
            }
        }
        _ => Isomorphism::Yes,
    })
}

/// Lexicographically least entry of the known isomorphism orbit.
pub fn canonical_form(d: &MonoidDescriptor) -> MonoidDescriptor {
    match *d {
        MonoidDescriptor::Maa(p) => MonoidDescriptor::Maa(p.min(p.symmetric())),
        MonoidDescriptor::Mma(p) => MonoidDescriptor::Mma(p.min(p.symmetric())),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn q(b: u32, bp: u32, c: u32, cp: u32) -> Quadruple {
        Quadruple::new(b, bp, c, cp)
    }

    fn term(c: i64, e: &[i32]) -> LaurentPolynomial {
        LaurentPolynomial::term(rat(c), e.to_vec())
    }

    /// Closed-form criterion, independent of the search in `is_compatible`.
    fn closed_form_compatible(p: &Quadruple) -> Option<u32> {
        let [b, bp, c, cp] = p.as_array().map(i64::from);
        if b == bp {
            // only when c = c'; then d = floor(c/b)
            return (c == cp && c / b > 0).then(|| (c / b) as u32);
        }
        if (c - cp) % (b - bp) != 0 {
            return None;
        }
        let d = (c - cp) / (b - bp) - 1;
        (c / b == cp / bp && c / b == d && d > 0).then_some(d as u32)
    }

    #[test]
    fn compatibility_examples() {
        assert_eq!(is_compatible(&q(1, 2, 1, 3)).unwrap(), Some(CompatibilityWitness { d: 1 }));
        assert_eq!(is_compatible(&q(2, 2, 5, 4)).unwrap(), None);
        assert_eq!(is_compatible(&q(2, 1, 5, 2)).unwrap(), Some(CompatibilityWitness { d: 2 }));
        assert!(is_compatible(&q(0, 1, 1, 1)).is_err());
    }

    #[test]
    fn compatibility_matches_closed_form() {
        for p in Quadruple::grid(1, 7) {
            let found = is_compatible(&p).unwrap().map(|w| w.d);
            assert_eq!(found, closed_form_compatible(&p), "quadruple {p}");
            if let Some(d) = found {
                assert_eq!(d, p.c / p.b);
                assert_eq!(d, p.c_prime / p.b_prime);
            }
        }
    }

    #[test]
    fn q_poly_examples() {
        // ring (x1, x2, y1, y2)
        assert_eq!(q_poly(&q(1, 2, 1, 3)).unwrap(), term(2, &[0, 1, 1, 1]));
        assert_eq!(
            q_poly(&q(1, 1, 2, 2)).unwrap(),
            &term(3, &[0, 1, 2, 1]) + &term(3, &[1, 0, 1, 2])
        );
        assert_eq!(
            q_poly(&q(2, 1, 5, 2)).unwrap(),
            &term(3, &[1, 1, 2, 1]) + &term(3, &[3, 0, 1, 2])
        );
        assert!(q_poly(&q(2, 2, 5, 4)).is_err());
    }

    #[test]
    fn q_bc_examples() {
        assert_eq!(q_bc(1, 1).unwrap(), term(2, &[0, 0, 1, 1]));
        assert_eq!(q_bc(1, 2).unwrap(), &term(3, &[0, 1, 2, 1]) + &term(3, &[1, 0, 1, 2]));
        assert_eq!(q_bc(1, 2).unwrap(), q_poly(&q(1, 1, 2, 2)).unwrap());
        assert!(q_bc(0, 2).is_err());
        assert!(q_bc(3, 2).is_err());
    }

    #[test]
    fn q_bc_matches_second_sum_and_quotient_form() {
        for b in 1..=5u32 {
            for c in b..=8u32 {
                let (d, e) = (c / b, c % b);
                let (bi, di, ei) = (b as i32, d as i32, e as i32);
                // sum_{k=1}^{d} C(d+1,k) x1^(e+b(k-1)) x2^(e+b(d-k)) y1^(d-k+1) y2^k
                let mut first = LaurentPolynomial::zero(4);
                for k in 1..=di {
                    first = &first
                        + &LaurentPolynomial::term(
                            binom(d + 1, k as u32),
                            vec![ei + bi * (k - 1), ei + bi * (di - k), di - k + 1, k],
                        );
                }
                assert_eq!(q_bc(b, c).unwrap(), first, "b={b} c={c}");
                // ((x1^b y2 + x2^b y1)^(d+1) - (x1^b y2)^(d+1) - (x2^b y1)^(d+1)) / (x1 x2)^(b-e)
                let s = term(1, &[bi, 0, 0, 1]);
                let t = term(1, &[0, bi, 1, 0]);
                let num = &(&(&s + &t).pow(d + 1) - &s.pow(d + 1)) - &t.pow(d + 1);
                let quot = &num * &term(1, &[ei - bi, ei - bi, 0, 0]);
                assert_eq!(q_bc(b, c).unwrap(), quot, "b={b} c={c}");
            }
        }
    }

    #[test]
    fn descriptor_syntax_round_trips() {
        for s in [
            "MAA(1,2,1,3)",
            "MAA_Q(1,2,1,3)",
            "MMA(0,1,2,0)",
            "3A",
            "U3",
            "3M",
            "A1_add",
            "A1_mul",
            "A2_add",
            "A2_torus",
            "A2_semidirect(2,3)",
        ] {
            let d: MonoidDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert_eq!("MAA( 1, 2,1 ,3 )".parse::<MonoidDescriptor>().unwrap().to_string(), "MAA(1,2,1,3)");
        assert!("MAA_Q(2,2,5,4)".parse::<MonoidDescriptor>().is_err());
        assert!("MAA(1,2,3)".parse::<MonoidDescriptor>().is_err());
        assert!("4M".parse::<MonoidDescriptor>().is_err());
        assert!("MAA(1,2,1,3".parse::<MonoidDescriptor>().is_err());
    }

    #[test]
    fn notation_names() {
        let d: MonoidDescriptor = "MAA_Q(2,2,3,3)".parse().unwrap();
        assert_eq!(d.notation(), "M+A(2)+A_Q(2,3)");
        assert_eq!("MMA(1,1,2,2)".parse::<MonoidDescriptor>().unwrap().notation(), "M+M+A(1,2)");
        assert_eq!("MAA(1,2,3,4)".parse::<MonoidDescriptor>().unwrap().notation(), "M+A(1,2)+A(3,4)");
    }

    #[test]
    fn unit_groups() {
        let g = unit_group(&MonoidDescriptor::Maa(q(1, 2, 1, 3))).unwrap();
        assert_eq!(g, GroupDescriptor { kind: GroupKind::G1 { l: 1, m: 2 }, rank: 1 });
        let g = unit_group(&MonoidDescriptor::Mma(q(0, 0, 0, 0))).unwrap();
        assert_eq!(g, GroupDescriptor { kind: GroupKind::G2 { l: 0, m: 0 }, rank: 2 });
        assert_eq!(unit_group(&MonoidDescriptor::ThreeM).unwrap().rank, 3);
        assert_eq!(unit_group(&MonoidDescriptor::ThreeM).unwrap().to_string(), "Gm^3");
        assert!(unit_group(&MonoidDescriptor::A2Torus).is_err());
    }

    #[test]
    fn g1_orbit() {
        assert!(g1_isomorphic(1, 2, 2, 1));
        assert!(g1_isomorphic(1, 2, -1, -2));
        assert!(g1_isomorphic(1, 2, -2, -1));
        assert!(!g1_isomorphic(1, 2, 1, 3));
        assert!(!g1_isomorphic(1, 2, -1, 2));
    }

    #[test]
    fn isomorphism_examples() {
        let maa = |a, b, c, d| MonoidDescriptor::Maa(q(a, b, c, d));
        assert_eq!(are_isomorphic(&maa(1, 2, 3, 4), &maa(3, 4, 1, 2)).unwrap(), Isomorphism::Yes);
        assert_eq!(are_isomorphic(&maa(1, 1, 2, 2), &maa(1, 2, 2, 1)).unwrap(), Isomorphism::No);
        assert_eq!(are_isomorphic(&maa(1, 2, 3, 4), &maa(2, 1, 4, 3)).unwrap(), Isomorphism::No);
        assert_eq!(
            are_isomorphic(&MonoidDescriptor::ThreeA, &MonoidDescriptor::U3).unwrap(),
            Isomorphism::No
        );
        assert!(are_isomorphic(&MonoidDescriptor::ThreeA, &MonoidDescriptor::A1Add).is_err());
        let mma = |a, b, c, d| MonoidDescriptor::Mma(q(a, b, c, d));
        assert_eq!(are_isomorphic(&mma(0, 1, 2, 3), &mma(2, 3, 0, 1)).unwrap(), Isomorphism::Yes);
        // reductions (0,2) vs (1,2) differ on the left
        assert_eq!(are_isomorphic(&mma(0, 1, 2, 3), &mma(1, 1, 2, 3)).unwrap(), Isomorphism::No);
        assert_eq!(are_isomorphic(&mma(1, 3, 2, 3), &mma(2, 3, 1, 3)).unwrap(), Isomorphism::Yes);
        // swapping only the left pair keeps both reductions and the unit group
        assert_eq!(are_isomorphic(&mma(1, 3, 2, 5), &mma(2, 3, 1, 5)).unwrap(), Isomorphism::Undetermined);
    }

    #[test]
    fn canonical_forms() {
        let maa = |a, b, c, d| MonoidDescriptor::Maa(q(a, b, c, d));
        assert_eq!(canonical_form(&maa(3, 4, 1, 2)), maa(1, 2, 3, 4));
        assert_eq!(canonical_form(&maa(3, 3, 1, 1)), maa(1, 1, 3, 3));
        assert_eq!(canonical_form(&MonoidDescriptor::ThreeM), MonoidDescriptor::ThreeM);
        let x = maa(4, 0, 2, 1);
        assert_eq!(canonical_form(&canonical_form(&x)), canonical_form(&x));
    }

    #[test]
    fn built_rows() {
        let m = build_monoid(&MonoidDescriptor::U3).unwrap();
        assert_eq!(m.unit().unwrap(), &vec![rat(0); 3]);
        let m = build_monoid(&MonoidDescriptor::Maa(q(1, 2, 1, 3))).unwrap();
        assert_eq!(m.unit().unwrap(), &vec![rat(1), rat(0), rat(0)]);
        let m = build_monoid(&MonoidDescriptor::Mma(q(1, 0, 2, 3))).unwrap();
        assert_eq!(m.unit().unwrap(), &vec![rat(1), rat(1), rat(0)]);
        assert!(!m.verify_unit(&[rat(1), rat(0), rat(0)]).unwrap());
    }
}
