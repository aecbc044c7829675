//! The projective line PG(1, q²): points, unordered point pairs (the graph
//! vertices), the cross-ratio, and orbit labels for the stabilizer of the
//! pair {0, ∞}.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::gf::{Elem, Field, GfError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjError {
    #[error("degenerate pair: both points equal")]
    DegeneratePair,
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A point of the projective line. Finite points order by encoding and
/// infinity comes last.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Point {
    Finite(Elem),
    Infinity,
}

impl Point {
    pub const ZERO: Point = Point::Finite(Elem::ZERO);
    pub const ONE: Point = Point::Finite(Elem::ONE);

    pub fn finite(self) -> Option<Elem> {
        match self {
            Point::Finite(a) => Some(a),
            Point::Infinity => None,
        }
    }

    /// Position among the q² + 1 points: the encoding, or q² for infinity.
    pub fn index(self, field: &Field) -> usize {
        match self {
            Point::Finite(a) => a.enc() as usize,
            Point::Infinity => field.order() as usize,
        }
    }

    pub fn from_index(field: &Field, i: usize) -> Point {
        if i == field.order() as usize {
            Point::Infinity
        } else {
            Point::Finite(field.element(i as u64).expect("point index in range"))
        }
    }
}

/// Number of points, q² + 1.
pub fn point_count(field: &Field) -> usize {
    field.order() as usize + 1
}

pub fn points(field: &Field) -> impl Iterator<Item = Point> + '_ {
    (0..point_count(field)).map(move |i| Point::from_index(field, i))
}

/// Inversion on the line, exchanging 0 and ∞.
pub fn invert(field: &Field, x: Point) -> Point {
    match x {
        Point::Infinity => Point::ZERO,
        Point::Finite(a) if a.is_zero() => Point::Infinity,
        Point::Finite(a) => Point::Finite(field.inv(a).expect("nonzero")),
    }
}

pub fn format_point(field: &Field, x: Point) -> String {
    match x {
        Point::Finite(a) => field.format(a),
        Point::Infinity => "inf".to_string(),
    }
}

pub fn parse_point(field: &Field, text: &str) -> Result<Point, GfError> {
    if text == "inf" {
        Ok(Point::Infinity)
    } else {
        field.parse(text).map(Point::Finite)
    }
}

/// An unordered pair of distinct points, stored with `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PointPair {
    lo: Point,
    hi: Point,
}

impl PointPair {
    pub fn new(a: Point, b: Point) -> Result<PointPair, ProjError> {
        match a.cmp(&b) {
            Ordering::Less => Ok(PointPair { lo: a, hi: b }),
            Ordering::Greater => Ok(PointPair { lo: b, hi: a }),
            Ordering::Equal => Err(ProjError::DegeneratePair),
        }
    }

    /// The pair {0, ∞}.
    pub fn base() -> PointPair {
        PointPair {
            lo: Point::ZERO,
            hi: Point::Infinity,
        }
    }

    pub fn lo(self) -> Point {
        self.lo
    }

    pub fn hi(self) -> Point {
        self.hi
    }

    pub fn contains(self, x: Point) -> bool {
        self.lo == x || self.hi == x
    }

    /// Number of points shared with `other` (0, 1 or 2).
    pub fn meet(self, other: PointPair) -> usize {
        usize::from(other.contains(self.lo)) + usize::from(other.contains(self.hi))
    }

    /// Position in the lexicographic enumeration of all pairs.
    pub fn index(self, field: &Field) -> usize {
        let m = point_count(field);
        let i = self.lo.index(field);
        let j = self.hi.index(field);
        i * m - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn format(self, field: &Field) -> String {
        format!(
            "{{{},{}}}",
            format_point(field, self.lo),
            format_point(field, self.hi)
        )
    }

    /// Parses `{a,b}`; the points may come in either order.
    pub fn parse(field: &Field, text: &str) -> Result<PointPair, ProjError> {
        let bad = || {
            ProjError::Field(GfError::Parse {
                input: text.to_string(),
                reason: "expected {a,b}".to_string(),
            })
        };
        let inner = text
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        PointPair::new(parse_point(field, a)?, parse_point(field, b)?)
    }
}

/// All C(q²+1, 2) pairs in lexicographic order of `(lo, hi)`; the position
/// of each pair equals [`PointPair::index`].
pub fn enumerate_pairs(field: &Field) -> Vec<PointPair> {
    let m = point_count(field);
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            out.push(PointPair {
                lo: Point::from_index(field, i),
                hi: Point::from_index(field, j),
            });
        }
    }
    out
}

enum Factor {
    Zero,
    /// Contains ∞; cancels against its partner in the other half.
    Infinite,
    Value(Elem),
}

fn factor(field: &Field, x: Point, y: Point) -> Factor {
    match (x, y) {
        _ if x == y => Factor::Zero,
        (Point::Finite(a), Point::Finite(b)) => Factor::Value(field.sub(a, b)),
        _ => Factor::Infinite,
    }
}

/// (ab|cd) = (a−c)(b−d) / ((a−d)(b−c)), with factors involving ∞ cancelled
/// between numerator and denominator.
pub fn cross_ratio(
    field: &Field,
    a: Point,
    b: Point,
    c: Point,
    d: Point,
) -> Result<Point, ProjError> {
    if a == b || c == d {
        return Err(ProjError::DegeneratePair);
    }
    let num = [factor(field, a, c), factor(field, b, d)];
    let den = [factor(field, a, d), factor(field, b, c)];
    if num.iter().any(|f| matches!(f, Factor::Zero)) {
        return Ok(Point::ZERO);
    }
    if den.iter().any(|f| matches!(f, Factor::Zero)) {
        return Ok(Point::Infinity);
    }
    // Each ∞ among a, b, c, d sits in exactly one numerator and one
    // denominator factor, so once zeros are excluded the ∞ factors balance.
    let product = |fs: &[Factor]| {
        fs.iter().fold(Elem::ONE, |acc, f| match f {
            Factor::Value(v) => field.mul(acc, *v),
            _ => acc,
        })
    };
    Ok(Point::Finite(field.div(product(&num), product(&den))?))
}

/// The unordered pair {ρ, ρ⁻¹}, stored sorted. `lo == hi` when ρ = ρ⁻¹.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatioClass {
    pub lo: Point,
    pub hi: Point,
}

impl RatioClass {
    pub fn of(field: &Field, rho: Point) -> RatioClass {
        let inv = invert(field, rho);
        RatioClass {
            lo: rho.min(inv),
            hi: rho.max(inv),
        }
    }

    pub fn contains(self, x: Point) -> bool {
        self.lo == x || self.hi == x
    }
}

/// Cross-ratio of two vertices: {ρ, ρ⁻¹} independent of orderings.
pub fn pair_cross_ratio(
    field: &Field,
    ab: PointPair,
    cd: PointPair,
) -> Result<RatioClass, ProjError> {
    if ab == cd {
        return Err(ProjError::DegeneratePair);
    }
    let rho = cross_ratio(field, ab.lo, ab.hi, cd.lo, cd.hi)?;
    Ok(RatioClass::of(field, rho))
}

/// Orbit of a pair under the stabilizer of {0, ∞}, generated by x ↦ tx and
/// x ↦ x⁻¹.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum OrbitLabel {
    /// The pair {0, ∞} itself.
    Base,
    /// Pairs meeting {0, ∞} in one point.
    O0,
    /// Pairs {vx, x}; `v` is the member of {v, v⁻¹} with discrete log in
    /// [1, (q²−1)/2].
    Ov(Elem),
}

/// Representative of {v, v⁻¹} with log in [1, (q²−1)/2]. `v` must not be 0 or 1.
pub fn canonical_class_rep(field: &Field, v: Elem) -> Elem {
    let l = field.log(v).expect("nonzero class");
    debug_assert!(l != 0, "v = 1 has no orbit");
    if l <= field.group_order() / 2 {
        v
    } else {
        field.inv(v).expect("nonzero")
    }
}

pub fn orbit_label(field: &Field, cd: PointPair) -> OrbitLabel {
    match (cd.lo, cd.hi) {
        _ if cd == PointPair::base() => OrbitLabel::Base,
        (x, y) if x == Point::ZERO || y == Point::Infinity => OrbitLabel::O0,
        (Point::Finite(c), Point::Finite(d)) => {
            let ratio = field.div(c, d).expect("d nonzero");
            OrbitLabel::Ov(canonical_class_rep(field, ratio))
        }
        _ => unreachable!("∞ sorts last"),
    }
}

/// Class representatives v of the orbits O_v, i.e. t^j for j = 1 … (q²−1)/2.
pub fn orbit_reps(field: &Field) -> Vec<Elem> {
    (1..=field.group_order() / 2)
        .map(|j| field.exp(j as i64))
        .collect()
}

/// A fractional linear map x ↦ (αx + β)/(γx + δ).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mobius {
    alpha: Elem,
    beta: Elem,
    gamma: Elem,
    delta: Elem,
}

fn homogeneous(x: Point) -> (Elem, Elem) {
    match x {
        Point::Finite(a) => (a, Elem::ONE),
        Point::Infinity => (Elem::ONE, Elem::ZERO),
    }
}

impl Mobius {
    pub fn new(field: &Field, alpha: Elem, beta: Elem, gamma: Elem, delta: Elem) -> Option<Mobius> {
        let det = field.sub(field.mul(alpha, delta), field.mul(beta, gamma));
        (!det.is_zero()).then_some(Mobius {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    /// x ↦ c·x.
    pub fn scale(field: &Field, c: Elem) -> Mobius {
        Mobius::new(field, c, Elem::ZERO, Elem::ZERO, Elem::ONE).expect("c nonzero")
    }

    /// x ↦ x⁻¹.
    pub fn inversion() -> Mobius {
        Mobius {
            alpha: Elem::ZERO,
            beta: Elem::ONE,
            gamma: Elem::ONE,
            delta: Elem::ZERO,
        }
    }

    /// A map sending 0 ↦ a and ∞ ↦ b.
    pub fn sending_base_to(field: &Field, a: Point, b: Point) -> Result<Mobius, ProjError> {
        let (b1, b2) = homogeneous(b);
        let (a1, a2) = homogeneous(a);
        Mobius::new(field, b1, a1, b2, a2).ok_or(ProjError::DegeneratePair)
    }

    pub fn apply(&self, field: &Field, x: Point) -> Point {
        let (x1, x2) = homogeneous(x);
        let y1 = field.add(field.mul(self.alpha, x1), field.mul(self.beta, x2));
        let y2 = field.add(field.mul(self.gamma, x1), field.mul(self.delta, x2));
        if y2.is_zero() {
            Point::Infinity
        } else {
            Point::Finite(field.div(y1, y2).expect("nonzero"))
        }
    }

    pub fn apply_pair(&self, field: &Field, ab: PointPair) -> PointPair {
        PointPair::new(self.apply(field, ab.lo), self.apply(field, ab.hi))
            .expect("Möbius maps are injective")
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Base => write!(f, "base"),
            OrbitLabel::O0 => write!(f, "O0"),
            OrbitLabel::Ov(v) => write!(f, "Ov({})", v.enc()),
        }
    }
}
