//! The cross-ratio graphs G_u on pairs of points of PG(1, q²), the set Ω of
//! parameters that create triangles, admissible parameters, and the
//! four-part partition around the vertex {0, ∞}.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::gf::{Elem, Field, GfError};
use crate::graph::Graph;
use crate::partcheck::Partition;
use crate::projline::{
    self, canonical_class_rep, enumerate_pairs, invert, pair_cross_ratio, Mobius, Point, PointPair,
    ProjError, RatioClass,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("u = {0} is excluded (u must avoid 0, 1 and -1)")]
    InadmissibleU(String),
    #[error("construction invariant violated: {0}")]
    ConstructionViolation(String),
    #[error("{0} has no square root in the field")]
    NoSuchRoot(&'static str),
    #[error(transparent)]
    Proj(#[from] ProjError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// One row of the Ω generator table: x = t^j, x + x⁻¹ − 1 and its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaRow {
    pub j: u32,
    pub x: Elem,
    pub value: Point,
    pub inverse: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSet {
    pub points: BTreeSet<Point>,
    pub table: Vec<OmegaRow>,
}

impl OmegaSet {
    pub fn contains(&self, x: Point) -> bool {
        self.points.contains(&x)
    }
}

/// Ω = {(x + x⁻¹ − 1)^± : x ∈ ⟨t⟩, x ≠ 1}.
pub fn omega(field: &Field) -> OmegaSet {
    let g = field.group_order();
    let row = |j: u32| {
        let x = field.exp(j as i64);
        let s = field.add(x, field.inv(x).expect("x nonzero"));
        let value = Point::Finite(field.sub(s, Elem::ONE));
        OmegaRow {
            j,
            x,
            value,
            inverse: invert(field, value),
        }
    };
    let mut points = BTreeSet::new();
    for j in 1..g {
        let r = row(j);
        points.insert(r.value);
        points.insert(r.inverse);
    }
    OmegaSet {
        points,
        table: (1..=g / 2).map(row).collect(),
    }
}

/// A class {u, u⁻¹}; `u` has the smaller discrete log.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UClass {
    pub log: u32,
    pub u: Elem,
    pub u_inv: Elem,
}

impl UClass {
    pub fn of(field: &Field, u: Elem) -> UClass {
        let rep = canonical_class_rep(field, u);
        UClass {
            log: field.log(rep).expect("nonzero"),
            u: rep,
            u_inv: field.inv(rep).expect("nonzero"),
        }
    }

    pub fn format(&self, field: &Field) -> String {
        format!("{{{},{}}}", field.format(self.u), field.format(self.u_inv))
    }
}

/// u ∉ {0, ∞, −1, 1} with u, u⁻¹ ∉ Ω.
pub fn is_admissible(field: &Field, omega: &OmegaSet, u: Elem) -> bool {
    let minus_one = field.neg(Elem::ONE);
    if u.is_zero() || u == Elem::ONE || u == minus_one {
        return false;
    }
    let pu = Point::Finite(u);
    !omega.contains(pu) && !omega.contains(invert(field, pu))
}

/// Classes {t^j, t^-j}, j = 1 … (q²−3)/2, with neither member in Ω;
/// ascending in j.
pub fn admissible_classes(field: &Field, omega: &OmegaSet) -> Vec<UClass> {
    let top = (field.group_order() - 2) / 2;
    (1..=top)
        .map(|j| field.exp(j as i64))
        .filter(|&u| is_admissible(field, omega, u))
        .map(|u| UClass::of(field, u))
        .collect()
}

/// ι² = −1, ζ² = 3, θ = 2⁻¹(1 + ιζ), so that θ + θ⁻¹ − 1 = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witnesses {
    pub iota: Elem,
    pub zeta: Elem,
    pub theta: Elem,
}

/// Roots are chosen with the smallest encoding.
pub fn theorem2_witnesses(field: &Field) -> Result<Witnesses, ConstructError> {
    let iota = *field
        .sqrt(field.from_int(-1))
        .first()
        .ok_or(ConstructError::NoSuchRoot("-1"))?;
    let zeta = *field
        .sqrt(field.from_int(3))
        .first()
        .ok_or(ConstructError::NoSuchRoot("3"))?;
    let half = field.inv(field.from_int(2))?;
    let theta = field.mul(half, field.add(Elem::ONE, field.mul(iota, zeta)));
    let check = field.sub(field.add(theta, field.inv(theta)?), Elem::ONE);
    if !check.is_zero() {
        return Err(ConstructError::ConstructionViolation(format!(
            "theta + theta^-1 - 1 = {}",
            field.format(check)
        )));
    }
    Ok(Witnesses { iota, zeta, theta })
}

fn check_u(field: &Field, u: Elem) -> Result<(), ConstructError> {
    if u.is_zero() || u == Elem::ONE || u == field.neg(Elem::ONE) {
        return Err(ConstructError::InadmissibleU(field.format(u)));
    }
    Ok(())
}

/// G_u: vertices are all pairs, {ab, cd} is an edge iff (ab|cd) = u^±.
///
/// Rows are produced by transport: a Möbius map g with g(0) = a and
/// g(∞) = b carries the neighborhood O_u of {0, ∞} onto that of {a, b}.
pub fn build_graph(field: &Field, u: Elem) -> Result<Graph<PointPair>, ConstructError> {
    check_u(field, u)?;
    let pairs = enumerate_pairs(field);
    let base_nbrs: Vec<(Point, Point)> = field
        .nonzero()
        .map(|x| (Point::Finite(field.mul(u, x)), Point::Finite(x)))
        .collect();
    let labels = pairs.clone();
    Ok(Graph::from_rows(labels, |i, row| {
        let ab = pairs[i];
        let g = Mobius::sending_base_to(field, ab.lo(), ab.hi()).expect("distinct points");
        for &(c, d) in &base_nbrs {
            let cd = PointPair::new(g.apply(field, c), g.apply(field, d))
                .expect("Möbius maps are injective");
            let j = cd.index(field);
            row[j / 64] |= 1 << (j % 64);
        }
    }))
}

/// G_u by testing the cross-ratio of every pair of vertices.
pub fn build_graph_all_pairs(field: &Field, u: Elem) -> Result<Graph<PointPair>, ConstructError> {
    check_u(field, u)?;
    let target = RatioClass::of(field, Point::Finite(u));
    let pairs = enumerate_pairs(field);
    let labels = pairs.clone();
    Ok(Graph::from_rows(labels, |i, row| {
        for (j, &cd) in pairs.iter().enumerate() {
            if j != i && pair_cross_ratio(field, pairs[i], cd).expect("distinct") == target {
                row[j / 64] |= 1 << (j % 64);
            }
        }
    }))
}

/// {0∞} ∪ P ∪ Q ∪ R: P the neighbors of {0,∞}, Q the pairs meeting {0,∞}
/// in one point, R the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePartition {
    pub base: usize,
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub r: Vec<usize>,
}

impl BasePartition {
    pub fn sizes(&self) -> [usize; 4] {
        [1, self.p.len(), self.q.len(), self.r.len()]
    }

    /// As a generic partition with parts ordered (base, P, Q, R).
    pub fn to_partition(&self, n: usize) -> Partition {
        let mut assignment = vec![usize::MAX; n];
        assignment[self.base] = 0;
        for (part, members) in [(1, &self.p), (2, &self.q), (3, &self.r)] {
            for &v in members {
                assignment[v] = part;
            }
        }
        Partition::new(assignment, 4).expect("base partition covers every vertex")
    }
}

pub fn base_partition(graph: &Graph<PointPair>) -> Result<BasePartition, ConstructError> {
    let base_pair = PointPair::base();
    let base = graph
        .labels()
        .iter()
        .position(|&l| l == base_pair)
        .ok_or_else(|| ConstructError::ConstructionViolation("no vertex {0,inf}".into()))?;
    let mut p = Vec::new();
    let mut q = Vec::new();
    let mut r = Vec::new();
    for (v, &label) in graph.labels().iter().enumerate() {
        if v == base {
            continue;
        }
        let adjacent = graph.has_edge(base, v);
        let meets = label.meet(base_pair) == 1;
        match (adjacent, meets) {
            (true, true) => {
                return Err(ConstructError::ConstructionViolation(format!(
                    "vertex {v} lies in both P and Q"
                )))
            }
            (true, false) => p.push(v),
            (false, true) => q.push(v),
            (false, false) => r.push(v),
        }
    }
    let g = graph.degree(base);
    if q.len() != 2 * g || 1 + p.len() + q.len() + r.len() != graph.len() {
        return Err(ConstructError::ConstructionViolation(format!(
            "part sizes (1, {}, {}, {}) inconsistent with degree {g}",
            p.len(),
            q.len(),
            r.len()
        )));
    }
    Ok(BasePartition { base, p, q, r })
}

/// Partition around an arbitrary vertex ab: P_ab its neighbors, Q_ab the
/// pairs sharing one point with ab, R_ab the rest.
pub fn partition_at(graph: &Graph<PointPair>, base: usize) -> BasePartition {
    let ab = *graph.label(base);
    let mut part = BasePartition {
        base,
        p: Vec::new(),
        q: Vec::new(),
        r: Vec::new(),
    };
    for (v, &label) in graph.labels().iter().enumerate() {
        if v == base {
            continue;
        }
        if graph.has_edge(base, v) {
            part.p.push(v);
        } else if label.meet(ab) == 1 {
            part.q.push(v);
        } else {
            part.r.push(v);
        }
    }
    part
}

/// The orbit class of each vertex relative to {0, ∞}.
pub fn orbit_labels(field: &Field, graph: &Graph<PointPair>) -> Vec<projline::OrbitLabel> {
    graph
        .labels()
        .iter()
        .map(|&cd| projline::orbit_label(field, cd))
        .collect()
}
