//! Equitable-partition checks, the target intersection matrix, exact
//! eigenvalue verification, and the discriminant count of P-neighbors for
//! vertices of R.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Elem, Field};
use crate::graph::Graph;
use crate::projline::{canonical_class_rep, orbit_label, orbit_reps, OrbitLabel, PointPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("k = {0} is too small; the target matrix needs k >= 8")]
    InfeasibleK(i64),
    #[error("k = {0} is not h^2 + 1 with h >= 3")]
    InvalidK(i64),
    #[error("invalid orbit parameters: {0}")]
    InvalidOrbit(String),
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
}

/// A vertex partition given by part index per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    parts: usize,
}

impl Partition {
    /// Every part index must be below `parts` and every part nonempty.
    pub fn new(assignment: Vec<usize>, parts: usize) -> Result<Partition, PartError> {
        let mut sizes = vec![0usize; parts];
        for (v, &a) in assignment.iter().enumerate() {
            if a >= parts {
                return Err(PartError::InvalidPartition(format!(
                    "vertex {v} assigned to part {a} of {parts}"
                )));
            }
            sizes[a] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(PartError::InvalidPartition(format!(
                "part {empty} is empty"
            )));
        }
        Ok(Partition { assignment, parts })
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// `rows[i][j]` = number of neighbors in part i of any vertex of part j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntersectionMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn column_sums(&self) -> Vec<i64> {
        (0..self.size())
            .map(|j| self.rows.iter().map(|r| r[j]).sum())
            .collect()
    }
}

/// A vertex whose count of neighbors in `part` differs from the first
/// vertex of its own part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertex: usize,
    pub part: usize,
    pub observed: i64,
    pub expected: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquitabilityReport {
    pub equitable: bool,
    pub matrix: Option<IntersectionMatrix>,
    pub violations: Vec<Violation>,
    pub matches_c2: bool,
}

/// Per-vertex neighbor counts by part.
fn part_counts<L: Sync>(graph: &Graph<L>, partition: &Partition) -> Vec<Vec<i64>> {
    crate::par::map_range(graph.len(), |v| {
        let mut c = vec![0i64; partition.parts()];
        for w in graph.neighbors(v) {
            c[partition.part_of(w)] += 1;
        }
        c
    })
}

pub fn intersection_check<L: Sync>(
    graph: &Graph<L>,
    partition: &Partition,
) -> Result<EquitabilityReport, PartError> {
    if partition.len() != graph.len() {
        return Err(PartError::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            partition.len(),
            graph.len()
        )));
    }
    let m = partition.parts();
    let counts = part_counts(graph, partition);
    let mut reps: Vec<Option<usize>> = vec![None; m];
    let mut violations = Vec::new();
    for (v, c) in counts.iter().enumerate() {
        let j = partition.part_of(v);
        match reps[j] {
            None => reps[j] = Some(v),
            Some(r) => {
                for i in 0..m {
                    if c[i] != counts[r][i] {
                        violations.push(Violation {
                            vertex: v,
                            part: i,
                            observed: c[i],
                            expected: counts[r][i],
                        });
                    }
                }
            }
        }
    }
    let equitable = violations.is_empty();
    let matrix = equitable.then(|| IntersectionMatrix {
        rows: (0..m)
            .map(|i| (0..m).map(|j| counts[reps[j].unwrap()][i]).collect())
            .collect(),
    });
    let matches_c2 = match &matrix {
        Some(mat) if m == 4 => {
            let degree = mat.column_sums()[0];
            target_matrix(degree + 2).is_ok_and(|t| &t == mat)
        }
        _ => false,
    };
    Ok(EquitabilityReport {
        equitable,
        matrix,
        violations,
        matches_c2,
    })
}

/// The required intersection matrix for degree k − 2, parts (base, P, Q, R).
pub fn target_matrix(k: i64) -> Result<IntersectionMatrix, PartError> {
    if k < 8 {
        return Err(PartError::InfeasibleK(k));
    }
    Ok(IntersectionMatrix {
        rows: vec![
            vec![0, 1, 0, 0],
            vec![k - 2, 0, 1, 2],
            vec![0, 2, 2, 4],
            vec![0, k - 5, k - 5, k - 8],
        ],
    })
}

/// det(xI − M) as ascending coefficients, by Faddeev–LeVerrier.
pub fn characteristic_polynomial(m: &IntersectionMatrix) -> Vec<i128> {
    let n = m.size();
    let a: Vec<Vec<i128>> = m
        .rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let matmul = |x: &Vec<Vec<i128>>, y: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| x[i][l] * y[l][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut mk = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = A (M_{k-1} + c_{n-k+1} I)
        let mut prev = mk.clone();
        for (i, row) in prev.iter_mut().enumerate() {
            row[i] += coeffs[n - k + 1];
        }
        mk = matmul(&a, &prev);
        let trace: i128 = (0..n).map(|i| mk[i][i]).sum();
        debug_assert_eq!(trace % k as i128, 0);
        coeffs[n - k] = -trace / k as i128;
    }
    coeffs
}

fn eval(coeffs: &[i128], x: i128) -> i128 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
}

/// Verifies that the eigenvalues of `target_matrix(k)`, k = h² + 1, are
/// exactly k − 2, h − 1, −2, −1 − h; returned in descending order.
pub fn eigen_check(k: i64) -> Result<Vec<i64>, PartError> {
    let h = (1..=k).take_while(|h| h * h < k).last().unwrap_or(0);
    if h < 3 || h * h != k - 1 {
        return Err(PartError::InvalidK(k));
    }
    let m = target_matrix(k)?;
    let chi = characteristic_polynomial(&m);
    let candidates = vec![k - 2, h - 1, -2, -1 - h];
    for &r in &candidates {
        if eval(&chi, r as i128) != 0 {
            return Err(PartError::ConsistencyFailure(format!(
                "{r} is not a root of the characteristic polynomial for k = {k}"
            )));
        }
    }
    // monic degree 4 with four distinct verified roots: compare expansions
    let mut expanded = vec![1i128];
    for &r in &candidates {
        let mut next = vec![0i128; expanded.len() + 1];
        for (i, &c) in expanded.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r as i128;
        }
        expanded = next;
    }
    if expanded != chi {
        return Err(PartError::ConsistencyFailure(format!(
            "root multiset does not reproduce the characteristic polynomial for k = {k}"
        )));
    }
    Ok(candidates)
}

/// Solutions x of a·x² + b·x + c = 0 (a ≠ 0, odd characteristic).
fn quadratic_roots(field: &Field, a: Elem, b: Elem, c: Elem) -> Vec<Elem> {
    let four_ac = field.mul(field.from_int(4), field.mul(a, c));
    let disc = field.sub(field.mul(b, b), four_ac);
    let two_a_inv = field
        .inv(field.mul(field.from_int(2), a))
        .expect("a nonzero in odd characteristic");
    let neg_b = field.neg(b);
    let mut roots: Vec<Elem> = field
        .sqrt(disc)
        .into_iter()
        .map(|r| field.mul(field.add(neg_b, r), two_a_inv))
        .collect();
    roots.dedup();
    roots
}

/// Number of x with (ux x | vw w) ∈ {u, u⁻¹}: the root counts of
/// ux² − (1+u)vw·x + vw² and ux² − (1+u)w·x + vw². This is the number of
/// P-neighbors of the vertex {vw, w} in G_u.
pub fn discriminant_count(field: &Field, u: Elem, v: Elem, w: Elem) -> Result<u32, PartError> {
    let minus_one = field.neg(Elem::ONE);
    if u.is_zero() || u == Elem::ONE || u == minus_one {
        return Err(PartError::InvalidOrbit(format!("u = {}", field.format(u))));
    }
    let u_inv = field.inv(u).expect("nonzero");
    if v.is_zero() || v == Elem::ONE || v == u || v == u_inv {
        return Err(PartError::InvalidOrbit(format!("v = {}", field.format(v))));
    }
    if w.is_zero() {
        return Err(PartError::InvalidOrbit("w = 0".into()));
    }
    let one_plus_u = field.add(Elem::ONE, u);
    let vw = field.mul(v, w);
    let c = field.mul(vw, w);
    let plus = quadratic_roots(field, u, field.neg(field.mul(one_plus_u, vw)), c);
    let minus = quadratic_roots(field, u, field.neg(field.mul(one_plus_u, w)), c);
    if plus.iter().any(|x| minus.contains(x)) {
        return Err(PartError::ConsistencyFailure(format!(
            "quadratics share a root for u = {}, v = {}",
            field.format(u),
            field.format(v)
        )));
    }
    Ok((plus.len() + minus.len()) as u32)
}

/// P-neighbor counts on one orbit O_v ⊆ R.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitRow {
    pub v: Elem,
    pub v_is_square: bool,
    pub observed: u32,
    pub predicted: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem3Report {
    /// One row per orbit in R, ascending by discrete log of v.
    pub rows: Vec<OrbitRow>,
    /// (1 + u)² + 4u.
    pub u_condition: Elem,
    /// Every vertex of R has exactly two neighbors in P.
    pub all_two: bool,
}

impl Theorem3Report {
    /// Orbits whose P-neighbor count is not 2.
    pub fn offending(&self) -> impl Iterator<Item = &OrbitRow> {
        self.rows.iter().filter(|r| r.observed != 2)
    }
}

pub fn theorem3_diagnostic(
    field: &Field,
    u: Elem,
    graph: &Graph<PointPair>,
    partition: &crate::construct::BasePartition,
) -> Result<Theorem3Report, PartError> {
    let u_rep = canonical_class_rep(field, u);
    let in_p = {
        let mut mask = vec![false; graph.len()];
        for &v in &partition.p {
            mask[v] = true;
        }
        mask
    };
    let classes: Vec<Elem> = orbit_reps(field)
        .into_iter()
        .filter(|&v| v != u_rep)
        .collect();
    let mut observed: Vec<Option<u32>> = vec![None; classes.len()];
    let counts = crate::par::map_slice(&partition.r, |&x| {
        graph.neighbors(x).filter(|&y| in_p[y]).count() as u32
    });
    for (&x, &count) in partition.r.iter().zip(&counts) {
        let v = match orbit_label(field, *graph.label(x)) {
            OrbitLabel::Ov(v) if v != u_rep => v,
            other => {
                return Err(PartError::ConsistencyFailure(format!(
                    "vertex {x} in R has orbit label {other}"
                )))
            }
        };
        let slot = classes.iter().position(|&c| c == v).expect("class listed");
        match observed[slot] {
            None => observed[slot] = Some(count),
            Some(prev) if prev != count => {
                return Err(PartError::ConsistencyFailure(format!(
                    "P-neighbor count not constant on O_{}: {prev} vs {count}",
                    field.format(v)
                )))
            }
            Some(_) => {}
        }
    }
    let mut rows = Vec::with_capacity(classes.len());
    for (v, seen) in classes.into_iter().zip(observed) {
        let observed = seen.ok_or_else(|| {
            PartError::ConsistencyFailure(format!("orbit O_{} missing from R", field.format(v)))
        })?;
        rows.push(OrbitRow {
            v,
            v_is_square: field.is_square(v),
            observed,
            predicted: discriminant_count(field, u, v, Elem::ONE)?,
        });
    }
    let one_plus_u = field.add(Elem::ONE, u);
    let u_condition = field.add(
        field.mul(one_plus_u, one_plus_u),
        field.mul(field.from_int(4), u),
    );
    let all_two = rows.iter().all(|r| r.observed == 2);
    Ok(Theorem3Report {
        rows,
        u_condition,
        all_two,
    })
}

/// Re-checks the four-part partition at every vertex of G_u, not only at
/// {0, ∞}. Returns the first vertex where it fails to match the target.
pub fn first_failing_base(graph: &Graph<PointPair>) -> Result<Option<usize>, PartError> {
    let n = graph.len();
    let outcome = crate::par::find_first(n, |b| {
        let part = crate::construct::partition_at(graph, b);
        match intersection_check(graph, &part.to_partition(n)) {
            Ok(report) if report.matches_c2 => None,
            Ok(_) => Some(Ok(b)),
            Err(e) => Some(Err(e)),
        }
    });
    outcome.transpose()
}
