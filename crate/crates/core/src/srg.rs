//! Assembly of G ⊕ C (G joined to the claw on {*} ∪ K) and exact
//! strongly-regular verification.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::Field;
use crate::graph::Graph;
use crate::par;
use crate::projline::{format_point, point_count, Point, PointPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SrgError {
    #[error("h must be positive")]
    InvalidH,
    #[error("h = {0} is divisible by 4")]
    InfeasibleH(u64),
    #[error("graph is empty, edgeless or complete")]
    DegenerateGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex labels do not match the field: {0}")]
    InvalidLabels(String),
    #[error("not strongly regular: {0}")]
    NotStronglyRegular(SrgFailure),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.n, self.k, self.lambda, self.mu)
    }
}

/// The first pair (in vertex order) that breaks strong regularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrgFailure {
    Degree {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    Lambda {
        a: usize,
        b: usize,
        common: usize,
        expected: usize,
    },
    Mu {
        a: usize,
        b: usize,
        common: usize,
        expected: usize,
    },
}

impl fmt::Display for SrgFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SrgFailure::Degree {
                vertex,
                degree,
                expected,
            } => {
                write!(
                    f,
                    "vertex {vertex} has degree {degree}, expected {expected}"
                )
            }
            SrgFailure::Lambda {
                a,
                b,
                common,
                expected,
            } => write!(
                f,
                "adjacent {a},{b} have {common} common neighbors, expected {expected}"
            ),
            SrgFailure::Mu {
                a,
                b,
                common,
                expected,
            } => write!(
                f,
                "non-adjacent {a},{b} have {common} common neighbors, expected {expected}"
            ),
        }
    }
}

/// Parameters ((h⁴ + 3h² + 4)/2, h² + 1, 0, 2).
pub fn feasible_params(h: u64) -> Result<SrgParams, SrgError> {
    if h == 0 {
        return Err(SrgError::InvalidH);
    }
    if h.is_multiple_of(4) {
        return Err(SrgError::InfeasibleH(h));
    }
    Ok(SrgParams {
        n: (h.pow(4) + 3 * h * h + 4) / 2,
        k: h * h + 1,
        lambda: 0,
        mu: 2,
    })
}

/// Vertex label in G ⊕ C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AssembledLabel {
    Pair(PointPair),
    Point(Point),
    Star,
}

impl AssembledLabel {
    pub fn format(&self, field: &Field) -> String {
        match self {
            AssembledLabel::Pair(ab) => ab.format(field),
            AssembledLabel::Point(a) => format_point(field, *a),
            AssembledLabel::Star => "*".to_string(),
        }
    }
}

/// G ⊕ C. Vertices are ordered: the pairs of G in their original order,
/// then the points of K in point order, then `*`.
pub fn assemble(
    graph: &Graph<PointPair>,
    field: &Field,
) -> Result<Graph<AssembledLabel>, SrgError> {
    let m = point_count(field);
    let n = graph.len();
    if n != m * (m - 1) / 2 {
        return Err(SrgError::InvalidLabels(format!(
            "{n} vertices, expected {}",
            m * (m - 1) / 2
        )));
    }
    let mut seen = vec![false; n];
    for (v, ab) in graph.labels().iter().enumerate() {
        let ok = [ab.lo(), ab.hi()].iter().all(|x| x.index(field) < m) && ab.lo() < ab.hi();
        if !ok {
            return Err(SrgError::InvalidLabels(format!("vertex {v}")));
        }
        let idx = ab.index(field);
        if seen[idx] {
            return Err(SrgError::InvalidLabels(format!(
                "duplicate label at vertex {v}"
            )));
        }
        seen[idx] = true;
    }

    let mut labels: Vec<AssembledLabel> = graph
        .labels()
        .iter()
        .map(|&ab| AssembledLabel::Pair(ab))
        .collect();
    labels.extend(projline_points(field).map(AssembledLabel::Point));
    labels.push(AssembledLabel::Star);
    let star = n + m;

    let mut out = Graph::new(labels);
    for (i, j) in graph.edges() {
        out.add_edge(i, j);
    }
    for (v, ab) in graph.labels().iter().enumerate() {
        out.add_edge(v, n + ab.lo().index(field));
        out.add_edge(v, n + ab.hi().index(field));
    }
    for a in 0..m {
        out.add_edge(star, n + a);
    }
    Ok(out)
}

fn projline_points(field: &Field) -> impl Iterator<Item = Point> + '_ {
    crate::projline::points(field)
}

/// Checks regularity and constant common-neighbor counts over all pairs.
pub fn check_srg<L: Sync>(graph: &Graph<L>) -> Result<SrgParams, SrgError> {
    let n = graph.len();
    let edges = graph.edge_count();
    if n < 2 || edges == 0 || edges == n * (n - 1) / 2 {
        return Err(SrgError::DegenerateGraph);
    }
    let k = graph.degree(0);
    if let Some(v) = (0..n).find(|&v| graph.degree(v) != k) {
        return Err(SrgError::NotStronglyRegular(SrgFailure::Degree {
            vertex: v,
            degree: graph.degree(v),
            expected: k,
        }));
    }
    // reference λ and μ from vertex 0
    let lambda = graph
        .neighbors(0)
        .next()
        .map(|j| graph.common_neighbor_count(0, j));
    let mu = (1..n)
        .find(|&j| !graph.has_edge(0, j))
        .map(|j| graph.common_neighbor_count(0, j));
    let failure = par::find_first(n, |i| {
        (i + 1..n).find_map(|j| {
            let common = graph.common_neighbor_count(i, j);
            if graph.has_edge(i, j) {
                let expected = lambda.expect("graph has edges");
                (common != expected).then_some(SrgFailure::Lambda {
                    a: i,
                    b: j,
                    common,
                    expected,
                })
            } else {
                let expected = mu.expect("graph is not complete");
                (common != expected).then_some(SrgFailure::Mu {
                    a: i,
                    b: j,
                    common,
                    expected,
                })
            }
        })
    });
    if let Some(f) = failure {
        return Err(SrgError::NotStronglyRegular(f));
    }
    Ok(SrgParams {
        n: n as u64,
        k: k as u64,
        lambda: lambda.unwrap() as u64,
        mu: mu.unwrap() as u64,
    })
}

pub fn count_triangles<L: Sync>(graph: &Graph<L>) -> u64 {
    par::sum(graph.len(), |i| {
        graph
            .neighbors(i)
            .filter(|&j| j > i)
            .map(|j| {
                graph
                    .common_neighbors(i, j)
                    .into_iter()
                    .filter(|&l| l > j)
                    .count() as u64
            })
            .sum()
    })
}

pub fn triangle_free<L: Sync>(graph: &Graph<L>) -> bool {
    par::find_first(graph.len(), |i| {
        graph
            .neighbors(i)
            .any(|j| j > i && graph.common_neighbor_count(i, j) > 0)
            .then_some(())
    })
    .is_none()
}

fn eccentricity<L>(graph: &Graph<L>, source: usize) -> Option<usize> {
    let n = graph.len();
    let mut dist = vec![usize::MAX; n];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    let mut reached = 1;
    let mut far = 0;
    while let Some(v) = queue.pop_front() {
        for w in graph.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                far = far.max(dist[w]);
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    (reached == n).then_some(far)
}

/// Largest BFS eccentricity.
pub fn diameter<L: Sync>(graph: &Graph<L>) -> Result<usize, SrgError> {
    if graph.is_empty() {
        return Err(SrgError::DegenerateGraph);
    }
    let ecc = par::map_range(graph.len(), |s| eccentricity(graph, s));
    ecc.into_iter()
        .try_fold(0, |acc, e| e.map(|e| acc.max(e)))
        .ok_or(SrgError::Disconnected)
}
