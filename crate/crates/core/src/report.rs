//! The per-field analysis pipeline, sweeps over several fields, and the
//! JSON / edge-list export formats.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::construct::{admissible_classes, base_partition, build_graph, omega, UClass};
use crate::gf::{odd_prime_power, Elem, Field, GfError, DEFAULT_TABLE_CAP};
use crate::graph::Graph;
use crate::partcheck::{eigen_check, intersection_check, theorem3_diagnostic, IntersectionMatrix};
use crate::projline::{format_point, PointPair};
use crate::srg::{assemble, check_srg, triangle_free, AssembledLabel, SrgError, SrgParams};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub q: u32,
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
    pub k: u32,
    pub omega: Vec<String>,
    pub admissible: Vec<[String; 2]>,
    pub analyses: Vec<UAnalysis>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UAnalysis {
    pub u: String,
    pub u_inv: String,
    pub admissible: bool,
    pub triangle_free: bool,
    pub partition_sizes: [usize; 4],
    pub equitable: bool,
    pub intersection_matrix: Option<IntersectionMatrix>,
    pub matches_c2: bool,
    pub matrix_eigenvalues: Option<Vec<i64>>,
    pub theorem3: Theorem3Summary,
    pub srg: Option<SrgParams>,
    pub srg_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem3Summary {
    /// (1 + u)² + 4u
    pub u_condition: String,
    pub all_two: bool,
    pub orbits: Vec<OrbitSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub v: String,
    pub v_is_square: bool,
    pub p_neighbors: u32,
    pub predicted: u32,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    /// Analyze only this u (any member of its class); otherwise every
    /// admissible class.
    pub u: Option<Elem>,
    /// Run the full strongly-regular check even when the partition test fails.
    pub full_srg: bool,
}

pub fn analyze(field: &Field, opts: &AnalyzeOptions) -> Result<AnalysisReport, Error> {
    let om = omega(field);
    let admissible = admissible_classes(field, &om);
    let targets: Vec<UClass> = match opts.u {
        Some(u) => {
            let minus_one = field.from_int(-1);
            if u.is_zero() || u == Elem::ONE || u == minus_one {
                return Err(
                    crate::construct::ConstructError::InadmissibleU(field.format(u)).into(),
                );
            }
            vec![UClass::of(field, u)]
        }
        None => admissible.clone(),
    };
    let analyses = targets
        .iter()
        .map(|class| analyze_u(field, class, admissible.contains(class), opts.full_srg))
        .collect::<Result<Vec<_>, _>>()?;
    let q = field.q();
    Ok(AnalysisReport {
        q,
        p: field.p(),
        e: field.e(),
        modulus: field.modulus().to_vec(),
        k: q * q + 1,
        omega: om.points.iter().map(|&x| format_point(field, x)).collect(),
        admissible: admissible
            .iter()
            .map(|c| [field.format(c.u), field.format(c.u_inv)])
            .collect(),
        analyses,
    })
}

fn analyze_u(
    field: &Field,
    class: &UClass,
    admissible: bool,
    full_srg: bool,
) -> Result<UAnalysis, Error> {
    let u = class.u;
    let graph = build_graph(field, u)?;
    let part = base_partition(&graph)?;
    let eq = intersection_check(&graph, &part.to_partition(graph.len()))?;
    let t3 = theorem3_diagnostic(field, u, &graph, &part)?;
    let k = field.q() as i64 * field.q() as i64 + 1;
    let matrix_eigenvalues = if eq.matches_c2 {
        Some(eigen_check(k)?)
    } else {
        None
    };
    let (srg, srg_failure) = if eq.matches_c2 || full_srg {
        match check_srg(&assemble(&graph, field)?) {
            Ok(params) => (Some(params), None),
            Err(SrgError::NotStronglyRegular(f)) => (None, Some(f.to_string())),
            Err(e) => return Err(e.into()),
        }
    } else {
        (None, None)
    };
    if eq.matches_c2 && srg.is_none() {
        return Err(Error::Internal(format!(
            "partition matches but G+C is not strongly regular for u = {}",
            field.format(u)
        )));
    }
    Ok(UAnalysis {
        u: field.format(u),
        u_inv: field.format(class.u_inv),
        admissible,
        triangle_free: triangle_free(&graph),
        partition_sizes: part.sizes(),
        equitable: eq.equitable,
        intersection_matrix: eq.matrix,
        matches_c2: eq.matches_c2,
        matrix_eigenvalues,
        theorem3: Theorem3Summary {
            u_condition: field.format(t3.u_condition),
            all_two: t3.all_two,
            orbits: t3
                .rows
                .iter()
                .map(|r| OrbitSummary {
                    v: field.format(r.v),
                    v_is_square: r.v_is_square,
                    p_neighbors: r.observed,
                    predicted: r.predicted,
                })
                .collect(),
        },
        srg,
        srg_failure,
    })
}

/// Validates every q before any field is built.
pub fn validate_qs(qs: &[u64], cap: u64) -> Result<(), Error> {
    for &q in qs {
        odd_prime_power(q)?;
        if q.checked_mul(q).is_none_or(|o| o > cap) {
            let (p, e) = odd_prime_power(q)?;
            return Err(GfError::TooLarge { p, n: 2 * e, cap }.into());
        }
    }
    Ok(())
}

/// One report per q, in the order given.
pub fn sweep(qs: &[u64], cap: u64, full_srg: bool) -> Result<Vec<AnalysisReport>, Error> {
    validate_qs(qs, cap)?;
    let opts = AnalyzeOptions { u: None, full_srg };
    crate::par::map_slice(qs, |&q| {
        let field = Field::for_q(q, cap)?;
        analyze(&field, &opts)
    })
    .into_iter()
    .collect()
}

pub const DEFAULT_Q_LIST: [u64; 6] = [3, 5, 7, 9, 11, 13];

pub fn default_cap() -> u64 {
    DEFAULT_TABLE_CAP
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummaryRow {
    pub q: u32,
    pub class: String,
    pub triangle_free: bool,
    pub equitable: bool,
    pub matches_c2: bool,
}

pub fn summary_rows(reports: &[AnalysisReport]) -> Vec<SummaryRow> {
    reports
        .iter()
        .flat_map(|r| {
            r.analyses.iter().map(move |a| SummaryRow {
                q: r.q,
                class: format!("{{{},{}}}", a.u, a.u_inv),
                triangle_free: a.triangle_free,
                equitable: a.equitable,
                matches_c2: a.matches_c2,
            })
        })
        .collect()
}

pub fn format_summary(rows: &[SummaryRow]) -> String {
    let width = rows.iter().map(|r| r.class.len()).max().unwrap_or(0).max(5);
    let mut out = format!(
        "{:>3}  {:<width$}  {:<13}  {:<9}  {}\n",
        "q", "class", "triangle_free", "equitable", "matches_c2"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>3}  {:<width$}  {:<13}  {:<9}  {}",
            r.q, r.class, r.triangle_free, r.equitable, r.matches_c2
        );
    }
    out
}

pub fn to_json(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Human-readable text for one report.
pub fn format_report(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "q = {} (p = {}, e = {}), k = {}, modulus coefficients {:?}",
        report.q, report.p, report.e, report.k, report.modulus
    );
    let _ = writeln!(out, "Omega = {{{}}}", report.omega.join(", "));
    let _ = writeln!(
        out,
        "admissible classes: {}",
        report
            .admissible
            .iter()
            .map(|[a, b]| format!("{{{a},{b}}}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    for a in &report.analyses {
        let _ = writeln!(out, "u = {} (inverse {})", a.u, a.u_inv);
        let _ = writeln!(
            out,
            "  admissible {}  triangle-free {}  parts {:?}  equitable {}  matches C2 {}",
            a.admissible, a.triangle_free, a.partition_sizes, a.equitable, a.matches_c2
        );
        if let Some(m) = &a.intersection_matrix {
            let _ = writeln!(out, "  intersection matrix {:?}", m.rows);
        }
        if let Some(ev) = &a.matrix_eigenvalues {
            let _ = writeln!(out, "  eigenvalues {ev:?}");
        }
        let _ = writeln!(out, "  (1+u)^2+4u = {}", a.theorem3.u_condition);
        for o in &a.theorem3.orbits {
            let _ = writeln!(
                out,
                "  O_{:<8} square {:<5}  P-neighbors {}  predicted {}",
                o.v, o.v_is_square, o.p_neighbors, o.predicted
            );
        }
        if let Some(s) = &a.srg {
            let _ = writeln!(out, "  G+C strongly regular {s}");
        }
        if let Some(fail) = &a.srg_failure {
            let _ = writeln!(out, "  G+C not strongly regular: {fail}");
        }
    }
    out
}

/// A graph in exportable form: labels as canonical strings, edges i < j in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportedGraph {
    pub q: u32,
    pub u: String,
    pub layers: Layers,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layers {
    pub pairs: usize,
    pub points: usize,
    pub star: usize,
}

impl ExportedGraph {
    pub fn from_pair_graph(field: &Field, u: Elem, g: &Graph<PointPair>) -> Self {
        ExportedGraph {
            q: field.q(),
            u: field.format(u),
            layers: Layers {
                pairs: g.len(),
                points: 0,
                star: 0,
            },
            vertices: g.labels().iter().map(|l| l.format(field)).collect(),
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn from_assembled(field: &Field, u: Elem, g: &Graph<AssembledLabel>) -> Self {
        let count =
            |pred: fn(&AssembledLabel) -> bool| g.labels().iter().filter(|l| pred(l)).count();
        ExportedGraph {
            q: field.q(),
            u: field.format(u),
            layers: Layers {
                pairs: count(|l| matches!(l, AssembledLabel::Pair(_))),
                points: count(|l| matches!(l, AssembledLabel::Point(_))),
                star: count(|l| matches!(l, AssembledLabel::Star)),
            },
            vertices: g.labels().iter().map(|l| l.format(field)).collect(),
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_edgelist(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# q {}", self.q);
        let _ = writeln!(out, "# u {}", self.u);
        let _ = writeln!(
            out,
            "# layers pairs={} points={} star={}",
            self.layers.pairs, self.layers.points, self.layers.star
        );
        let _ = writeln!(out, "# vertices {}", self.vertices.len());
        let _ = writeln!(out, "# edges {}", self.edges.len());
        for (i, label) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "# {i} {label}");
        }
        for [i, j] in &self.edges {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }

    pub fn from_edgelist(text: &str) -> Result<Self, Error> {
        let bad = |line: &str| Error::Format(format!("unexpected line {line:?}"));
        let mut lines = text.lines();
        let mut header = |key: &str| -> Result<String, Error> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Format("truncated header".into()))?;
            line.strip_prefix("# ")
                .and_then(|r| r.strip_prefix(key))
                .and_then(|r| r.strip_prefix(' '))
                .map(str::to_string)
                .ok_or_else(|| bad(line))
        };
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Format(format!("bad number {s:?}")))
        };
        let q = num(&header("q")?)? as u32;
        let u = header("u")?;
        let layer_text = header("layers")?;
        let mut layer_vals = Vec::new();
        for (part, key) in layer_text.split(' ').zip(["pairs=", "points=", "star="]) {
            layer_vals.push(num(part
                .strip_prefix(key)
                .ok_or_else(|| bad(&layer_text))?)?);
        }
        if layer_vals.len() != 3 {
            return Err(bad(&layer_text));
        }
        let n = num(&header("vertices")?)?;
        let m = num(&header("edges")?)?;
        let mut vertices = Vec::with_capacity(n);
        for i in 0..n {
            let label = header(&i.to_string())?;
            vertices.push(label);
        }
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let (a, b) = line.split_once(' ').ok_or_else(|| bad(line))?;
            edges.push([num(a)?, num(b)?]);
        }
        if edges.len() != m {
            return Err(Error::Format(format!(
                "expected {m} edges, found {}",
                edges.len()
            )));
        }
        Ok(ExportedGraph {
            q,
            u,
            layers: Layers {
                pairs: layer_vals[0],
                points: layer_vals[1],
                star: layer_vals[2],
            },
            vertices,
            edges,
        })
    }
}

/// Builds G_u (or G_u ⊕ C) for export. `u = None` picks the admissible
/// class with the smallest discrete log.
pub fn export_graph(
    field: &Field,
    u: Option<Elem>,
    assembled: bool,
) -> Result<ExportedGraph, Error> {
    let u = match u {
        Some(u) => u,
        None => {
            let om = omega(field);
            admissible_classes(field, &om)
                .first()
                .map(|c| c.u)
                .ok_or_else(|| Error::Internal("no admissible class".into()))?
        }
    };
    let g = build_graph(field, u)?;
    if assembled {
        Ok(ExportedGraph::from_assembled(
            field,
            u,
            &assemble(&g, field)?,
        ))
    } else {
        Ok(ExportedGraph::from_pair_graph(field, u, &g))
    }
}
