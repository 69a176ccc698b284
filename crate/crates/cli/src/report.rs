use serde::Serialize;

use broomdist::instance::InstanceDoc;
use broomdist::mincut::CutGraphDump;
use broomdist::{Broom, GeodesicPlan, RawBroom, Rotation, Solution, VertexId};

/// Output of `distance` and `geodesic`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub instance: InstanceDoc,
    pub distance: u64,
    /// Indices of the independent vertices with `x = 1`.
    pub xstar: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geodesic: Option<GeodesicReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStep>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explain: Option<Explain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut_graph: Option<CutGraphDump>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Debug, Serialize)]
pub struct GeodesicReport {
    pub length: usize,
    /// Rotation counts of the sink, sort and lift phases.
    pub phases: [usize; 3],
    pub rotations: Vec<Rotation>,
}

impl From<&GeodesicPlan> for GeodesicReport {
    fn from(plan: &GeodesicPlan) -> Self {
        Self {
            length: plan.len(),
            phases: plan.phases,
            rotations: plan.rotations.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TraceStep {
    pub rotation: Rotation,
    pub broom: RawBroom,
}

pub fn trace(plan: &GeodesicPlan) -> Vec<TraceStep> {
    plan.steps()
        .map(|(rotation, broom)| TraceStep {
            rotation,
            broom: broom.to_raw(),
        })
        .collect()
}

/// Milliseconds per stage.
#[derive(Debug, Default, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub solve_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geodesic_ms: Option<f64>,
}

/// The combinatorial data behind a distance.
#[derive(Debug, Serialize)]
pub struct Explain {
    pub y: Vec<VertexId>,
    pub sigma: Vec<u32>,
    pub inv_sigma: u64,
    /// Independent vertices outside `Y` with the clique vertices they must
    /// pass.
    pub outside: Vec<OutsideVertex>,
    pub per_vertex: Vec<VertexSets>,
    pub constant: i64,
    pub linear: Vec<i64>,
    pub value_at_xstar: u64,
}

#[derive(Debug, Serialize)]
pub struct OutsideVertex {
    pub vertex: VertexId,
    pub below: Vec<VertexId>,
}

#[derive(Debug, Serialize)]
pub struct VertexSets {
    pub vertex: VertexId,
    pub x: bool,
    pub b: Vec<VertexId>,
    pub c: Vec<VertexId>,
    pub d: Vec<VertexId>,
    pub e: Vec<VertexId>,
    pub f: Vec<VertexId>,
}

impl Explain {
    pub fn new(sol: &Solution) -> Self {
        let s = &sol.sets;
        let x = sol.xstar().bits();
        Self {
            y: s.y.clone(),
            sigma: s.sigma.clone(),
            inv_sigma: s.inv_sigma,
            outside: s
                .a
                .iter()
                .map(|(vertex, below)| OutsideVertex {
                    vertex: *vertex,
                    below: below.clone(),
                })
                .collect(),
            per_vertex: (0..s.len())
                .map(|u| VertexSets {
                    vertex: s.y[u],
                    x: x[u],
                    b: s.b[u].clone(),
                    c: s.c[u].clone(),
                    d: s.d[u].clone(),
                    e: s.e_vertices(u),
                    f: s.f_vertices(u),
                })
                .collect(),
            constant: sol.coeffs.c(),
            linear: sol.coeffs.ell.clone(),
            value_at_xstar: s.evaluate(sol.xstar()).expect("x* lives on Y"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct NeighborsReport {
    pub broom: RawBroom,
    pub degree: usize,
    pub neighbors: Vec<TraceStep>,
}

impl NeighborsReport {
    pub fn new(b: &Broom) -> Self {
        let neighbors: Vec<TraceStep> = b
            .neighbors()
            .into_iter()
            .map(|(rotation, nb)| TraceStep {
                rotation,
                broom: nb.to_raw(),
            })
            .collect();
        Self {
            broom: b.to_raw(),
            degree: neighbors.len(),
            neighbors,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub instance: InstanceDoc,
    pub tubings: TubingPair,
}

#[derive(Debug, Serialize)]
pub struct TubingPair {
    pub t1: Vec<Vec<VertexId>>,
    pub t2: Vec<Vec<VertexId>>,
}

pub fn tubes(b: &Broom) -> Vec<Vec<VertexId>> {
    b.to_tubing()
        .tubes
        .into_iter()
        .map(|t| t.into_iter().collect())
        .collect()
}

pub const VERDICT: &str = "mincut==bfs==brute";

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub instance: InstanceDoc,
    pub mincut: u64,
    pub bfs: u64,
    pub brute: u64,
    pub monotone_witness: bool,
    pub verdict: &'static str,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct AllPairsReport {
    pub p: u32,
    pub q: u32,
    pub brooms: usize,
    pub pairs: u64,
    pub diameter: u32,
    pub mismatches: u64,
    pub monotone_witness_everywhere: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    pub verdict: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub t1: RawBroom,
    pub t2: RawBroom,
    pub mincut: u64,
    pub bfs: u64,
    pub brute: u64,
}

#[derive(Debug, Serialize)]
pub struct BenchRow {
    pub n: u32,
    pub p: u32,
    pub q: u32,
    pub y: usize,
    pub distance: u64,
    pub best_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub reps: u32,
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of log time against log n.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loglog_slope: Option<f64>,
}
