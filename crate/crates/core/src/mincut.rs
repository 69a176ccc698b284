//! Minimizing `ℓ(x) + q(x)` as a minimum `(s, t)`-cut.
//!
//! The cut graph has a node per `Y` vertex plus two terminals. A bipartition
//! encodes `x` by `x_u = 1` iff `u` is on the `s` side, and its weight is
//! `Σ_v w_{s,v} + ℓ(x) + q(x)`. Because every cross coefficient is
//! non-positive, all edge weights are non-negative and a max-flow gives the
//! exact minimum.
//!
//! Weights are doubled so the half-integral pair weights stay integral.

use serde::Serialize;

use crate::broom::Broom;
use crate::maxflow::NetworkBuilder;
use crate::model::{Assignment, CoefficientForm, ModelError, ModelSets};
use crate::graph::VertexId;

/// The weighted cut graph, all weights doubled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutGraph {
    pub ynodes: Vec<VertexId>,
    /// Row-major `|Y| x |Y|`, 0 on the diagonal, otherwise 1 or 2.
    w2_pair: Vec<u8>,
    pub w2_s: Vec<i64>,
    pub w2_t: Vec<i64>,
    pub w2_s_total: i64,
}

impl CutGraph {
    pub fn build(coeffs: &CoefficientForm) -> Self {
        let k = coeffs.len();
        let mut w2_pair = vec![0u8; k * k];
        let mut w2_s = Vec::with_capacity(k);
        let mut w2_t = Vec::with_capacity(k);
        for u in 0..k {
            let mut r2 = 0i64;
            for v in 0..k {
                let q = coeffs.qcoef(u, v);
                debug_assert!(q <= 0, "cross coefficients are non-positive");
                w2_pair[u * k + v] = (-q) as u8;
                r2 -= i64::from(-q);
            }
            let z = r2 + 2 * coeffs.ell[u];
            w2_t.push(z.max(0));
            w2_s.push((-z).max(0));
        }
        let w2_s_total = w2_s.iter().sum();
        Self {
            ynodes: coeffs.y.clone(),
            w2_pair,
            w2_s,
            w2_t,
            w2_s_total,
        }
    }

    pub fn len(&self) -> usize {
        self.ynodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ynodes.is_empty()
    }

    pub fn w2_pair(&self, u: usize, v: usize) -> u8 {
        self.w2_pair[u * self.len() + v]
    }

    /// Doubled weight of the cut whose `s` side is `{s} ∪ {u : x_u}`.
    pub fn cut_value2(&self, x: &[bool]) -> i64 {
        let k = self.len();
        let mut total = 0i64;
        for u in 0..k {
            if x[u] {
                total += self.w2_t[u];
                for v in (0..k).filter(|&v| !x[v]) {
                    total += i64::from(self.w2_pair(u, v));
                }
            } else {
                total += self.w2_s[u];
            }
        }
        total
    }

    /// Minimum cut with the canonical (smallest) source side.
    pub fn min_cut(&self) -> CutResult {
        let k = self.len();
        let (s, t) = (k, k + 1);
        let mut b = NetworkBuilder::new(k + 2);
        for u in 0..k {
            for v in u + 1..k {
                b.add_undirected(u, v, i64::from(self.w2_pair(u, v)));
            }
            if self.w2_s[u] > 0 {
                b.add_undirected(s, u, self.w2_s[u]);
            }
            if self.w2_t[u] > 0 {
                b.add_undirected(u, t, self.w2_t[u]);
            }
        }
        let mut network = b.build();
        let flow2 = network.max_flow(s, t);
        let side = network.residual_reachable(s);
        let x: Vec<bool> = side[..k].to_vec();
        let cut2 = self.cut_value2(&x);
        assert_eq!(cut2, flow2, "max-flow/min-cut mismatch");
        CutResult {
            cut2,
            assignment: Assignment::new(self.ynodes.clone(), x),
        }
    }

    pub fn dump(&self) -> CutGraphDump {
        let k = self.len();
        let name = |u: usize| self.ynodes[u].to_string();
        let mut nodes = vec!["s".to_owned(), "t".to_owned()];
        nodes.extend((0..k).map(name));
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((name(u), name(v), i64::from(self.w2_pair(u, v))));
            }
        }
        for u in 0..k {
            edges.push(("s".to_owned(), name(u), self.w2_s[u]));
        }
        for u in 0..k {
            edges.push((name(u), "t".to_owned(), self.w2_t[u]));
        }
        CutGraphDump {
            nodes,
            doubled_weights: true,
            edges,
            w2_s_total: self.w2_s_total,
        }
    }
}

/// Serializable form of a [`CutGraph`].
#[derive(Debug, Clone, Serialize)]
pub struct CutGraphDump {
    pub nodes: Vec<String>,
    pub doubled_weights: bool,
    pub edges: Vec<(String, String, i64)>,
    pub w2_s_total: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    /// Doubled cut weight.
    pub cut2: i64,
    pub assignment: Assignment,
}

/// Every intermediate of one distance computation.
#[derive(Debug, Clone)]
pub struct Solution {
    pub sets: ModelSets,
    pub coeffs: CoefficientForm,
    pub graph: CutGraph,
    pub cut: CutResult,
    pub distance: u64,
}

impl Solution {
    pub fn solve(t1: &Broom, t2: &Broom) -> Result<Self, ModelError> {
        let sets = ModelSets::derive(t1, t2)?;
        let coeffs = CoefficientForm::from_sets(&sets);
        let graph = CutGraph::build(&coeffs);
        let cut = graph.min_cut();
        let twice = coeffs.c2 + cut.cut2 - graph.w2_s_total;
        debug_assert!(twice >= 0 && twice % 2 == 0);
        Ok(Self {
            distance: (twice / 2) as u64,
            sets,
            coeffs,
            graph,
            cut,
        })
    }

    pub fn xstar(&self) -> &Assignment {
        &self.cut.assignment
    }
}

/// Rotation distance between two brooms and an assignment attaining it.
pub fn rotation_distance(t1: &Broom, t2: &Broom) -> Result<(u64, Assignment), ModelError> {
    let sol = Solution::solve(t1, t2)?;
    Ok((sol.distance, sol.cut.assignment))
}
