//! The quadratic 0/1 model of rotation distance.
//!
//! For two brooms `T1`, `T2` let `Y` be the independent vertices lying in
//! both handles. A point `x ∈ {0,1}^Y` says which of them become a leaf
//! somewhere along a rotation sequence. The rotation count of any such
//! sequence is at least `f(x)`, and some sequence achieves exactly `f(x)`, so
//! the rotation distance is `min_x f(x)`.
//!
//! `f` has half-integer intermediate terms. Everything here is computed on
//! doubled integers and halved only where the result is known to be integral.

use serde::Serialize;
use thiserror::Error;

use crate::broom::Broom;
use crate::graph::{SplitGraphSpec, VertexId};
use crate::perm::inversions;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("brooms are on different graphs: {0:?} vs {1:?}")]
    SpecMismatch(SplitGraphSpec, SplitGraphSpec),
    #[error("assignment is over {got:?}, expected {expected:?}")]
    DomainMismatch {
        expected: Vec<VertexId>,
        got: Vec<VertexId>,
    },
}

/// Combinatorial data of an instance `(T1, T2)`.
///
/// Per-`Y` data is stored in vectors parallel to [`ModelSets::y`]; `E` and
/// `F` hold positions into `y` rather than vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSets {
    pub spec: SplitGraphSpec,
    /// Independent vertices in both handles, by ascending index.
    pub y: Vec<VertexId>,
    /// Clique vertices labeled `1..=p` top-down in `T1`, read top-down in `T2`.
    pub sigma: Vec<u32>,
    pub inv_sigma: u64,
    /// For each independent vertex outside `Y` (ascending): the clique
    /// vertices below it in the one handle containing it, or nothing if it
    /// is a leaf of both brooms.
    pub a: Vec<(VertexId, Vec<VertexId>)>,
    /// Clique vertices above `u` in one broom and below in the other.
    pub b: Vec<Vec<VertexId>>,
    /// Clique vertices below `u` in both brooms.
    pub c: Vec<Vec<VertexId>>,
    /// Independent vertices outside `Y` lying in exactly one handle, above `u`
    /// there.
    pub d: Vec<Vec<VertexId>>,
    /// `Y` vertices ordered differently from `u` in the two brooms.
    pub e: Vec<Vec<usize>>,
    /// `Y` vertices below `u` in both brooms.
    pub f: Vec<Vec<usize>>,
}

impl ModelSets {
    pub fn derive(t1: &Broom, t2: &Broom) -> Result<Self, ModelError> {
        let spec = t1.spec();
        if spec != t2.spec() {
            return Err(ModelError::SpecMismatch(spec, t2.spec()));
        }
        let pos1 = t1.handle_positions();
        let pos2 = t2.handle_positions();
        let at = |pos: &[Option<usize>], v: VertexId| pos[spec.dense(v)];

        let y: Vec<VertexId> = spec
            .q_vertices()
            .filter(|&v| at(&pos1, v).is_some() && at(&pos2, v).is_some())
            .collect();
        let outside: Vec<VertexId> = spec
            .q_vertices()
            .filter(|&v| at(&pos1, v).is_none() || at(&pos2, v).is_none())
            .collect();

        let mut label = vec![0u32; spec.p() as usize];
        for (rank, v) in t1.handle().iter().filter(|v| v.is_p()).enumerate() {
            label[v.index as usize - 1] = rank as u32 + 1;
        }
        let sigma: Vec<u32> = t2
            .handle()
            .iter()
            .filter(|v| v.is_p())
            .map(|v| label[v.index as usize - 1])
            .collect();
        let inv_sigma = inversions(&sigma).expect("relabeling yields a permutation");

        let a = outside
            .iter()
            .map(|&u| {
                let pos = match (at(&pos1, u), at(&pos2, u)) {
                    (Some(_), _) => &pos1,
                    (None, Some(_)) => &pos2,
                    (None, None) => return (u, Vec::new()),
                };
                let below = spec
                    .p_vertices()
                    .filter(|&v| at(pos, v) > at(pos, u))
                    .collect();
                (u, below)
            })
            .collect();

        let k = y.len();
        let (mut b, mut c, mut d) = (Vec::with_capacity(k), Vec::with_capacity(k), Vec::with_capacity(k));
        let (mut e, mut f) = (Vec::with_capacity(k), Vec::with_capacity(k));
        for &u in &y {
            let (u1, u2) = (at(&pos1, u).unwrap(), at(&pos2, u).unwrap());
            let mut bu = Vec::new();
            let mut cu = Vec::new();
            for v in spec.p_vertices() {
                let (v1, v2) = (at(&pos1, v).unwrap(), at(&pos2, v).unwrap());
                if (v1 < u1) != (v2 < u2) {
                    bu.push(v);
                } else if v1 > u1 {
                    cu.push(v);
                }
            }
            let du = outside
                .iter()
                .copied()
                .filter(|&v| match (at(&pos1, v), at(&pos2, v)) {
                    (Some(v1), None) => v1 < u1,
                    (None, Some(v2)) => v2 < u2,
                    _ => false,
                })
                .collect();
            let mut eu = Vec::new();
            let mut fu = Vec::new();
            for (j, &w) in y.iter().enumerate() {
                if w == u {
                    continue;
                }
                let (w1, w2) = (at(&pos1, w).unwrap(), at(&pos2, w).unwrap());
                if (w1 < u1) != (w2 < u2) {
                    eu.push(j);
                } else if w1 > u1 {
                    fu.push(j);
                }
            }
            b.push(bu);
            c.push(cu);
            d.push(du);
            e.push(eu);
            f.push(fu);
        }

        Ok(Self {
            spec,
            y,
            sigma,
            inv_sigma,
            a,
            b,
            c,
            d,
            e,
            f,
        })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn e_vertices(&self, u: usize) -> Vec<VertexId> {
        self.e[u].iter().map(|&j| self.y[j]).collect()
    }

    pub fn f_vertices(&self, u: usize) -> Vec<VertexId> {
        self.f[u].iter().map(|&j| self.y[j]).collect()
    }

    /// `f(x)` evaluated term by term from the lower-bound expression, with
    /// the `E` term kept in its `(1 + x_u)(1 - x_v)` form.
    pub fn evaluate(&self, x: &Assignment) -> Result<u64, ModelError> {
        self.check_domain(x)?;
        let x = &x.bits;
        let sum_a: u64 = self.a.iter().map(|(_, s)| s.len() as u64).sum();
        let mut twice = 2 * self.inv_sigma + 2 * sum_a;
        for u in 0..self.len() {
            let xu = u64::from(x[u]);
            twice += 2 * self.b[u].len() as u64;
            twice += 4 * self.c[u].len() as u64 * xu;
            twice += 2 * self.d[u].len() as u64 * (1 - xu);
            for &v in &self.e[u] {
                twice += (1 + xu) * (1 - u64::from(x[v]));
            }
            for &v in &self.f[u] {
                twice += 4 * xu * (1 - u64::from(x[v]));
            }
        }
        debug_assert_eq!(twice % 2, 0, "E is symmetric, so the halves pair up");
        Ok(twice / 2)
    }

    /// Whether `x_u <= x_v` for every `u` in `Y` and `v` in `F_u`.
    pub fn is_monotone(&self, x: &[bool]) -> bool {
        (0..self.len()).all(|u| !x[u] || self.f[u].iter().all(|&v| x[v]))
    }

    pub(crate) fn check_domain(&self, x: &Assignment) -> Result<(), ModelError> {
        if x.y != self.y {
            return Err(ModelError::DomainMismatch {
                expected: self.y.clone(),
                got: x.y.clone(),
            });
        }
        Ok(())
    }
}

/// A point of `{0,1}^Y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    y: Vec<VertexId>,
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(y: Vec<VertexId>, bits: Vec<bool>) -> Self {
        assert_eq!(y.len(), bits.len(), "one bit per vertex of Y");
        Self { y, bits }
    }

    pub fn zeros(sets: &ModelSets) -> Self {
        Self::new(sets.y.clone(), vec![false; sets.len()])
    }

    pub fn ones(sets: &ModelSets) -> Self {
        Self::new(sets.y.clone(), vec![true; sets.len()])
    }

    /// The `i`-th point in binary order: bit `j` of `i` is `x` of `y[j]`.
    pub fn from_index(sets: &ModelSets, i: u64) -> Self {
        let bits = (0..sets.len()).map(|j| (i >> j) & 1 == 1).collect();
        Self::new(sets.y.clone(), bits)
    }

    pub fn y(&self) -> &[VertexId] {
        &self.y
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, v: VertexId) -> Option<bool> {
        self.y.iter().position(|&u| u == v).map(|i| self.bits[i])
    }

    /// Vertices set to 1, ascending.
    pub fn ones_vertices(&self) -> Vec<VertexId> {
        self.y
            .iter()
            .zip(&self.bits)
            .filter(|(_, &b)| b)
            .map(|(&v, _)| v)
            .collect()
    }
}

/// `f(x) = c + ℓ(x) + q(x)` with `q(x) = ½ Σ_u Σ_v q_{u,v} x_u x_v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientForm {
    pub y: Vec<VertexId>,
    /// Twice the constant term.
    pub c2: i64,
    /// Linear coefficient of each `Y` vertex.
    pub ell: Vec<i64>,
    /// Row-major `|Y| x |Y|` matrix of cross coefficients, 0 on the diagonal,
    /// `-1` when the pair is ordered differently in the two brooms, `-2`
    /// otherwise.
    #[serde(skip)]
    qcoef: Vec<i8>,
}

impl CoefficientForm {
    pub fn from_sets(sets: &ModelSets) -> Self {
        let k = sets.len();
        let sum_a: i64 = sets.a.iter().map(|(_, s)| s.len() as i64).sum();
        let mut c2 = 2 * sets.inv_sigma as i64 + 2 * sum_a;
        let mut ell = Vec::with_capacity(k);
        let mut qcoef = vec![-2i8; k * k];
        for u in 0..k {
            c2 += 2 * sets.b[u].len() as i64 + 2 * sets.d[u].len() as i64 + sets.e[u].len() as i64;
            ell.push(
                2 * sets.c[u].len() as i64 - sets.d[u].len() as i64 + 2 * sets.f[u].len() as i64,
            );
            qcoef[u * k + u] = 0;
            for &v in &sets.e[u] {
                qcoef[u * k + v] = -1;
            }
        }
        Self {
            y: sets.y.clone(),
            c2,
            ell,
            qcoef,
        }
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// The constant term. Always integral.
    pub fn c(&self) -> i64 {
        debug_assert_eq!(self.c2 % 2, 0);
        self.c2 / 2
    }

    pub fn qcoef(&self, u: usize, v: usize) -> i8 {
        self.qcoef[u * self.len() + v]
    }

    pub(crate) fn qrow(&self, u: usize) -> &[i8] {
        let k = self.len();
        &self.qcoef[u * k..(u + 1) * k]
    }

    /// `2 (ℓ(x) + q(x))`.
    pub fn variable_part2(&self, x: &[bool]) -> i64 {
        let mut total = 0i64;
        for u in (0..self.len()).filter(|&u| x[u]) {
            total += 2 * self.ell[u];
            total += self
                .qrow(u)
                .iter()
                .zip(x)
                .filter(|(_, &xv)| xv)
                .map(|(&q, _)| i64::from(q))
                .sum::<i64>();
        }
        total
    }

    /// `c + ℓ(x) + q(x)`.
    pub fn value(&self, x: &Assignment) -> i64 {
        assert_eq!(x.y, self.y, "assignment domain");
        let twice = self.c2 + self.variable_part2(&x.bits);
        debug_assert_eq!(twice % 2, 0);
        twice / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::broom::RawBroom;

    fn q(i: u32) -> VertexId {
        VertexId::q(i)
    }
    fn p(i: u32) -> VertexId {
        VertexId::p(i)
    }
    fn broom(pq: (u32, u32), handle: &[VertexId], leaves: &[VertexId]) -> Broom {
        let spec = SplitGraphSpec::new(pq.0, pq.1).unwrap();
        let raw = RawBroom {
            handle: handle.to_vec(),
            leaves: leaves.to_vec(),
        };
        Broom::validate(spec, &raw).unwrap()
    }

    fn reversal(qn: u32) -> (Broom, Broom) {
        let fwd: Vec<u32> = (1..=qn).collect();
        let rev: Vec<u32> = (1..=qn).rev().collect();
        (
            Broom::from_partial_permutation(&fwd, qn).unwrap(),
            Broom::from_partial_permutation(&rev, qn).unwrap(),
        )
    }

    #[test]
    fn reversal_sets() {
        let (t1, t2) = reversal(3);
        let s = ModelSets::derive(&t1, &t2).unwrap();
        assert_eq!(s.y, vec![q(1), q(2), q(3)]);
        assert_eq!(s.sigma, vec![1]);
        assert_eq!(s.inv_sigma, 0);
        for u in 0..3 {
            assert!(s.b[u].is_empty() && s.d[u].is_empty() && s.f[u].is_empty());
            assert_eq!(s.c[u], vec![p(1)]);
            let others: Vec<_> = s.y.iter().copied().filter(|&v| v != s.y[u]).collect();
            assert_eq!(s.e_vertices(u), others);
        }
    }

    #[test]
    fn identical_brooms_sets() {
        let t = broom((2, 4), &[q(3), p(2), q(1), p(1)], &[q(2), q(4)]);
        let s = ModelSets::derive(&t, &t).unwrap();
        assert_eq!(s.y, vec![q(1), q(3)]);
        for u in 0..2 {
            assert!(s.b[u].is_empty() && s.d[u].is_empty() && s.e[u].is_empty());
        }
        // q3 sits above q1 in both.
        assert_eq!(s.f_vertices(0), Vec::<VertexId>::new());
        assert_eq!(s.f_vertices(1), vec![q(1)]);
        assert!(s.a.iter().all(|(_, set)| set.is_empty()));
        assert_eq!(s.evaluate(&Assignment::zeros(&s)), Ok(0));
    }

    #[test]
    fn disjoint_handles_sets() {
        let t1 = broom((2, 1), &[q(1), p(1), p(2)], &[]);
        let t2 = broom((2, 1), &[p(2), p(1)], &[q(1)]);
        let s = ModelSets::derive(&t1, &t2).unwrap();
        assert!(s.y.is_empty());
        assert_eq!(s.a, vec![(q(1), vec![p(1), p(2)])]);
        assert_eq!(s.sigma, vec![2, 1]);
        assert_eq!(s.inv_sigma, 1);
        assert_eq!(s.evaluate(&Assignment::zeros(&s)), Ok(3));
    }

    #[test]
    fn reversal_objective_values() {
        // q(q-1)/2 + 5i/2 - i²/2 at q = 3.
        let (t1, t2) = reversal(3);
        let s = ModelSets::derive(&t1, &t2).unwrap();
        assert_eq!(s.evaluate(&Assignment::zeros(&s)), Ok(3));
        assert_eq!(s.evaluate(&Assignment::ones(&s)), Ok(6));
        for i in [1, 2, 4] {
            assert_eq!(s.evaluate(&Assignment::from_index(&s, i)), Ok(5));
        }
    }

    #[test]
    fn permutohedron_objective_is_inversions() {
        let t1 = broom((3, 0), &[p(1), p(2), p(3)], &[]);
        let t2 = broom((3, 0), &[p(2), p(1), p(3)], &[]);
        let s = ModelSets::derive(&t1, &t2).unwrap();
        assert_eq!(s.evaluate(&Assignment::zeros(&s)), Ok(1));
    }

    #[test]
    fn reversal_coefficients() {
        for (qn, c) in [(3u32, 3i64), (6, 15)] {
            let (t1, t2) = reversal(qn);
            let s = ModelSets::derive(&t1, &t2).unwrap();
            let cf = CoefficientForm::from_sets(&s);
            assert_eq!(cf.c(), c);
            assert!(cf.ell.iter().all(|&l| l == 2));
            for u in 0..qn as usize {
                for v in 0..qn as usize {
                    assert_eq!(cf.qcoef(u, v), if u == v { 0 } else { -1 });
                }
            }
        }
    }

    #[test]
    fn identical_coefficients() {
        let t = broom((2, 3), &[q(2), p(1), q(3), p(2)], &[q(1)]);
        let s = ModelSets::derive(&t, &t).unwrap();
        let cf = CoefficientForm::from_sets(&s);
        assert_eq!(cf.c(), 0);
        for u in 0..s.len() {
            assert_eq!(cf.ell[u], 2 * (s.c[u].len() + s.f[u].len()) as i64);
            assert!(cf.ell[u] >= 0);
        }
    }

    #[test]
    fn mismatches() {
        let a = broom((1, 2), &[p(1)], &[q(1), q(2)]);
        let b = broom((2, 1), &[p(1), p(2)], &[q(1)]);
        assert!(matches!(ModelSets::derive(&a, &b), Err(ModelError::SpecMismatch(..))));
        let s = ModelSets::derive(&a, &a).unwrap();
        let bad = Assignment::new(vec![q(1)], vec![true]);
        assert!(matches!(s.evaluate(&bad), Err(ModelError::DomainMismatch { .. })));
    }
}
