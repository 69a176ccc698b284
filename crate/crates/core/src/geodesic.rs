//! Explicit rotation sequences of length exactly `f(x)`.
//!
//! Given `x`, let `S` be the `Y` vertices with `x_u = 1`, `S1` the independent
//! vertices in the handle of `T1` that are leaves of `T2`, and `S2` the
//! converse. The path has three phases:
//!
//! 1. From `T1`, sink every member of `S ∪ S1` to the leaves, lowest first.
//! 2. Sort the remaining handle (`P ∪ (Y \ S)`) into the order it has after
//!    doing the same from `T2`, using one adjacent swap per inversion.
//! 3. Undo the sinking of `S ∪ S2` from `T2`, in reverse.
//!
//! The sort in phase 2 places the target's bottom vertex first and then
//! works upward, so the bottom slot only ever holds clique vertices.

use std::iter::FusedIterator;

use crate::broom::Broom;
use crate::graph::VertexId;
use crate::mincut::Solution;
use crate::model::{Assignment, ModelError, ModelSets};
use crate::perm::inversions;
use crate::rotation::Rotation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicPlan {
    /// `Y` vertices that visit the leaves.
    pub s: Vec<VertexId>,
    /// In the handle of `T1` only.
    pub s1: Vec<VertexId>,
    /// In the handle of `T2` only.
    pub s2: Vec<VertexId>,
    /// `P ∪ (Y \ S)` numbered top-down once `T1` is sunk, read top-down
    /// once `T2` is sunk. Phase 2 has one swap per inversion of `tau`.
    pub tau: Vec<u32>,
    pub start: Broom,
    pub end: Broom,
    pub rotations: Vec<Rotation>,
    /// Rotation counts of the sink, sort and lift phases.
    pub phases: [usize; 3],
}

impl GeodesicPlan {
    /// Builds the path prescribed by `x`. Its length is `f(x)`, and a `Y`
    /// vertex becomes a leaf along it iff `x` sets it to 1.
    pub fn construct(t1: &Broom, t2: &Broom, x: &Assignment) -> Result<Self, ModelError> {
        let sets = ModelSets::derive(t1, t2)?;
        sets.check_domain(x)?;
        let spec = t1.spec();

        let s = x.ones_vertices();
        let s1: Vec<VertexId> = spec
            .q_vertices()
            .filter(|&v| !t1.is_leaf(v) && t2.is_leaf(v))
            .collect();
        let s2: Vec<VertexId> = spec
            .q_vertices()
            .filter(|&v| t1.is_leaf(v) && !t2.is_leaf(v))
            .collect();

        let mut sinks = vec![false; spec.n()];
        for &v in &s {
            sinks[spec.dense(v)] = true;
        }
        let mut from_t1 = sinks.clone();
        for &v in &s1 {
            from_t1[spec.dense(v)] = true;
        }
        let mut from_t2 = sinks;
        for &v in &s2 {
            from_t2[spec.dense(v)] = true;
        }

        let mut rotations = Vec::new();
        let mut current = t1.clone();
        sink_members(&mut current, |v| from_t1[spec.dense(v)], |r, _| rotations.push(r));
        let phase1 = rotations.len();

        let mut target = t2.clone();
        let mut tail = Vec::new();
        sink_members(&mut target, |v| from_t2[spec.dense(v)], |_, inv| tail.push(inv));
        debug_assert_eq!(current.leaves(), target.leaves());

        let tau = relabel(current.handle(), target.handle(), &spec);
        sort_handle(&mut current, target.handle(), &mut rotations);
        debug_assert_eq!(current, target);
        let phase2 = rotations.len() - phase1;
        debug_assert_eq!(phase2 as u64, inversions(&tau).unwrap());

        rotations.extend(tail.iter().rev());
        let phase3 = tail.len();

        Ok(Self {
            s,
            s1,
            s2,
            tau,
            start: t1.clone(),
            end: t2.clone(),
            rotations,
            phases: [phase1, phase2, phase3],
        })
    }

    /// A shortest path: [`GeodesicPlan::construct`] at an optimal assignment.
    pub fn geodesic(t1: &Broom, t2: &Broom) -> Result<Self, ModelError> {
        let sol = Solution::solve(t1, t2)?;
        let plan = Self::construct(t1, t2, sol.xstar())?;
        debug_assert_eq!(plan.len() as u64, sol.distance);
        Ok(plan)
    }

    pub fn len(&self) -> usize {
        self.rotations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotations.is_empty()
    }

    /// Replays the plan, yielding each rotation with the broom it produces.
    pub fn steps(&self) -> Steps<'_> {
        Steps {
            state: self.start.clone(),
            rest: self.rotations.iter(),
        }
    }
}

pub struct Steps<'a> {
    state: Broom,
    rest: std::slice::Iter<'a, Rotation>,
}

impl Iterator for Steps<'_> {
    type Item = (Rotation, Broom);

    fn next(&mut self) -> Option<Self::Item> {
        let &r = self.rest.next()?;
        self.state
            .rotate(r)
            .expect("plan rotations are legal by construction");
        Some((r, self.state.clone()))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.rest.size_hint()
    }
}

impl ExactSizeIterator for Steps<'_> {}
impl FusedIterator for Steps<'_> {}

/// Sinks the members of the handle to the leaves, lowest first, reporting
/// each rotation together with its inverse.
fn sink_members(
    b: &mut Broom,
    is_member: impl Fn(VertexId) -> bool,
    mut emit: impl FnMut(Rotation, Rotation),
) {
    let members: Vec<VertexId> = b
        .handle()
        .iter()
        .rev()
        .copied()
        .filter(|&v| is_member(v))
        .collect();
    for u in members {
        debug_assert!(u.is_q());
        let m = b.handle().len();
        let mut j = b.handle().iter().position(|&v| v == u).expect("member in handle");
        while j + 2 < m {
            let r = Rotation::SwapHandle { i: j + 1 };
            b.rotate(r).expect("swap above the bottom is always legal");
            emit(r, r);
            j += 1;
        }
        b.rotate(Rotation::SinkToLeaf)
            .expect("independent vertex directly above the bottom");
        emit(Rotation::SinkToLeaf, Rotation::LiftLeaf { u });
    }
}

/// Reorders the handle of `b` into `target` by adjacent swaps, fixing the
/// bottom slot first and moving up. Uses exactly one swap per inversion.
fn sort_handle(b: &mut Broom, target: &[VertexId], out: &mut Vec<Rotation>) {
    for k in (0..target.len()).rev() {
        let w = target[k];
        let j = b.handle()[..=k]
            .iter()
            .position(|&v| v == w)
            .expect("same vertex set");
        for i in j..k {
            let r = Rotation::SwapHandle { i: i + 1 };
            b.rotate(r).expect("only clique vertices reach the bottom");
            out.push(r);
        }
    }
}

fn relabel(from: &[VertexId], to: &[VertexId], spec: &crate::graph::SplitGraphSpec) -> Vec<u32> {
    let mut label = vec![0u32; spec.n()];
    for (i, &v) in from.iter().enumerate() {
        label[spec.dense(v)] = i as u32 + 1;
    }
    to.iter().map(|&v| label[spec.dense(v)]).collect()
}
