//! The three kinds of rotation between brooms, which are exactly the edges of
//! the graph associahedron of a complete split graph.
//!
//! Rotations are positional: `SwapHandle { i }` names 1-based handle
//! positions, so a rotation only has meaning relative to the broom it is
//! applied to.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::broom::Broom;
use crate::graph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum Rotation {
    /// Exchange handle positions `i` and `i + 1` (1-based).
    #[serde(rename = "swap")]
    SwapHandle { i: usize },
    /// Move the independent vertex directly above the bottom into the leaves.
    #[serde(rename = "sink")]
    SinkToLeaf,
    /// Insert leaf `u` into the handle directly above the bottom.
    #[serde(rename = "lift")]
    LiftLeaf { u: VertexId },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("illegal rotation {rotation:?}: {reason}")]
    IllegalRotation { rotation: Rotation, reason: &'static str },
}

fn illegal(rotation: Rotation, reason: &'static str) -> RotationError {
    RotationError::IllegalRotation { rotation, reason }
}

impl Rotation {
    /// Checks the legality conditions of `self` on `b`.
    pub fn check(self, b: &Broom) -> Result<(), RotationError> {
        let h = b.handle();
        let m = h.len();
        match self {
            Rotation::SwapHandle { i } => {
                if i == 0 || i >= m {
                    return Err(illegal(self, "swap position outside 1..m-1"));
                }
                if i == m - 1 && !h[m - 2].is_p() {
                    return Err(illegal(self, "only a clique vertex may swap with the bottom"));
                }
            }
            Rotation::SinkToLeaf => {
                if m < 2 || !h[m - 2].is_q() {
                    return Err(illegal(self, "no independent vertex directly above the bottom"));
                }
            }
            Rotation::LiftLeaf { u } => {
                if !b.is_leaf(u) {
                    return Err(illegal(self, "vertex is not a leaf"));
                }
            }
        }
        Ok(())
    }

    /// The rotation that undoes `self` after it is applied to `before`.
    pub fn inverse(self, before: &Broom) -> Result<Rotation, RotationError> {
        self.check(before)?;
        Ok(match self {
            Rotation::SwapHandle { .. } => self,
            Rotation::SinkToLeaf => {
                let h = before.handle();
                Rotation::LiftLeaf { u: h[h.len() - 2] }
            }
            Rotation::LiftLeaf { .. } => Rotation::SinkToLeaf,
        })
    }
}

impl Broom {
    /// Applies `r` in place.
    pub fn rotate(&mut self, r: Rotation) -> Result<(), RotationError> {
        r.check(self)?;
        match r {
            Rotation::SwapHandle { i } => self.handle_mut().swap(i - 1, i),
            Rotation::SinkToLeaf => {
                let h = self.handle_mut();
                let u = h.remove(h.len() - 2);
                self.leaves_mut().insert(u);
            }
            Rotation::LiftLeaf { u } => {
                self.leaves_mut().remove(&u);
                let h = self.handle_mut();
                let at = h.len() - 1;
                h.insert(at, u);
            }
        }
        Ok(())
    }

    /// Returns the broom obtained by applying `r`.
    pub fn apply(&self, r: Rotation) -> Result<Broom, RotationError> {
        let mut next = self.clone();
        next.rotate(r)?;
        Ok(next)
    }

    /// Every legal rotation, in a fixed order: swaps by position, then the
    /// sink, then lifts by ascending leaf.
    pub fn rotations(&self) -> Vec<Rotation> {
        let h = self.handle();
        let m = h.len();
        let mut out = Vec::with_capacity(self.spec().n().saturating_sub(1));
        for i in 1..m {
            if i < m - 1 || h[m - 2].is_p() {
                out.push(Rotation::SwapHandle { i });
            }
        }
        if m >= 2 && h[m - 2].is_q() {
            out.push(Rotation::SinkToLeaf);
        }
        out.extend(self.leaves().iter().map(|&u| Rotation::LiftLeaf { u }));
        out
    }

    /// Every neighbor in the flip graph together with the rotation reaching it.
    pub fn neighbors(&self) -> Vec<(Rotation, Broom)> {
        self.rotations()
            .into_iter()
            .map(|r| (r, self.apply(r).expect("enumerated rotations are legal")))
            .collect()
    }
}
