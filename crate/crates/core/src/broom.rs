//! Brooms: the search trees of a complete split graph.
//!
//! A broom is a path (the handle) from the root down to a clique vertex, with
//! the remaining independent-set vertices hanging off that bottom vertex as
//! leaves. Every search tree on a complete split graph has this shape.
//!
//! A tree whose path ends `... -> p_i -> q_j` with no other leaves is the same
//! search tree as the broom ending at `p_i` with the single leaf `q_j` (both
//! give the same tubing). [`Broom::validate`] rewrites the former into the
//! latter so that every vertex of the associahedron has exactly one
//! representation: the handle of a canonical broom always ends in `P`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{SplitGraphSpec, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BroomError {
    #[error("vertex {0} is out of range for this graph")]
    UnknownVertex(VertexId),
    #[error("vertex {0} appears more than once")]
    DuplicateVertex(VertexId),
    #[error("clique vertex {0} is missing from the handle")]
    MissingPVertex(VertexId),
    #[error("vertex {0} is neither in the handle nor among the leaves")]
    MissingVertex(VertexId),
    #[error("leaf {0} is not in the independent set")]
    LeafNotInQ(VertexId),
    #[error("handle tail below the last clique vertex is not a search tree: {0}")]
    BadHandleTail(String),
}

/// Untrusted broom data, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBroom {
    pub handle: Vec<VertexId>,
    pub leaves: Vec<VertexId>,
}

/// A validated, canonical broom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Broom {
    spec: SplitGraphSpec,
    handle: Vec<VertexId>,
    leaves: BTreeSet<VertexId>,
}

impl Broom {
    /// Checks raw data against `spec` and returns the canonical broom.
    pub fn validate(spec: SplitGraphSpec, raw: &RawBroom) -> Result<Self, BroomError> {
        let mut seen = vec![false; spec.n()];
        for &v in raw.handle.iter().chain(&raw.leaves) {
            if !spec.contains(v) {
                return Err(BroomError::UnknownVertex(v));
            }
            let d = spec.dense(v);
            if seen[d] {
                return Err(BroomError::DuplicateVertex(v));
            }
            seen[d] = true;
        }
        if let Some(&v) = raw.leaves.iter().find(|v| v.is_p()) {
            return Err(BroomError::LeafNotInQ(v));
        }
        if let Some(v) = spec.p_vertices().find(|&v| !seen[spec.dense(v)]) {
            return Err(BroomError::MissingPVertex(v));
        }
        if let Some(v) = spec.q_vertices().find(|&v| !seen[spec.dense(v)]) {
            return Err(BroomError::MissingVertex(v));
        }

        // p >= 1 and every P-vertex is in the handle, so a last one exists.
        let last_p = raw
            .handle
            .iter()
            .rposition(|v| v.is_p())
            .expect("handle contains every clique vertex");
        let mut handle = raw.handle.clone();
        let mut leaves: BTreeSet<VertexId> = raw.leaves.iter().copied().collect();
        match handle.len() - last_p - 1 {
            0 => {}
            1 if leaves.is_empty() => {
                let tail = handle.pop().expect("tail vertex");
                leaves.insert(tail);
            }
            1 => {
                return Err(BroomError::BadHandleTail(format!(
                    "{} sits below the last clique vertex while the broom has leaves",
                    handle[last_p + 1]
                )))
            }
            k => {
                return Err(BroomError::BadHandleTail(format!(
                    "{k} independent vertices below the last clique vertex {}",
                    handle[last_p]
                )))
            }
        }
        Ok(Self { spec, handle, leaves })
    }

    /// Builds a broom from parts that are already known to be canonical.
    pub(crate) fn from_parts_unchecked(
        spec: SplitGraphSpec,
        handle: Vec<VertexId>,
        leaves: BTreeSet<VertexId>,
    ) -> Self {
        let b = Self { spec, handle, leaves };
        debug_assert!(Broom::validate(spec, &b.to_raw()).as_ref() == Ok(&b));
        b
    }

    pub fn spec(&self) -> SplitGraphSpec {
        self.spec
    }

    /// Root first, bottom (a clique vertex) last.
    pub fn handle(&self) -> &[VertexId] {
        &self.handle
    }

    pub fn leaves(&self) -> &BTreeSet<VertexId> {
        &self.leaves
    }

    pub fn bottom(&self) -> VertexId {
        *self.handle.last().expect("handle is never empty")
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.leaves.contains(&v)
    }

    pub(crate) fn handle_mut(&mut self) -> &mut Vec<VertexId> {
        &mut self.handle
    }

    pub(crate) fn leaves_mut(&mut self) -> &mut BTreeSet<VertexId> {
        &mut self.leaves
    }

    /// Handle positions indexed by [`SplitGraphSpec::dense`]; `None` for leaves.
    pub fn handle_positions(&self) -> Vec<Option<usize>> {
        let mut pos = vec![None; self.spec.n()];
        for (i, &v) in self.handle.iter().enumerate() {
            pos[self.spec.dense(v)] = Some(i);
        }
        pos
    }

    pub fn to_raw(&self) -> RawBroom {
        RawBroom {
            handle: self.handle.clone(),
            leaves: self.leaves.iter().copied().collect(),
        }
    }

    /// The maximal tubing made of the vertex sets of all proper subtrees.
    pub fn to_tubing(&self) -> Tubing {
        let mut tubes = BTreeSet::new();
        for i in 1..self.handle.len() {
            let tube: BTreeSet<VertexId> = self.handle[i..]
                .iter()
                .chain(&self.leaves)
                .copied()
                .collect();
            tubes.insert(tube);
        }
        for &leaf in &self.leaves {
            tubes.insert(BTreeSet::from([leaf]));
        }
        Tubing { tubes }
    }

    /// Reads a broom on a star (`p = 1`) from a partial permutation of
    /// `1..=q`: the listed independent vertices form the handle top-down,
    /// followed by the center.
    pub fn from_partial_permutation(seq: &[u32], q: u32) -> Result<Self, CodecError> {
        let spec = SplitGraphSpec::new(1, q).expect("p = 1");
        let mut used = vec![false; q as usize];
        for &i in seq {
            if i == 0 || i > q {
                return Err(CodecError::OutOfRange { entry: i, q });
            }
            if std::mem::replace(&mut used[i as usize - 1], true) {
                return Err(CodecError::DuplicateEntry(i));
            }
        }
        let mut handle: Vec<VertexId> = seq.iter().map(|&i| VertexId::q(i)).collect();
        handle.push(VertexId::p(1));
        let leaves = (1..=q)
            .filter(|&i| !used[i as usize - 1])
            .map(VertexId::q)
            .collect();
        Ok(Self { spec, handle, leaves })
    }

    /// Independent-set indices of the handle, top-down.
    pub fn to_partial_permutation(&self) -> Vec<u32> {
        self.handle
            .iter()
            .filter(|v| v.is_q())
            .map(|v| v.index)
            .collect()
    }
}

impl Serialize for Broom {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_raw().serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("entry {0} occurs twice in the partial permutation")]
    DuplicateEntry(u32),
    #[error("entry {entry} is outside 1..={q}")]
    OutOfRange { entry: u32, q: u32 },
}

/// A set of tubes (connected proper vertex subsets).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tubing {
    pub tubes: BTreeSet<BTreeSet<VertexId>>,
}

impl Tubing {
    pub fn len(&self) -> usize {
        self.tubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tubes.is_empty()
    }

    /// Checks that this is a maximal tubing of the split graph: `n - 1`
    /// tubes, each a non-empty proper connected subset, every two nested or
    /// non-adjacent.
    pub fn is_valid_maximal(&self, spec: &SplitGraphSpec) -> bool {
        let n = spec.n();
        if self.tubes.len() + 1 != n {
            return false;
        }
        let tube_ok = |t: &BTreeSet<VertexId>| {
            !t.is_empty()
                && t.len() < n
                && t.iter().all(|&v| spec.contains(v))
                && spec.is_connected(t)
        };
        if !self.tubes.iter().all(tube_ok) {
            return false;
        }
        let tubes: Vec<_> = self.tubes.iter().collect();
        for (i, a) in tubes.iter().enumerate() {
            for b in &tubes[i + 1..] {
                let nested = a.is_subset(b) || b.is_subset(a);
                if !nested && spec.is_connected(a.union(b)) {
                    return false;
                }
            }
        }
        true
    }
}
