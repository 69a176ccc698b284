//! Vertices of a complete split graph and the `(p, q)` pair that defines it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Which side of the split a vertex lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    /// The clique.
    P,
    /// The independent set.
    Q,
}

/// A vertex, named by its part and a 1-based index within that part.
///
/// Serialized as `"p<i>"` or `"q<i>"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId {
    pub part: Part,
    pub index: u32,
}

impl VertexId {
    pub const fn p(index: u32) -> Self {
        Self { part: Part::P, index }
    }

    pub const fn q(index: u32) -> Self {
        Self { part: Part::Q, index }
    }

    pub fn is_p(self) -> bool {
        self.part == Part::P
    }

    pub fn is_q(self) -> bool {
        self.part == Part::Q
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.part {
            Part::P => write!(f, "p{}", self.index),
            Part::Q => write!(f, "q{}", self.index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed vertex name {0:?} (expected \"p<i>\" or \"q<i>\" with i >= 1)")]
pub struct ParseVertexError(pub String);

impl FromStr for VertexId {
    type Err = ParseVertexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseVertexError(s.to_owned());
        let mut chars = s.chars();
        let part = match chars.next() {
            Some('p') => Part::P,
            Some('q') => Part::Q,
            _ => return Err(err()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let index: u32 = digits.parse().map_err(|_| err())?;
        if index == 0 {
            return Err(err());
        }
        Ok(Self { part, index })
    }
}

impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("the clique part must be non-empty (p >= 1)")]
    EmptyClique,
}

/// The complete split graph with a clique of size `p` and an independent
/// set of size `q`, every clique vertex adjacent to every independent one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SplitGraphSpec {
    p: u32,
    q: u32,
}

impl SplitGraphSpec {
    pub fn new(p: u32, q: u32) -> Result<Self, SpecError> {
        if p == 0 {
            return Err(SpecError::EmptyClique);
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Total vertex count `p + q`.
    pub fn n(&self) -> usize {
        self.p as usize + self.q as usize
    }

    pub fn contains(&self, v: VertexId) -> bool {
        let bound = match v.part {
            Part::P => self.p,
            Part::Q => self.q,
        };
        v.index >= 1 && v.index <= bound
    }

    /// Dense 0-based position: clique vertices first, then the independent set.
    pub fn dense(&self, v: VertexId) -> usize {
        debug_assert!(self.contains(v));
        match v.part {
            Part::P => v.index as usize - 1,
            Part::Q => self.p as usize + v.index as usize - 1,
        }
    }

    /// Inverse of [`SplitGraphSpec::dense`].
    pub fn vertex(&self, dense: usize) -> VertexId {
        let p = self.p as usize;
        if dense < p {
            VertexId::p(dense as u32 + 1)
        } else {
            VertexId::q((dense - p) as u32 + 1)
        }
    }

    pub fn p_vertices(&self) -> impl Iterator<Item = VertexId> {
        (1..=self.p).map(VertexId::p)
    }

    pub fn q_vertices(&self) -> impl Iterator<Item = VertexId> {
        (1..=self.q).map(VertexId::q)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        self.p_vertices().chain(self.q_vertices())
    }

    /// Whether `set` induces a connected subgraph. In a complete split graph
    /// that happens exactly when the set is a singleton or meets the clique.
    pub fn is_connected<'a, I>(&self, set: I) -> bool
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let mut count = 0usize;
        for v in set {
            if v.is_p() {
                return true;
            }
            count += 1;
        }
        count == 1
    }
}
