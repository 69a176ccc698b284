//! Ground truth for small instances: the whole flip graph, BFS distances, and
//! exhaustive minimization of the quadratic model.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::broom::Broom;
use crate::exec::Exec;
use crate::graph::{SplitGraphSpec, VertexId};
use crate::model::{Assignment, CoefficientForm, ModelSets};

pub const DEFAULT_BROOM_CAP: u64 = 1_000_000;
pub const DEFAULT_BRUTE_BITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} of size {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("brooms are on different graphs: {0:?} vs {1:?}")]
    SpecMismatch(SplitGraphSpec, SplitGraphSpec),
}

/// Number of brooms: `Σ_k C(q,k) · p · (p+k-1)!`, or `None` on overflow.
pub fn broom_count(spec: SplitGraphSpec) -> Option<u128> {
    let (p, q) = (u128::from(spec.p()), u128::from(spec.q()));
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    let mut fact: u128 = (1..p).try_fold(1u128, |acc, i| acc.checked_mul(i))?;
    for k in 0..=q {
        total = total.checked_add(binom.checked_mul(p)?.checked_mul(fact)?)?;
        if k < q {
            binom = binom.checked_mul(q - k)? / (k + 1);
            fact = fact.checked_mul(p + k)?;
        }
    }
    Some(total)
}

/// Every broom of a graph, with its flip-graph adjacency.
#[derive(Debug, Clone)]
pub struct FlipGraph {
    pub spec: SplitGraphSpec,
    pub brooms: Vec<Broom>,
    index: HashMap<Broom, u32>,
    pub adjacency: Vec<Vec<u32>>,
}

impl FlipGraph {
    /// Enumerates all canonical brooms in a fixed order (independent subset
    /// by bitmask, then bottom vertex, then lexicographic handle order).
    pub fn enumerate(spec: SplitGraphSpec, cap: u64, exec: Exec) -> Result<Self, OracleError> {
        let size = broom_count(spec).unwrap_or(u128::MAX);
        if size > u128::from(cap) {
            return Err(OracleError::TooLarge {
                what: "flip graph",
                size,
                cap: cap.into(),
            });
        }
        let q = spec.q();
        let jobs: Vec<(u64, u32)> = (0..1u64 << q)
            .flat_map(|mask| (1..=spec.p()).map(move |bottom| (mask, bottom)))
            .collect();
        let brooms: Vec<Broom> = exec
            .map(&jobs, |&(mask, bottom)| brooms_with(spec, mask, bottom))
            .into_iter()
            .flatten()
            .collect();
        debug_assert_eq!(brooms.len() as u128, size);
        let index: HashMap<Broom, u32> = brooms
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i as u32))
            .collect();
        let adjacency = exec.map(&brooms, |b| {
            b.neighbors()
                .into_iter()
                .map(|(_, nb)| index[&nb])
                .collect()
        });
        Ok(Self {
            spec,
            brooms,
            index,
            adjacency,
        })
    }

    pub fn len(&self) -> usize {
        self.brooms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.brooms.is_empty()
    }

    pub fn index_of(&self, b: &Broom) -> Option<usize> {
        self.index.get(b).map(|&i| i as usize)
    }

    /// Distances from `src`; `u32::MAX` marks unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                let v = v as usize;
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// BFS from every vertex. Row `i` holds distances from `brooms[i]`.
    pub fn all_pairs(&self, exec: Exec) -> Vec<Vec<u32>> {
        exec.map_range(0..self.len(), |i| self.bfs(i))
    }
}

fn brooms_with(spec: SplitGraphSpec, mask: u64, bottom: u32) -> Vec<Broom> {
    let mut above: Vec<VertexId> = spec
        .p_vertices()
        .filter(|v| v.index != bottom)
        .chain(spec.q_vertices().filter(|v| mask >> (v.index - 1) & 1 == 1))
        .collect();
    let leaves: std::collections::BTreeSet<VertexId> = spec
        .q_vertices()
        .filter(|v| mask >> (v.index - 1) & 1 == 0)
        .collect();
    above.sort();
    let mut out = Vec::new();
    loop {
        let mut handle = above.clone();
        handle.push(VertexId::p(bottom));
        out.push(Broom::from_parts_unchecked(spec, handle, leaves.clone()));
        if !next_permutation(&mut above) {
            break;
        }
    }
    out
}

fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    let Some(i) = a.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = a.iter().rposition(|x| *x > a[i]).expect("a[i + 1] qualifies");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Flip-graph distance by BFS over the enumerated graph.
pub fn bfs_distance(t1: &Broom, t2: &Broom, cap: u64) -> Result<u64, OracleError> {
    if t1.spec() != t2.spec() {
        return Err(OracleError::SpecMismatch(t1.spec(), t2.spec()));
    }
    let g = FlipGraph::enumerate(t1.spec(), cap, Exec::default())?;
    let (i, j) = (
        g.index_of(t1).expect("enumeration is complete"),
        g.index_of(t2).expect("enumeration is complete"),
    );
    Ok(u64::from(g.bfs(i)[j]))
}

/// Outcome of exhaustive minimization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteMin {
    pub min: u64,
    /// A minimizer; monotone when one exists.
    pub witness: Assignment,
    /// Whether some minimizer has `x_u <= x_v` for all `u` and `v ∈ F_u`.
    pub monotone_witness: bool,
}

#[derive(Debug, Clone)]
struct ChunkBest {
    min2: i64,
    first: u64,
    monotone: Option<u64>,
}

/// Minimizes `f` over all of `{0,1}^Y` by Gray-code enumeration.
pub fn brute_min_f(sets: &ModelSets, max_bits: usize, exec: Exec) -> Result<BruteMin, OracleError> {
    let k = sets.len();
    if k > max_bits || k > 62 {
        return Err(OracleError::TooLarge {
            what: "exhaustive search over Y",
            size: k as u128,
            cap: max_bits as u128,
        });
    }
    let coeffs = CoefficientForm::from_sets(sets);
    let high_bits = k.min(6);
    let low_bits = k - high_bits;
    let chunks = exec.map_range(0..1usize << high_bits, |hi| {
        scan_chunk(sets, &coeffs, (hi as u64) << low_bits, low_bits)
    });

    let min2 = chunks.iter().map(|c| c.min2).min().expect("at least one chunk");
    let best = chunks.iter().filter(|c| c.min2 == min2);
    let monotone = best.clone().find_map(|c| c.monotone);
    let point = monotone.unwrap_or_else(|| best.clone().next().unwrap().first);
    let twice = coeffs.c2 + min2;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    Ok(BruteMin {
        min: (twice / 2) as u64,
        witness: Assignment::from_index(sets, point),
        monotone_witness: monotone.is_some(),
    })
}

/// Scans the points whose high bits are fixed to those of `base`, tracking
/// `2(ℓ(x) + q(x))` incrementally through a Gray code over the low bits.
fn scan_chunk(sets: &ModelSets, coeffs: &CoefficientForm, base: u64, low_bits: usize) -> ChunkBest {
    let k = sets.len();
    let mut x: Vec<bool> = (0..k).map(|j| base >> j & 1 == 1).collect();
    // pull[u] = Σ_{v set} q_{u,v}
    let mut pull: Vec<i64> = (0..k)
        .map(|u| {
            coeffs
                .qrow(u)
                .iter()
                .zip(&x)
                .filter(|(_, &xv)| xv)
                .map(|(&q, _)| i64::from(q))
                .sum()
        })
        .collect();
    let mut value2 = coeffs.variable_part2(&x);
    let mut point = base;

    let mut best = ChunkBest {
        min2: value2,
        first: point,
        monotone: sets.is_monotone(&x).then_some(point),
    };
    for step in 1u64..1 << low_bits {
        let j = step.trailing_zeros() as usize;
        let sign = if x[j] { -1 } else { 1 };
        value2 += sign * (2 * coeffs.ell[j] + 2 * pull[j]);
        x[j] = !x[j];
        point ^= 1 << j;
        for (u, q) in coeffs.qrow(j).iter().enumerate() {
            pull[u] += sign * i64::from(*q);
        }
        if value2 < best.min2 {
            best = ChunkBest {
                min2: value2,
                first: point,
                monotone: sets.is_monotone(&x).then_some(point),
            };
        } else if value2 == best.min2 && best.monotone.is_none() && sets.is_monotone(&x) {
            best.monotone = Some(point);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::broom::RawBroom;

    fn reversal(qn: u32) -> (Broom, Broom) {
        let fwd: Vec<u32> = (1..=qn).collect();
        let rev: Vec<u32> = (1..=qn).rev().collect();
        (
            Broom::from_partial_permutation(&fwd, qn).unwrap(),
            Broom::from_partial_permutation(&rev, qn).unwrap(),
        )
    }

    #[test]
    fn counts() {
        let c = |p, q| broom_count(SplitGraphSpec::new(p, q).unwrap()).unwrap();
        assert_eq!(c(1, 3), 16);
        assert_eq!(c(2, 0), 2);
        assert_eq!(c(2, 4), 522);
        assert_eq!(broom_count(SplitGraphSpec::new(1000, 1000).unwrap()), None);
    }

    #[test]
    fn enumeration_matches_count_and_is_duplicate_free() {
        for (p, q) in [(1, 3), (2, 0), (2, 4), (3, 2)] {
            let spec = SplitGraphSpec::new(p, q).unwrap();
            let g = FlipGraph::enumerate(spec, DEFAULT_BROOM_CAP, Exec::Sequential).unwrap();
            assert_eq!(g.len() as u128, broom_count(spec).unwrap());
            assert_eq!(g.index.len(), g.len());
        }
    }

    #[test]
    fn enumeration_order_is_independent_of_mode() {
        let spec = SplitGraphSpec::new(2, 3).unwrap();
        let a = FlipGraph::enumerate(spec, DEFAULT_BROOM_CAP, Exec::Sequential).unwrap();
        let b = FlipGraph::enumerate(spec, DEFAULT_BROOM_CAP, Exec::Parallel).unwrap();
        assert_eq!(a.brooms, b.brooms);
        assert_eq!(a.adjacency, b.adjacency);
        assert_eq!(a.all_pairs(Exec::Sequential), b.all_pairs(Exec::Parallel));
    }

    #[test]
    fn cap_is_enforced() {
        let spec = SplitGraphSpec::new(2, 4).unwrap();
        let err = FlipGraph::enumerate(spec, 500, Exec::Sequential).unwrap_err();
        assert!(matches!(err, OracleError::TooLarge { size: 522, .. }));
    }

    #[test]
    fn bfs_examples() {
        let (t1, t2) = reversal(3);
        assert_eq!(bfs_distance(&t1, &t1, DEFAULT_BROOM_CAP), Ok(0));
        assert_eq!(bfs_distance(&t1, &t2, DEFAULT_BROOM_CAP), Ok(3));

        let spec = SplitGraphSpec::new(3, 0).unwrap();
        let mk = |h: [u32; 3]| {
            let raw = RawBroom {
                handle: h.iter().map(|&i| VertexId::p(i)).collect(),
                leaves: vec![],
            };
            Broom::validate(spec, &raw).unwrap()
        };
        assert_eq!(bfs_distance(&mk([1, 2, 3]), &mk([3, 2, 1]), DEFAULT_BROOM_CAP), Ok(3));
    }

    #[test]
    fn stellohedron_diameters() {
        // Diameters frozen from all-pairs BFS. The reversal pair, at distance
        // min(q(q-1)/2, 2q), realizes the diameter only from q = 5 on.
        for (qn, diameter, reversal_distance) in [(3, 4, 3), (4, 7, 6), (5, 10, 10)] {
            let (t1, t2) = reversal(qn);
            let g = FlipGraph::enumerate(t1.spec(), DEFAULT_BROOM_CAP, Exec::default()).unwrap();
            let all = g.all_pairs(Exec::default());
            assert_eq!(all.iter().flatten().copied().max().unwrap(), diameter);
            let (i, j) = (g.index_of(&t1).unwrap(), g.index_of(&t2).unwrap());
            assert_eq!(all[i][j], reversal_distance);
        }
    }

    #[test]
    fn brute_examples() {
        let (t1, t2) = reversal(3);
        let sets = ModelSets::derive(&t1, &t2).unwrap();
        let r = brute_min_f(&sets, DEFAULT_BRUTE_BITS, Exec::default()).unwrap();
        assert_eq!(r.min, 3);
        assert_eq!(r.witness, Assignment::zeros(&sets));
        assert!(r.monotone_witness);

        let (t1, t2) = reversal(6);
        let sets = ModelSets::derive(&t1, &t2).unwrap();
        let r = brute_min_f(&sets, DEFAULT_BRUTE_BITS, Exec::default()).unwrap();
        assert_eq!(r.min, 12);
        assert_eq!(r.witness, Assignment::ones(&sets));
        assert!(r.monotone_witness);

        let sets = ModelSets::derive(&t1, &t1).unwrap();
        let r = brute_min_f(&sets, DEFAULT_BRUTE_BITS, Exec::default()).unwrap();
        assert_eq!(r.min, 0);
        assert_eq!(r.witness, Assignment::zeros(&sets));
    }

    #[test]
    fn brute_agrees_with_direct_evaluation() {
        // Gray-code bookkeeping against plain evaluation of every point.
        let t1 = Broom::from_partial_permutation(&[3, 1, 4, 2, 5], 5).unwrap();
        let t2 = Broom::from_partial_permutation(&[2, 5, 1, 3], 5).unwrap();
        let sets = ModelSets::derive(&t1, &t2).unwrap();
        let direct = (0..1u64 << sets.len())
            .map(|i| sets.evaluate(&Assignment::from_index(&sets, i)).unwrap())
            .min()
            .unwrap();
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(brute_min_f(&sets, 24, exec).unwrap().min, direct);
        }
    }

    #[test]
    fn brute_cap() {
        let (t1, t2) = reversal(5);
        let sets = ModelSets::derive(&t1, &t2).unwrap();
        assert!(matches!(
            brute_min_f(&sets, 4, Exec::Sequential),
            Err(OracleError::TooLarge { .. })
        ));
    }
}
