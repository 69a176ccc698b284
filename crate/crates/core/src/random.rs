//! Uniform random brooms.
//!
//! A broom is an independent subset `S` in the handle, a clique vertex at the
//! bottom, and an ordering of the rest of the handle, so there are
//! `C(q,k) · p · (p+k-1)!` brooms with `|S| = k`. Sampling `k` with that
//! weight and the rest uniformly gives a uniform broom.

use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::broom::Broom;
use crate::graph::{SplitGraphSpec, VertexId};
use crate::instance::Instance;

/// Reproducible generator used by the CLI and the test suites.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Samples `|S|` with probability proportional to `C(q,k) · (p+k-1)!`.
fn sample_handle_size<R: Rng + ?Sized>(spec: SplitGraphSpec, rng: &mut R) -> usize {
    let (p, q) = (f64::from(spec.p()), spec.q() as usize);
    // Logs relative to k = 0; the common factor p · (p-1)! cancels.
    let mut logw = Vec::with_capacity(q + 1);
    let mut acc = 0.0f64;
    logw.push(acc);
    for k in 0..q {
        acc += ((q - k) as f64).ln() - ((k + 1) as f64).ln() + (p + k as f64).ln();
        logw.push(acc);
    }
    let top = logw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = logw.iter().map(|l| (l - top).exp()).collect();
    let total: f64 = weights.iter().sum();
    let mut draw = rng.gen::<f64>() * total;
    for (k, w) in weights.iter().enumerate() {
        if draw < *w {
            return k;
        }
        draw -= w;
    }
    q
}

pub fn random_broom<R: Rng + ?Sized>(spec: SplitGraphSpec, rng: &mut R) -> Broom {
    let q = spec.q() as usize;
    let k = sample_handle_size(spec, rng);
    let chosen: BTreeSet<VertexId> = index::sample(rng, q, k)
        .into_iter()
        .map(|i| VertexId::q(i as u32 + 1))
        .collect();
    let bottom = VertexId::p(rng.gen_range(1..=spec.p()));
    let mut handle: Vec<VertexId> = spec
        .p_vertices()
        .filter(|&v| v != bottom)
        .chain(chosen.iter().copied())
        .collect();
    handle.shuffle(rng);
    handle.push(bottom);
    let leaves = spec.q_vertices().filter(|v| !chosen.contains(v)).collect();
    Broom::from_parts_unchecked(spec, handle, leaves)
}

/// Two independent uniform brooms on the same graph.
pub fn random_instance<R: Rng + ?Sized>(spec: SplitGraphSpec, rng: &mut R) -> Instance {
    let t1 = random_broom(spec, rng);
    let t2 = random_broom(spec, rng);
    Instance::new(t1, t2).expect("same spec")
}

/// A uniformly random permutation of `1..=k`.
pub fn random_permutation<R: Rng + ?Sized>(k: u32, rng: &mut R) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=k).collect();
    v.shuffle(rng);
    v
}
