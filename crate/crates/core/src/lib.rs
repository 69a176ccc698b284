//! Exact rotation distance between brooms on a complete split graph.
//!
//! The search trees of a complete split graph (a clique `P` joined to an
//! independent set `Q`) are brooms, and rotations between them are the edges
//! of the graph associahedron. That family runs from the permutohedron
//! (`q = 0`) to the stellohedron (`p = 1`).
//!
//! The distance between two brooms is the minimum of a quadratic function of
//! 0/1 variables with non-positive cross terms ([`model`]), which is solved
//! exactly as a minimum `(s, t)`-cut ([`mincut`]). Any minimizer yields an
//! explicit shortest rotation sequence ([`geodesic`]). [`oracle`] provides
//! independent ground truth by breadth-first search over the flip graph.
//!
//! ```
//! use broomdist::{rotation_distance, Broom};
//!
//! let t1 = Broom::from_partial_permutation(&[1, 2, 3, 4, 5, 6], 6).unwrap();
//! let t2 = Broom::from_partial_permutation(&[6, 5, 4, 3, 2, 1], 6).unwrap();
//! let (d, xstar) = rotation_distance(&t1, &t2).unwrap();
//! assert_eq!(d, 12);
//! assert!(xstar.bits().iter().all(|&b| b));
//! ```

pub mod broom;
pub mod exec;
pub mod geodesic;
pub mod graph;
pub mod instance;
pub mod maxflow;
pub mod mincut;
pub mod model;
pub mod oracle;
pub mod perm;
pub mod random;
pub mod rotation;

pub use broom::{Broom, BroomError, CodecError, RawBroom, Tubing};
pub use exec::Exec;
pub use geodesic::GeodesicPlan;
pub use graph::{Part, SplitGraphSpec, VertexId};
pub use instance::{Instance, InstanceError};
pub use mincut::{rotation_distance, CutGraph, CutResult, Solution};
pub use model::{Assignment, CoefficientForm, ModelError, ModelSets};
pub use oracle::{bfs_distance, brute_min_f, BruteMin, FlipGraph, OracleError};
pub use perm::inversions;
pub use rotation::{Rotation, RotationError};

/// Distances for a batch of instances, in input order.
pub fn batch_distances(instances: &[Instance], exec: Exec) -> Vec<u64> {
    exec.map(instances, |inst| {
        rotation_distance(&inst.t1, &inst.t2)
            .expect("instances share a spec")
            .0
    })
}
