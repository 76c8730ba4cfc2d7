//! Exact generalized characteristic polynomials `F_G(λ, μ) = det(λI − (A − μD))`
//! of graphs, coverings and graph bundles, with the Bartholdi zeta reciprocal
//! and spanning-tree counts derived from them.
//!
//! ```
//! use gcpoly::{gcp_direct, Graph};
//!
//! let f = gcp_direct(&Graph::complete(2));
//! assert_eq!(f.to_string(), "l^2 + 2*l*m + m^2 - 1");
//! ```

pub mod bundle;
pub mod characters;
pub mod closed_forms;
pub mod cyclotomic;
pub mod error;
pub mod format;
pub mod graph;
pub mod group;
pub mod pencil;
pub mod poly;
pub mod trees;
pub mod zeta;

pub use bundle::{
    gcp_bundle_factored, gcp_cartesian, gcp_covering, gcp_times_kn, gcp_weighted, FactoredGcp,
    LambdaShift,
};
pub use characters::{all_characters, weighted_arc_matrix, Character};
pub use closed_forms::{gcp_kst, gcp_star_times_kn, tree_count_star_times_kn, StarTimesKnTrees};
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use format::{parse_graph, parse_voltages, Voltages};
pub use graph::{
    adjacency_matrix, arc_partition, build_bundle, cartesian_product, degree_matrix, CayleyFiber,
    FiberSpec, Graph, VoltageAssignment,
};
pub use group::{AbelianGroup, Element, Permutation, SymmetricGroup, VoltageGroup};
pub use pencil::{det_pencil, gcp_direct, PencilMatrix};
pub use poly::{BivarPoly, IntPoly, Vars};
pub use trees::{complexity_gcp, complexity_kirchhoff, northshield_check};
pub use zeta::{bartholdi_direct, bartholdi_from_gcp, ZetaReciprocal};
