//! Regular Euclidean embeddings of twin-free loopless multigraphs.
//!
//! A predistance matrix that is invariant under the automorphisms of a graph
//! and determines its edge multiplicities is shifted until its double-centred
//! form is positive semi-definite; classical scaling then yields points whose
//! distance-preserving permutations are exactly the graph automorphisms.
//! Everything here is exhaustive and aimed at graphs of a dozen vertices.
//!
//! ```
//! use regemb::corpus::petersen;
//! use regemb::spectral::{embed, ShiftMode};
//! use regemb::{build_predistance, verify_regular, PredistanceKind, VerifyOptions};
//!
//! let g = petersen();
//! let p = build_predistance(&g, PredistanceKind::Adjacency)?;
//! let e = embed(&p, ShiftMode::Low, None)?;
//! let cert = verify_regular(&g, &p, &e, &VerifyOptions::default())?;
//! assert!(cert.groups_equal && e.dimension() == 4);
//! # Ok::<(), regemb::Error>(())
//! ```

pub mod autgroup;
pub mod cli;
pub mod coherent;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod isometry;
pub mod linalg;
pub mod perm;
pub mod predistance;
pub mod report;
pub mod spectral;
pub mod twins;

pub use autgroup::{automorphisms, commutes_with_group, CommuteCheck, GroupLimits};
pub use coherent::{coherent_basis, make_reconstructing, predistance_from_basis, CoherentBasis};
pub use error::{Error, Result};
pub use graph::{adjacency_matrix, graph_metrics, parse_multigraph, GraphMetrics, Multigraph, SymMatrix};
pub use isometry::{distance_preserving_permutations, verify_regular, RegularityCertificate, VerifyOptions};
pub use perm::{PermGroup, Permutation};
pub use predistance::{
    build_predistance, check_commuting, check_reconstructing, Predistance, PredistanceKind, ReconstructCheck,
};
pub use spectral::{
    bilinear_form, embed, reduce_predistance, spectral_profile, zeta, EigenGroup, Embedding, ShiftMode, SpectralProfile,
};
pub use twins::{are_twins, factorize_aut_order, quotient, twin_decomposition, AutFactorization, Partition};
