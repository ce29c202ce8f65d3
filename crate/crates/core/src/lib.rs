//! Exact computational topology on triangulated closed manifolds: simplicial
//! (co)homology with Smith-normal-form certificates, the dual block
//! cellulation, the cap-product duality map and its isomorphism test, and
//! normal curves / surfaces realizing the duals of 1-cocycles.

pub mod chain;
pub mod complex;
pub mod dual;
pub mod duality;
pub mod error;
pub mod homology;
pub mod io;
pub mod level;
pub mod matrix;
pub mod report;
pub mod ring;
pub mod snf;
pub mod zoo;

pub use chain::{boundary, boundary_matrix, coboundary, coboundary_matrix, evaluate, is_cocycle, is_cycle, Chain, Cochain};
pub use complex::{
    barycentric_subdivision, build_complex, fundamental_class, validate_closed_manifold, Diagnostic, FailureReason,
    FundamentalClass, ManifoldCertificate, SimplicialComplex, Simplex, Subdivision,
};
pub use dual::{
    dual_complex, dual_correspondence, dual_induced_map, dual_report, DualCell, DualComplex, DualCorrespondence, DualReport,
};
pub use duality::{cap_chain, cap_matrix, duality_map, verify_duality, DualityMap, DualityRecord, DualityReport};
pub use error::{Error, Result};
pub use homology::{cohomology, homology, homology_from_boundaries, homology_table, induced_map, HomologyGroup, InducedMap, HomologyRecord, Variance};
pub use io::{format_rational, parse_cocycle, parse_complex, parse_rational, read_cocycle, read_complex};
pub use level::{
    deform_level, export_cobounding, export_curve, export_surface, integrate_cocycle, intersection_number,
    level_curve, level_surface_3d, pairing_table, CoboundingChain, CrossingPoint, EdgeCrossings, NormalCurve, NormalSurface, Patch,
    PatchKind, RefinedVertex, VertexPotential,
};
pub use matrix::{IntegerMatrix, SparseMatrix};
pub use ring::{Coefficient, Ring, Z2};
pub use snf::{determinant, smith_normal_form, SnfCertificate};
pub use zoo::{get_complex, get_complex_from, ZooEntry, ZooExpected};
