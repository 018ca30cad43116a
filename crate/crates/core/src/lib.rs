//! Weighted Enriques diagrams of plane curve singularities, and decision
//! procedures for adjacency of equisingularity types.
//!
//! A diagram is a rooted tree with a proximity relation; weighting it with
//! integer multiplicities encodes the equisingularity (topological) type of
//! a reduced plane curve germ. This crate decides linear adjacency between
//! types completely, provides checkable necessary and sufficient conditions
//! for analytic adjacency, and emits certificates that an independent
//! verifier re-checks from the raw definitions. All arithmetic is exact.

pub mod adjacency;
pub mod catalog;
pub mod certificate;
pub mod diagram;
pub mod error;
pub mod format;
pub mod iso;
pub mod matrix;
pub mod render;
pub mod weights;

pub use adjacency::{
    adjacency_verdict, adjacency_verdict_with, augmentations, dominates, dominates_with,
    linear_adjacent, linear_adjacent_with, matrix_compatible, necessary_adjacency,
    necessary_adjacency_with, sufficient_adjacency, sufficient_adjacency_with, transition_matrix,
    AdjacencyVerdict, Augmentation, DominationCertificate, LinearCertificate, LinearVerdict,
    NecessaryOutcome, NotLinearReason, PositionalWitness, Reason, SearchCaps, SufficientOutcome,
    UnknownReason, VerdictKind,
};
pub use catalog::{
    arnold, enumerate_types, enumerate_types_capped, named_type, one_exponent, ordinary,
    tangent_smooth, ArnoldFamily, Family, NamedType, DEFAULT_TYPE_DEGREE_CAP,
};
pub use certificate::{
    domination_certificate, linear_certificate, verdict_certificate, verify_certificate,
    CertificateFile, VerifyReport, SCHEMA_VERSION,
};
pub use diagram::{
    admissible_orderings, enumerate_subdiagrams, validate_diagram, Defect, DiagramBuilder,
    Embedding, EnriquesDiagram, OrderedDiagram, RawDiagram, RawVertex, Subdiagram, VertexId,
};
pub use error::{Error, Result};
pub use format::{
    parse_diagram, parse_raw, parse_unweighted, parse_weighted, serialize, serialize_unweighted,
    serialize_weighted,
};
pub use iso::{
    canonical_code, canonical_order, enumerate_diagrams, enumerate_diagrams_capped,
    find_isomorphism, DEFAULT_DIAGRAM_CAP,
};
pub use matrix::IntMatrix;
pub use render::{render, render_dot, render_svg, RenderFormat};
pub use weights::{Excesses, Invariants, UnloadReport, UnloadStep, ValueSystem, WeightedDiagram};
