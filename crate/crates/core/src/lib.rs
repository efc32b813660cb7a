//! Divide-and-swap cubes (`DSC_n`) and their folded variant (`FDSC_n`):
//! label arithmetic, graph materialization, star fault families, an exact
//! structure-connectivity oracle and a structural property suite.

pub mod cuts;
pub mod error;
pub mod graph;
pub mod label;
pub mod lemmas;
pub mod oracle;
pub mod probe;
pub mod theory;

pub use cuts::{
    apply_cut, k11_cut, k1_cut, k1m_cut, k1m_supports, validate_family, CutReport, FamilyJson,
    FaultFamily, Mode, Star, Violation,
};
pub use error::{Error, Result};
pub use graph::{ComponentCensus, ExportFormat, Graph, QuotientCensus, MAX_GRAPH_BITS};
pub use label::{Dim, ModuleAddress, NeighborKind, Variant, VertexLabel};
pub use lemmas::{LemmaReport, Status};
pub use oracle::{Budget, OracleResult, SearchOptions, SweepReport};
pub use probe::RemovalProbe;
pub use theory::predicted_kappa;
