//! Regularity of powers of edge ideals.
//!
//! Closed forms for forests, cycles and connected unicyclic graphs, and an
//! independent oracle (polarization + Hochster's formula, exact homology over
//! the rationals) to check them against.

pub mod closed_form;
pub mod edge_ideal;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod homology;
mod linalg;
pub mod matching;
pub mod monomial;
pub mod verify;

pub use closed_form::{
    analyze, reg_cycle, reg_forest, reg_power, reg_power_disconnected, reg_unicyclic,
    RegularityReport,
};
pub use edge_ideal::{colon_by_even_connection, colon_direct, edge_ideal, EdgeProduct};
pub use enumeration::{enumerate, Family, GraphFamilySpec};
pub use error::{Error, Result};
pub use graph::{classify, unicyclic_decomposition, Graph, GraphClass, UnicyclicDecomposition};
pub use homology::{regularity_monomial, regularity_squarefree, OracleConfig, OracleResult};
pub use matching::{induced_matching_number, EdgeSelection};
pub use monomial::{Monomial, MonomialIdeal};
pub use verify::{verify_family, ClaimResult, Status, Summary, VerificationRecord, VerifyOptions};
