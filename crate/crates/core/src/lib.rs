pub mod bounds;
pub mod cli;
pub mod clique;
pub mod generators;
pub mod graph;
pub mod spectral;

pub use bounds::{verify_conjecture, BoundReport, BoundsError, CheckRecord, CheckStatus, Verdict};
pub use clique::{max_clique_exact, Budget, CliqueResult, CliqueStatus};
pub use graph::{parse_graph6, write_graph6, Graph, GraphError};
pub use spectral::{eigenvalues_symmetric, Spectrum, SpectrumSource};
