//! Ricci curvature, G-stability spectra and Einstein metric search for
//! invariant metrics on multiplicity-free homogeneous spaces, with the full
//! flag manifolds of G2, SO(5), SO(6), Sp(3) and SU(n) built in.

pub mod curvature;
pub mod flag_su;
pub mod model;
pub mod report;
pub mod solver;
pub mod stability;

pub use curvature::{
    analyze, einstein_residual, normalized_scalar_curvature, ricci_eigenvalues,
    ricci_tensor_components, scalar_curvature, scn_derivative_along_curve, Analysis, CurveSpec,
    RicciData,
};
pub use model::catalog::{catalog_ids, catalog_space};
pub use model::file::{load_space, space_from_json, space_to_json};
pub use model::{
    canonicalize_metric, detect_symmetries, find_isomorphism, InvariantMetric, ModelError,
    Permutation, SpaceModel, SymmetryGroup,
};
pub use report::{build_case, render, Case, CaseBundle};
pub use solver::{refine, solve_einstein, solve_with_ansatz, Ansatz, SolutionSet, SolveOptions};
pub use stability::{assemble_lp, distinguish, stability_report, ReportOptions, SpectralReport};
