//! Exact verification of the symmetric and split three-Sasakian examples:
//! Lie algebra identities, invariant forms, recovered endomorphisms and the
//! pseudo-sphere fields.

mod endo;
mod lie;
mod sasaki;
mod symmetric;

pub use endo::{endo_from_pair, triple_from_forms, Endomorphism};
pub use lie::{
    ce_differential, closedness_report, five_dim_forms, jacobi_check, nilpotency_step, symmetric_form,
    ClosednessEntry, Form, LieAlgebra,
};
pub use sasaki::{
    assignment_search, cone_compare, points_with_norm, positive_norm_points, pseudo_sphere_points, sasaki_check,
    verify_assignment, Assignment, ConeComparison, RadialReading, SasakiReport,
};
pub use symmetric::{
    build_symmetric_hs, match_by_scaling, real_structure_holds, HReading, KernelFormulaReport, QuarticData,
    SymmetricHs,
};
