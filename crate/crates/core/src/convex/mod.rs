//! Exact convex feasibility: integer lattices, linear programming and
//! planar second-order cones.

pub mod directions;
pub mod lp;
pub mod snf;
pub mod soc;

pub use lp::{FarkasCertificate, LinearProgram, LpOutcome};
pub use snf::{extends_to_basis, integral_kernel_basis, smith_normal_form, IntegerMatrix, KernelBasis, SmithForm};
pub use soc::{
    boundary_meet, exclusion_margin, positively_spanning, rational_lp_feasible, soc_feasible, strict_interior,
    walls_meet, Affine, FeasibilityVerdict, Infeasibility, InteriorProbe, Method, SecondOrderCone, SocOptions,
    SocSystem, Status,
};
