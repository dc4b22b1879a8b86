//! Toric hypersymplectic quotients: configurations, fibres of the orbit
//! map, and decision procedures.

mod config;
mod decide;
mod fiber;
mod structure;

pub use config::{ConePoint, ToricConfig, TorusData};
pub use decide::{
    cint_probe, compactness_test, connectedness_test, degeneracy_test, degenerate_at, freeness_test,
    lattice_data, sample_points, smoothness_test, AnalysisOptions, CintResult, ConnectednessResult,
    DegeneracyResult, DegeneracyVerdict, DegeneracyWitness, FreenessResult, SmoothnessResult, SmoothnessVerdict,
    Truth, VertexStratum,
};
pub use fiber::{fiber_enumerate, first_violated, incidence, FiberOrbit, Incidence, QuadSurd};
pub use structure::{generator, induced_structure, InducedStructure};
