//! Split quaternions, the module `Bⁿ` and its flat hypersymplectic structure.

pub mod flat;
pub mod module;
pub mod quaternion;

pub use flat::{check_relations, FlatStructure, FlatValues, RelationReport};
pub use module::{abelian_element, module_action, AbelianMode, BMatrix, BVector, ComplexPair, Membership};
pub use quaternion::{SplitQuaternion, SquareClass};
