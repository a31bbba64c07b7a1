//! The groups GPin(V) and GSpin(V): membership, projection, lifting,
//! involutions, centers and finite enumeration.

mod center;
mod element;
mod enumerate;

pub use center::{center, split_structure, zeta_commutation, CenterDescription, GroupKind, SplitStructure};
pub use element::{spinor_norm, GPinElem, PinSpin};
pub use enumerate::{
    enumerate_gpin, enumerate_group, enumerate_isometries, enumeration_cap, projective_points, EnumeratedGroup,
    DEFAULT_CAP,
};
