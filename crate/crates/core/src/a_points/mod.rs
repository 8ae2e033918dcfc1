//! Weil `A`-points of `R^n` and the prolongation of ideals and group laws to them.

mod group;
mod point;

pub use group::{jacobian, GroupLaw, TangentGroupReport};
pub use point::{
    prolong_ideal, prolonged_variable_names, tangent_correspondence_check, weil_iso_check, APoint, WeilIsoReport,
};
