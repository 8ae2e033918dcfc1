//! Jets of submanifolds of `R^n` as ideals, and the contact geometry of the
//! space of jets.

mod contact;
mod derived;
mod jet;
mod maps;

pub use contact::{contact_and_cartan, projection_columns, taylor_map, ContactData, TaylorData};
pub use derived::{
    cartan_fields, cartan_from_fields, cartan_generation_oracle, derived_jet, invert_substitution, normal_form,
    CartanFields, NormalForm,
};
pub use jet::{
    classical_jet, cotangent_module, differential, hat_ideal, jet_fields, jet_from_ideal, preserves, tangent_module,
    Cotangent, Jet, JetFields, TangentModule,
};
pub use maps::{compose_maps, pushforward, tangent_map, TangentMap};
