//! Deterministic builders: classical families, products, the explicit
//! witness groups, and JSON group specs.

pub mod families;
pub mod products;
pub mod spec;
pub mod witnesses;

pub use families::{build_family, FamilyParams};
pub use products::{central_product, direct_product, pair_id, semidirect_product};
pub use spec::GroupSpec;
pub use witnesses::{
    group1, group1_orientation, group1_presentation, group2, group2_presentation, named_witness,
    s6_example, Orientation, PcExample, S6Example, Witness, WitnessBundle,
};
