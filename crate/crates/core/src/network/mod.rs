//! Series-parallel networks: construction, impedance, transformations,
//! structural rules, enumeration, the configuration catalog and netlists.

pub mod catalog;
mod enumerate;
mod impedance;
pub mod netlist;
mod spnet;
mod structure;
mod transform;

pub use enumerate::{enumerate_labeled, enumerate_topologies, FilterSet, MAX_ELEMENTS};
pub use impedance::{compose_impedance, impedance, impedance_unreduced, leaf_impedance, template_impedance};
pub use spnet::{Kind, SpNet, Template};
pub use structure::{edges, has_pure_reactive_series_arm, is_irreducible, violates_cutset_rule};
pub use transform::{apply_transform, Transform};
