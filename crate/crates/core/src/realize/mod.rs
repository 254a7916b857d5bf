//! Decision procedures and closed-form synthesis.

mod classify;
pub mod conditions;
mod lemmas;
pub mod polys;
mod synth;

pub use classify::{classify, classify_ratio, synth_config, RealizationClass, RealizationReport};
pub use conditions::{check_fig3a_condition, check_n4a_condition, check_n5a_condition, Ratio};
pub use lemmas::{
    five_element_two_reactive_conditions, four_element_conditions, lemma_five_element_two_reactive,
    lemma_four_element, lemma_three_element, LemmaOutcome,
};
pub use polys::{auxiliary_condition_polynomials, resultant_claims, AuxPolynomial, ResultantClaim};
pub use synth::{common_root, fig3a_p1, n4a_p1, n5a_p1, synth_fig3a, synth_n4a, synth_n5a, unique_positive_root};
