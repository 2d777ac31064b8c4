//! Ideals, nilradicals, prime spectra and localization of finite
//! D-algebras.

mod ideals;
mod localize;
mod points;

pub use ideals::{all_ideals, classical_quotient, h0_part, ideal_generated, is_ideal, nil_elements, DIdeal};
pub use localize::{is_local, is_unit, localize, localize_at_prime, LocalizationResult};
pub use points::{check_hypothesis, primitive_idempotents, spec, vanishing_set, HypothesisReport, PrimePoint};
