//! Modules over D-algebras: tensor products over `A`, duals, invertibility,
//! localization and the sheaf condition on finite covers.

mod lines;
mod local;
mod module;
mod tensor;

pub use lines::{make_lu, make_lua, TwistedLine};
pub use local::{localize_module, sheaf_equalizer_check, EqualizerReport, LocalizedModule};
pub use module::{DModule, ModuleAxiom, ModuleReport};
pub use tensor::{
    dual, evaluation, find_isomorphism, is_invertible, module_homs, tensor_over, Dual, InvertibleModule,
    TensorProduct, ISO_SEARCH_LIMIT,
};
