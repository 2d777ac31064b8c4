//! Group functors on test algebras: units, the `dlog` sequence, `GL_P` and
//! the transporter `H`, and the Hopf structure of `O(G)`.

mod finite;
mod hopf;
mod units;

pub use finite::{transformation_matrix, GroupLaw, GroupPointSet, GroupReport, EXHAUSTIVE_TRIPLES};
pub use hopf::{hopf_check, o_g_hopf, HopfData, HopfReport, LaurentTensors, TensorElem};
pub use units::{
    alpha2_points, conjugation_test, cover_witness, dlog, g_points, glp_points, h_points, h_red_check, in_transporter,
    n_points, non_normality_witness, quotient_bijection_check, ses_check, CoverWitness, HRedReport, NonNormality,
    QuotientReport, SesReport, GLP_MAX_DIM, SES_EXHAUSTIVE,
};
