//! The three builders and their verifiers: the twisted sum A covering a
//! twisted group algebra, the abelian cover H covering a Galois extension,
//! and the amalgam X covering a crossed product — plus the end-to-end
//! realization drivers.

mod abelian_cover;
mod amalgam;
mod realize;
mod twisted_sum;
mod xi;

#[cfg(test)]
mod tests;

pub use abelian_cover::{
    build_h, convolution_group, form_check_h, quotient_onto_field, ConvolutionReport,
    CoverLayout, FormCheckReport,
};
pub use amalgam::{build_x, project_to_crossed_product, AmalgamLayout, Block};
pub use realize::{
    realize_cyclic_algebra, realize_tensor_product, stage_a, stage_form_iso, stage_galois,
    stage_h, stage_normal_form, stage_projection, stage_witness, stage_x, RealizeInput,
    RealizeOutcome, StageFailure, StageReport, TensorOutcome,
};
pub use twisted_sum::{
    build_a, form_iso_a, quotient_onto_twisted, FormIsoReport, TwistedSumLayout,
};
pub use xi::XiTable;
