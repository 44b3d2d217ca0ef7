//! `Λ²` of a six-dimensional space and the Plücker geometry of `G(2,6)`.

pub mod gl;
pub mod grass;
pub mod tensor;

pub use gl::Gl6;
pub use grass::{
    classify_plane_section, decompose, double_line_normal_form, tangent_space, ConicData, ConicTag,
    DoubleLineFrame, GrassLine, GrassPoint, PlaneSectionClass,
};
pub use tensor::{
    exterior_square, form_kernel, form_rank, is_decomposable, pair_index, pairing, triple_wedge,
    wedge2, wedge22, wedge_spaces, wedge_top3, FourTensor, Side, TwoTensor, PAIRS,
};
