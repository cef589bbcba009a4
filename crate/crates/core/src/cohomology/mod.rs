//! Hirzebruch-Jung resolution data for curves of cyclic quotient
//! singularities and Fermat character counts.

mod fermat;
mod resolution;

pub use fermat::{
    character_multiplicities, fermat_betti, fermat_hodge_numbers, fermat_primitive_dim, shioda_katsura_check,
    ShiodaKatsuraCheck,
};
pub use resolution::{
    dual_twist, hj_expand, hj_reconstruct, resolution_contributions, HJResolution, SingularCurveDatum,
};
