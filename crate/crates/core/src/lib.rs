//! Exact and high-precision arithmetic around attractor points: binary
//! quadratic forms, CM values of the modular `j`-function, Weierstrass
//! models with torsion, Jacobians of cyclic covers, Fermat cohomology counts
//! and the radial attractor flow.

pub mod arith;
pub mod attractor;
pub mod cohomology;
pub mod elliptic;
pub mod error;
pub mod flow;
pub mod jacobian;
pub mod modular;
pub mod numeric;

pub use arith::{class_group_forms, class_number, reduce_form, BinaryQuadraticForm, IntMatrix, QuadraticSurd};
pub use attractor::{
    attractor_point, discriminant, entropy_invariant, k3_form_certificate, AttractorPoint, ChargeData, GramMatrix,
    K3Certificate,
};
pub use elliptic::{model_from_tau, torsion_points, twist_model, weber_function, WeberCase, WeierstrassModel};
pub use error::{Error, Result};
pub use flow::{flow_integrate, flow_step, FlowConfig, FlowState};
pub use jacobian::{decompose_jacobian, AbelianFactor, CurveSignature, FormIndex};
pub use modular::{certify_attractor_cm, hilbert_class_polynomial, j_value, HilbertClassPolynomial};
pub use numeric::BigComplex;
