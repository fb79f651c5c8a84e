//! Exact symbolic algebra: Laurent polynomials, the Magnus embedding,
//! SL_2 trace polynomials, cyclotomic integers and the `N_g` operator.

pub mod cyclotomic;
pub mod laurent;
pub mod magnus;
pub mod ng;
pub mod trace;

pub use cyclotomic::{cyclotomic_poly, CycloElt, CycloRing, IntPoly};
pub use laurent::{LaurentPoly, LaurentPolyJson, Variables};
pub use magnus::{f_w, is_in_f2, magnus_image, magnus_image_bounded, prime_set, MagnusGroup, MagnusMatrix};
pub use ng::{ng_operator_analysis, NgReport, WeightModule};
pub use trace::{trace_polynomial, IntMat2, PolySl2, TracePoly};
