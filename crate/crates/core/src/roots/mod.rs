//! Root systems and Weyl groups in exact arithmetic.
//!
//! Coordinates follow Bourbaki. Ambient vectors are stored doubled so that
//! the half-integral roots of `E_n` and `F_4` stay integral.

mod firm;
mod isogeny;
mod system;
mod weyl;

pub use firm::{strictly_firm_parabolic, FirmResult};
pub use isogeny::{
    bad_prime_product, power_map_surjective, simply_connected_center_order, Isogeny, IsogenyData,
};
pub use system::{build_root_system, dot4, Doubled, RootSystem, RootType};
pub use weyl::{
    char_poly, conjugate_in_weyl_group, coxeter_element, d_type_cycle_element, enumerate_weyl_group,
    int_det, is_fixed_point_free, longest_element_is_minus_one, minus_one_in_weyl_group, orderings,
    signed_orbit_lengths, signed_permutation, standard_coxeter_element, IntMat, RatMat, WeylElement,
    DEFAULT_ENUMERATION_LIMIT,
};
