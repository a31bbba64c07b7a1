//! Constructive conjugators: `beta h^-1 beta^-1 = h` on O(V), its lift
//! `eta sigma_V(g) eta^-1 = g` on GPin(V), brute-force oracles, and the
//! extended groups acting through `sigma_V`.

mod mvw;
mod theorem;
mod tilde;

pub use mvw::{brute_force_mvw, mvw_beta, mvw_verify, DetTargets};
pub use theorem::{
    brute_force_conjugate, conjugator, conjugator_gspin, conjugator_gspin_untwisted, conjugator_with, ConjugatorCertificate, GSpinCertificate,
    Involution,
};
pub use tilde::{tau_w, tau_w_gspin, TildeElement, TildeGroup};
