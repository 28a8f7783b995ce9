//! Concrete exceptional Jordan algebra `𝒥¹`, the Lie group `F₄(₋₂₀)` as
//! 27×27 automorphisms, its explicit Iwasawa, K_ε-Iwasawa, Matsuki and
//! Gauss decompositions, and the associated c-function quantities.

pub mod decomp;
pub mod error;
pub mod harmonic;
pub mod jordan;
pub mod liegroup;
pub mod linalg;
pub mod octonion;
pub mod sample;
pub mod tolerance;
pub mod word;

pub use error::{Error, Result};
pub use jordan::{CoordView, JordanElement, Membership};
pub use liegroup::{AlgebraElement, GroupElement};
pub use octonion::Octonion;
pub use tolerance::Tolerance;
