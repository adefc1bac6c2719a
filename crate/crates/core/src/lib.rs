//! Exact arithmetic for Moufang sets of outer F₄-type in characteristic 2.
//!
//! The crate builds the whole tower bottom-up:
//!
//! * [`base_field`]: K = F₂(α, β) with its Tits endomorphism θ,
//! * [`hahn`]: finite Hahn series over ℤ + ℤ√2, used for a trace obstruction,
//! * [`quad_ext`]: the separable quadratic extension E = K(γ),
//! * [`f4_space`]: the quadratic space V = E ⊕ E ⊕ [K] of a polar triple,
//! * [`polarity_algebra`]: the nonassociative product on V,
//! * [`quadrangle`]: the unipotent group of the Moufang quadrangle and its
//!   polarity, plus the vertex maps used to define τ,
//! * [`moufang_set`]: the root group U of the Moufang set, its τ map and
//!   the Suzuki subsets,
//! * [`f4_building`]: the normalized F₄ root system and the 20-root group.
//!
//! Randomized identity checks live next to each structure and report through
//! [`report`].

pub mod base_field;
mod collect;
pub mod error;
pub mod f4_building;
pub mod f4_space;
pub mod hahn;
pub mod moufang_set;
pub mod polarity_algebra;
pub mod quad_ext;
pub mod quadrangle;
pub mod report;

pub use error::{Error, Result};
