//! Value types and set arithmetic over `Z/pZ`.

mod affine;
mod diameter;
mod modulus;
mod ops;
mod progression;
mod set;

pub use affine::AffineMap;
pub use diameter::{
    cover_with_difference, diameter, difference_classes, is_ap, is_short_covered, min_cover_ap,
};
pub use modulus::PrimeModulus;
pub use ops::{
    affine_image, companion_set, complement, deficiency, double, restricted_sumset, sumset,
};
pub(crate) use ops::{deficiency_from, sumset_kernel};
pub use progression::ApDescriptor;
pub use set::{parse_members, Members, ResidueSet};
