//! Spaces, meromorphic forms and the modules presenting their differentials.

mod form;
mod map;
mod space;
mod subsets;

pub use form::{same_space, MeroForm};
pub use map::{restrict_form, PolyMap};
pub use space::{Smoothness, Space, SpaceRef};
pub use subsets::{bits, wedge_sign, Subsets};

#[cfg(test)]
mod tests;
