//! Character tables of small groups and the Nielsen-number bounds obtained by
//! pushing periodic orbit classes into a finite quotient.

mod group;
mod orbits;

#[cfg(test)]
mod tests;

pub use group::{builtin_group, FiniteGroupTable, BUILTIN_GROUPS};
pub use orbits::{class_indicator_l, nielsen_bound, twisted_l_from_orbits, NielsenBound, OrbitEntry, OrbitProjectionTable};
