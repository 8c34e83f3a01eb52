//! The torus laboratory: `Mod(T²) = SL(2, Z)` and its congruence quotients.

pub mod congruence;
pub mod level;
pub mod matrix2;
pub mod sl2;

pub use congruence::{congruence_sweep, congruent_conjugate_mod, CongruenceReport, LevelVerdict, ModVerdict};
pub use level::{characteristic_lattice_oracle, characteristic_level, Lattice};
pub use matrix2::IntegerMatrix2;
pub use sl2::{normal_form, sl2_conjugate, ClassInvariant, NormalForm, Sl2Verdict};
