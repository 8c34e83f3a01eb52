pub mod fixture;
pub mod fox;
pub mod presentation;
pub mod rep;
pub mod words;

pub use fixture::{named_representation, parse_mapping_torus, parse_representation, parse_word, MappingTorusFile};
pub use fox::{chain_complex, fox_alexander_matrix, presentation_alexander, twisted_alexander, twisted_torsion};
pub use presentation::{mapping_torus, GeneratorEndomorphism, MappingTorusPresentation, Presentation, SurfacePresentation};
pub use rep::FiniteRepresentation;
pub use words::Word;
