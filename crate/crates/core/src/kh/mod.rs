//! Khovanov-type chain complexes of link diagrams.

mod cob;
mod cube;
mod frobenius;
mod lee;
mod scan;

pub use cube::{CubeComplex, CUBE_LIMIT};
pub use frobenius::{Deformation, Elem, Frobenius};
pub use scan::{scan, ElementSpec, ScanOptions, ScanResult};
pub use lee::{
    complex_with, deformed_homology, generator_level, khovanov_homology, lee_class, lee_generator, normalize, orientation_census, s_invariant,
    Engine, KhOptions, LeeClass,
};
