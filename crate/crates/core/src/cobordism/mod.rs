//! Maps between Khovanov complexes induced by smoothing one crossing or attaching a band.

mod band;
mod cone;
mod skein;

pub use band::{band_is_orientable, bands, insert_band, BandCone, BandMap, BandSpec, LeeImage};
pub use cone::{side_spec, MarkedCone, Sides, Tracked};
pub use skein::{GeneratorDegree, SkeinTriangle, TriangleCheck, TriangleKind};
