//! Oriented link diagrams, braid words and cabling.

mod braid;
mod builder;
mod cable;
mod diagram;
mod ops;
mod pd;

pub use braid::{d_braid, BraidWord};
pub use builder::{braid_closure, cable, closure, letters_of, BoxedDiagram, DiagramBuilder, Letter, StrandStart};
pub use cable::{negative_five_two, negative_trefoil, satellite, unknot, Satellite};
pub use diagram::{Edge, LinkDiagram, Port};
pub use ops::{EdgeImage, Resolution};
pub(crate) use ops::reorient;
pub use pd::{parse_pd, to_pd};
