pub mod adjugates;
pub mod bue;
pub mod complexes;
pub mod cubes;
pub mod doublecubes;
pub mod error;
pub mod fpmod;
pub mod gen;
pub mod io;
pub mod lattices;
pub mod linalg;
pub mod par;
pub mod rings;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use rings::{Ring, RingElement};
