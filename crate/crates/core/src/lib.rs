//! Vertex guards for simple polygons.
//!
//! Three approximation algorithms are provided: greedy set cover over the
//! convex cells cut out by all vertex-pair lines, the shortest-path-tree
//! algorithm for polygons weakly visible from an edge, and a hybrid that
//! guards every reflex vertex when there are very few of them. An exact
//! exhaustive oracle measures how far each stays from the optimum, and two
//! seeded generators produce test polygons.

pub mod bench;
pub mod decomp;
pub mod error;
pub mod fixtures;
pub mod geodesic;
pub mod geom;
pub mod guards;
pub mod io;
pub mod polygen;
pub mod render;
pub mod util;
pub mod visibility;

pub use error::{Error, Result};
pub use geom::{Point, Polygon};
