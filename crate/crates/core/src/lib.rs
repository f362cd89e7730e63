//! Minimum firing times for firing squad synchronization on grid paths and
//! regions.

mod board;
pub mod cni;
pub mod error;
pub mod extension;
pub mod grid;
pub mod mft;
pub mod solution;
pub mod variation;

pub use error::{Error, Violation};
pub use grid::{parse_config, BoundaryCondition, Config, Direction, PathConfig, Position, RegionConfig};
pub use variation::Variation;
