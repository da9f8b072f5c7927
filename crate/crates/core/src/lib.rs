//! Exact orbifold Gromov-Witten correlators of `[C^2/Z_n]` and `[C^2/Z_n] x C`
//! and machine checks of the crepant resolution identities.

pub mod chern;
pub mod crc2d;
pub mod crc3d;
pub mod error;
pub mod exact;
pub mod hodge;
mod multiset;
pub mod series;
pub mod suites;
pub mod tau;

pub use error::{Error, Result};
