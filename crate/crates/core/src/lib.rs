//! Set systems, closure hulls, finite phase flows and their attractors.

pub mod attract;
pub mod cantor;
pub mod dynsys;
pub mod error;
pub mod instance;
pub mod report;
pub mod setsys;
pub mod subset;
pub mod verdict;
pub mod verify;

pub use error::{Error, Result};
pub use setsys::{ClosureConvention, SetSystem};
pub use subset::{GroundSet, Subset};
