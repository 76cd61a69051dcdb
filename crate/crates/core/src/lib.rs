pub mod boolpat;
pub mod charring;
pub mod depthcore;
pub mod error;
pub mod modp;
pub mod moritatower;
pub mod permgroup;
pub mod qlinalg;
pub mod relcyclic;

pub use error::{Error, Result};
