pub mod class3;
pub mod error;
pub mod finfield;
pub mod graphtools;
pub mod hexagon;
pub mod incidence;
pub mod permgroup;
pub mod projgeom;
pub mod serialize;

pub use error::{Error, Result};
