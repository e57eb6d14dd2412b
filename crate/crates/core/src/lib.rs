//! Coverage-hole detection and greedy healing for heterogeneous sensor fields.

pub mod awvd;
pub mod cli;
pub mod error;
pub mod geom;
pub mod hdao;
pub mod hdpo;
pub mod heal;
pub mod oracle;
pub mod scenario;

pub use error::{Error, Result};
