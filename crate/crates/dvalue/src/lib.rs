pub mod error;
mod exec;
pub mod game;
pub mod prior;
pub mod regression;
pub mod sampling;
pub mod values;

pub use exec::{stable_name_key, with_workers};
