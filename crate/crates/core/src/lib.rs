pub mod catalog;
pub mod cli;
pub mod connection;
pub mod dist;
pub mod error;
pub mod formal;
pub mod free;
pub mod rational;
pub mod sym;
pub mod trees;

pub use error::{Error, Result};
pub use rational::Q;
