pub mod error;
pub mod kernel;
pub mod surfgrp;
pub mod cellular;
pub mod torus;
pub mod ntform;
pub mod chars;
pub mod cli;

pub use error::{Error, Result};
