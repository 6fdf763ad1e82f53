#![allow(clippy::needless_range_loop)]

pub mod alcove;
pub mod error;
pub mod fdalg;
pub mod forced;
pub mod koszul;
pub mod sl2lab;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod recipe;
pub mod rootdata;

pub use error::{Error, Result};
