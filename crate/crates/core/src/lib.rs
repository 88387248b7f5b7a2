pub mod char_lattice;
pub mod char_table;
pub mod cyclotomic;
pub mod error;
pub mod factors;
pub mod ff_tower;
pub mod gl_group;
pub mod harness;
pub mod partition;
pub mod wd_side;

pub use error::{Error, Result};
