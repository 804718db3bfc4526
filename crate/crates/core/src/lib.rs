//! Exact computations with pivotal pairs of dual objects, the categories of
//! objects intertwined with them, and the Hopf algebras and monads they induce.

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod freehopf;
pub mod gvec;
pub mod intertwine;
pub mod monadlim;
mod par;
pub mod pivpair;
pub mod report;
pub mod sigterm;
pub mod suite;

pub use error::{Error, Result};
