//! File formats, solver runner and experiment harness around
//! [`edgefog_core`].

pub mod bench;
pub mod doc;
pub mod run;

pub use edgefog_core as core;
