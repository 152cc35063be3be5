//! Nash-Sutcliffe losses, climatologies and weighted regression for
//! evaluating and fitting forecasts of many series at once.

pub mod cli;
pub mod error;
pub mod functionals;
pub mod losses;
pub mod panel;
pub mod regression;
pub mod simulate;

pub use error::{Error, Result};
pub use panel::{Orientation, Panel, SplitAxis, SplitSpec};
