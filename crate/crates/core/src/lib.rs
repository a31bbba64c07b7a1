pub mod centralizer;
pub mod clifford;
pub mod conjugacy;
pub mod io;
pub mod error;
pub mod gpin;
pub mod quadspace;
pub mod scalars;
pub mod suite;

pub use error::{Error, NonMemberReason, Result};
