//! Exact evaluation of twisted Gromov invariants of Grassmannians and of
//! the number of maximal subbundles of a general stable bundle on a curve.

pub mod bkm;
pub mod checks;
pub mod error;
pub mod exact;
pub mod maxsub;
pub mod poly;
pub mod schubert;
pub mod twisted;
pub mod vi;

pub use error::{Error, Result};
