//! Exact J-invariants, algebraic periodicity certificates and periodic direction
//! fields of translation surfaces over real number fields.

pub mod construct;
pub mod error;
pub mod exactfield;
pub mod forms;
pub mod io;
pub mod periodicity;
pub mod surface;
pub mod wedge;

pub use error::{ApError, Result};
