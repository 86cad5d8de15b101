//! Exact friezes of types A and D built from triangulations, the cut/glue passage
//! between them, and closed-form mutation checked against a rebuild oracle.

pub mod cli;
pub mod cutglue;
pub mod documents;
pub mod error;
pub mod frieze;
pub mod mutation;
pub mod oracle;
pub mod patterng;
pub mod render;
pub mod surfaces;

pub use error::{FriezeError, Result};
