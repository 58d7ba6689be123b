//! Non-linear maximum rank distance codes in the cyclic model of bilinear
//! forms over finite fields, with exhaustive verification of their algebraic
//! and geometric structure at small parameters.
//!
//! Module map:
//!
//! * [`gfield`]: the field tower F_p ⊆ F_q ⊆ F_{q^m}.
//! * [`linforms`]: words, linearized polynomials, Dickson matrices, ranks.
//! * [`codes`]: the component sets, the code family, Gabidulin baselines and
//!   distance checks.
//! * [`geometry`]: projective images, field reduction, spreads, Segre
//!   varieties, hyperreguli and exterior splashes.
//! * [`cmp`]: the C_F^1-set family in PG(2, q^3) and its identification with
//!   the code family.
//! * [`cli`]: the `mrd` command-line driver.

pub mod cli;
pub mod cmp;
pub mod codes;
pub mod error;
mod fp;
pub mod geometry;
pub mod gfield;
pub mod io;
pub mod linforms;
pub mod matrix;

pub use error::{Error, Result};
pub use gfield::{Elt, FieldCtx};
pub use linforms::Word;
