//! The free algebra on the two generators `A`, `A*` over [`RingElement`](crate::exactring::RingElement).

mod ncpoly;
mod parse;
mod word;

pub use ncpoly::{dagger, ncpoly_mul, NcPoly};
pub use parse::{constant_poly, parse_expression};
pub use word::{Letter, Word, MAX_WORD_LEN};
