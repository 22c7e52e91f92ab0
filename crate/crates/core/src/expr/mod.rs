//! Expression text: parsing, canonical printing and the problem-file format.
//!
//! Grammar: integers, the identifiers `u y x x1 x2 x3 z w t a0 a1`, primes on
//! `u` and `y` for derivatives (`y0, y1, …` are accepted as aliases for
//! `y, y', …`), `I` for the imaginary unit, and `+ - * / ^ ( )`. Every product
//! needs an explicit `*`.

mod parse;
mod print;
mod problem;

pub use parse::{parse_expr, parse_poly};
pub use print::{print_poly, print_ratfunc};
pub use problem::ProblemFile;
