//! The `.liealg` text format.
//!
//! ```text
//! algebra so_hat
//! family L integer degree-offset 0
//! family Y half degree-offset 0
//! central C_L
//! bracket L(m) L(n) = (n-m)*L(m+n) + (1/12*m^3-1/12*m)*delta(m+n)*C_L
//! bracket Y(m) Y(n) = (m-n)*M(m+n+1)
//! ```
//!
//! Degree offsets are in doubled units. For a half family the rule variable
//! `m` stands for the index `m+1/2`, so `Y(m+n)` on the right of
//! `L(m) Y(n)` is `Y_{m+n+1/2}`. Product files use `product` in place of
//! `bracket` and are parsed against a base algebra.

mod lexer;
mod parser;
mod render;

pub use parser::{parse_algebra, parse_product};
pub use render::{render_algebra, render_poly, render_product};
