//! Divisible linear codes over small finite fields, studied through their
//! geometric twins: multisets of points in `PG(k-1, q)`.
//!
//! - [`gf`]: finite field tables.
//! - [`pg`]: points, subspaces and the multiset calculus.
//! - [`codes`]: generator matrices, weights, canonical forms.
//! - [`lengths`]: the `S_q(r)`-adic length criterion and the `Gamma` table.
//! - [`census`]: exhaustive enumeration and claim verification.

pub mod census;
pub mod codes;
pub mod gf;
pub mod linalg;
pub mod lengths;
pub mod pg;

/// The guide's snippets, compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/index.md")]
    struct Index;
    #[doc = include_str!("../../../book/src/geometry.md")]
    struct Geometry;
    #[doc = include_str!("../../../book/src/lengths.md")]
    struct Lengths;
    #[doc = include_str!("../../../book/src/census.md")]
    struct CensusChapter;
    #[doc = include_str!("../../../book/src/gamma.md")]
    struct GammaChapter;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
