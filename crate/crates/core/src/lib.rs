pub mod acceptance;
pub mod config;
pub mod diagrams;
pub mod error;
pub mod exactalg;
pub mod genfun;
pub mod graphs;
pub mod rewrite;
pub mod share_space;
pub mod sl2rep;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    mod diagrams {}
    #[doc = include_str!("../../../book/src/rewriting.md")]
    mod rewriting {}
    #[doc = include_str!("../../../book/src/share_space.md")]
    mod share_space {}
    #[doc = include_str!("../../../book/src/genfun.md")]
    mod genfun {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
