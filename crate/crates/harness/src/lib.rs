//! Instance generators, exact-oracle adapters, the experiment runner and
//! the `lossy` command line.

pub mod cli;
pub mod exact;
pub mod gen;
pub mod pipeline;
pub mod runner;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/framework.md")]
    mod framework {}
    #[doc = include_str!("../../../book/src/cvc.md")]
    mod cvc {}
    #[doc = include_str!("../../../book/src/ulic.md")]
    mod ulic {}
    #[doc = include_str!("../../../book/src/disjoint-factors.md")]
    mod disjoint_factors {}
    #[doc = include_str!("../../../book/src/cycle-packing.md")]
    mod cycle_packing {}
    #[doc = include_str!("../../../book/src/companions.md")]
    mod companions {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
