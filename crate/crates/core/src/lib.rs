//! Stable classes of FI-modules over `F_p`, written as integer combinations
//! of padded Specht symbols, with the modular machinery to check them.

pub mod characters;
pub mod error;
pub mod fi;
pub mod grothendieck;
pub mod lr;
pub mod modular;
pub mod partition;
pub mod stable;

pub use error::{Error, Result};
pub use partition::Partition;

// the guide's snippets run as doc-tests
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/littlewood-richardson.md")]
    mod littlewood_richardson {}
    #[doc = include_str!("../../../book/src/stable-expressions.md")]
    mod stable_expressions {}
    #[doc = include_str!("../../../book/src/regularization.md")]
    mod regularization {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/modular.md")]
    mod modular {}
    #[doc = include_str!("../../../book/src/fi-models.md")]
    mod fi_models {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
