//! Fixed-precision p-adic algebra for Iwasawa power series, Mirimanoff
//! series and Stickelberger elements, with exact checkers for the identities
//! relating them.

pub mod arith;
pub mod bernoulli;
pub mod characters;
pub mod check;
pub mod cyclotomic;
pub mod error;
pub mod iwasawa;
pub mod lemma2;
pub mod lemma5;
pub mod lfunction;
pub mod mirimanoff;
pub mod padic;
pub mod poly;
pub mod ring;
pub mod unramified;

pub use bernoulli::BernoulliOracle;
pub use check::Check;
pub use characters::{DeltaChar, DirichletChar};
pub use error::{Error, Result};
pub use iwasawa::{IwasawaPoly, Lambda, MuLambda, OmegaPoly};
pub use padic::{GammaIndexTable, PadicCtx, PadicInt};
pub use ring::CoeffRing;
pub use unramified::{make_splitting_ctx, UnramCtx, UnramElem};
