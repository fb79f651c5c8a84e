//! Exact computations for word maps on groups.

pub mod error;
pub mod finite;
pub mod roots;
pub mod symbolic;
pub mod word;

pub use error::{Error, Result};

pub use finite::{ElementSet, EngineOptions, Field, GroupKind, GroupTable, Mat2, Target};
pub use roots::{build_root_system, Isogeny, RootSystem, RootType, WeylElement};
pub use symbolic::{LaurentPoly, TracePoly};
pub use word::{parse_word, Family, Group, Letter, NielsenMove, Parsed, Word, WordWithConstants};
