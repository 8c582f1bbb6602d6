//! Exact tame local factors for induced Weil-group representations.

pub mod error;
pub mod exact;
pub mod field;
pub mod padic;
pub mod character;
pub mod factors;
pub mod weil;
pub mod report;
pub mod constructions;
pub mod selftest;

pub use character::{EmbChar, MultChar, Parity};
pub use constructions::{FamilyBounds, RamBeta, TestFamily};
pub use error::{Error, Result};
pub use exact::{CycValue, LambdaSymbol, LocalFactor, Poly, Root, Q};
pub use factors::{GammaProduct, Verdict};
pub use field::{AbsElt, FieldSpec, Scene};
pub use report::{Check, GammaEquivReport, Report};
pub use weil::{GParameter, Group, Summand, WeilRep};
