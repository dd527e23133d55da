//! Exact and numerical machinery for Grassmannian polylogarithms.

pub mod aomoto;
pub mod chen;
pub mod configuration;
pub mod error;
pub mod exact;
pub mod forms;
pub mod grass;
pub mod perm;
pub mod polylog;
pub mod tensor;

pub use aomoto::{AomotoExpr, AomotoGen};
pub use configuration::{Configuration, GenericityCertificate, IndexSubset};
pub use error::{Error, Result};
pub use exact::ExactScalar;
pub use tensor::{Coeff, Label, LabelSet, LinComb, Monomial, MultSymbol, MultTensor, WedgeTensor};
