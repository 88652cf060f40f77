pub mod dsl;
pub mod error;
pub mod expr;
pub mod kernel;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod regression;
pub mod scalar;
pub mod suite;
pub mod tensor;

pub use error::{Error, ParseError, Result};
pub use expr::OpExpr;
pub use kernel::{FockNF, Gen, KernelPoly, TensorPoly, TwoForm};
pub use numeric::NumericAssignment;
pub use scalar::{ExactScalar, Gaussian};
pub use tensor::{Factor, Family, Idx, IndexedPoly, Monomial, Var, VarKind};
