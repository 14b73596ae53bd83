pub mod cli;
pub mod constants;
pub mod error;
pub mod logval;
pub mod modes;
pub mod ode;
pub mod phase;
pub mod quad;
pub mod resonances;
pub mod scatdet;
pub mod specfun;
pub mod uniform;

pub use error::{Error, Result};
pub use logval::LogValue;
pub use num_complex::Complex64;
