//! Exact Hodge integrals `int psi^d lambda_g lambda_{g-1}` computed from
//! double ramification brackets.
//!
//! The crate is layered bottom-up:
//!
//! * [`numbase`]: big rationals and the integer combinatorics used everywhere;
//! * [`mpoly`]: sparse multivariate polynomials and tensor-grid interpolation;
//! * [`drbracket`]: the bracket recursion with a shared memo store;
//! * [`lattice`]: coefficient brackets via lattice-path counting;
//! * [`faber`]: the integrals, three independent pathways, string calculus;
//! * [`cli`]: the `drfaber` command line.
//!
//! ```
//! use drfaber::{faber, drbracket::MemoStore, numbase::rat};
//!
//! let store = MemoStore::new();
//! let spec = faber::ReductionSpec::unit(2, 2);
//! let v = faber::integral_via_binomial(2, &[2, 1], &spec, &store).unwrap();
//! assert_eq!(v, rat(4));
//! assert_eq!(faber::closed_form_extended(2, &[2, 1]).unwrap(), v);
//! ```

pub mod cli;
pub mod drbracket;
pub mod error;
pub mod faber;
pub mod lattice;
pub mod mpoly;
pub mod numbase;
pub mod suites;

pub use drbracket::{genusg_bracket, MemoStore, Mode, Part};
pub use error::{Error, Result};
pub use mpoly::MPoly;
pub use numbase::Rational;
