//! Exact-arithmetic machinery for factorization identities of two families of
//! arithmetic sums: sums over integers coprime to n, and the Anderson-Apostol
//! divisor sums L_{f,g,k}(n) = sum over d | gcd(k, n) of f(d) g(n/d).
//!
//! Both families factor through lower-triangular matrices built out of the
//! partition function, and every production formula in this crate is paired
//! with an independent brute-force oracle in [`oracle`]. Exact paths run on
//! arbitrary-precision rationals with zero tolerance; complex-exponential
//! mirrors carry explicit absolute tolerances.
//!
//! Module map:
//! - [`rat`], [`partition`], [`matrix`], [`poly`], [`arith`]: exact numbers,
//!   p(n) and (q;q)_inf coefficients, triangular matrices, w-polynomials, and
//!   the Dirichlet convolution algebra.
//! - [`type1`]: coprime-filtered sums T_f(x), the mu inversion pair, the
//!   t-matrix factorization, and its applications (Mertens, Menon, Toth,
//!   sigma_alpha).
//! - [`type2`]: Anderson-Apostol sums, the w-polynomial inverse matrices,
//!   the simplified u-hat matrices, and the D_f multiple convolutions.
//! - [`dft`]: periodic divisor sums as finite Fourier series, the DFT of
//!   gcd functions, and the exponential-sum expansions they imply.
//! - [`oracle`]: deliberately naive reference implementations.

pub mod arith;
pub mod dft;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod rat;
pub mod report;
pub mod type1;
pub mod type2;

pub use arith::{ArithmeticFunction, Builtin};
pub use error::{Error, Result};
pub use matrix::TriangularMatrix;
pub use partition::PartitionCache;
pub use poly::Polynomial;
pub use rat::{Int, Rat};
