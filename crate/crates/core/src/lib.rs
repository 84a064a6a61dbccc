//! Exact absolute-irreducibility certification for bivariate integer
//! polynomials.
//!
//! A polynomial `f` of degree `(m, n)` is absolutely irreducible over `Q`
//! exactly when an integer matrix built from its coefficients has full column
//! rank `2mn + n - 1`; reducing that matrix modulo `p` gives a one-sided test
//! over `F_p`, and a maximal minor bounds the primes at which irreducibility
//! can fail.
//!
//! - [`poly`]: dense bivariate polynomials over `Z` and `F_p`, parsing, printing
//! - [`linalg`]: fraction-free integer rank and minors, prime-field elimination
//! - [`criterion`]: the criterion matrix and `(r, s)` witnesses
//! - [`numtheory`]: primality, factorization, modular helpers
//! - [`certify`]: prime bounds, certificates, bad-prime discovery
//! - [`family`]: an explicit family reducible at large primes
//! - [`oracle`]: brute-force factor search over tiny finite fields

pub mod certify;
pub mod criterion;
pub mod error;
pub mod family;
pub mod linalg;
pub mod numtheory;
pub mod oracle;
pub mod poly;

pub use error::{Error, Result};
pub use poly::{parse_poly, BiPoly, PolyFp, PolyZ};
