//! Exact continued-fraction expansion of `z/G(z)` for the basic
//! hypergeometric series `G(z) = sum_n (y;q)_n / (x;q)_n z^n`, together with
//! the machinery to check it: truncated power series over the rationals, the
//! extraction recursion, closed-form coefficients, convergents, and a
//! randomized harness that evaluates every identity at exact sampled points.
//!
//! ```
//! use qfrac::{CFCoeffs, ParamPoint};
//!
//! let point = ParamPoint::from_strs("1/2", "1/3", "1/5", 8).unwrap();
//! let extracted = CFCoeffs::extracted(&point, 6).unwrap();
//! let closed = CFCoeffs::closed(&point, 6).unwrap();
//! assert_eq!(extracted.values(), closed.values());
//! assert_eq!(closed.values()[3].to_string(), "-165/8");
//! ```

pub mod arith;
pub mod builders;
pub mod cfrac;
pub mod cli;
pub mod error;
pub mod series;
pub mod verify;

pub use arith::{cross_poch, parse_rational, pochhammer, q_binom2, q_pow, ParamPoint, Rational};
pub use builders::{
    build_g, build_s, build_s0_s1, build_s_even, build_s_odd, SeriesKind, SeriesSpec,
};
pub use cfrac::{
    closed_a, closed_a_x0_printed, closed_a_y0_printed, convergent, convergents, extract_coeffs,
    z_over_g, CFCoeffs, Provenance,
};
pub use error::{Error, Result};
pub use series::Series;
pub use verify::{sample_point, CheckEntry, VerifyReport};
