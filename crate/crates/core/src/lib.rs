//! capgeo — computational algebra for geometry-of-information structures.
//!
//! The crate has five subsystems:
//!
//! - [`simplex`]: finite probability distributions with exact rational
//!   weights, the distribution monad and its algebras, tensor products,
//!   Segre embeddings of projective points, and the hypercube diagram of
//!   iterated Segre merges.
//! - [`quasigroup`]: Latin squares, quasigroup/loop/Moufang predicates,
//!   left/right translation maps, and the (rate, relative distance) datum
//!   of an unstructured code.
//! - [`words`]: fully parenthesised words as leaf-labeled binary trees,
//!   the free magma, the Dyck-path bijection, operadic grafting, and
//!   letter-wise translation actions.
//! - [`braid`]: the modified parenthesised braid groupoid — braids over
//!   parenthesised endpoints with pinch/attach events, the d₀/dᵢ/sᵢ tower
//!   operations, skeleton projection, and finite unipotent truncations of
//!   formal linear combinations.
//! - [`toric`]: exponential families over finite sample spaces compiled to
//!   toric data (kernel lattice, binomial generators, cone generators) and
//!   bounded-anticanonical-height rational point counting on built-in
//!   torus compactifications.
//!
//! All algebraic identities are checked in exact rational arithmetic;
//! floating point appears only where a transcendental function does
//! (density evaluation, asymptotic fits) and always with a declared
//! tolerance.

pub mod braid;
pub mod quasigroup;
pub mod simplex;
pub mod toric;
pub mod words;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand for an exact rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a rational from `"a/b"` or plain integer `"a"` text.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().ok()?;
            let den: BigInt = b.trim().parse().ok()?;
            if den == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(num))
        }
    }
}

/// Formats a rational as `"a/b"`, or `"a"` when the denominator is 1.
pub fn format_ratio(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
