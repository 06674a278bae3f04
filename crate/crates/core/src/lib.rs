//! Exact tensor-field calculus on quotients of affine space by finite
//! linear groups: reflection divisors, pull-backs and push-forwards of
//! rational tensor fields, divisors and B-divisors, and the regularity
//! criterion comparing the intrinsic divisor test with direct pull-back
//! regularity.

pub mod error;
pub mod linalg;
pub mod par;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
