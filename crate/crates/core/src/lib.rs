//! Certified enclosures of the correction term `theta_n` in Ramanujan's
//! sextic refinement of Stirling's formula,
//!
//! ```text
//! n! = sqrt(pi) (n/e)^n (8n^3 + 4n^2 + n + theta_n/30)^(1/6),
//! ```
//!
//! together with machine-checked replays of two proofs that `theta_n` is
//! strictly increasing. Every symbolic step is an exact rational polynomial
//! computation and every numerical step is a ball-arithmetic comparison.

pub mod exact;
pub mod ball;
pub mod series;
pub mod ramanujan;
pub mod proof;
