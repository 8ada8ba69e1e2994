//! Almost `k`-separable pooling matrices for nonadaptive group testing.
//!
//! * [`design`] and [`support`]: the binary test matrix and support sets.
//! * [`construct`]: seeded IID Bernoulli designs.
//! * [`verify`]: exact separability/disjunctness counts and decoding.
//! * [`bounds`]: counting bound, overlap union bound, sufficient row
//!   counts `M(n,k)` and achievable-rate curves.
//! * [`montecarlo`]: sampled estimates with Wilson intervals.
//!
//! Rates follow the convention `R = log2 C(n,k) / m`: bits learned per
//! test, at most 1.

pub mod bounds;
pub mod construct;
pub mod design;
pub mod error;
pub mod montecarlo;
pub mod optimize;
pub mod rng;
pub mod subsets;
pub mod support;
pub mod verify;

pub use construct::{bernoulli_design, design_for_params, p_from_alpha, DesignParams};
pub use design::TestDesign;
pub use error::{Error, Result};
pub use montecarlo::McEstimate;
pub use subsets::Guard;
pub use support::SupportSet;
pub use verify::{DecodeResult, SeparabilityReport};
