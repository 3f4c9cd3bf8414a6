//! Indices of lack of monotonicity for sampled functions, indices of lack of
//! positivity for finite signed measures, and the weighted-premium machinery
//! whose loading condition motivates them.
//!
//! Functions are modeled as linear interpolants of their samples, so every
//! index is an exact finite sum for the model:
//!
//! ```
//! use monodex::function::SampledFunction;
//! use monodex::indices::report;
//!
//! let tent = SampledFunction::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]).unwrap();
//! let r = report(&tent, None).unwrap();
//! assert_eq!((r.loi, r.lod, r.lom, r.tv), (1.0, 1.0, 2.0, 2.0));
//! ```

pub mod cli;
pub mod error;
pub mod function;
pub mod indices;
pub mod measure;
pub mod ordering;
pub mod risk;
pub mod tolerance;

pub use error::{Error, Result};
