//! Determining sets of Kneser graphs.
//!
//! `K(n,k)` has the k-subsets of `[n]` as vertices. A family of vertices is
//! determining when it gives every ground element a distinct membership
//! signature; the smallest such family has size `Det(K(n,k))`.
//!
//! * [`family`]: instances, families and the separation test
//! * [`search`]: exact `Det` by pruned search over signature matrices
//! * [`bounds`]: closed-form lower/upper bounds and exact values
//! * [`constructions`]: explicit determining and auxiliary families
//! * [`census`]: counting Kneser graphs by determining number
//! * [`tables`] and [`records`]: CSV and JSON-lines formats used by the CLI

pub mod bounds;
pub mod census;
pub mod constructions;
pub mod error;
pub mod family;
pub mod records;
pub mod search;
pub mod tables;

pub use error::{Error, Result};
pub use family::{Family, KneserInstance, Regime, SignatureMatrix, VertexSet};
pub use search::{det_decision, det_exact, Certificate, DetResult, SearchBudget};
