//! Group-ring codes over the rings R_k = F2[u1..uk]/(u_i^2).

pub mod bitmat;
pub mod codes;
pub mod error;
pub mod fixtures;
pub mod groupring;
pub mod groups;
pub mod rings;
pub mod search;
pub mod verify;

pub use bitmat::BitMatrix;
pub use codes::{CodeReport, Distance, LinearCode, Metric, WeightEnumerator};
pub use error::{Error, Result};
pub use groupring::{parse_element, GroupRingElement, SigmaMatrix};
pub use groups::FiniteGroup;
pub use rings::{RingSpec, RingValue};
pub use search::{builtin_search, run_search, Filter, SearchReport, SearchSpec};
