//! Exact counting of convex-position subsets of planar point placements.
//!
//! Everything here works over integer coordinates with exact predicates, so
//! every count and every identity check is decided without rounding. The
//! crate is `no_std` and only needs `alloc`; file formats, threading and the
//! command line live in the `convexcount` crate.
//!
//! - [`geometry`]: points, the orientation predicate, validated placements.
//! - [`classification`]: canonical triangles, the seven regions a triangle
//!   induces, hull types of 4- and 5-point subsets.
//! - [`counting`]: the naive subset enumerator and the region-sum engine.
//! - [`identities`]: exact identity verification, moments, bound report.
//! - [`search`]: placement generators and the pentagon minimizer.

#![no_std]

extern crate alloc;

pub mod classification;
pub mod counting;
pub mod geometry;
pub mod identities;
pub mod search;

pub use classification::{RegionLabel, TriangleRef, Type4, Type5};
pub use counting::{AggregateSums, CountingError, RegionCounts, TypeCounts4, TypeCounts5};
pub use geometry::{orientation, GeometryError, Placement, Point, Sign, Violation, COORD_BOUND};
pub use identities::{BoundReport, IdentityReport, StatsSummary};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use search::{AnnealConfig, GeneratorKind, GeneratorSpec, SearchError, SearchResult};
