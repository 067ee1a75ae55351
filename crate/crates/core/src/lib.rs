//! Finite half-space systems, their dual median graphs, and random walks of
//! right-angled Artin group actions on lazily realized cube complexes.

pub mod cubulation;
pub mod finite;
pub mod group;
pub mod median;
pub mod pocset;
pub mod walk;

pub use cubulation::{cubulate, MedianGraph};
pub use pocset::{validate_pocset, HalfSpaceId, Orientation, Pocset, PocsetSpec, Relation, Sign, WallId};
